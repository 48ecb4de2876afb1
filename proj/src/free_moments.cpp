#include "ncm/free_moments.hpp"

#include <numeric>
#include <stdexcept>

namespace ncm {

ConsecutivityDecomposition consecutivity(const IndexTuple& iota) {
    ConsecutivityDecomposition d;
    std::size_t start = 0;
    for (std::size_t i = 1; i <= iota.size(); ++i) {
        if (i == iota.size() || iota[i] != iota[start]) {
            d.blocks.push_back({start, i});
            if (i - start > 1) d.nonstammering = false;
            start = i;
        }
    }
    return d;
}

Expr am(const std::vector<Expr>& a) {
    IndexTuple iota(a.size());
    std::iota(iota.begin(), iota.end(), 1u);
    return am(iota, a);
}

Expr am(const IndexTuple& iota, const std::vector<Expr>& a) {
    const std::size_t n = a.size();
    if (n == 0) throw std::invalid_argument("am: empty tuple");
    if (iota.size() != n) throw std::invalid_argument("am: length mismatch");
    if (!consecutivity(iota).nonstammering) throw std::invalid_argument("am: index tuple stammers");
    if (n == 1) return omega(a[0]);
    if (n >= 8 * sizeof(unsigned long)) throw std::invalid_argument("am: tuple too long");

    std::vector<Expr> centered_entries, states;
    for (const auto& x : a) {
        states.push_back(omega(x));
        centered_entries.push_back(x - states.back());
    }
    Expr total;
    const unsigned long full = (1ul << n) - 1;
    for (unsigned long mask = 0; mask < full; ++mask) {
        IndexTuple sub_iota;
        std::vector<Expr> sub;
        Expr factor = Expr::one();
        for (std::size_t k = 0; k < n; ++k) {
            if (mask >> k & 1) {
                sub_iota.push_back(iota[k]);
                sub.push_back(centered_entries[k]);
            } else {
                factor *= states[k];
            }
        }
        if (factor.is_zero()) continue;
        total += sub.empty() ? factor : gm(sub_iota, sub) * factor;
    }
    return total;
}

Expr gm(const IndexTuple& iota, const std::vector<Expr>& a) {
    if (iota.size() != a.size()) throw std::invalid_argument("gm: length mismatch");
    if (a.empty()) throw std::invalid_argument("gm: empty tuple");
    auto d = consecutivity(iota);
    IndexTuple merged_iota;
    std::vector<Expr> merged;
    for (const auto& blk : d.blocks) {
        Expr p = Expr::one();
        for (std::size_t k = blk.begin; k < blk.end; ++k) p *= a[k];
        merged.push_back(std::move(p));
        merged_iota.push_back(iota[blk.begin]);
    }
    return am(merged_iota, merged);
}

}  // namespace ncm
