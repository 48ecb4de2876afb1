#include "ncm/dilation.hpp"

#include <algorithm>
#include <stdexcept>

namespace ncm {

namespace {

struct TimePoint {
    Rational key;    // drives branching
    Rational value;  // goes into phi subscripts
};

struct Letter {
    TimePoint t;
    Expr x;
};

using Timed = std::vector<Letter>;

struct Blocks {
    std::vector<IndexRange> zero, pos;
};

Timed from_word(const TimedWord& tw) {
    if (tw.times.size() != tw.letters.size()) throw std::invalid_argument("timed word: length mismatch");
    if (tw.letters.empty()) throw std::invalid_argument("timed word: empty");
    Timed w;
    for (std::size_t i = 0; i < tw.size(); ++i) {
        if (tw.times[i] < 0) throw std::invalid_argument("timed word: negative time");
        w.push_back({{tw.times[i], tw.times[i]}, tw.letters[i]});
    }
    return w;
}

TimedWord to_word(const Timed& w) {
    TimedWord tw;
    for (const auto& l : w) {
        tw.times.push_back(l.t.value);
        tw.letters.push_back(l.x);
    }
    return tw;
}

Timed merge(const Timed& w) {
    Timed out;
    for (const auto& l : w) {
        if (!out.empty() && out.back().t.key == l.t.key) {
            out.back().x = out.back().x * l.x;
        } else {
            out.push_back(l);
        }
    }
    return out;
}

Blocks blocks_of(const Timed& w) {
    Blocks b;
    std::size_t i = 0;
    const std::size_t n = w.size();
    while (true) {
        std::size_t start = i;
        while (i < n && w[i].t.key == 0) ++i;
        b.zero.push_back({start, i});
        if (i == n) break;
        start = i;
        while (i < n && w[i].t.key != 0) ++i;
        b.pos.push_back({start, i});
    }
    return b;
}

Expr product_of(const Timed& w, IndexRange r) {
    Expr p = Expr::one();
    for (std::size_t i = r.begin; i < r.end; ++i) p *= w[i].x;
    return p;
}

Timed slice(const Timed& w, IndexRange r) {
    return Timed(w.begin() + static_cast<std::ptrdiff_t>(r.begin), w.begin() + static_cast<std::ptrdiff_t>(r.end));
}

const TimePoint zero_time{0, 0};

void check_subset(const IndexSet& iota, std::size_t top) {
    for (std::size_t k = 0; k < iota.size(); ++k) {
        if (iota[k] < 1 || iota[k] > top) throw std::out_of_range("diachronic collapse: index out of range");
        if (k && iota[k] <= iota[k - 1]) throw std::invalid_argument("diachronic collapse: indices must increase");
    }
}

bool contains(const IndexSet& iota, std::size_t j) { return std::binary_search(iota.begin(), iota.end(), j); }

std::vector<IndexSet> subsets(std::size_t top, bool proper) {
    std::vector<IndexSet> out;
    const unsigned long count = 1ul << top;
    for (unsigned long mask = 0; mask < count; ++mask) {
        if (proper && mask == count - 1) continue;
        IndexSet s;
        for (std::size_t k = 0; k < top; ++k)
            if (mask >> k & 1) s.push_back(static_cast<unsigned>(k + 1));
        out.push_back(std::move(s));
    }
    return out;
}

Expr ss_impl(const Timed& w);
Expr dum_impl(const Timed& w);

// Interior zero blocks in iota become centered letters, the others are dropped.
Timed dlc(const Timed& w, const Blocks& b, const IndexSet& iota) {
    const std::size_t m = b.pos.size();
    Timed out = slice(w, b.zero[0]);
    for (std::size_t j = 0; j < m; ++j) {
        auto blk = slice(w, b.pos[j]);
        out.insert(out.end(), blk.begin(), blk.end());
        if (j + 1 == m) break;
        if (contains(iota, j + 1)) {
            Expr z = product_of(w, b.zero[j + 1]);
            out.push_back({w[b.zero[j + 1].begin].t, centered(FunctionalKind::Omega, z)});
        }
    }
    if (m) {
        auto tail = slice(w, b.zero[m]);
        out.insert(out.end(), tail.begin(), tail.end());
    }
    return out;
}

// Positive blocks outside iota become sign * ss(block) at time 0.
Timed drc(const Timed& w, const Blocks& b, const IndexSet& iota, int sign) {
    Timed out;
    std::optional<Expr> pending;
    auto absorb = [&pending](const Expr& x) { pending = pending ? *pending * x : x; };
    auto flush = [&] {
        if (pending) out.push_back({zero_time, *pending});
        pending.reset();
    };
    for (std::size_t j = 0; j < b.zero.size(); ++j) {
        if (!b.zero[j].empty()) absorb(product_of(w, b.zero[j]));
        if (j == b.pos.size()) break;
        if (contains(iota, j + 1)) {
            flush();
            auto blk = slice(w, b.pos[j]);
            out.insert(out.end(), blk.begin(), blk.end());
        } else {
            Expr s = ss_impl(slice(w, b.pos[j]));
            absorb(sign > 0 ? s : -s);
        }
    }
    flush();
    return out;
}

Expr product_all(const Timed& w) {
    Expr p = Expr::one();
    for (const auto& l : w) p *= l.x;
    return p;
}

bool has_zero(const Timed& w) {
    return std::any_of(w.begin(), w.end(), [](const Letter& l) { return l.t.key == 0; });
}

// Without time-0 letters both index ranges are empty and the value is ss.
Expr drm_impl(const Timed& w) {
    if (!has_zero(w)) return ss_impl(w);
    Blocks b = blocks_of(w);
    if (b.pos.empty()) return product_all(w);
    Expr total;
    for (const auto& iota : subsets(b.pos.size(), true)) total += dum_impl(drc(w, b, iota, +1));
    return total;
}

Expr dum_impl(const Timed& w) {
    if (!has_zero(w)) return ss_impl(w);
    Blocks b = blocks_of(w);
    if (b.pos.empty()) return product_all(w);
    Expr total;
    for (const auto& iota : subsets(b.pos.size(), false)) total += ss_impl(drc(w, b, iota, -1));
    return total;
}

struct Reduced {
    TimePoint tau;
    Timed prefix, core, suffix;
};

Reduced reduce(const Timed& merged) {
    Reduced r;
    r.tau = merged[0].t;
    for (const auto& l : merged)
        if (l.t.key < r.tau.key) r.tau = l.t;
    Timed s = merged;
    for (auto& l : s) {
        l.t.key -= r.tau.key;
        l.t.value -= r.tau.value;
    }
    std::size_t lo = 0, hi = s.size();
    while (lo < hi && s[lo].t.key == 0) ++lo;
    while (hi > lo && s[hi - 1].t.key == 0) --hi;
    r.prefix = slice(s, {0, lo});
    r.core = slice(s, {lo, hi});
    r.suffix = slice(s, {hi, s.size()});
    return r;
}

Expr ss_impl(const Timed& input) {
    Timed w = merge(input);
    if (w.size() == 1) return phi(w[0].t.value, w[0].x);
    Reduced r = reduce(w);
    Expr inner;
    Blocks b = blocks_of(r.core);
    if (r.core.size() == 1) {
        inner = phi(r.core[0].t.value, r.core[0].x);
    } else if (b.pos.size() == 1) {
        inner = ss_impl(r.core);
    } else {
        // boundary zero blocks are empty here, so m >= 2
        const std::size_t m = b.pos.size();
        std::vector<Expr> states;
        for (std::size_t j = 1; j < m; ++j) states.push_back(omega(product_of(r.core, b.zero[j])));
        for (const auto& iota : subsets(m - 1, false)) {
            Expr factor = Expr::one();
            for (std::size_t j = 1; j < m; ++j)
                if (!contains(iota, j)) factor *= states[j - 1];
            if (factor.is_zero()) continue;
            inner += drm_impl(dlc(r.core, b, iota)) * factor;
        }
    }
    return phi(r.tau.value, product_all(r.prefix) * inner * product_all(r.suffix));
}

}  // namespace

Shifted psi_n(const std::vector<Rational>& t) {
    if (t.empty()) throw std::invalid_argument("psi_n: empty time vector");
    Shifted p{*std::min_element(t.begin(), t.end()), {}};
    for (const auto& x : t) p.s.push_back(x - p.tau);
    return p;
}

std::vector<Rational> psi_inverse(const Shifted& p) {
    std::vector<Rational> t;
    for (const auto& x : p.s) t.push_back(x + p.tau);
    return t;
}

StandardDecomposition standard_decomposition(const std::vector<Rational>& t) {
    Shifted p = psi_n(t);
    Timed w;
    for (const auto& x : p.s) w.push_back({{x, x}, Expr::one()});
    Blocks b = blocks_of(w);
    StandardDecomposition d;
    d.tau = p.tau;
    d.zero_blocks = b.zero;
    d.pos_blocks = b.pos;
    d.m = b.pos.size();
    return d;
}

TimedWord merge_equal_times(const TimedWord& tw) { return to_word(merge(from_word(tw))); }

BoundaryReduction reduce_boundary(const TimedWord& tw) {
    Timed w = merge(from_word(tw));
    BoundaryReduction out;
    if (w.size() == 1) {
        out.tau = 0;
        out.core = to_word(w);
        return out;
    }
    Reduced r = reduce(w);
    out.tau = r.tau.value;
    if (!r.prefix.empty()) out.prefix = product_all(r.prefix);
    if (!r.suffix.empty()) out.suffix = product_all(r.suffix);
    out.core = to_word(r.core);
    return out;
}

Expr ss(const TimedWord& tw) { return ss_impl(from_word(tw)); }

Expr ss_structured(const std::vector<Rational>& structure, const std::vector<Rational>& values,
                   const std::vector<Expr>& letters) {
    if (structure.size() != letters.size() || values.size() != letters.size())
        throw std::invalid_argument("ss_structured: length mismatch");
    if (letters.empty()) throw std::invalid_argument("ss_structured: empty word");
    Timed w;
    for (std::size_t i = 0; i < letters.size(); ++i) w.push_back({{structure[i], values[i]}, letters[i]});
    return ss_impl(w);
}

TimedWord diachronic_collapse(DiachronicKind kind, const TimedWord& tw, const IndexSet& iota) {
    Timed w = from_word(tw);
    Blocks b = blocks_of(w);
    const std::size_t m = b.pos.size();
    if (kind == DiachronicKind::DLC) {
        check_subset(iota, m ? m - 1 : 0);
        return to_word(dlc(w, b, iota));
    }
    check_subset(iota, m);
    return to_word(drc(w, b, iota, kind == DiachronicKind::DRC ? +1 : -1));
}

Expr drm(const TimedWord& tw) { return drm_impl(from_word(tw)); }
Expr dum(const TimedWord& tw) { return dum_impl(from_word(tw)); }

}  // namespace ncm
