#include "ncm/liberation.hpp"

#include <stdexcept>

namespace ncm {

namespace {

void check_index_set(const IndexSet& iota, std::size_t max, const char* what) {
    for (std::size_t i = 0; i < iota.size(); ++i) {
        if (iota[i] < 1 || iota[i] > max)
            throw std::out_of_range(std::string(what) + ": index " + std::to_string(iota[i]) + " out of range [1, " +
                                    std::to_string(max) + "]");
        if (i > 0 && iota[i] <= iota[i - 1])
            throw std::invalid_argument(std::string(what) + ": index set must be increasing");
    }
}

bool contains(const IndexSet& iota, std::size_t j) {
    for (unsigned i : iota)
        if (i == j) return true;
    return false;
}

// Subsets of [m] in increasing binary order; bit k stands for k + 1.
IndexSet subset(unsigned long mask, std::size_t m) {
    IndexSet s;
    for (std::size_t k = 0; k < m; ++k)
        if (mask >> k & 1) s.push_back(static_cast<unsigned>(k + 1));
    return s;
}

unsigned long subset_count(std::size_t m) {
    if (m >= 8 * sizeof(unsigned long) - 1) throw std::length_error("word too long");
    return 1ul << m;
}

Expr nu_complement(const std::vector<Expr>& b_entries, const IndexSet& iota, std::size_t first, std::size_t last) {
    Expr f = Expr::one();
    for (std::size_t j = first; j <= last; ++j)
        if (!contains(iota, j)) f *= nu(b_entries[j]);
    return f;
}

RWord tail(const RWord& x) {
    RWord t;
    t.b.assign(x.b.begin() + 1, x.b.end());
    t.a.assign(x.a.begin() + 1, x.a.end());
    return t;
}

struct Right {
    MomentStats* stats;

    void tick() const {
        if (stats) ++stats->calls;
    }

    Expr L(const RWord& x) const {
        tick();
        const std::size_t l = x.length();
        if (l == 0) return x.b[0];
        Expr total;
        for (unsigned long mask = 0; mask < subset_count(l - 1); ++mask) {
            IndexSet iota = subset(mask, l - 1);
            Expr scal = l >= 2 ? nu_complement(x.b, iota, 1, l - 1) : Expr::one();
            total += R(right_collapse(CollapseKind::LC, x, iota)) * scal;
        }
        return total;
    }

    Expr R(const RWord& x) const {
        tick();
        const std::size_t l = x.length();
        if (l == 0) return x.b[0];
        Expr total;
        for (unsigned long mask = 0; mask + 1 < subset_count(l); ++mask)
            total += U(right_collapse(CollapseKind::RC, x, subset(mask, l)));
        return total;
    }

    Expr U(const RWord& x) const {
        tick();
        const std::size_t l = x.length();
        if (l == 0) return x.b[0];
        Expr total;
        for (unsigned long mask = 0; mask < subset_count(l); ++mask)
            total += L(right_collapse(CollapseKind::UC, x, subset(mask, l)));
        return total;
    }
};

struct Left {
    MomentStats* stats;

    void tick() const {
        if (stats) ++stats->calls;
    }

    Expr L(const LWord& y) const {
        tick();
        const std::size_t l = y.length();
        if (l == 0) return y.a[0];
        Expr total;
        for (unsigned long mask = 0; mask < subset_count(l); ++mask) {
            IndexSet iota = subset(mask, l);
            Expr scal = Expr::one();
            for (std::size_t j = 1; j <= l; ++j)
                if (!contains(iota, j)) scal *= nu(y.b[j - 1]);
            total += R(left_collapse(CollapseKind::LC, y, iota)) * scal;
        }
        return total;
    }

    Expr R(const LWord& y) const {
        tick();
        const std::size_t l = y.length();
        if (l == 0) return y.a[0];
        Expr total;
        for (unsigned long mask = 0; mask + 1 < subset_count(l - 1); ++mask)
            total += U(left_collapse(CollapseKind::RC, y, subset(mask, l - 1)));
        return total;
    }

    Expr U(const LWord& y) const {
        tick();
        const std::size_t l = y.length();
        if (l == 0) return y.a[0];
        Expr total;
        for (unsigned long mask = 0; mask < subset_count(l - 1); ++mask)
            total += L(left_collapse(CollapseKind::UC, y, subset(mask, l - 1)));
        return total;
    }
};

struct Strong {
    MomentStats* stats;

    void tick() const {
        if (stats) ++stats->calls;
    }

    Expr L(const RWord& x) const {
        tick();
        const std::size_t l = x.length();
        if (l == 0) return x.b[0];
        Expr total;
        for (unsigned long mask = 0; mask < subset_count(l - 1); ++mask) {
            IndexSet iota = subset(mask, l - 1);
            Expr scal = l >= 2 ? nu_complement(x.b, iota, 1, l - 1) : Expr::one();
            total += R(right_collapse(CollapseKind::LC, x, iota)) * scal;
        }
        return total;
    }

    // x in standard form, a1 centered by R, the other a's by rho.
    Expr R(const RWord& x) const {
        tick();
        const std::size_t l = x.length();
        if (l == 0) return x.b[0];
        Expr total;
        // 1 in iota: a1 stays centered.
        for (unsigned long mask = 1; mask + 1 < subset_count(l); mask += 2)
            total += U(right_collapse(CollapseKind::RC, x, subset(mask, l)));
        // 1 not in iota: R(a1) leaves E on the left.
        Expr prefix = x.b[0] * cap_r(x.a[0]);
        RWord rest = tail(x);
        for (unsigned long mask = 0; mask < subset_count(l - 1); ++mask)
            total += prefix * T(right_collapse(CollapseKind::RC, rest, subset(mask, l - 1)));
        return total;
    }

    // Expectation of x with a1 centered by R and the other a's by rho.
    Expr U(const RWord& x) const {
        tick();
        const std::size_t l = x.length();
        if (l == 0) return x.b[0];
        Expr total;
        for (unsigned long mask = 1; mask < subset_count(l); mask += 2)
            total += L(right_collapse(CollapseKind::UC, x, subset(mask, l)));
        Expr prefix = -(x.b[0] * cap_r(x.a[0]));
        RWord rest = tail(x);
        for (unsigned long mask = 0; mask < subset_count(l - 1); ++mask)
            total += prefix * L(right_collapse(CollapseKind::UC, rest, subset(mask, l - 1)));
        return total;
    }

    // Expectation of x with every a centered by rho.
    Expr T(const RWord& x) const {
        tick();
        const std::size_t l = x.length();
        if (l == 0) return x.b[0];
        Expr total;
        for (unsigned long mask = 0; mask < subset_count(l); ++mask)
            total += L(right_collapse(CollapseKind::UC, x, subset(mask, l)));
        return total;
    }
};

}  // namespace

RWord right_collapse(CollapseKind kind, const RWord& x, const IndexSet& iota) {
    const std::size_t l = x.length();
    if (x.b.size() != l + 1) throw std::invalid_argument("malformed right word");
    RWord out;
    if (kind == CollapseKind::LC) {
        check_index_set(iota, l == 0 ? 0 : l - 1, "LC");
        out.b.push_back(x.b[0]);
        if (l == 0) return x;
        Expr alpha = Expr::one();
        for (std::size_t j = 1; j <= l; ++j) {
            alpha *= x.a[j - 1];
            if (j < l && contains(iota, j)) {
                out.a.push_back(alpha);
                out.b.push_back(centered(FunctionalKind::Nu, x.b[j]));
                alpha = Expr::one();
            }
        }
        out.a.push_back(alpha);
        out.b.push_back(x.b[l]);
        return out;
    }
    check_index_set(iota, l, kind == CollapseKind::RC ? "RC" : "UC");
    const Rational sign = kind == CollapseKind::RC ? 1 : -1;
    Expr beta = x.b[0];
    for (std::size_t j = 1; j <= l; ++j) {
        if (contains(iota, j)) {
            out.b.push_back(beta);
            out.a.push_back(x.a[j - 1]);
            beta = x.b[j];
        } else {
            beta = beta * (rho(x.a[j - 1]) * sign) * x.b[j];
        }
    }
    out.b.push_back(beta);
    return out;
}

LWord left_collapse(CollapseKind kind, const LWord& y, const IndexSet& iota) {
    const std::size_t l = y.length();
    if (y.a.size() != l + 1) throw std::invalid_argument("malformed left word");
    LWord out;
    if (kind == CollapseKind::LC) {
        check_index_set(iota, l, "LC'");
        Expr alpha = y.a[0];
        for (std::size_t j = 1; j <= l; ++j) {
            if (contains(iota, j)) {
                out.a.push_back(alpha);
                out.b.push_back(centered(FunctionalKind::Nu, y.b[j - 1]));
                alpha = y.a[j];
            } else {
                alpha *= y.a[j];
            }
        }
        out.a.push_back(alpha);
        return out;
    }
    check_index_set(iota, l == 0 ? 0 : l - 1, kind == CollapseKind::RC ? "RC'" : "UC'");
    if (l == 0) return y;
    const Rational sign = kind == CollapseKind::RC ? 1 : -1;
    out.a.push_back(y.a[0]);
    Expr beta = y.b[0];
    for (std::size_t j = 1; j < l; ++j) {
        if (contains(iota, j)) {
            out.b.push_back(beta);
            out.a.push_back(y.a[j]);
            beta = y.b[j];
        } else {
            beta = beta * (rho(y.a[j]) * sign) * y.b[j];
        }
    }
    out.b.push_back(beta);
    out.a.push_back(y.a[l]);
    return out;
}

bool is_right_kind(MomentKind k) {
    return k == MomentKind::RightL || k == MomentKind::RightR || k == MomentKind::RightU;
}
bool is_left_kind(MomentKind k) {
    return k == MomentKind::LeftL || k == MomentKind::LeftR || k == MomentKind::LeftU;
}
bool is_strong_kind(MomentKind k) {
    return k == MomentKind::StrongL || k == MomentKind::StrongR || k == MomentKind::StrongU;
}

Expr right_moment(MomentKind kind, const RWord& x, MomentStats* stats) {
    Right r{stats};
    switch (kind) {
        case MomentKind::RightL: return r.L(x);
        case MomentKind::RightR: return r.R(x);
        case MomentKind::RightU: return r.U(x);
        default: throw std::invalid_argument("right_moment: not a right moment kind");
    }
}

Expr left_moment(MomentKind kind, const LWord& y, MomentStats* stats) {
    Left r{stats};
    switch (kind) {
        case MomentKind::LeftL: return r.L(y);
        case MomentKind::LeftR: return r.R(y);
        case MomentKind::LeftU: return r.U(y);
        default: throw std::invalid_argument("left_moment: not a left moment kind");
    }
}

Expr strong_right_moment(MomentKind kind, const RWord& x, MomentStats* stats) {
    Strong r{stats};
    switch (kind) {
        case MomentKind::StrongL: return r.L(x);
        case MomentKind::StrongR: return r.R(x);
        case MomentKind::StrongU: return r.U(x);
        default: throw std::invalid_argument("strong_right_moment: not a strong moment kind");
    }
}

std::uint64_t term_count(MomentKind kind, std::size_t l) {
    if (l > 5) throw std::invalid_argument("term_count: length above 5");
    MomentStats stats;
    if (is_right_kind(kind)) {
        right_moment(kind, RWord::generic(l), &stats);
    } else if (is_left_kind(kind)) {
        left_moment(kind, LWord::generic(l), &stats);
    } else {
        strong_right_moment(kind, RWord::generic(l), &stats);
    }
    return stats.calls;
}

std::uint64_t term_count_bound(std::size_t l) {
    if (l > 6) throw std::invalid_argument("term_count_bound: length above 6");
    return std::uint64_t{1} << (3 * l * (l + 1) / 2);
}

}  // namespace ncm
