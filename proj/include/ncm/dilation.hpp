#pragma once

#include "ncm/liberation.hpp"
#include "ncm/words.hpp"

#include <optional>

namespace ncm {

struct Shifted {
    Rational tau;
    std::vector<Rational> s;
};

Shifted psi_n(const std::vector<Rational>& t);
std::vector<Rational> psi_inverse(const Shifted& p);

struct IndexRange {
    std::size_t begin, end;  // half-open, 0-based
    bool empty() const { return begin == end; }
    std::size_t size() const { return end - begin; }
};

// s = N_0 S_0 N_1 ... S_{m-1} N_m with s = t - min t. zero_blocks has m + 1
// entries, the first and last possibly empty; pos_blocks has m entries.
struct StandardDecomposition {
    Rational tau;
    std::vector<IndexRange> zero_blocks;
    std::vector<IndexRange> pos_blocks;
    std::size_t m = 0;
};

StandardDecomposition standard_decomposition(const std::vector<Rational>& t);
inline StandardDecomposition standard_decomposition(const TimedWord& tw) { return standard_decomposition(tw.times); }

TimedWord merge_equal_times(const TimedWord& tw);

// ss(tw) = phi_tau(prefix ss(core) suffix). Core times are already shifted by tau.
struct BoundaryReduction {
    Rational tau;
    std::optional<Expr> prefix, suffix;
    TimedWord core;
};
BoundaryReduction reduce_boundary(const TimedWord& tw);

Expr ss(const TimedWord& tw);
// Branches on `structure`; phi subscripts are computed from `values`.
Expr ss_structured(const std::vector<Rational>& structure, const std::vector<Rational>& values,
                   const std::vector<Expr>& letters);

// The collapses and DRM/DUM read the blocks of the given times directly:
// zero blocks are the letters at time 0.
enum class DiachronicKind { DLC, DRC, DUC };
TimedWord diachronic_collapse(DiachronicKind kind, const TimedWord& tw, const IndexSet& iota);
Expr drm(const TimedWord& tw);
Expr dum(const TimedWord& tw);

}  // namespace ncm
