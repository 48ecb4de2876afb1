#pragma once

// Collapse and moment functions for right, left and strong right liberation.
//
// Right:  E[b0 a1 b1 ... a_l b_l] = LM(x) E[1], values in span of B-words.
// Left:   E[a0 b1 a1 ... b_l a_l] = LM'(y) E[1], values in span of A-words.
// Strong: as right, but a1 is centered by R and R(a1) leaves E on the left.

#include "ncm/words.hpp"

#include <cstdint>
#include <vector>

namespace ncm {

// Sorted, distinct, 1-based.
using IndexSet = std::vector<unsigned>;

enum class CollapseKind { LC, RC, UC };
enum class MomentKind { RightL, RightR, RightU, LeftL, LeftR, LeftU, StrongL, StrongR, StrongU };

RWord right_collapse(CollapseKind kind, const RWord& x, const IndexSet& iota);
LWord left_collapse(CollapseKind kind, const LWord& y, const IndexSet& iota);

// Invocation counter; pass to the moment functions to record every call.
struct MomentStats {
    std::uint64_t calls = 0;
};

Expr right_moment(MomentKind kind, const RWord& x, MomentStats* stats = nullptr);
Expr left_moment(MomentKind kind, const LWord& y, MomentStats* stats = nullptr);
Expr strong_right_moment(MomentKind kind, const RWord& x, MomentStats* stats = nullptr);

inline Expr lm(const RWord& x) { return right_moment(MomentKind::RightL, x); }
inline Expr rm(const RWord& x) { return right_moment(MomentKind::RightR, x); }
inline Expr um(const RWord& x) { return right_moment(MomentKind::RightU, x); }

bool is_right_kind(MomentKind k);
bool is_left_kind(MomentKind k);
bool is_strong_kind(MomentKind k);

// Invocations made while evaluating `kind` on the generic word of length l.
std::uint64_t term_count(MomentKind kind, std::size_t l);
// 8^{l(l+1)/2}
std::uint64_t term_count_bound(std::size_t l);

}  // namespace ncm
