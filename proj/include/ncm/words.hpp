#pragma once

// Alternating words and timed words: the inputs of the moment recursions.

#include "ncm/expr.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace ncm {

// (b0, a1, b1, ..., a_l, b_l)
struct RWord {
    std::vector<Expr> b;  // l + 1 entries
    std::vector<Expr> a;  // l entries, a[j-1] is a_j
    std::size_t length() const { return a.size(); }
    static RWord generic(std::size_t l);  // b0 a1 b1 ... a_l b_l
    std::vector<Expr> entries() const;
    Expr product() const;
};

// (a0, b1, a1, ..., b_l, a_l)
struct LWord {
    std::vector<Expr> a;  // l + 1 entries
    std::vector<Expr> b;  // l entries, b[j-1] is b_j
    std::size_t length() const { return b.size(); }
    static LWord generic(std::size_t l);  // a0 b1 a1 ... b_l a_l
    std::vector<Expr> entries() const;
    Expr product() const;
};

struct TimedWord {
    std::vector<Rational> times;
    std::vector<Expr> letters;
    std::size_t size() const { return letters.size(); }
};

RWord make_rword(const std::vector<Expr>& entries);
LWord make_lword(const std::vector<Expr>& entries);

// Either a comma separated entry list "(b0, a1 a2, b2)" or a plain word
// "b0 a1 b1"; a plain word is cut into maximal runs of A-side atoms
// (a<k>, R(..)) and B-side atoms (b<k>, r(..)), padding the ends with 1.
RWord parse_rword(std::string_view text);
LWord parse_lword(std::string_view text);
std::vector<Rational> parse_times(std::string_view text);
TimedWord parse_timed_word(std::string_view times, std::string_view letters);

std::string to_text(const RWord& x);
std::string to_text(const LWord& y);
std::string to_text(const std::vector<Expr>& entries);
std::string to_text(const TimedWord& tw);

bool operator==(const RWord& x, const RWord& y);
bool operator==(const LWord& x, const LWord& y);

}  // namespace ncm
