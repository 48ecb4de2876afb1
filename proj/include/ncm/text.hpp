#pragma once

// Text form of expressions.
//
//   a3, b0, a1*        generators (trailing * = adjoint)
//   r(x) R(x) p[t](x)  rho, R, phi_t
//   w(x) v(x)          omega, nu
//   3/2, -1            rational constants
//   juxtaposition or " * " is multiplication, + and - separate terms,
//   parentheses group.

#include "ncm/expr.hpp"

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace ncm {

class ParseError : public std::invalid_argument {
public:
    ParseError(const std::string& msg, std::size_t pos)
        : std::invalid_argument(msg + " at offset " + std::to_string(pos)), pos_(pos) {}
    std::size_t position() const { return pos_; }

private:
    std::size_t pos_;
};

// Unnormalized syntax tree, as written.
struct RawExpr {
    enum class Kind { Sum, Product, Number, Generator, Map, Functional };
    Kind kind = Kind::Number;
    std::vector<RawExpr> children;
    Rational number;
    Algebra algebra = Algebra::A;
    std::uint32_t id = 0;
    bool adjoint = false;
    MapSymbol map;
    FunctionalKind functional = FunctionalKind::Omega;
};

RawExpr parse_raw(std::string_view text);
Expr normalize(const RawExpr& raw);
Expr parse(std::string_view text);

// Top-level comma separated list, optionally wrapped in one pair of parentheses:
// "(b0, a1 a2, b2)" or "b0, a1, b1".
std::vector<Expr> parse_list(std::string_view text);

std::string canonical_text(const Expr& e);
std::string canonical_text(const Word& w);
std::string latex(const Expr& e);

}  // namespace ncm
