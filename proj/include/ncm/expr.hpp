#pragma once

// Symbolic noncommutative polynomials over rational coefficients.
//
// An Expr is always kept in normal form: a sorted list of distinct terms
// with nonzero coefficients. Map and functional arguments are single words
// (linearity is applied when they are built), so an atom never carries a sum.

#include "ncm/rational.hpp"

#include <compare>
#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace ncm {

enum class Algebra : std::uint8_t { A = 0, B = 1 };
enum class MapKind : std::uint8_t { Rho = 0, CapR = 1, Phi = 2 };
enum class FunctionalKind : std::uint8_t { Omega = 0, Nu = 1 };

struct MapSymbol {
    MapKind kind = MapKind::Rho;
    Rational time;  // only meaningful for Phi

    static MapSymbol rho() { return {MapKind::Rho, 0}; }
    static MapSymbol cap_r() { return {MapKind::CapR, 0}; }
    static MapSymbol phi(const Rational& t);
};

class Atom;
using Word = std::vector<Atom>;

struct MapNode {
    MapSymbol map;
    Word arg;
};

class Atom {
public:
    enum class Kind : std::uint8_t { Generator, MapApp };

    static Atom generator(Algebra alg, std::uint32_t id, bool adjoint = false);
    // Raw constructor; does not apply any rewriting. Use apply_map on Exprs instead.
    static Atom map_app(MapSymbol map, Word arg);

    Kind kind() const { return node_ ? Kind::MapApp : Kind::Generator; }
    bool is_generator() const { return !node_; }

    Algebra algebra() const { return alg_; }
    std::uint32_t id() const { return id_; }
    bool adjoint() const { return adjoint_; }

    const MapSymbol& map() const { return node_->map; }
    const Word& arg() const { return node_->arg; }

private:
    std::uint32_t id_ = 0;
    Algebra alg_ = Algebra::A;
    bool adjoint_ = false;
    std::shared_ptr<const MapNode> node_;
};

struct ScalarFactor {
    FunctionalKind kind = FunctionalKind::Omega;
    Word arg;  // nonempty
};

struct Term {
    Rational coeff;
    std::vector<ScalarFactor> scalars;  // sorted multiset
    Word word;
};

int compare(const Atom& x, const Atom& y);
int compare(const Word& x, const Word& y);
int compare(const ScalarFactor& x, const ScalarFactor& y);
int compare_scalars(const std::vector<ScalarFactor>& x, const std::vector<ScalarFactor>& y);
// Order on (word, scalars); coefficients are ignored.
int compare_monomial(const Term& x, const Term& y);

inline bool operator==(const Atom& x, const Atom& y) { return compare(x, y) == 0; }
inline bool operator<(const Atom& x, const Atom& y) { return compare(x, y) < 0; }

class Expr {
public:
    Expr() = default;  // zero

    static Expr zero() { return {}; }
    static Expr one() { return constant(1); }
    static Expr constant(const Rational& c);
    static Expr gen(Algebra alg, std::uint32_t id, bool adjoint = false);
    static Expr a(std::uint32_t id) { return gen(Algebra::A, id); }
    static Expr b(std::uint32_t id) { return gen(Algebra::B, id); }
    static Expr from_word(Word w, const Rational& c = 1);
    // Builds from arbitrary terms: sorts, merges and drops zeros.
    static Expr from_terms(std::vector<Term> terms);

    const std::vector<Term>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }
    // A single term with coefficient 1, no scalars.
    bool is_word() const;
    // Constant c * 1 (including zero).
    bool is_constant() const;
    Rational constant_value() const;
    // Total number of atoms across all terms, counting nested arguments.
    std::size_t atom_count() const;

    Expr& operator+=(const Expr& o);
    Expr& operator-=(const Expr& o);
    Expr& operator*=(const Expr& o);
    Expr& operator*=(const Rational& c);

    friend Expr operator+(Expr x, const Expr& y) { return x += y; }
    friend Expr operator-(Expr x, const Expr& y) { return x -= y; }
    friend Expr operator*(const Expr& x, const Expr& y);
    friend Expr operator*(Expr x, const Rational& c) { return x *= c; }
    friend Expr operator*(const Rational& c, Expr x) { return x *= c; }
    friend Expr operator-(Expr x) { return x *= Rational(-1); }

    friend bool operator==(const Expr& x, const Expr& y);
    friend bool operator!=(const Expr& x, const Expr& y) { return !(x == y); }
    // Canonical total order (used for sorting fixtures and tests only).
    friend bool operator<(const Expr& x, const Expr& y);

private:
    std::vector<Term> terms_;
};

// Linear extension of a map to an Expr. Scalars and coefficients are pulled
// out; rho(1) = phi_t(1) = 1; phi_0 = id; phi_s(phi_t(x)) = phi_{s+t}(x).
Expr apply_map(const MapSymbol& map, const Expr& x);
inline Expr rho(const Expr& x) { return apply_map(MapSymbol::rho(), x); }
inline Expr cap_r(const Expr& x) { return apply_map(MapSymbol::cap_r(), x); }
inline Expr phi(const Rational& t, const Expr& x) { return apply_map(MapSymbol::phi(t), x); }

// Linear extension of a state; omega(1) = nu(1) = 1.
Expr apply_functional(FunctionalKind f, const Expr& x);
inline Expr omega(const Expr& x) { return apply_functional(FunctionalKind::Omega, x); }
inline Expr nu(const Expr& x) { return apply_functional(FunctionalKind::Nu, x); }

// x - f(x) 1
Expr centered(FunctionalKind f, const Expr& x);

// Conjugate-linear involution: reverses words, toggles generator adjoints,
// and sends f(w) to f(w*).
Expr star(const Expr& x);

// Rebuilds every atom through the rewriting rules. Idempotent.
Expr normalize(const Expr& x);

Expr product(const std::vector<Expr>& factors);

}  // namespace ncm
