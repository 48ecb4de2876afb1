#include "ncm/expr.hpp"

#include <algorithm>
#include <utility>

namespace ncm {

namespace {

int sign_of(int c) { return (c > 0) - (c < 0); }

int compare_rational(const Rational& x, const Rational& y) { return sign_of(cmp(x, y)); }

template <class T, class Cmp>
int compare_seq(const std::vector<T>& x, const std::vector<T>& y, Cmp cmp_elem) {
    if (x.size() != y.size()) return x.size() < y.size() ? -1 : 1;
    for (std::size_t i = 0; i < x.size(); ++i) {
        int c = cmp_elem(x[i], y[i]);
        if (c != 0) return c;
    }
    return 0;
}

std::vector<ScalarFactor> merge_scalars(const std::vector<ScalarFactor>& x,
                                        const std::vector<ScalarFactor>& y) {
    std::vector<ScalarFactor> out;
    out.reserve(x.size() + y.size());
    std::merge(x.begin(), x.end(), y.begin(), y.end(), std::back_inserter(out),
               [](const ScalarFactor& p, const ScalarFactor& q) { return compare(p, q) < 0; });
    return out;
}

Word concat(const Word& x, const Word& y) {
    Word w;
    w.reserve(x.size() + y.size());
    w.insert(w.end(), x.begin(), x.end());
    w.insert(w.end(), y.begin(), y.end());
    return w;
}

// Result of applying a map to a single word (coefficient 1, no scalars).
Word map_word(const MapSymbol& m, const Word& w) {
    if (m.kind == MapKind::Phi && m.time == 0) return w;
    if (w.empty() && m.kind != MapKind::CapR) return {};
    if (m.kind == MapKind::Phi && w.size() == 1 && !w[0].is_generator() &&
        w[0].map().kind == MapKind::Phi) {
        return map_word(MapSymbol::phi(m.time + w[0].map().time), w[0].arg());
    }
    return {Atom::map_app(m, w)};
}

Word star_word(const Word& w) {
    Word out;
    out.reserve(w.size());
    for (auto it = w.rbegin(); it != w.rend(); ++it) {
        if (it->is_generator()) {
            out.push_back(Atom::generator(it->algebra(), it->id(), !it->adjoint()));
        } else {
            out.push_back(Atom::map_app(it->map(), star_word(it->arg())));
        }
    }
    return out;
}

std::size_t word_atoms(const Word& w) {
    std::size_t n = 0;
    for (const auto& a : w) n += 1 + (a.is_generator() ? 0 : word_atoms(a.arg()));
    return n;
}

}  // namespace

MapSymbol MapSymbol::phi(const Rational& t) {
    if (t < 0) throw std::invalid_argument("negative time in phi_t");
    return {MapKind::Phi, t};
}

Atom Atom::generator(Algebra alg, std::uint32_t id, bool adjoint) {
    Atom a;
    a.id_ = id;
    a.alg_ = alg;
    a.adjoint_ = adjoint;
    return a;
}

Atom Atom::map_app(MapSymbol map, Word arg) {
    Atom a;
    if (map.kind != MapKind::Phi) map.time = 0;
    a.node_ = std::make_shared<const MapNode>(MapNode{std::move(map), std::move(arg)});
    return a;
}

int compare(const Atom& x, const Atom& y) {
    if (x.is_generator() != y.is_generator()) return x.is_generator() ? -1 : 1;
    if (x.is_generator()) {
        if (x.algebra() != y.algebra()) return x.algebra() < y.algebra() ? -1 : 1;
        if (x.id() != y.id()) return x.id() < y.id() ? -1 : 1;
        if (x.adjoint() != y.adjoint()) return x.adjoint() ? 1 : -1;
        return 0;
    }
    const auto& mx = x.map();
    const auto& my = y.map();
    if (mx.kind != my.kind) return mx.kind < my.kind ? -1 : 1;
    if (int c = compare_rational(mx.time, my.time)) return c;
    return compare(x.arg(), y.arg());
}

int compare(const Word& x, const Word& y) {
    return compare_seq(x, y, [](const Atom& p, const Atom& q) { return compare(p, q); });
}

int compare(const ScalarFactor& x, const ScalarFactor& y) {
    if (x.kind != y.kind) return x.kind < y.kind ? -1 : 1;
    return compare(x.arg, y.arg);
}

int compare_scalars(const std::vector<ScalarFactor>& x, const std::vector<ScalarFactor>& y) {
    return compare_seq(x, y, [](const ScalarFactor& p, const ScalarFactor& q) { return compare(p, q); });
}

int compare_monomial(const Term& x, const Term& y) {
    if (int c = compare(x.word, y.word)) return c;
    return compare_scalars(x.scalars, y.scalars);
}

Expr Expr::constant(const Rational& c) {
    Expr e;
    if (c != 0) e.terms_.push_back(Term{c, {}, {}});
    return e;
}

Expr Expr::gen(Algebra alg, std::uint32_t id, bool adjoint) {
    return from_word({Atom::generator(alg, id, adjoint)});
}

Expr Expr::from_word(Word w, const Rational& c) {
    Expr e;
    if (c != 0) e.terms_.push_back(Term{c, {}, std::move(w)});
    return e;
}

Expr Expr::from_terms(std::vector<Term> terms) {
    for (auto& t : terms) {
        std::sort(t.scalars.begin(), t.scalars.end(),
                  [](const ScalarFactor& p, const ScalarFactor& q) { return compare(p, q) < 0; });
    }
    std::sort(terms.begin(), terms.end(),
              [](const Term& p, const Term& q) { return compare_monomial(p, q) < 0; });
    Expr e;
    for (auto& t : terms) {
        if (!e.terms_.empty() && compare_monomial(e.terms_.back(), t) == 0) {
            e.terms_.back().coeff += t.coeff;
        } else {
            if (!e.terms_.empty() && e.terms_.back().coeff == 0) e.terms_.pop_back();
            e.terms_.push_back(std::move(t));
        }
    }
    if (!e.terms_.empty() && e.terms_.back().coeff == 0) e.terms_.pop_back();
    return e;
}

bool Expr::is_word() const {
    return terms_.size() == 1 && terms_[0].coeff == 1 && terms_[0].scalars.empty();
}

bool Expr::is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && terms_[0].scalars.empty() && terms_[0].word.empty());
}

Rational Expr::constant_value() const {
    if (!is_constant()) throw std::logic_error("Expr is not a constant");
    return terms_.empty() ? Rational(0) : terms_[0].coeff;
}

std::size_t Expr::atom_count() const {
    std::size_t n = 0;
    for (const auto& t : terms_) {
        n += word_atoms(t.word);
        for (const auto& s : t.scalars) n += 1 + word_atoms(s.arg);
    }
    return n;
}

Expr& Expr::operator+=(const Expr& o) {
    std::vector<Term> out;
    out.reserve(terms_.size() + o.terms_.size());
    std::size_t i = 0, j = 0;
    while (i < terms_.size() || j < o.terms_.size()) {
        int c = i == terms_.size()     ? 1
                : j == o.terms_.size() ? -1
                                       : compare_monomial(terms_[i], o.terms_[j]);
        if (c < 0) {
            out.push_back(std::move(terms_[i++]));
        } else if (c > 0) {
            out.push_back(o.terms_[j++]);
        } else {
            Term t = std::move(terms_[i++]);
            t.coeff += o.terms_[j++].coeff;
            if (t.coeff != 0) out.push_back(std::move(t));
        }
    }
    terms_ = std::move(out);
    return *this;
}

Expr& Expr::operator-=(const Expr& o) { return *this += -Expr(o); }

Expr& Expr::operator*=(const Rational& c) {
    if (c == 0) {
        terms_.clear();
    } else {
        for (auto& t : terms_) t.coeff *= c;
    }
    return *this;
}

Expr& Expr::operator*=(const Expr& o) { return *this = *this * o; }

Expr operator*(const Expr& x, const Expr& y) {
    if (x.is_zero() || y.is_zero()) return {};
    if (y.is_constant()) return x * y.constant_value();
    if (x.is_constant()) return y * x.constant_value();
    std::vector<Term> out;
    out.reserve(x.terms_.size() * y.terms_.size());
    for (const auto& p : x.terms_) {
        for (const auto& q : y.terms_) {
            out.push_back(Term{p.coeff * q.coeff, merge_scalars(p.scalars, q.scalars),
                               concat(p.word, q.word)});
        }
    }
    return Expr::from_terms(std::move(out));
}

bool operator==(const Expr& x, const Expr& y) {
    if (x.terms_.size() != y.terms_.size()) return false;
    for (std::size_t i = 0; i < x.terms_.size(); ++i) {
        if (x.terms_[i].coeff != y.terms_[i].coeff) return false;
        if (compare_monomial(x.terms_[i], y.terms_[i]) != 0) return false;
    }
    return true;
}

bool operator<(const Expr& x, const Expr& y) {
    std::size_t n = std::min(x.terms_.size(), y.terms_.size());
    for (std::size_t i = 0; i < n; ++i) {
        if (int c = compare_monomial(x.terms_[i], y.terms_[i])) return c < 0;
        if (int c = compare_rational(x.terms_[i].coeff, y.terms_[i].coeff)) return c < 0;
    }
    return x.terms_.size() < y.terms_.size();
}

Expr apply_map(const MapSymbol& map, const Expr& x) {
    std::vector<Term> out;
    out.reserve(x.terms().size());
    for (const auto& t : x.terms()) out.push_back(Term{t.coeff, t.scalars, map_word(map, t.word)});
    return Expr::from_terms(std::move(out));
}

Expr apply_functional(FunctionalKind f, const Expr& x) {
    std::vector<Term> out;
    out.reserve(x.terms().size());
    for (const auto& t : x.terms()) {
        Term r{t.coeff, t.scalars, {}};
        if (!t.word.empty()) r.scalars.push_back(ScalarFactor{f, t.word});
        out.push_back(std::move(r));
    }
    return Expr::from_terms(std::move(out));
}

Expr centered(FunctionalKind f, const Expr& x) { return x - apply_functional(f, x); }

Expr star(const Expr& x) {
    std::vector<Term> out;
    out.reserve(x.terms().size());
    for (const auto& t : x.terms()) {
        Term r{t.coeff, {}, star_word(t.word)};
        for (const auto& s : t.scalars) r.scalars.push_back(ScalarFactor{s.kind, star_word(s.arg)});
        out.push_back(std::move(r));
    }
    return Expr::from_terms(std::move(out));
}

namespace {

Expr normalize_word(const Word& w) {
    Expr acc = Expr::one();
    for (const auto& a : w) {
        if (a.is_generator()) {
            acc *= Expr::from_word({a});
        } else {
            acc *= apply_map(a.map(), normalize_word(a.arg()));
        }
    }
    return acc;
}

}  // namespace

Expr normalize(const Expr& x) {
    Expr out;
    for (const auto& t : x.terms()) {
        Expr term = Expr::constant(t.coeff);
        for (const auto& s : t.scalars) term *= apply_functional(s.kind, normalize_word(s.arg));
        term *= normalize_word(t.word);
        out += term;
    }
    return out;
}

Expr product(const std::vector<Expr>& factors) {
    Expr acc = Expr::one();
    for (const auto& f : factors) acc *= f;
    return acc;
}

}  // namespace ncm
