#include "ncm/words.hpp"

#include "ncm/text.hpp"

#include <sstream>
#include <stdexcept>

namespace ncm {

namespace {

enum class Side { A, B };

Side side_of(const Atom& atom) {
    if (atom.is_generator()) return atom.algebra() == Algebra::A ? Side::A : Side::B;
    switch (atom.map().kind) {
        case MapKind::Rho: return Side::B;
        case MapKind::CapR: return Side::A;
        case MapKind::Phi: break;
    }
    throw std::invalid_argument("cannot place " + canonical_text(Word{atom}) +
                                " on a side; separate entries with commas");
}

std::vector<Expr> split_entries(std::string_view text, Side first, Side last) {
    bool has_comma = false;
    int depth = 0;
    for (char c : text) {
        if (c == '(' || c == '[') ++depth;
        if (c == ')' || c == ']') --depth;
        if (c == ',' && depth == 0) has_comma = true;
    }
    if (has_comma) return parse_list(text);
    Expr e = parse(text);
    if (e == Expr::one()) return {e};
    if (!e.is_word()) return parse_list(text);
    std::vector<Expr> out;
    Side cur = first;
    Word run;
    for (const auto& atom : e.terms()[0].word) {
        Side s = side_of(atom);
        if (s != cur) {
            out.push_back(Expr::from_word(run));
            run.clear();
            cur = s;
        }
        run.push_back(atom);
    }
    out.push_back(Expr::from_word(run));
    if (cur != last) out.push_back(Expr::one());
    return out;
}

template <class W>
std::vector<Expr> interleave(const std::vector<Expr>& outer, const std::vector<Expr>& inner) {
    std::vector<Expr> out;
    for (std::size_t i = 0; i < outer.size(); ++i) {
        out.push_back(outer[i]);
        if (i < inner.size()) out.push_back(inner[i]);
    }
    return out;
}

}  // namespace

RWord RWord::generic(std::size_t l) {
    RWord x;
    for (std::size_t j = 0; j <= l; ++j) {
        x.b.push_back(Expr::b(static_cast<std::uint32_t>(j)));
        if (j > 0) x.a.push_back(Expr::a(static_cast<std::uint32_t>(j)));
    }
    return x;
}

std::vector<Expr> RWord::entries() const { return interleave<RWord>(b, a); }

Expr RWord::product() const { return ncm::product(entries()); }

LWord LWord::generic(std::size_t l) {
    LWord y;
    for (std::size_t j = 0; j <= l; ++j) {
        y.a.push_back(Expr::a(static_cast<std::uint32_t>(j)));
        if (j > 0) y.b.push_back(Expr::b(static_cast<std::uint32_t>(j)));
    }
    return y;
}

std::vector<Expr> LWord::entries() const { return interleave<LWord>(a, b); }

Expr LWord::product() const { return ncm::product(entries()); }

RWord make_rword(const std::vector<Expr>& entries) {
    if (entries.size() % 2 == 0) throw std::invalid_argument("right word needs an odd number of entries");
    RWord x;
    for (std::size_t i = 0; i < entries.size(); ++i) (i % 2 ? x.a : x.b).push_back(entries[i]);
    return x;
}

LWord make_lword(const std::vector<Expr>& entries) {
    if (entries.size() % 2 == 0) throw std::invalid_argument("left word needs an odd number of entries");
    LWord y;
    for (std::size_t i = 0; i < entries.size(); ++i) (i % 2 ? y.b : y.a).push_back(entries[i]);
    return y;
}

RWord parse_rword(std::string_view text) { return make_rword(split_entries(text, Side::B, Side::B)); }

LWord parse_lword(std::string_view text) { return make_lword(split_entries(text, Side::A, Side::A)); }

std::vector<Rational> parse_times(std::string_view text) {
    std::vector<Rational> out;
    std::string s(text);
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        auto a = item.find_first_not_of(" \t()");
        auto b = item.find_last_not_of(" \t()");
        if (a == std::string::npos) throw std::invalid_argument("empty time in '" + s + "'");
        Rational t = parse_rational(item.substr(a, b - a + 1));
        if (t < 0) throw std::invalid_argument("negative time in '" + s + "'");
        out.push_back(t);
    }
    if (out.empty()) throw std::invalid_argument("no times given");
    return out;
}

TimedWord parse_timed_word(std::string_view times, std::string_view letters) {
    TimedWord tw{parse_times(times), parse_list(letters)};
    if (tw.times.size() != tw.letters.size()) throw std::invalid_argument("times and letters differ in length");
    return tw;
}

std::string to_text(const std::vector<Expr>& entries) {
    std::string s = "(";
    for (std::size_t i = 0; i < entries.size(); ++i) {
        if (i) s += ", ";
        s += canonical_text(entries[i]);
    }
    return s + ")";
}

std::string to_text(const RWord& x) { return to_text(x.entries()); }

std::string to_text(const LWord& y) { return to_text(y.entries()); }

std::string to_text(const TimedWord& tw) {
    std::string s = "(";
    for (std::size_t i = 0; i < tw.size(); ++i) {
        if (i) s += ", ";
        s += to_string(tw.times[i]) + ": " + canonical_text(tw.letters[i]);
    }
    return s + ")";
}

bool operator==(const RWord& x, const RWord& y) { return x.a == y.a && x.b == y.b; }

bool operator==(const LWord& x, const LWord& y) { return x.a == y.a && x.b == y.b; }

}  // namespace ncm
