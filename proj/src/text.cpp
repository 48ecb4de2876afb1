#include "ncm/text.hpp"

#include <cctype>
#include <sstream>

namespace ncm {

namespace {

class Parser {
public:
    explicit Parser(std::string_view s) : s_(s) {}

    RawExpr parse_all() {
        RawExpr e = expr();
        skip_ws();
        if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
        return e;
    }

private:
    std::string_view s_;
    std::size_t pos_ = 0;

    [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, pos_); }

    void skip_ws() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }
    char peek() {
        skip_ws();
        return pos_ < s_.size() ? s_[pos_] : '\0';
    }
    void expect(char c) {
        if (peek() != c) fail(std::string("expected '") + c + "'");
        ++pos_;
    }

    static RawExpr number(const Rational& q) {
        RawExpr r;
        r.kind = RawExpr::Kind::Number;
        r.number = q;
        return r;
    }

    RawExpr expr() {
        RawExpr sum;
        sum.kind = RawExpr::Kind::Sum;
        bool negate = false;
        char c = peek();
        if (c == '+' || c == '-') {
            negate = c == '-';
            ++pos_;
        }
        while (true) {
            RawExpr t = term();
            if (negate) {
                RawExpr p;
                p.kind = RawExpr::Kind::Product;
                p.children.push_back(number(-1));
                p.children.push_back(std::move(t));
                t = std::move(p);
            }
            sum.children.push_back(std::move(t));
            c = peek();
            if (c != '+' && c != '-') break;
            negate = c == '-';
            ++pos_;
        }
        return sum;
    }

    bool starts_factor(char c) const {
        return c == '(' || std::isdigit(static_cast<unsigned char>(c)) || std::isalpha(static_cast<unsigned char>(c));
    }

    RawExpr term() {
        RawExpr p;
        p.kind = RawExpr::Kind::Product;
        p.children.push_back(factor());
        while (true) {
            char c = peek();
            if (c == '*') {
                ++pos_;
                p.children.push_back(factor());
            } else if (starts_factor(c)) {
                p.children.push_back(factor());
            } else {
                break;
            }
        }
        return p;
    }

    std::string digits() {
        std::size_t start = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        return std::string(s_.substr(start, pos_ - start));
    }

    Rational rational_literal() {
        skip_ws();
        std::size_t start = pos_;
        std::string text;
        if (pos_ < s_.size() && (s_[pos_] == '-' || s_[pos_] == '+')) text += s_[pos_++];
        std::string num = digits();
        if (num.empty()) {
            pos_ = start;
            fail("expected a rational");
        }
        text += num;
        if (pos_ < s_.size() && s_[pos_] == '/') {
            ++pos_;
            std::string den = digits();
            if (den.empty()) fail("expected a denominator");
            text += "/" + den;
        }
        try {
            return parse_rational(text);
        } catch (const std::invalid_argument& e) {
            pos_ = start;
            fail(e.what());
        }
    }

    RawExpr factor() {
        char c = peek();
        std::size_t start = pos_;
        if (c == '(') {
            ++pos_;
            RawExpr e = expr();
            expect(')');
            return e;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) return number(rational_literal());
        if (!std::isalpha(static_cast<unsigned char>(c))) fail("expected a factor");
        std::size_t id_start = pos_;
        while (pos_ < s_.size() && std::isalpha(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        std::string name(s_.substr(id_start, pos_ - id_start));

        if ((name == "a" || name == "b") && pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
            std::string num = digits();
            RawExpr g;
            g.kind = RawExpr::Kind::Generator;
            g.algebra = name == "a" ? Algebra::A : Algebra::B;
            try {
                unsigned long v = std::stoul(num);
                if (v > 0xffffffffUL) throw std::out_of_range("id");
                g.id = static_cast<std::uint32_t>(v);
            } catch (const std::exception&) {
                pos_ = start;
                fail("generator id out of range");
            }
            if (pos_ < s_.size() && s_[pos_] == '*') {
                // "a1*" is an adjoint; "a1 * b1" is a product.
                ++pos_;
                g.adjoint = true;
            }
            return g;
        }
        if (name == "r" || name == "R" || name == "p") {
            RawExpr m;
            m.kind = RawExpr::Kind::Map;
            if (name == "p") {
                expect('[');
                std::size_t tpos = pos_;
                Rational t = rational_literal();
                if (t < 0) {
                    pos_ = tpos;
                    fail("negative time in phi_t");
                }
                expect(']');
                m.map = MapSymbol::phi(t);
            } else {
                m.map = name == "r" ? MapSymbol::rho() : MapSymbol::cap_r();
            }
            expect('(');
            m.children.push_back(expr());
            expect(')');
            return m;
        }
        if (name == "w" || name == "v") {
            RawExpr f;
            f.kind = RawExpr::Kind::Functional;
            f.functional = name == "w" ? FunctionalKind::Omega : FunctionalKind::Nu;
            expect('(');
            f.children.push_back(expr());
            expect(')');
            return f;
        }
        bool call = peek() == '(';
        pos_ = start;
        fail((call ? "unknown map symbol '" : "unknown symbol '") + name + "'");
    }
};

void render_word(std::ostream& os, const Word& w);

void render_atom(std::ostream& os, const Atom& a) {
    if (a.is_generator()) {
        os << (a.algebra() == Algebra::A ? 'a' : 'b') << a.id();
        if (a.adjoint()) os << '*';
        return;
    }
    switch (a.map().kind) {
        case MapKind::Rho: os << "r("; break;
        case MapKind::CapR: os << "R("; break;
        case MapKind::Phi: os << "p[" << to_string(a.map().time) << "]("; break;
    }
    render_word(os, a.arg());
    os << ')';
}

void render_word(std::ostream& os, const Word& w) {
    if (w.empty()) {
        os << '1';
        return;
    }
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (i) os << ' ';
        render_atom(os, w[i]);
    }
}

void latex_word(std::ostream& os, const Word& w);

void latex_atom(std::ostream& os, const Atom& a) {
    if (a.is_generator()) {
        os << (a.algebra() == Algebra::A ? 'a' : 'b') << "_{" << a.id() << '}';
        if (a.adjoint()) os << "^{*}";
        return;
    }
    switch (a.map().kind) {
        case MapKind::Rho: os << "\\rho("; break;
        case MapKind::CapR: os << "R("; break;
        case MapKind::Phi: {
            const Rational& t = a.map().time;
            os << "\\phi_{";
            if (t.get_den() == 1) {
                os << t.get_num().get_str();
            } else {
                os << "\\frac{" << t.get_num().get_str() << "}{" << t.get_den().get_str() << '}';
            }
            os << "}(";
            break;
        }
    }
    latex_word(os, a.arg());
    os << ')';
}

void latex_word(std::ostream& os, const Word& w) {
    if (w.empty()) {
        os << '1';
        return;
    }
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (i) os << ' ';
        latex_atom(os, w[i]);
    }
}

template <class WordFn, class CoeffFn>
std::string render_terms(const Expr& e, WordFn word_fn, CoeffFn coeff_fn, const char* omega,
                         const char* nu, const char* times) {
    if (e.is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& t : e.terms()) {
        bool neg = t.coeff < 0;
        if (first) {
            if (neg) os << "- ";
        } else {
            os << (neg ? " - " : " + ");
        }
        first = false;
        Rational mag = abs(t.coeff);
        bool bare = t.scalars.empty() && t.word.empty();
        bool need_space = false;
        if (mag != 1 || bare) {
            coeff_fn(os, mag);
            need_space = true;
        }
        for (const auto& s : t.scalars) {
            if (need_space) os << ' ';
            os << (s.kind == FunctionalKind::Omega ? omega : nu) << '(';
            word_fn(os, s.arg);
            os << ')';
            need_space = true;
        }
        if (!t.word.empty()) {
            if (!t.scalars.empty()) {
                os << times;
            } else if (need_space) {
                os << ' ';
            }
            word_fn(os, t.word);
        }
    }
    return os.str();
}

}  // namespace

RawExpr parse_raw(std::string_view text) { return Parser(text).parse_all(); }

Expr normalize(const RawExpr& raw) {
    switch (raw.kind) {
        case RawExpr::Kind::Number: return Expr::constant(raw.number);
        case RawExpr::Kind::Generator: return Expr::gen(raw.algebra, raw.id, raw.adjoint);
        case RawExpr::Kind::Sum: {
            Expr acc;
            for (const auto& c : raw.children) acc += normalize(c);
            return acc;
        }
        case RawExpr::Kind::Product: {
            Expr acc = Expr::one();
            for (const auto& c : raw.children) acc *= normalize(c);
            return acc;
        }
        case RawExpr::Kind::Map: return apply_map(raw.map, normalize(raw.children.at(0)));
        case RawExpr::Kind::Functional: return apply_functional(raw.functional, normalize(raw.children.at(0)));
    }
    return {};
}

Expr parse(std::string_view text) { return normalize(parse_raw(text)); }

std::vector<Expr> parse_list(std::string_view text) {
    std::size_t a = text.find_first_not_of(" \t\n");
    std::size_t b = text.find_last_not_of(" \t\n");
    if (a == std::string_view::npos) throw ParseError("empty list", 0);
    std::string_view s = text.substr(a, b - a + 1);
    std::size_t offset = a;

    auto top_level_commas = [](std::string_view v) {
        std::vector<std::size_t> out;
        int depth = 0;
        for (std::size_t i = 0; i < v.size(); ++i) {
            char c = v[i];
            if (c == '(' || c == '[') ++depth;
            if (c == ')' || c == ']') --depth;
            if (c == ',' && depth == 0) out.push_back(i);
        }
        return out;
    };

    if (s.front() == '(' && s.back() == ')' && top_level_commas(s).empty()) {
        // Strip the wrapper only if it encloses the whole list.
        int depth = 0;
        std::size_t close = 0;
        for (std::size_t i = 0; i < s.size(); ++i) {
            if (s[i] == '(') ++depth;
            if (s[i] == ')' && --depth == 0) {
                close = i;
                break;
            }
        }
        std::string_view inner = s.substr(1, s.size() - 2);
        if (close == s.size() - 1 && !top_level_commas(inner).empty()) {
            s = inner;
            offset += 1;
        }
    }

    std::vector<Expr> out;
    std::size_t start = 0;
    auto cuts = top_level_commas(s);
    cuts.push_back(s.size());
    for (std::size_t cut : cuts) {
        try {
            out.push_back(parse(s.substr(start, cut - start)));
        } catch (const ParseError& e) {
            throw ParseError(std::string("in list entry: ") + e.what(), offset + start + e.position());
        }
        start = cut + 1;
    }
    return out;
}

std::string canonical_text(const Word& w) {
    std::ostringstream os;
    render_word(os, w);
    return os.str();
}

std::string canonical_text(const Expr& e) {
    return render_terms(
        e, [](std::ostream& os, const Word& w) { render_word(os, w); },
        [](std::ostream& os, const Rational& q) { os << to_string(q); }, "w", "v", " * ");
}

std::string latex(const Expr& e) {
    return render_terms(
        e, [](std::ostream& os, const Word& w) { latex_word(os, w); },
        [](std::ostream& os, const Rational& q) {
            if (q.get_den() == 1) {
                os << q.get_num().get_str();
            } else {
                os << "\\frac{" << q.get_num().get_str() << "}{" << q.get_den().get_str() << '}';
            }
        },
        "\\omega", "\\nu", " ");
}

}  // namespace ncm
