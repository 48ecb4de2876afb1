#include "ncm/rational.hpp"

#include <cctype>
#include <stdexcept>

namespace ncm {

Rational parse_rational(std::string_view text) {
    std::string s(text);
    auto bad = [&] { return std::invalid_argument("malformed rational '" + s + "'"); };
    if (s.empty()) throw bad();
    std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    std::size_t slash = s.find('/');
    auto digits = [&](std::size_t from, std::size_t to) {
        if (from >= to) return false;
        for (std::size_t k = from; k < to; ++k)
            if (!std::isdigit(static_cast<unsigned char>(s[k]))) return false;
        return true;
    };
    if (slash == std::string::npos) {
        if (!digits(i, s.size())) throw bad();
    } else if (!digits(i, slash) || !digits(slash + 1, s.size())) {
        throw bad();
    }
    Rational q;
    if (q.set_str(s[0] == '+' ? s.substr(1) : s, 10) != 0) throw bad();
    if (q.get_den() == 0) throw std::invalid_argument("zero denominator in '" + s + "'");
    q.canonicalize();
    return q;
}

std::string to_string(const Rational& q) { return q.get_str(); }

double to_double(const Rational& q) { return q.get_d(); }

}  // namespace ncm
