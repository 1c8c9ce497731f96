#include "tcdark/rational.hpp"

#include <stdexcept>

namespace tcdark {

std::string fraction_str(const Rational& r) {
    BigInt num = numerator(r);
    BigInt den = denominator(r);
    if (den == 1) return num.str();
    return num.str() + "/" + den.str();
}

Rational parse_fraction(std::string_view s) {
    if (s.empty()) throw std::invalid_argument("parse_fraction: empty string");
    auto slash = s.find('/');
    auto parse_int = [](std::string_view t) -> BigInt {
        if (t.empty()) throw std::invalid_argument("parse_fraction: empty component");
        std::size_t i = (t[0] == '-' || t[0] == '+') ? 1 : 0;
        if (i == t.size()) throw std::invalid_argument("parse_fraction: sign without digits");
        for (; i < t.size(); ++i)
            if (t[i] < '0' || t[i] > '9')
                throw std::invalid_argument("parse_fraction: invalid character");
        return BigInt(std::string(t));
    };
    if (slash == std::string_view::npos) return Rational(parse_int(s));
    BigInt num = parse_int(s.substr(0, slash));
    BigInt den = parse_int(s.substr(slash + 1));
    if (den == 0) throw std::invalid_argument("parse_fraction: zero denominator");
    return Rational(num) / Rational(den);
}

}  // namespace tcdark
