#include "pbounds/numeric_types.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <string>

namespace pbounds {

Rational rationalize(double value, int digits)
{
    if (!std::isfinite(value)) {
        throw std::invalid_argument("rationalize: non-finite value");
    }
    if (digits < 1 || digits > 200) {
        throw std::invalid_argument("rationalize: digits must lie in [1, 200]");
    }
    if (value == 0.0) {
        return Rational(0);
    }
    // %.*e gives "d.ddddde[+-]xx"; strip the point and rescale by the exponent.
    std::string buf(static_cast<std::size_t>(digits) + 32, '\0');
    const int len = std::snprintf(buf.data(), buf.size(), "%.*e", digits - 1, value);
    buf.resize(static_cast<std::size_t>(len));
    const auto epos = buf.find('e');
    std::string mantissa = buf.substr(0, epos);
    const int exponent = std::stoi(buf.substr(epos + 1));
    std::string digits_only;
    for (char c : mantissa) {
        if (c != '.') {
            digits_only.push_back(c);
        }
    }
    mpz_class numerator(digits_only, 10);
    const int shift = exponent - (digits - 1);
    mpz_class power;
    mpz_ui_pow_ui(power.get_mpz_t(), 10, static_cast<unsigned long>(std::abs(shift)));
    Rational q = shift >= 0 ? Rational(numerator * power) : Rational(numerator, power);
    q.canonicalize();
    return q;
}

std::string to_string(const Rational& q) { return q.get_str(); }

} // namespace pbounds
