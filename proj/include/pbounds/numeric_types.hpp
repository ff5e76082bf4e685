#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>

namespace pbounds {

/// Raised when a computation cannot deliver a trustworthy result.
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Exact rational scalar used by all polynomial assembly.
using Rational = mpq_class;

/// Software floating point with run-time precision.
using ExtendedReal = mpf_class;

/// Number of mantissa bits needed to carry `digits` significant decimal digits.
inline mp_bitcnt_t bits_for_digits(int digits)
{
    // log2(10) = 3.3219..., plus a guard limb worth of bits.
    return static_cast<mp_bitcnt_t>(digits * 3.3219280948873623) + 64;
}

/// Rounds a double to a rational with `digits` significant decimal digits.
Rational rationalize(double value, int digits);

/// Converts a rational to double, truncating toward zero (GMP semantics, at most 1 ulp off).
inline double to_double(const Rational& q) { return q.get_d(); }

inline double to_double(const ExtendedReal& x) { return x.get_d(); }

std::string to_string(const Rational& q);

} // namespace pbounds
