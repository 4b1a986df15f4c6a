// Exact rational coefficients on top of GMP. Every value is kept canonical
// (gcd(num, den) = 1, den > 0, zero is 0/1), which mpq maintains for all
// arithmetic results and which we enforce after raw construction.
#ifndef BSATO_RATIONAL_HPP
#define BSATO_RATIONAL_HPP

#include <gmpxx.h>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace bsato {

using Rational = mpq_class;
using Integer = mpz_class;

inline Rational make_rational(long num, long den = 1)
{
    if (den == 0)
        throw std::invalid_argument("rational: zero denominator");
    Rational q(num, den);
    q.canonicalize();
    return q;
}

inline Rational make_rational(const Integer& num, const Integer& den)
{
    if (den == 0)
        throw std::invalid_argument("rational: zero denominator");
    Rational q(num, den);
    q.canonicalize();
    return q;
}

// Accepts "123", "-4", "3/4", "-7/2". Used by the expression parser and the
// CLI --point option.
inline Rational rational_from_string(const std::string& s)
{
    if (s.empty())
        throw std::invalid_argument("rational: empty string");
    Rational q;
    if (q.set_str(s, 10) != 0)
        throw std::invalid_argument("rational: cannot parse '" + s + "'");
    if (q.get_den() == 0)
        throw std::invalid_argument("rational: zero denominator in '" + s + "'");
    q.canonicalize();
    return q;
}

inline std::string rational_to_string(const Rational& q)
{
    return q.get_str();
}

inline bool is_integer(const Rational& q) { return q.get_den() == 1; }

}  // namespace bsato

#endif
