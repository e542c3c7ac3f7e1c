#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

#include "spingw/error.hpp"

namespace spingw {

// GMP keeps mpq_class canonical after every arithmetic operation.
using Rational = mpq_class;
using Integer = mpz_class;

/// "numerator/denominator" in base 10; integers print without a denominator.
inline std::string to_string(const Rational &q) { return q.get_str(10); }

/// Parses "a/b" or "a". The result is canonicalized; a zero denominator or any
/// stray character is rejected.
inline Rational parse_rational(std::string_view text)
{
    if (text.empty())
        throw DomainError("empty rational literal");
    std::size_t start = (text.front() == '-' || text.front() == '+') ? 1 : 0;
    bool seen_slash = false;
    bool digit_before = false;
    bool digit_after = false;
    for (std::size_t i = start; i < text.size(); ++i) {
        char c = text[i];
        if (c == '/' && !seen_slash) {
            seen_slash = true;
        } else if (c >= '0' && c <= '9') {
            (seen_slash ? digit_after : digit_before) = true;
        } else {
            throw DomainError("malformed rational literal '" + std::string(text) + "'");
        }
    }
    if (!digit_before || (seen_slash && !digit_after))
        throw DomainError("malformed rational literal '" + std::string(text) + "'");
    std::string s(text.front() == '+' ? text.substr(1) : text);
    Rational q;
    q.set_str(s, 10);
    if (q.get_den() == 0)
        throw DomainError("zero denominator in '" + std::string(text) + "'");
    q.canonicalize();
    return q;
}

/// n/d in lowest terms; GMP arithmetic requires canonical operands.
inline Rational ratio(long n, long d)
{
    if (d == 0)
        throw DomainError("zero denominator");
    Rational q(n, d);
    q.canonicalize();
    return q;
}

inline Integer factorial(unsigned long n)
{
    Integer out;
    mpz_fac_ui(out.get_mpz_t(), n);
    return out;
}

/// Binomial coefficient with the convention C(n, k) = 0 unless 0 <= k <= n.
inline Integer binomial(long n, long k)
{
    if (n < 0 || k < 0 || k > n)
        return 0;
    Integer out;
    mpz_bin_uiui(out.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
    return out;
}

inline Rational power(const Rational &base, unsigned long exponent)
{
    Integer num, den;
    mpz_pow_ui(num.get_mpz_t(), base.get_num_mpz_t(), exponent);
    mpz_pow_ui(den.get_mpz_t(), base.get_den_mpz_t(), exponent);
    return Rational(num, den);
}

} // namespace spingw
