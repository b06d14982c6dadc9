#pragma once

#include <cctype>
#include <cstddef>
#include <string>
#include <string_view>

#include <boost/multiprecision/gmp.hpp>

#include "altmoments/errors.hpp"

namespace altmoments
{
//---------------------------------------------------------------------------//
/*!
 * Exact rational scalar.
 *
 * Every identity in the library is checked in this type. Expression
 * templates are disabled so that `auto` always holds a value.
 */
using Rational = boost::multiprecision::number<boost::multiprecision::gmp_rational,
                                               boost::multiprecision::et_off>;
using Integer = boost::multiprecision::number<boost::multiprecision::gmp_int,
                                              boost::multiprecision::et_off>;

//! Binomial coefficient C(n, k) as an exact integer; zero when k > n.
inline Integer binomial_int(std::size_t n, std::size_t k)
{
    if (k > n)
        return Integer{0};
    if (k > n - k)
        k = n - k;
    Integer result{1};
    for (std::size_t i = 1; i <= k; ++i)
    {
        result *= static_cast<unsigned long>(n - k + i);
        result /= static_cast<unsigned long>(i);
    }
    return result;
}

inline Rational binomial(std::size_t n, std::size_t k)
{
    return Rational{binomial_int(n, k)};
}

//! x^e by repeated squaring; 0^0 = 1.
inline Rational ipow(Rational const& x, std::size_t e)
{
    Rational result{1};
    Rational base = x;
    while (e > 0)
    {
        if (e & 1u)
            result *= base;
        e >>= 1u;
        if (e > 0)
            base *= base;
    }
    return result;
}

//! Falling factorial n(n-1)...(n-k+1).
inline Integer falling_factorial(std::size_t n, std::size_t k)
{
    Integer result{1};
    for (std::size_t i = 0; i < k; ++i)
    {
        if (n < i)
            return Integer{0};
        result *= static_cast<unsigned long>(n - i);
    }
    return result;
}

inline Rational numerator_of(Rational const& r)
{
    return Rational{boost::multiprecision::numerator(r)};
}

inline double to_double(Rational const& r)
{
    return r.convert_to<double>();
}

inline Rational from_double(double x)
{
    return Rational{x};
}

//---------------------------------------------------------------------------//
/*!
 * Canonical text form: "p/q" in lowest terms with q > 0, or "p" when q = 1.
 */
inline std::string to_string(Rational const& r)
{
    auto const num = boost::multiprecision::numerator(r);
    auto const den = boost::multiprecision::denominator(r);
    if (den == 1)
        return num.str();
    return num.str() + "/" + den.str();
}

namespace detail
{
inline bool is_digit_run(std::string_view s)
{
    if (s.empty())
        return false;
    for (char ch : s)
    {
        if (!std::isdigit(static_cast<unsigned char>(ch)))
            return false;
    }
    return true;
}
}  // namespace detail

/*!
 * Parse "p", "-p", "p/q" or "-p/q" with decimal digits and q != 0.
 *
 * Non-canonical input such as "2/4" is accepted and reduced.
 */
inline Rational parse_rational(std::string_view text)
{
    std::string_view body = text;
    bool negative = false;
    if (!body.empty() && (body.front() == '-' || body.front() == '+'))
    {
        negative = body.front() == '-';
        body.remove_prefix(1);
    }
    auto const slash = body.find('/');
    std::string_view num_text = body.substr(0, slash);
    std::string_view den_text
        = slash == std::string_view::npos ? std::string_view{"1"} : body.substr(slash + 1);
    if (!detail::is_digit_run(num_text) || !detail::is_digit_run(den_text))
    {
        throw InvalidInput("malformed rational '" + std::string(text)
                           + "' (expected p or p/q)");
    }
    Integer num{std::string(num_text)};
    Integer den{std::string(den_text)};
    if (den == 0)
        throw InvalidInput("zero denominator in rational '" + std::string(text) + "'");
    Rational r{num, den};
    return negative ? Rational{-r} : r;
}

}  // namespace altmoments
