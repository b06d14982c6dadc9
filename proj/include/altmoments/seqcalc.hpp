#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "altmoments/errors.hpp"
#include "altmoments/rational.hpp"
#include "altmoments/sequence.hpp"

/*!
 * \file seqcalc.hpp
 * Exact finite-difference calculus on sequence prefixes.
 *
 * The difference operator is the backward-sign convention
 *
 *     nabla c(n) = c(n) - c(n+1)
 *
 * which is the negative of the usual forward difference. Every sign
 * convention in the library (complete monotonicity, complete alternation,
 * q-matrices) is stated with respect to this operator.
 */

namespace altmoments
{
//---------------------------------------------------------------------------//
// Certificates
//---------------------------------------------------------------------------//
/*!
 * First failing inequality of a depth-limited check.
 *
 * For difference checks (j, n) locates nabla^j c(n). For the monotone-row
 * check of \c df_condition, n is the row and j = m indexes the row
 * increment c(n, m) - c(n, m - 1) with c(n, -1) = 0.
 */
struct Witness
{
    std::size_t j{};
    std::size_t n{};
    Rational value;

    friend bool operator==(Witness const&, Witness const&) = default;
};

enum class Verdict
{
    certified_to_depth,
    violated
};

inline char const* to_string(Verdict v)
{
    return v == Verdict::certified_to_depth ? "certified-to-depth" : "violated";
}

/*!
 * Outcome of checking an infinite property on a finite prefix.
 *
 * "Certified to depth N" is a necessary condition only: it says every
 * inequality expressible with the available terms holds.
 */
struct DepthCertificate
{
    Verdict verdict{Verdict::certified_to_depth};
    std::size_t depth{};
    std::optional<Witness> witness;

    bool certified() const { return verdict == Verdict::certified_to_depth; }

    static DepthCertificate pass(std::size_t depth) { return {Verdict::certified_to_depth, depth, {}}; }
    static DepthCertificate fail(std::size_t depth, Witness w)
    {
        return {Verdict::violated, depth, std::move(w)};
    }

    friend bool operator==(DepthCertificate const&, DepthCertificate const&) = default;
};

//! Raised when an operation requires a certified input and the check fails.
class CertificationError : public InvalidInput
{
  public:
    CertificationError(std::string const& what, DepthCertificate cert)
        : InvalidInput(what + describe(cert)), certificate_(std::move(cert))
    {
    }

    DepthCertificate const& certificate() const { return certificate_; }

  private:
    static std::string describe(DepthCertificate const& cert)
    {
        if (!cert.witness)
            return {};
        return " (witness j=" + std::to_string(cert.witness->j) + ", n="
               + std::to_string(cert.witness->n) + ", value=" + altmoments::to_string(cert.witness->value)
               + ")";
    }

    DepthCertificate certificate_;
};

//---------------------------------------------------------------------------//
// Difference operators
//---------------------------------------------------------------------------//
//! nabla^j c(n) = sum_i (-1)^i C(j,i) c(n+i), exactly.
inline Rational nabla_power(FiniteSequence const& c, std::size_t j, std::size_t n)
{
    if (n + j > c.depth())
    {
        throw IndexError("nabla^" + std::to_string(j) + " at n=" + std::to_string(n)
                             + " needs terms beyond the sequence",
                         n + j);
    }
    Rational sum{0};
    for (std::size_t i = 0; i <= j; ++i)
    {
        Rational term = binomial(j, i) * c[n + i];
        if (i % 2 == 0)
            sum += term;
        else
            sum -= term;
    }
    return sum;
}

namespace detail
{
/*!
 * Walk nabla^j c(n) for j + n <= depth in (j, then n) order, level by level.
 *
 * The visitor returns false to stop early.
 */
template<class Visit>
void walk_differences(FiniteSequence const& c, Visit&& visit)
{
    std::vector<Rational> level = c.values();
    for (std::size_t j = 0; !level.empty(); ++j)
    {
        for (std::size_t n = 0; n < level.size(); ++n)
        {
            if (!visit(j, n, level[n]))
                return;
        }
        for (std::size_t n = 0; n + 1 < level.size(); ++n)
            level[n] -= level[n + 1];
        level.pop_back();
    }
}
}  // namespace detail

//---------------------------------------------------------------------------//
// Triangular array
//---------------------------------------------------------------------------//
//! Row n of the array c(n, m) = C(n, m) nabla^{n-m} c(m), m = 0..n.
struct TriangularArrayRow
{
    std::size_t n{};
    std::vector<Rational> entries;
};

inline TriangularArrayRow triangular_row(FiniteSequence const& c, std::size_t n)
{
    if (n > c.depth())
        throw IndexError("triangular row " + std::to_string(n) + " out of range", n);
    TriangularArrayRow row{n, {}};
    row.entries.reserve(n + 1);
    for (std::size_t m = 0; m <= n; ++m)
        row.entries.push_back(binomial(n, m) * nabla_power(c, n - m, m));
    return row;
}

//---------------------------------------------------------------------------//
// Certification
//---------------------------------------------------------------------------//
//! Check nabla^j c(n) >= 0 for all j + n <= depth.
inline DepthCertificate certify_completely_monotone(FiniteSequence const& c)
{
    std::optional<Witness> witness;
    detail::walk_differences(c, [&](std::size_t j, std::size_t n, Rational const& v) {
        if (v < 0)
        {
            witness = Witness{j, n, v};
            return false;
        }
        return true;
    });
    if (witness)
        return DepthCertificate::fail(c.depth(), std::move(*witness));
    return DepthCertificate::pass(c.depth());
}

//! Check nabla^j a(n) <= 0 for all j >= 1 and j + n <= depth.
inline DepthCertificate certify_completely_alternating(FiniteSequence const& a)
{
    std::optional<Witness> witness;
    detail::walk_differences(a, [&](std::size_t j, std::size_t n, Rational const& v) {
        if (j >= 1 && v > 0)
        {
            witness = Witness{j, n, v};
            return false;
        }
        return true;
    });
    if (witness)
        return DepthCertificate::fail(a.depth(), std::move(*witness));
    return DepthCertificate::pass(a.depth());
}

//---------------------------------------------------------------------------//
// Moment <-> alternating transform
//---------------------------------------------------------------------------//
//! a(0) = 0, a(n) = n c(n-1); depth grows by one.
inline FiniteSequence a_from_c(FiniteSequence const& c)
{
    return FiniteSequence::generate(c.depth() + 1, [&](std::size_t n) {
        return n == 0 ? Rational{0} : Rational{static_cast<unsigned long>(n)} * c[n - 1];
    });
}

//! Inverse of \c a_from_c: c(n) = a(n+1) / (n+1).
inline FiniteSequence c_from_a(FiniteSequence const& a)
{
    if (a[0] != 0)
        throw InvalidInput("c_from_a requires a(0) = 0, got " + to_string(a[0]));
    if (a.depth() == 0)
        throw InvalidInput("c_from_a requires at least two terms");
    return FiniteSequence::generate(a.depth() - 1, [&](std::size_t n) {
        return a[n + 1] / Rational{static_cast<unsigned long>(n + 1)};
    });
}

/*!
 * Nonnegative, nondecreasing rows of the triangular array.
 *
 * For every row n <= depth this checks c(n, 0) >= 0 and
 * c(n, m+1) - c(n, m) >= 0. The witness reports j = m for the increment
 * c(n, m) - c(n, m-1), with j = 0 standing for c(n, 0) itself.
 */
inline DepthCertificate df_condition(FiniteSequence const& c)
{
    if (c[0] != 1)
        throw InvalidInput("df_condition requires c(0) = 1, got " + to_string(c[0]));
    for (std::size_t n = 0; n <= c.depth(); ++n)
    {
        auto const row = triangular_row(c, n);
        Rational previous{0};
        for (std::size_t m = 0; m <= n; ++m)
        {
            Rational increment = row.entries[m] - previous;
            if (increment < 0)
                return DepthCertificate::fail(c.depth(), Witness{m, n, std::move(increment)});
            previous = row.entries[m];
        }
    }
    return DepthCertificate::pass(c.depth());
}

}  // namespace altmoments
