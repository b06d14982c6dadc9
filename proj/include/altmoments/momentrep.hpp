#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "altmoments/errors.hpp"
#include "altmoments/measure.hpp"
#include "altmoments/rational.hpp"
#include "altmoments/seqcalc.hpp"
#include "altmoments/sequence.hpp"

/*!
 * \file momentrep.hpp
 * Convex distribution functions on [0,1] through their mixing measures.
 *
 * A convex CDF F with F(0) = 0 is a mixture of uniform laws on [xi, 1],
 *
 *     F(x) = sum_i w_i F_{xi_i}(x),  F_xi(x) = (x - xi)/(1 - xi) 1(x >= xi),
 *
 * with F_1 the unit mass at 1. The mixing probability measure nu determines
 * F uniquely, so nu is the data model for F throughout.
 */

namespace altmoments
{
//---------------------------------------------------------------------------//
//! Convex CDF represented by its mixing probability measure.
class ConvexCdf
{
  public:
    explicit ConvexCdf(DiscreteMeasure nu) : nu_(std::move(nu))
    {
        if (nu_.total_mass() != 1)
        {
            throw InvalidInput("mixing measure of a convex CDF must have mass 1, got "
                               + to_string(nu_.total_mass()));
        }
    }

    DiscreteMeasure const& nu() const { return nu_; }

  private:
    DiscreteMeasure nu_;
};

namespace detail
{
inline void require_unit_interval(Rational const& x, char const* what)
{
    if (x < 0 || x > 1)
        throw InvalidInput(std::string(what) + " argument " + to_string(x) + " outside [0,1]");
}
}  // namespace detail

inline Rational cdf_eval(ConvexCdf const& F, Rational const& x)
{
    detail::require_unit_interval(x, "cdf_eval");
    Rational value{0};
    for (auto const& [xi, w] : F.nu().atoms())
    {
        if (xi < 1)
        {
            if (x >= xi)
                value += w * (x - xi) / (1 - xi);
        }
        else if (x == 1)
        {
            value += w;
        }
    }
    return value;
}

//! Right-continuous density on [0, 1[; excludes the atom at 1.
inline Rational density_eval(ConvexCdf const& F, Rational const& x)
{
    if (x < 0 || x >= 1)
        throw InvalidInput("density_eval argument " + to_string(x) + " outside [0,1[");
    Rational value{0};
    for (auto const& [xi, w] : F.nu().atoms())
    {
        if (xi < 1 && xi <= x)
            value += w / (1 - xi);
    }
    return value;
}

/*!
 * Moments c(0..N) of the convex CDF with mixing measure \p nu.
 *
 * Each uniform law on [xi, 1] contributes (1 - xi^{n+1}) / ((n+1)(1 - xi)).
 */
inline FiniteSequence moments_from_nu(DiscreteMeasure const& nu, std::size_t depth)
{
    if (nu.total_mass() != 1)
        throw InvalidInput("moments_from_nu requires a probability measure, mass is "
                           + to_string(nu.total_mass()));
    return FiniteSequence::generate(depth, [&](std::size_t n) {
        Rational c{0};
        Rational const np1{static_cast<unsigned long>(n + 1)};
        for (auto const& [xi, w] : nu.atoms())
        {
            if (xi < 1)
                c += w * (1 - ipow(xi, n + 1)) / (np1 * (1 - xi));
            else
                c += w;
        }
        return c;
    });
}

/*!
 * Completely alternating sequence a(n) = n nu{1} + int (1 - xi^n)/(1 - xi) nu(dxi).
 *
 * Any finite measure is accepted; a(0) = 0 by definition.
 */
inline FiniteSequence alt_sequence_from_nu(DiscreteMeasure const& nu, std::size_t depth)
{
    return FiniteSequence::generate(depth, [&](std::size_t n) {
        Rational a{0};
        for (auto const& [xi, w] : nu.atoms())
        {
            if (xi < 1)
                a += w * (1 - ipow(xi, n)) / (1 - xi);
            else
                a += w * Rational{static_cast<unsigned long>(n)};
        }
        return a;
    });
}

/*!
 * Moments of the measure nu behind a completely alternating sequence.
 *
 * Returns m(n) = -nabla a(n) = a(n+1) - a(n) for n < depth. The atoms of nu
 * are not reconstructed.
 */
inline FiniteSequence nu_moments_from_alt(FiniteSequence const& a)
{
    if (a[0] != 0)
        throw InvalidInput("nu_moments_from_alt requires a(0) = 0, got " + to_string(a[0]));
    if (a.depth() == 0)
        throw InvalidInput("nu_moments_from_alt requires at least two terms");
    auto cert = certify_completely_alternating(a);
    if (!cert.certified())
        throw CertificationError("sequence is not completely alternating", std::move(cert));
    return FiniteSequence::generate(a.depth() - 1, [&](std::size_t n) { return a[n + 1] - a[n]; });
}

//---------------------------------------------------------------------------//
//! One jump of the CDF of S_n / n.
struct CdfStep
{
    Rational x;
    Rational cumulative;
};

/*!
 * CDF of S_n / n where P(S_n = m) = c(n, m).
 *
 * This is the n-th Hausdorff approximation of the distribution whose
 * moments are \p c; it converges weakly as n grows.
 */
inline std::vector<CdfStep> hausdorff_reconstruct(FiniteSequence const& c, std::size_t n)
{
    if (n == 0)
        throw InvalidInput("hausdorff_reconstruct needs n >= 1");
    if (c.depth() < n)
        throw IndexError("hausdorff_reconstruct at n=" + std::to_string(n), n);
    if (c[0] != 1)
        throw InvalidInput("hausdorff_reconstruct requires c(0) = 1, got " + to_string(c[0]));
    auto cert = certify_completely_monotone(c.truncated(n));
    if (!cert.certified())
        throw CertificationError("sequence is not completely monotone", std::move(cert));

    auto const row = triangular_row(c, n);
    std::vector<CdfStep> steps;
    steps.reserve(n + 1);
    Rational cumulative{0};
    Rational const n_r{static_cast<unsigned long>(n)};
    for (std::size_t m = 0; m <= n; ++m)
    {
        cumulative += row.entries[m];
        steps.push_back({Rational{static_cast<unsigned long>(m)} / n_r, cumulative});
    }
    return steps;
}

}  // namespace altmoments
