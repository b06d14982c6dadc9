#pragma once

#include <cmath>
#include <cstddef>
#include <utility>
#include <vector>

#include "altmoments/errors.hpp"
#include "altmoments/measure.hpp"
#include "altmoments/rational.hpp"
#include "altmoments/seqcalc.hpp"
#include "altmoments/sequence.hpp"

/*!
 * \file subord.hpp
 * Laplace exponents of subordinators evaluated at integers.
 *
 * A subordinator with drift d and Levy measure L on ]0, inf] has
 *
 *     Phi(n) = n d + int (1 - (1 - x)^n) nutilde(dx),
 *
 * where nutilde is the image of L under y -> 1 - exp(-y). An atom of nutilde
 * at x = 1 is the killing rate L{inf}. Storing nutilde instead of L keeps
 * every integer evaluation exact.
 */

namespace altmoments
{
//---------------------------------------------------------------------------//
/*!
 * Drift plus jump measure in the transformed (nutilde) scale.
 *
 * An atom (x, w) encodes Levy mass w at jump size -log(1 - x); x = 1 is an
 * infinite jump. The all-zero exponent is rejected.
 */
class LaplaceExponentData
{
  public:
    LaplaceExponentData(Rational drift, DiscreteMeasure nutilde)
        : drift_(std::move(drift)), nutilde_(std::move(nutilde))
    {
        if (drift_ < 0)
            throw InvalidInput("drift must be nonnegative, got " + to_string(drift_));
        for (auto const& a : nutilde_.atoms())
        {
            if (a.location <= 0)
                throw InvalidInput("jump measure atoms must lie in ]0,1], got " + to_string(a.location));
        }
        if (drift_ + nutilde_.total_mass() <= 0)
            throw InvalidInput("degenerate Laplace exponent: zero drift and no jump mass");
    }

    static LaplaceExponentData pure_drift(Rational drift)
    {
        return LaplaceExponentData(std::move(drift), DiscreteMeasure{});
    }

    Rational const& drift() const { return drift_; }
    DiscreteMeasure const& nutilde() const { return nutilde_; }

    //! Total Levy mass, i.e. the jump rate.
    Rational jump_rate() const { return nutilde_.total_mass(); }

    LaplaceExponentData scaled(Rational const& factor) const
    {
        return LaplaceExponentData(drift_ * factor, nutilde_.scaled(factor));
    }

    friend bool operator==(LaplaceExponentData const&, LaplaceExponentData const&) = default;

  private:
    Rational drift_;
    DiscreteMeasure nutilde_;
};

//---------------------------------------------------------------------------//
// Evaluation
//---------------------------------------------------------------------------//
inline Rational phi(LaplaceExponentData const& data, std::size_t lam)
{
    Rational value = data.drift() * Rational{static_cast<unsigned long>(lam)};
    for (auto const& [x, w] : data.nutilde().atoms())
        value += w * (1 - ipow(1 - x, lam));
    return value;
}

//! (Phi(0), ..., Phi(N)); completely alternating by construction.
inline FiniteSequence phi_sequence(LaplaceExponentData const& data, std::size_t depth)
{
    return FiniteSequence::generate(depth, [&](std::size_t n) { return phi(data, n); });
}

//---------------------------------------------------------------------------//
// Scale conversions
//---------------------------------------------------------------------------//
/*!
 * Jump measure in the nu scale: an atom (x, w) becomes (1 - x, w x).
 *
 * The drift is not part of the returned measure.
 */
inline DiscreteMeasure nu_from_nutilde(LaplaceExponentData const& data)
{
    std::vector<Atom> atoms;
    atoms.reserve(data.nutilde().size());
    for (auto const& [x, w] : data.nutilde().atoms())
        atoms.push_back({1 - x, w * x});
    return DiscreteMeasure::from_unsorted(std::move(atoms));
}

//! Inverse of \c nu_from_nutilde; atoms of \p nu must lie in [0, 1[.
inline LaplaceExponentData nutilde_from_nu(Rational drift, DiscreteMeasure const& nu)
{
    std::vector<Atom> atoms;
    atoms.reserve(nu.size());
    for (auto const& [x, w] : nu.atoms())
    {
        if (x == 1)
            throw InvalidInput("nu-scale atom at 1 has no nutilde image; fold it into the drift");
        atoms.push_back({1 - x, w / (1 - x)});
    }
    return LaplaceExponentData(std::move(drift), DiscreteMeasure::from_unsorted(std::move(atoms)));
}

/*!
 * Build exponent data from nu-scale input.
 *
 * Mass at x = 1 contributes lam * nu{1}, the same as drift, and is merged
 * into it before converting the rest.
 */
inline LaplaceExponentData from_nu_scale(Rational drift, DiscreteMeasure const& nu)
{
    std::vector<Atom> rest;
    for (auto const& a : nu.atoms())
    {
        if (a.location == 1)
            drift += a.weight;
        else
            rest.push_back(a);
    }
    return nutilde_from_nu(std::move(drift), DiscreteMeasure(std::move(rest)));
}

/*!
 * Phi(lam) = lam d + int (1 - x^lam)/(1 - x) nu(dx) in the nu scale.
 *
 * The quotient is summed as 1 + x + ... + x^{lam-1}, and at x = 1 it is lam.
 */
inline Rational phi_nu_scale(Rational const& drift, DiscreteMeasure const& nu, std::size_t lam)
{
    Rational const lam_r{static_cast<unsigned long>(lam)};
    Rational value = drift * lam_r;
    for (auto const& [x, w] : nu.atoms())
    {
        Rational sum{0};
        Rational power{1};
        for (std::size_t i = 0; i < lam; ++i)
        {
            sum += power;
            power *= x;
        }
        value += w * sum;
    }
    return value;
}

//---------------------------------------------------------------------------//
// Moments of the associated convex CDF
//---------------------------------------------------------------------------//
//! Thrown when Phi(1) != 1; rescaling all data by 1/factor() normalizes it.
class NormalizationError : public InvalidInput
{
  public:
    explicit NormalizationError(Rational factor)
        : InvalidInput("Laplace exponent is not normalized: Phi(1) = " + to_string(factor))
        , factor_(std::move(factor))
    {
    }

    Rational const& factor() const { return factor_; }

  private:
    Rational factor_;
};

//! Rescale so that Phi(1) = 1.
inline LaplaceExponentData normalized(LaplaceExponentData const& data)
{
    return data.scaled(1 / phi(data, 1));
}

/*!
 * Mixing measure of the convex CDF with Phi(lam) = lam int x^{lam-1} dF.
 *
 * This is the nu-scale jump measure plus an atom of size d at 1.
 */
inline DiscreteMeasure convex_mixing_measure(LaplaceExponentData const& data)
{
    auto atoms = nu_from_nutilde(data).atoms();
    if (data.drift() > 0)
        atoms.push_back({Rational{1}, data.drift()});
    return DiscreteMeasure::from_unsorted(std::move(atoms));
}

//! c(n) = Phi(n+1) / (n+1), n = 0..N; requires Phi(1) = 1.
inline FiniteSequence moments_from_phi(LaplaceExponentData const& data, std::size_t depth)
{
    auto const phi1 = phi(data, 1);
    if (phi1 != 1)
        throw NormalizationError(phi1);
    return FiniteSequence::generate(depth, [&](std::size_t n) {
        return phi(data, n + 1) / Rational{static_cast<unsigned long>(n + 1)};
    });
}

//---------------------------------------------------------------------------//
/*!
 * Newton forward-difference interpolation of Phi at a real argument.
 *
 * Evaluates sum_{j=0}^{N} C(lam, j) (-1)^j nabla^j Phi(0) through the nodes
 * 0..N. The binary value of \p lam is taken exactly and the polynomial is
 * summed in rationals, so the only rounding is the final conversion.
 */
inline double newton_interpolate(FiniteSequence const& phi_values, double lam)
{
    if (phi_values.depth() < 1)
        throw InvalidInput("newton_interpolate needs at least two nodes");
    if (!std::isfinite(lam) || lam < 0)
        throw InvalidInput("newton_interpolate requires a finite lam >= 0");

    Rational const x = from_double(lam);
    Rational coefficient{1};  // C(x, j)
    Rational sum{0};
    for (std::size_t j = 0; j <= phi_values.depth(); ++j)
    {
        if (j > 0)
            coefficient *= (x - Rational{static_cast<unsigned long>(j - 1)})
                           / Rational{static_cast<unsigned long>(j)};
        if (coefficient == 0)
            break;
        Rational forward = nabla_power(phi_values, j, 0);
        if (j % 2 == 1)
            forward = -forward;
        sum += coefficient * forward;
    }
    return to_double(sum);
}

}  // namespace altmoments
