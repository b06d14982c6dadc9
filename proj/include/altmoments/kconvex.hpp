#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "altmoments/errors.hpp"
#include "altmoments/measure.hpp"
#include "altmoments/rational.hpp"
#include "altmoments/seqcalc.hpp"
#include "altmoments/sequence.hpp"

/*!
 * \file kconvex.hpp
 * Higher convexity: (k+1)-convex distribution functions and k-alternating
 * sequences.
 *
 * With no polynomial part, a (k+1)-convex CDF on [0,1] is a mixture
 *
 *     F(x) = int ((x - xi)/(1 - xi))^k 1(x >= xi) nu(dxi),
 *
 * and its k-associated sequence a_k(n) = n(n-1)...(n-k+1) c(n-k) makes
 * (-nabla)^k a_k completely monotone.
 */

namespace altmoments
{
//---------------------------------------------------------------------------//
//! Sequence whose first k terms vanish.
class KAssociated
{
  public:
    KAssociated(std::size_t k, FiniteSequence a) : k_(k), a_(std::move(a))
    {
        if (k_ < 1)
            throw InvalidInput("k-associated sequences need k >= 1");
        for (std::size_t n = 0; n < k_ && n <= a_.depth(); ++n)
        {
            if (a_[n] != 0)
                throw InvalidInput("k-associated sequence must start with " + std::to_string(k_)
                                   + " zeros; a(" + std::to_string(n) + ") = " + to_string(a_[n]));
        }
    }

    std::size_t k() const { return k_; }
    FiniteSequence const& sequence() const { return a_; }

  private:
    std::size_t k_;
    FiniteSequence a_;
};

//! a(n) = 0 for n < k, a(n) = n^{k falling} c(n-k) otherwise; depth grows by k.
inline KAssociated k_associated(FiniteSequence const& c, std::size_t k)
{
    if (k < 1)
        throw InvalidInput("k_associated requires k >= 1");
    auto a = FiniteSequence::generate(c.depth() + k, [&](std::size_t n) {
        if (n < k)
            return Rational{0};
        return Rational{falling_factorial(n, k)} * c[n - k];
    });
    return KAssociated(k, std::move(a));
}

/*!
 * Check that (-nabla)^k a is completely monotone to the available depth.
 *
 * Inspects (-1)^k nabla^{k+j} a(n) >= 0 for k + j + n <= depth and reports
 * the first violation in (j, n) order.
 */
inline DepthCertificate certify_k_alternating(KAssociated const& a)
{
    auto const& seq = a.sequence();
    auto const k = a.k();
    if (seq.depth() < k)
        return DepthCertificate::pass(seq.depth());

    // (-nabla)^k a(n) = (-1)^k nabla^k a(n), for n = 0..depth-k.
    auto const base = FiniteSequence::generate(seq.depth() - k, [&](std::size_t n) {
        auto v = nabla_power(seq, k, n);
        return k % 2 == 0 ? v : Rational{-v};
    });
    auto cert = certify_completely_monotone(base);
    cert.depth = seq.depth();
    return cert;
}

//---------------------------------------------------------------------------//
/*!
 * Moments of the k-th power mixture.
 *
 * For xi < 1, X = xi + (1 - xi) U with U ~ Beta(k, 1), so
 *
 *     c_xi(n) = sum_j C(n, j) xi^{n-j} (1 - xi)^j k / (k + j),
 *
 * and an atom at xi = 1 contributes the unit mass at 1.
 */
inline FiniteSequence moments_kconvex_from_nu(DiscreteMeasure const& nu, std::size_t k,
                                              std::size_t depth)
{
    if (k < 1)
        throw InvalidInput("moments_kconvex_from_nu requires k >= 1");
    if (nu.total_mass() != 1)
        throw InvalidInput("moments_kconvex_from_nu requires a probability measure, mass is "
                           + to_string(nu.total_mass()));
    Rational const k_r{static_cast<unsigned long>(k)};
    return FiniteSequence::generate(depth, [&](std::size_t n) {
        Rational c{0};
        for (auto const& [xi, w] : nu.atoms())
        {
            if (xi == 1)
            {
                c += w;
                continue;
            }
            Rational term{0};
            for (std::size_t j = 0; j <= n; ++j)
            {
                term += binomial(n, j) * ipow(xi, n - j) * ipow(1 - xi, j) * k_r
                        / (k_r + Rational{static_cast<unsigned long>(j)});
            }
            c += w * term;
        }
        return c;
    });
}

}  // namespace altmoments
