#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "altmoments/composition.hpp"
#include "altmoments/errors.hpp"
#include "altmoments/rational.hpp"
#include "altmoments/seqcalc.hpp"
#include "altmoments/subord.hpp"

/*!
 * \file compstruct.hpp
 * Regenerative composition structures driven by a subordinator.
 *
 * The first part of C_n equals m with probability q(n, m); given that, the
 * rest is a copy of C_{n-m}. Hence
 *
 *     P(C_n = (l_1, ..., l_k)) = prod_j q(L_j, l_j),  L_j = l_j + ... + l_k.
 */

namespace altmoments
{
//! Largest n for which exact enumeration of compositions is attempted.
inline constexpr std::size_t default_enumeration_cap = 16;

//---------------------------------------------------------------------------//
//! Law of the first part of C_n: q(n, m) for m = 1..n.
struct QRow
{
    std::size_t n{};
    std::vector<Rational> q;  //!< q[m - 1] = q(n, m)

    Rational const& operator()(std::size_t m) const { return q.at(m - 1); }

    Rational sum() const
    {
        Rational total{0};
        for (auto const& v : q)
            total += v;
        return total;
    }

    friend bool operator==(QRow const&, QRow const&) = default;
};

namespace detail
{
inline void require_positive_n(std::size_t n, char const* what)
{
    if (n == 0)
        throw InvalidInput(std::string(what) + " requires n >= 1");
}
}  // namespace detail

//! q(n, m) = -C(n, m) nabla^m Phi(n - m) / Phi(n).
inline QRow q_row_fd(LaplaceExponentData const& data, std::size_t n)
{
    detail::require_positive_n(n, "q_row_fd");
    auto const phis = phi_sequence(data, n);
    QRow row{n, {}};
    row.q.reserve(n);
    for (std::size_t m = 1; m <= n; ++m)
        row.q.push_back(-binomial(n, m) * nabla_power(phis, m, n - m) / phis[n]);
    return row;
}

/*!
 * q(n, m) from the jump measure directly:
 *
 *     [n d 1(m = 1) + C(n, m) int x^m (1 - x)^{n-m} nutilde(dx)] / Phi(n).
 *
 * The bracket sums to Phi(n) over m by the binomial theorem.
 */
inline QRow q_row_integral(LaplaceExponentData const& data, std::size_t n)
{
    detail::require_positive_n(n, "q_row_integral");
    auto const normalizer = phi(data, n);
    QRow row{n, {}};
    row.q.reserve(n);
    for (std::size_t m = 1; m <= n; ++m)
    {
        Rational numerator{0};
        if (m == 1)
            numerator += Rational{static_cast<unsigned long>(n)} * data.drift();
        Rational integral{0};
        for (auto const& [x, w] : data.nutilde().atoms())
            integral += w * ipow(x, m) * ipow(1 - x, n - m);
        numerator += binomial(n, m) * integral;
        row.q.push_back(numerator / normalizer);
    }
    return row;
}

//---------------------------------------------------------------------------//
// Exact laws
//---------------------------------------------------------------------------//
namespace detail
{
inline void require_within_cap(std::size_t n, std::size_t cap)
{
    if (n > cap)
    {
        throw ResourceError("exact enumeration of the 2^" + std::to_string(n - 1)
                                + " compositions of n=" + std::to_string(n) + " refused",
                            cap);
    }
}

inline void enumerate_compositions(std::vector<QRow> const& rows, std::size_t remaining,
                                   std::vector<std::size_t>& prefix, Rational const& weight,
                                   CompositionDistribution::map_type& out)
{
    if (remaining == 0)
    {
        if (weight != 0)
            out.emplace(Composition(prefix), weight);
        return;
    }
    auto const& row = rows[remaining - 1];
    for (std::size_t m = 1; m <= remaining; ++m)
    {
        prefix.push_back(m);
        enumerate_compositions(rows, remaining - m, prefix, weight * row(m), out);
        prefix.pop_back();
    }
}
}  // namespace detail

//! Exact law of C_n; compositions of probability zero are omitted.
inline CompositionDistribution composition_pmf(LaplaceExponentData const& data, std::size_t n,
                                               std::size_t cap = default_enumeration_cap)
{
    detail::require_positive_n(n, "composition_pmf");
    detail::require_within_cap(n, cap);
    std::vector<QRow> rows;
    rows.reserve(n);
    for (std::size_t k = 1; k <= n; ++k)
        rows.push_back(q_row_fd(data, k));

    CompositionDistribution::map_type probabilities;
    std::vector<std::size_t> prefix;
    detail::enumerate_compositions(rows, n, prefix, Rational{1}, probabilities);
    return CompositionDistribution(n, std::move(probabilities));
}

/*!
 * Push-forward under deleting a uniformly chosen ball.
 *
 * A part of size l is hit with probability l/n; it shrinks by one and is
 * removed when empty.
 */
inline CompositionDistribution deletion_projection(CompositionDistribution const& dist)
{
    auto const n = dist.n();
    if (n < 2)
        throw InvalidInput("deletion_projection requires n >= 2");
    Rational const n_r{static_cast<unsigned long>(n)};
    CompositionDistribution::map_type projected;
    for (auto const& [lambda, p] : dist.probabilities())
    {
        for (std::size_t j = 0; j < lambda.size(); ++j)
        {
            auto parts = lambda.parts();
            if (--parts[j] == 0)
                parts.erase(parts.begin() + static_cast<std::ptrdiff_t>(j));
            projected[Composition(std::move(parts))]
                += p * Rational{static_cast<unsigned long>(lambda[j])} / n_r;
        }
    }
    return CompositionDistribution(n - 1, std::move(projected));
}

//---------------------------------------------------------------------------//
// Regeneration
//---------------------------------------------------------------------------//
struct RegenerationReport
{
    struct Violation
    {
        std::size_t first_part{};
        Composition remainder;
        Rational conditional;  //!< P(C_n = (m, mu) | first part m)
        Rational expected;     //!< P(C_{n-m} = mu)
    };

    bool passed{true};
    std::optional<Violation> violation;
};

/*!
 * Check that C_n given its first part m is distributed like C_{n-m}.
 *
 * \p laws[k - 1] is the law of C_k for k = 1..n. Violations are reported
 * for the smallest m, then the lexicographically smallest remainder.
 */
inline RegenerationReport regeneration_check(std::vector<CompositionDistribution> const& laws,
                                             std::size_t n)
{
    if (n == 0 || laws.size() < n)
        throw InvalidInput("regeneration_check needs the laws of C_1..C_n");
    auto const& top = laws[n - 1];

    std::vector<Rational> first_part(n + 1, Rational{0});
    for (auto const& [lambda, p] : top.probabilities())
        first_part[lambda[0]] += p;

    for (std::size_t m = 1; m < n; ++m)
    {
        if (first_part[m] == 0)
            continue;
        auto const& rest_law = laws[n - m - 1];
        CompositionDistribution::map_type conditional;
        for (auto const& [lambda, p] : top.probabilities())
        {
            if (lambda[0] != m || p == 0)
                continue;
            std::vector<std::size_t> rest(lambda.parts().begin() + 1, lambda.parts().end());
            conditional.emplace(Composition(std::move(rest)), p / first_part[m]);
        }
        // Union of supports, in lexicographic order.
        std::map<Composition, std::pair<Rational, Rational>> both;
        for (auto const& [mu, p] : conditional)
            both[mu].first = p;
        for (auto const& [mu, p] : rest_law.probabilities())
            both[mu].second = p;
        for (auto const& [mu, pr] : both)
        {
            if (pr.first != pr.second)
            {
                return {false, RegenerationReport::Violation{m, mu, pr.first, pr.second}};
            }
        }
    }
    return {};
}

inline RegenerationReport regeneration_check(LaplaceExponentData const& data, std::size_t n,
                                             std::size_t cap = default_enumeration_cap)
{
    detail::require_positive_n(n, "regeneration_check");
    detail::require_within_cap(n, cap);
    std::vector<CompositionDistribution> laws;
    laws.reserve(n);
    for (std::size_t k = 1; k <= n; ++k)
        laws.push_back(composition_pmf(data, k, cap));
    return regeneration_check(laws, n);
}

//---------------------------------------------------------------------------//
// Sampling
//---------------------------------------------------------------------------//
namespace detail
{
//! Uniform on ]0, 1].
template<class Engine>
double uniform_open_closed(Engine& rng)
{
    double u;
    do
    {
        u = std::generate_canonical<double, std::numeric_limits<double>::digits>(rng);
    } while (u >= 1.0);
    return 1.0 - u;
}

//! Index i with probability proportional to cumulative[i] - cumulative[i-1].
template<class Engine>
std::size_t pick_cumulative(std::vector<double> const& cumulative, Engine& rng)
{
    double const target = uniform_open_closed(rng) * cumulative.back();
    auto it = std::lower_bound(cumulative.begin(), cumulative.end(), target);
    if (it == cumulative.end())
        --it;
    return static_cast<std::size_t>(it - cumulative.begin());
}
}  // namespace detail

/*!
 * Draw C_n by sampling the first part from q(n, .) and recursing.
 *
 * The q rows are computed exactly once at construction and then held as
 * cumulative doubles.
 */
class RecursiveCompositionSampler
{
  public:
    RecursiveCompositionSampler(LaplaceExponentData const& data, std::size_t n) : n_(n)
    {
        detail::require_positive_n(n, "RecursiveCompositionSampler");
        cumulative_.reserve(n);
        for (std::size_t k = 1; k <= n; ++k)
        {
            auto const row = q_row_fd(data, k);
            std::vector<double> cdf;
            cdf.reserve(k);
            Rational running{0};
            for (auto const& v : row.q)
            {
                running += v;
                cdf.push_back(to_double(running));
            }
            cumulative_.push_back(std::move(cdf));
        }
    }

    std::size_t n() const { return n_; }

    template<class Engine>
    Composition operator()(Engine& rng) const
    {
        std::vector<std::size_t> parts;
        std::size_t remaining = n_;
        while (remaining > 0)
        {
            std::size_t const m = 1 + detail::pick_cumulative(cumulative_[remaining - 1], rng);
            parts.push_back(m);
            remaining -= m;
        }
        return Composition(std::move(parts));
    }

  private:
    std::size_t n_;
    std::vector<std::vector<double>> cumulative_;
};

/*!
 * Draw C_n by clustering uniform points along the range of a subordinator.
 *
 * Sample points u_i are mapped to levels z_i = -log(1 - u_i). The
 * subordinator alternates drift segments of exponential duration (rate equal
 * to the total jump mass), during which it moves at speed d, with jumps of
 * size -log(1 - x_j) chosen proportionally to the jump weights. Levels
 * crossed by drift are singletons; levels under a single jump form one part.
 * A level that coincides with a jump's start or end counts as inside it.
 */
class PaintboxCompositionSampler
{
  public:
    PaintboxCompositionSampler(LaplaceExponentData const& data, std::size_t n)
        : n_(n), drift_(to_double(data.drift()))
    {
        detail::require_positive_n(n, "PaintboxCompositionSampler");
        double running = 0;
        for (auto const& [x, w] : data.nutilde().atoms())
        {
            running += to_double(w);
            cumulative_rates_.push_back(running);
            jump_sizes_.push_back(x == 1 ? std::numeric_limits<double>::infinity()
                                         : -std::log1p(-to_double(x)));
        }
        jump_rate_ = running;
    }

    std::size_t n() const { return n_; }

    template<class Engine>
    Composition operator()(Engine& rng) const
    {
        constexpr double inf = std::numeric_limits<double>::infinity();
        std::vector<double> levels(n_);
        for (auto& z : levels)
            z = -std::log(detail::uniform_open_closed(rng));
        std::sort(levels.begin(), levels.end());

        std::vector<std::size_t> parts;
        std::size_t next = 0;
        double position = 0;
        while (next < n_)
        {
            double holding = inf;
            if (jump_rate_ > 0)
                holding = std::exponential_distribution<double>(jump_rate_)(rng);
            if (drift_ > 0)
            {
                double const end = position + drift_ * holding;
                while (next < n_ && levels[next] < end)
                {
                    parts.push_back(1);
                    ++next;
                }
                position = end;
            }
            if (next == n_)
                break;

            double const size = jump_sizes_[detail::pick_cumulative(cumulative_rates_, rng)];
            double const end = position + size;
            std::size_t covered = 0;
            while (next < n_ && levels[next] <= end)
            {
                ++covered;
                ++next;
            }
            if (covered > 0)
                parts.push_back(covered);
            position = end;
        }
        return Composition(std::move(parts));
    }

  private:
    std::size_t n_;
    double drift_;
    double jump_rate_{0};
    std::vector<double> cumulative_rates_;
    std::vector<double> jump_sizes_;
};

template<class Engine>
Composition sample_composition_recursive(LaplaceExponentData const& data, std::size_t n, Engine& rng)
{
    return RecursiveCompositionSampler(data, n)(rng);
}

template<class Engine>
Composition sample_composition_paintbox(LaplaceExponentData const& data, std::size_t n, Engine& rng)
{
    return PaintboxCompositionSampler(data, n)(rng);
}

//---------------------------------------------------------------------------//
// Ball-in-box allocations
//---------------------------------------------------------------------------//
struct Allocation
{
    std::vector<std::size_t> counts;  //!< counts[j-1] = #{X_{j-1} < U_i <= X_j}
    std::size_t residual{};           //!< #{U_i > X_last}
};

/*!
 * Throw n uniform balls into boxes ]X_{j-1}, X_j] with X_0 = 0.
 *
 * \p breakpoints lists X_1 <= X_2 <= ... in [0, 1]. With a single
 * breakpoint X the first count is the number of successes S_n.
 */
template<class Engine>
Allocation definetti_allocation(std::vector<Rational> const& breakpoints, std::size_t n, Engine& rng)
{
    for (std::size_t j = 0; j < breakpoints.size(); ++j)
    {
        auto const& x = breakpoints[j];
        if (x < 0 || x > 1)
            throw InvalidInput("breakpoint " + to_string(x) + " outside [0,1]");
        if (j > 0 && x < breakpoints[j - 1])
            throw InvalidInput("breakpoints must be nondecreasing");
    }
    std::vector<double> bounds;
    bounds.reserve(breakpoints.size());
    for (auto const& x : breakpoints)
        bounds.push_back(to_double(x));

    Allocation result{std::vector<std::size_t>(breakpoints.size(), 0), 0};
    for (std::size_t i = 0; i < n; ++i)
    {
        double const u = detail::uniform_open_closed(rng);
        auto it = std::lower_bound(bounds.begin(), bounds.end(), u);
        if (it == bounds.end())
            ++result.residual;
        else
            ++result.counts[static_cast<std::size_t>(it - bounds.begin())];
    }
    return result;
}

}  // namespace altmoments
