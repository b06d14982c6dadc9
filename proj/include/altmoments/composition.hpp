#pragma once

#include <compare>
#include <cstddef>
#include <initializer_list>
#include <map>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "altmoments/errors.hpp"
#include "altmoments/rational.hpp"

namespace altmoments
{
//---------------------------------------------------------------------------//
//! Ordered list of positive parts; ordering is lexicographic on parts.
class Composition
{
  public:
    explicit Composition(std::vector<std::size_t> parts) : parts_(std::move(parts))
    {
        if (parts_.empty())
            throw InvalidInput("a composition needs at least one part");
        for (auto p : parts_)
        {
            if (p == 0)
                throw InvalidInput("composition parts must be positive");
        }
    }

    Composition(std::initializer_list<std::size_t> parts)
        : Composition(std::vector<std::size_t>(parts))
    {
    }

    std::vector<std::size_t> const& parts() const { return parts_; }
    std::size_t size() const { return parts_.size(); }
    std::size_t operator[](std::size_t i) const { return parts_[i]; }

    std::size_t n() const { return std::accumulate(parts_.begin(), parts_.end(), std::size_t{0}); }

    std::string str() const
    {
        std::string s = "(";
        for (std::size_t i = 0; i < parts_.size(); ++i)
        {
            if (i > 0)
                s += ",";
            s += std::to_string(parts_[i]);
        }
        return s + ")";
    }

    friend auto operator<=>(Composition const&, Composition const&) = default;
    friend bool operator==(Composition const&, Composition const&) = default;

  private:
    std::vector<std::size_t> parts_;
};

//---------------------------------------------------------------------------//
/*!
 * Exact law of a random composition of n.
 *
 * Only compositions with positive probability need to be listed; the
 * probabilities must be nonnegative and sum to exactly 1.
 */
class CompositionDistribution
{
  public:
    using map_type = std::map<Composition, Rational>;

    CompositionDistribution(std::size_t n, map_type probabilities)
        : n_(n), probabilities_(std::move(probabilities))
    {
        if (n_ == 0)
            throw InvalidInput("composition distributions need n >= 1");
        Rational total{0};
        for (auto const& [lambda, p] : probabilities_)
        {
            if (lambda.n() != n_)
                throw InvalidInput("composition " + lambda.str() + " is not a composition of "
                                   + std::to_string(n_));
            if (p < 0)
                throw InvalidInput("negative probability for " + lambda.str());
            total += p;
        }
        if (total != 1)
            throw InvalidInput("composition probabilities sum to " + to_string(total) + ", not 1");
    }

    static CompositionDistribution point_mass(Composition lambda)
    {
        auto const n = lambda.n();
        return CompositionDistribution(n, {{std::move(lambda), Rational{1}}});
    }

    std::size_t n() const { return n_; }
    map_type const& probabilities() const { return probabilities_; }

    Rational probability(Composition const& lambda) const
    {
        auto it = probabilities_.find(lambda);
        return it == probabilities_.end() ? Rational{0} : it->second;
    }

    //! Equality of laws: entries with probability zero are ignored.
    friend bool operator==(CompositionDistribution const& lhs, CompositionDistribution const& rhs)
    {
        if (lhs.n_ != rhs.n_)
            return false;
        auto covers = [](CompositionDistribution const& a, CompositionDistribution const& b) {
            for (auto const& [lambda, p] : a.probabilities_)
            {
                if (b.probability(lambda) != p)
                    return false;
            }
            return true;
        };
        return covers(lhs, rhs) && covers(rhs, lhs);
    }

  private:
    std::size_t n_;
    map_type probabilities_;
};

}  // namespace altmoments
