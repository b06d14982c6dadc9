#pragma once

#include <algorithm>
#include <cstddef>
#include <limits>
#include <map>
#include <vector>

#include <boost/math/distributions/chi_squared.hpp>

#include "altmoments/composition.hpp"
#include "altmoments/rational.hpp"

namespace altmoments
{
struct ChiSquareReport
{
    double statistic{};
    std::size_t dof{};
    double pvalue{};
};

struct GofCell
{
    std::size_t observed{};
    double probability{};
};

/*!
 * Pearson chi-square goodness of fit.
 *
 * Cells whose expected count is below \p min_expected are pooled into one
 * cell. Any observation in a cell of probability zero gives an infinite
 * statistic and p-value 0. A single remaining cell gives p-value 1.
 */
inline ChiSquareReport chi_square_gof(std::vector<GofCell> const& cells, double min_expected = 5.0)
{
    std::size_t total = 0;
    for (auto const& c : cells)
        total += c.observed;
    if (total == 0)
        return {0.0, 0, 1.0};

    std::vector<GofCell> kept;
    GofCell pooled{};
    bool any_pooled = false;
    for (auto const& c : cells)
    {
        if (c.probability <= 0)
        {
            if (c.observed > 0)
                return {std::numeric_limits<double>::infinity(), 0, 0.0};
            continue;
        }
        if (c.probability * static_cast<double>(total) < min_expected)
        {
            pooled.observed += c.observed;
            pooled.probability += c.probability;
            any_pooled = true;
        }
        else
        {
            kept.push_back(c);
        }
    }
    if (any_pooled)
        kept.push_back(pooled);
    if (kept.size() < 2)
        return {0.0, 0, 1.0};

    double statistic = 0;
    for (auto const& c : kept)
    {
        double const expected = c.probability * static_cast<double>(total);
        double const diff = static_cast<double>(c.observed) - expected;
        statistic += diff * diff / expected;
    }
    std::size_t const dof = kept.size() - 1;
    boost::math::chi_squared_distribution<double> dist(static_cast<double>(dof));
    return {statistic, dof, boost::math::cdf(boost::math::complement(dist, statistic))};
}

//! Goodness of fit of sampled compositions against an exact law.
inline ChiSquareReport chi_square_gof(std::map<Composition, std::size_t> const& counts,
                                      CompositionDistribution const& law,
                                      double min_expected = 5.0)
{
    std::vector<GofCell> cells;
    for (auto const& [lambda, p] : law.probabilities())
    {
        auto it = counts.find(lambda);
        cells.push_back({it == counts.end() ? 0 : it->second, to_double(p)});
    }
    for (auto const& [lambda, k] : counts)
    {
        if (law.probabilities().find(lambda) == law.probabilities().end())
            cells.push_back({k, 0.0});
    }
    return chi_square_gof(cells, min_expected);
}

}  // namespace altmoments
