#pragma once

// Random exact inputs for property tests. Test-only.

#include <cstddef>
#include <random>
#include <vector>

#include "altmoments/measure.hpp"
#include "altmoments/rational.hpp"
#include "altmoments/sequence.hpp"
#include "altmoments/subord.hpp"

namespace altmoments::gen
{
using Engine = std::mt19937_64;

inline std::size_t uniform_index(Engine& rng, std::size_t lo, std::size_t hi)
{
    return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

//! p/q with 1 <= q <= max_den and 0 <= p <= q.
inline Rational unit_rational(Engine& rng, std::size_t max_den = 64)
{
    auto const den = uniform_index(rng, 1, max_den);
    auto const num = uniform_index(rng, 0, den);
    return Rational{Integer{num}, Integer{den}};
}

//! Signed rational with small numerator and denominator.
inline Rational signed_rational(Engine& rng, long max_num = 9, long max_den = 9)
{
    auto const num = std::uniform_int_distribution<long>(-max_num, max_num)(rng);
    auto const den = std::uniform_int_distribution<long>(1, max_den)(rng);
    return Rational{Integer{num}, Integer{den}};
}

inline FiniteSequence random_sequence(Engine& rng, std::size_t depth)
{
    return FiniteSequence::generate(depth, [&](std::size_t) { return signed_rational(rng); });
}

//! Random sequence with c(0) = 1.
inline FiniteSequence random_sequence_unit_start(Engine& rng, std::size_t depth)
{
    return FiniteSequence::generate(depth, [&](std::size_t n) {
        return n == 0 ? Rational{1} : signed_rational(rng);
    });
}

/*!
 * Random probability measure on [0,1]: up to max_atoms atoms at
 * rationals with denominators <= max_den, normalized positive weights.
 */
inline DiscreteMeasure random_probability(Engine& rng, std::size_t max_atoms = 6,
                                          std::size_t max_den = 64)
{
    auto const count = uniform_index(rng, 1, max_atoms);
    std::vector<Atom> atoms;
    Rational total{0};
    for (std::size_t i = 0; i < count; ++i)
    {
        Rational w{Integer{uniform_index(rng, 1, 16)}};
        total += w;
        atoms.push_back({unit_rational(rng, max_den), w});
    }
    for (auto& a : atoms)
        a.weight /= total;
    return DiscreteMeasure::from_unsorted(std::move(atoms));
}

//! Random finite measure (not normalized) on [0,1].
inline DiscreteMeasure random_finite_measure(Engine& rng, std::size_t max_atoms = 6,
                                             std::size_t max_den = 64)
{
    auto nu = random_probability(rng, max_atoms, max_den);
    return nu.scaled(unit_rational(rng, 8) + Rational{1, 2});
}

enum class DataKind
{
    any,
    drift_only,
    jumps_only,
    mixed
};

//! Random non-degenerate Laplace exponent data with jump atoms in ]0,1].
inline LaplaceExponentData random_laplace_data(Engine& rng, DataKind kind = DataKind::any,
                                               std::size_t max_atoms = 4, std::size_t max_den = 16)
{
    if (kind == DataKind::any)
        kind = static_cast<DataKind>(uniform_index(rng, 1, 3));
    Rational drift{0};
    if (kind != DataKind::jumps_only)
        drift = Rational{Integer{uniform_index(rng, 1, 8)}, Integer{uniform_index(rng, 1, 8)}};
    std::vector<Atom> atoms;
    if (kind != DataKind::drift_only)
    {
        auto const count = uniform_index(rng, 1, max_atoms);
        for (std::size_t i = 0; i < count; ++i)
        {
            auto const den = uniform_index(rng, 1, max_den);
            auto const num = uniform_index(rng, 1, den);
            atoms.push_back({Rational{Integer{num}, Integer{den}},
                             Rational{Integer{uniform_index(rng, 1, 6)}, Integer{uniform_index(rng, 1, 6)}}});
        }
    }
    return LaplaceExponentData(drift, DiscreteMeasure::from_unsorted(std::move(atoms)));
}

}  // namespace altmoments::gen
