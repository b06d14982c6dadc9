#pragma once

#include <algorithm>
#include <cstddef>
#include <utility>
#include <vector>

#include "altmoments/errors.hpp"
#include "altmoments/rational.hpp"

namespace altmoments
{
struct Atom
{
    Rational location;
    Rational weight;

    friend bool operator==(Atom const&, Atom const&) = default;
};

//---------------------------------------------------------------------------//
/*!
 * Finite nonnegative measure on [0, 1].
 *
 * Atoms are kept sorted by strictly increasing location. Zero weights are
 * allowed and retained.
 */
class DiscreteMeasure
{
  public:
    DiscreteMeasure() = default;

    //! Validate atoms that are already sorted and distinct.
    explicit DiscreteMeasure(std::vector<Atom> atoms) : atoms_(std::move(atoms))
    {
        for (std::size_t i = 0; i < atoms_.size(); ++i)
        {
            auto const& a = atoms_[i];
            if (a.location < 0 || a.location > 1)
                throw InvalidInput("atom location " + to_string(a.location) + " outside [0,1]");
            if (a.weight < 0)
                throw InvalidInput("negative atom weight " + to_string(a.weight));
            if (i > 0 && !(atoms_[i - 1].location < a.location))
                throw InvalidInput("atom locations must be strictly increasing");
        }
    }

    //! Sort atoms and merge duplicate locations by adding weights.
    static DiscreteMeasure from_unsorted(std::vector<Atom> atoms)
    {
        std::sort(atoms.begin(), atoms.end(),
                  [](Atom const& l, Atom const& r) { return l.location < r.location; });
        std::vector<Atom> merged;
        for (auto& a : atoms)
        {
            if (!merged.empty() && merged.back().location == a.location)
                merged.back().weight += a.weight;
            else
                merged.push_back(std::move(a));
        }
        return DiscreteMeasure(std::move(merged));
    }

    static DiscreteMeasure point_mass(Rational location, Rational weight = Rational{1})
    {
        return DiscreteMeasure({Atom{std::move(location), std::move(weight)}});
    }

    std::vector<Atom> const& atoms() const { return atoms_; }
    std::size_t size() const { return atoms_.size(); }
    bool empty() const { return atoms_.empty(); }

    Rational total_mass() const
    {
        Rational total{0};
        for (auto const& a : atoms_)
            total += a.weight;
        return total;
    }

    //! Weight of the atom at \p location, zero if absent.
    Rational mass_at(Rational const& location) const
    {
        for (auto const& a : atoms_)
        {
            if (a.location == location)
                return a.weight;
        }
        return Rational{0};
    }

    DiscreteMeasure scaled(Rational const& factor) const
    {
        auto atoms = atoms_;
        for (auto& a : atoms)
            a.weight *= factor;
        return DiscreteMeasure(std::move(atoms));
    }

    friend bool operator==(DiscreteMeasure const&, DiscreteMeasure const&) = default;

  private:
    std::vector<Atom> atoms_;
};

}  // namespace altmoments
