#pragma once

#include <cstddef>
#include <initializer_list>
#include <string>
#include <utility>
#include <vector>

#include "altmoments/errors.hpp"
#include "altmoments/rational.hpp"

namespace altmoments
{
//---------------------------------------------------------------------------//
/*!
 * Finite prefix (c(0), ..., c(N)) of a real sequence.
 *
 * The depth N is the last available index, so a sequence always holds
 * N + 1 >= 1 values.
 */
class FiniteSequence
{
  public:
    using value_type = Rational;
    using const_iterator = std::vector<Rational>::const_iterator;

    explicit FiniteSequence(std::vector<Rational> values) : values_(std::move(values))
    {
        if (values_.empty())
            throw InvalidInput("a finite sequence needs at least one term");
    }

    FiniteSequence(std::initializer_list<Rational> values)
        : FiniteSequence(std::vector<Rational>(values))
    {
    }

    //! Build c(0..depth) from a generator n -> c(n).
    template<class F>
    static FiniteSequence generate(std::size_t depth, F&& term)
    {
        std::vector<Rational> values;
        values.reserve(depth + 1);
        for (std::size_t n = 0; n <= depth; ++n)
            values.push_back(Rational(term(n)));
        return FiniteSequence(std::move(values));
    }

    std::size_t depth() const { return values_.size() - 1; }
    std::size_t size() const { return values_.size(); }

    Rational const& operator[](std::size_t n) const { return values_[n]; }

    Rational const& at(std::size_t n) const
    {
        if (n > depth())
            throw IndexError("sequence index " + std::to_string(n) + " out of range", n);
        return values_[n];
    }

    //! Prefix c(0..depth).
    FiniteSequence truncated(std::size_t depth) const
    {
        if (depth > this->depth())
            throw IndexError("cannot truncate to a larger depth", depth);
        return FiniteSequence(std::vector<Rational>(values_.begin(), values_.begin() + depth + 1));
    }

    std::vector<Rational> const& values() const { return values_; }
    const_iterator begin() const { return values_.begin(); }
    const_iterator end() const { return values_.end(); }

    friend bool operator==(FiniteSequence const&, FiniteSequence const&) = default;

  private:
    std::vector<Rational> values_;
};

}  // namespace altmoments
