#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace altmoments
{
//! Base class for all library errors.
class Error : public std::runtime_error
{
  public:
    using std::runtime_error::runtime_error;
};

//! An operation needed more terms than the sequence carries.
class IndexError : public Error
{
  public:
    IndexError(std::string const& what, std::size_t required_depth)
        : Error(what + " (requires depth >= " + std::to_string(required_depth) + ")")
        , required_depth_(required_depth)
    {
    }

    std::size_t required_depth() const { return required_depth_; }

  private:
    std::size_t required_depth_;
};

//! Input violates an operation's precondition.
class InvalidInput : public Error
{
  public:
    using Error::Error;
};

//! Exact enumeration refused because it would exceed the configured cap.
class ResourceError : public Error
{
  public:
    ResourceError(std::string const& what, std::size_t cap)
        : Error(what + " (enumeration cap is " + std::to_string(cap) + ")"), cap_(cap)
    {
    }

    std::size_t cap() const { return cap_; }

  private:
    std::size_t cap_;
};

}  // namespace altmoments
