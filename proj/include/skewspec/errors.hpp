#pragma once

#include <stdexcept>
#include <string>

namespace skewspec
{
// Parameters outside their domain (p, q outside [0,1], n < 1, ...).
class InvalidParams : public std::invalid_argument
{
  public:
    using std::invalid_argument::invalid_argument;
};

// r(p, q) == 0, so the normalized matrix is undefined.
class DegenerateNormalization : public std::domain_error
{
  public:
    using std::domain_error::domain_error;
};

class NotSkewSymmetric : public std::invalid_argument
{
  public:
    using std::invalid_argument::invalid_argument;
};

class MalformedWalk : public std::invalid_argument
{
  public:
    using std::invalid_argument::invalid_argument;
};

class EnumerationBoundExceeded : public std::out_of_range
{
  public:
    using std::out_of_range::out_of_range;
};

class InvalidConfig : public std::invalid_argument
{
  public:
    using std::invalid_argument::invalid_argument;
};

// Malformed arc-list or spectrum file.
class ParseError : public std::runtime_error
{
  public:
    using std::runtime_error::runtime_error;
};

}  // namespace skewspec
