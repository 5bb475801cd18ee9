#pragma once

#include <stdexcept>

namespace chaoscode {

// Parameter or state outside the admissible domain (mu outside (0,4], x outside
// [0,1], malformed LFSR state, mismatched lengths, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// An analysis could not produce a trustworthy answer, e.g. a cascade bracket
// whose period classification flips when the transient is lengthened.
class NumericalFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace chaoscode
