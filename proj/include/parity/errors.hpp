#pragma once

#include <stdexcept>
#include <string>

namespace parity {

/// Invalid argument: bad (j, mu) pairing, wrong photon-number parity, unnormalized state.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A transform was applied to a state in the wrong frame.
class FrameError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// The phi -> 0 extrapolation did not converge.
class NumericalLimitError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An expectation value of a Hermitian observable came out with an imaginary part.
class ConsistencyError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace parity
