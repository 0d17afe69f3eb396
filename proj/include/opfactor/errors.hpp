#pragma once

#include <stdexcept>
#include <string>

namespace opfactor {

/// Parameter outside the domain of an operation (negative squeeze scale,
/// anti-diffusive kernel, dilation scale <= 0, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A factor of the ordered product diverges (|cos t| -> 0 for the oscillator).
class SingularityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Fixed-step integration ran through a caustic.
class BlowUpError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Shift larger than half the grid width.
class ShiftTooLargeError : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

class InstabilityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Matrix norm too large for scaling and squaring.
class OverflowError : public std::overflow_error {
 public:
  using std::overflow_error::overflow_error;
};

/// Error raised by one element of an operator chain, tagged with its index.
class ChainError : public std::runtime_error {
 public:
  ChainError(std::size_t index, const std::string& what)
      : std::runtime_error("factor " + std::to_string(index) + ": " + what), index_(index) {}
  std::size_t index() const noexcept { return index_; }

 private:
  std::size_t index_;
};

}  // namespace opfactor
