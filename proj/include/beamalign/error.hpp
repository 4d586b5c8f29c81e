#pragma once

#include <stdexcept>
#include <string>

namespace beamalign {

// Precondition violations on inputs (bad sizes, mismatched centers, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Thresholding removed every term of a series.
class EmptyTruncation : public std::runtime_error {
 public:
  EmptyTruncation() : std::runtime_error("empty truncation") {}
};

// Raised by the polynomial solver.
class SolverError : public std::runtime_error {
 public:
  enum class Kind { Degenerate, NonIsolated };

  explicit SolverError(Kind kind)
      : std::runtime_error(kind == Kind::Degenerate ? "degenerate system"
                                                    : "non-isolated roots"),
        kind_(kind) {}

  Kind kind() const noexcept { return kind_; }

 private:
  Kind kind_;
};

}  // namespace beamalign
