#pragma once

#include <stdexcept>
#include <string>

namespace entroflow {

// Caller passed arguments outside a routine's contract (bad sizes, bad
// ranges, malformed input).  Maps to process exit code 2.
class usage_error : public std::invalid_argument {
public:
  explicit usage_error(const std::string& what) : std::invalid_argument(what) {}
};

// A mathematical precondition failed on otherwise well-formed input
// (non-positive density, mass away from 1, non-confining potential).
// Maps to process exit code 1.
class domain_error : public std::runtime_error {
public:
  explicit domain_error(const std::string& what) : std::runtime_error(what) {}
};

// A field that was required to be an admissible initial datum is not:
// it fails positivity, mass, or spectral-support constraints.  Carries
// the violation margin so callers can report how badly it failed.
class non_admissible_error : public domain_error {
public:
  non_admissible_error(const std::string& what, double margin)
      : domain_error(what), margin_(margin) {}
  double margin() const noexcept { return margin_; }

private:
  double margin_;
};

}  // namespace entroflow
