#pragma once

#include <stdexcept>
#include <string>

namespace modval {

/// Probability mass above the Fock cutoff exceeds the configured tolerance.
class TruncationError : public std::runtime_error {
 public:
  TruncationError(const std::string& what, double leak)
      : std::runtime_error(what), leak_(leak) {}
  double leak() const noexcept { return leak_; }

 private:
  double leak_;
};

/// Post-selection probability is too small for the normalized state to mean anything.
class PostSelectionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A derived quantity is undefined for the given state (e.g. Mandel Q of vacuum).
class UndefinedQuantityError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

}  // namespace modval
