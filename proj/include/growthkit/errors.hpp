#pragma once

#include <stdexcept>
#include <string>

namespace growthkit {

/// A word, oracle, or flow was used with an object of a different rank.
class rank_mismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Flow arithmetic mixed elements that live over different oracles.
class oracle_mismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A search or enumeration hit its state cap. `depth` is the last
/// radius that was completed before the cap was reached.
class budget_exceeded : public std::runtime_error {
 public:
  budget_exceeded(const std::string& what, int depth)
      : std::runtime_error(what + " (completed depth " + std::to_string(depth) + ")"),
        depth_(depth) {}
  int depth() const noexcept { return depth_; }

 private:
  int depth_;
};

/// An internal consistency check failed. Seeing this means a bug.
class invariant_violation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace growthkit
