#pragma once

#include <stdexcept>
#include <string>

namespace arbor {

// Enumeration or search exceeded a configured bound. CLI maps this to exit code 3.
struct ResourceLimitError : std::runtime_error {
  explicit ResourceLimitError(const std::string& what) : std::runtime_error(what) {}
};

// Randomized group construction did not reach the certified target order.
struct HarvestError : std::runtime_error {
  explicit HarvestError(const std::string& what) : std::runtime_error(what) {}
};

// A procedure with a step cap ran past it (diagnostic, never silent).
struct NonTerminationError : std::runtime_error {
  explicit NonTerminationError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace arbor
