#pragma once

#include <chrono>
#include <cstddef>
#include <cstdint>
#include <optional>

#include "torbase/arith.hpp"

namespace torbase {

/// Resource budgets shared by the Graver, fan and scan engines.
struct Budget {
  std::size_t graver_cap = 1'000'000;  // candidate vectors
  Int degree_cap = 1'000'000'000;
  std::size_t fan_cap = 100'000;  // cones
  std::int64_t tuple_timeout_ms = 60'000;
  /// Set per tuple by the scan harness; long loops poll it.
  std::optional<std::chrono::steady_clock::time_point> deadline;

  /// Throws ResourceLimitError once the deadline has passed.
  void check_deadline() const;
  /// Copy with the deadline set tuple_timeout_ms from now.
  Budget with_tuple_deadline() const;

  /// Defaults overridden by TORBASE_GRAVER_CAP, TORBASE_FAN_CAP and
  /// TORBASE_TUPLE_TIMEOUT_MS when set.
  static Budget from_env();
};

}  // namespace torbase
