#pragma once

#include <cstdint>
#include <optional>
#include <variant>
#include <vector>

#include "collatz/cycles.hpp"
#include "collatz/map.hpp"
#include "collatz/nat.hpp"

namespace collatz {

/// Applies the map k times. iterate_k(x, 0, v) == x.
Nat iterate_k(const Nat& x, std::uint64_t k, MapVariant variant = MapVariant::Standard);

/// Least k with Col^k(x) = 1, or nullopt if not reached within `budget`
/// applications. total_stopping_time(1) == 0.
std::optional<std::uint64_t> total_stopping_time(const Nat& x, std::uint64_t budget);

/// All y with col(y) == x, ascending: 2x always, (x-1)/3 when x = 4 mod 6.
std::vector<Nat> preimage(const Nat& x);

struct ReachesOne {
  std::uint64_t steps = 0;
  friend bool operator==(const ReachesOne&, const ReachesOne&) = default;
};

struct EntersCycle {
  ClosedLoop loop;
  /// Map applications before the orbit first lands on the loop.
  std::uint64_t tail_length = 0;
  friend bool operator==(const EntersCycle&, const EntersCycle&) = default;
};

struct Unresolved {
  std::uint64_t steps_taken = 0;
  Nat max_value_seen;
  friend bool operator==(const Unresolved&, const Unresolved&) = default;
};

using TrajectoryOutcome = std::variant<ReachesOne, EntersCycle, Unresolved>;

struct TrajectoryRecord {
  Nat start;
  /// Visited values starting at `start`; filled only when requested.
  /// For ReachesOne it ends at 1; for EntersCycle it covers the tail and
  /// one full turn of the loop; for Unresolved every value iterated.
  std::optional<std::vector<Nat>> values;
  TrajectoryOutcome outcome;
  Nat max_excursion;
};

struct ClassifyOptions {
  MapVariant variant = MapVariant::Standard;
  std::uint64_t step_budget = 100'000;
  /// Iteration gives up once a value exceeds this bound.
  std::optional<Nat> value_bound;
  bool keep_values = false;
};

/// Follows the orbit of x until it reaches 1, closes a loop, or runs out of
/// budget. Reaching 1 wins over loop detection, except when x is 1 itself:
/// then the loop through 1 is reported ((1,4,2,1) or the fixed point (1,1)).
/// Loop detection is Brent's algorithm, so memory does not grow with the
/// orbit length unless `keep_values` is set.
TrajectoryRecord classify_trajectory(const Nat& x, const ClassifyOptions& options = {});

}  // namespace collatz
