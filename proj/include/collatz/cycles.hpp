#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "collatz/map.hpp"
#include "collatz/nat.hpp"

namespace collatz {

/// A closed orbit segment (a_0, ..., a_k) with a_k = a_0 and every step one
/// application of the map. Instances are always valid and canonical: the
/// first element is the minimum of the loop. Fixed points are stored as
/// (x, x).
class ClosedLoop {
 public:
  [[nodiscard]] const std::vector<Nat>& values() const noexcept { return values_; }
  [[nodiscard]] MapVariant variant() const noexcept { return variant_; }
  /// Number of map applications to return to the start (k).
  [[nodiscard]] std::size_t period() const noexcept { return values_.size() - 1; }
  [[nodiscard]] const Nat& minimum() const { return values_.front(); }
  [[nodiscard]] bool is_fixed_point() const noexcept { return period() == 1; }
  /// Space separated values, e.g. "1 4 2 1".
  [[nodiscard]] std::string to_string() const;

  friend bool operator==(const ClosedLoop&, const ClosedLoop&) = default;
  friend auto operator<=>(const ClosedLoop& a, const ClosedLoop& b) {
    return a.values_ <=> b.values_;
  }

 private:
  friend ClosedLoop validate_loop(std::span<const Nat>, MapVariant);
  ClosedLoop(std::vector<Nat> values, MapVariant variant)
      : values_(std::move(values)), variant_(variant) {}

  std::vector<Nat> values_;
  MapVariant variant_ = MapVariant::Standard;
};

class LoopError : public std::invalid_argument {
 public:
  enum class Kind { EmptySequence, EndpointMismatch, StepMismatch, ZeroElement };

  LoopError(Kind kind, std::string message, std::size_t index = 0, Nat expected = {},
            Nat actual = {});

  [[nodiscard]] Kind kind() const noexcept { return kind_; }
  /// Position of the offending element (StepMismatch, ZeroElement).
  [[nodiscard]] std::size_t index() const noexcept { return index_; }
  /// For StepMismatch: map(values[index-1]) and values[index].
  [[nodiscard]] const Nat& expected() const noexcept { return expected_; }
  [[nodiscard]] const Nat& actual() const noexcept { return actual_; }

 private:
  Kind kind_;
  std::size_t index_;
  Nat expected_;
  Nat actual_;
};

/// Checks a candidate loop against the map and returns it rotated so the
/// minimum comes first. Candidates shorter than two elements have no step
/// and are rejected as EmptySequence. Throws LoopError.
ClosedLoop validate_loop(std::span<const Nat> candidate, MapVariant variant);

/// The loop traversed m times: a_0 followed by m copies of (a_1..a_k).
ClosedLoop loop_power(const ClosedLoop& loop, std::uint64_t m);

/// Canonical loop eventually entered by the orbit of `start`, found with
/// Brent's algorithm in constant memory, or nullopt when the orbit has not
/// closed after `step_budget` map applications.
std::optional<ClosedLoop> find_cycle(const Nat& start, MapVariant variant,
                                     std::uint64_t step_budget);

/// Rotates a cycle body (a_0..a_{k-1}, without the repeated endpoint) to
/// minimum-first order and validates it.
ClosedLoop canonical_loop_from_body(std::vector<Nat> body, MapVariant variant);

}  // namespace collatz
