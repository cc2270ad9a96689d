#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "collatz/cycles.hpp"
#include "collatz/nat.hpp"

namespace collatz {

class ConfigError : public std::invalid_argument {
 public:
  ConfigError(std::string message, std::vector<std::string> violations)
      : std::invalid_argument(std::move(message)), violations_(std::move(violations)) {}
  /// One entry per violated field constraint.
  [[nodiscard]] const std::vector<std::string>& violations() const noexcept { return violations_; }

 private:
  std::vector<std::string> violations_;
};

unsigned default_worker_count();

struct VerifyConfig {
  std::uint64_t range_lo = 1;
  std::uint64_t range_hi = 1;
  std::uint64_t step_budget = 100'000;
  /// Trajectories that drop strictly below this are certified. 1 disables
  /// the shortcut.
  std::uint64_t assume_verified_below = 1;
  std::uint64_t chunk_size = 1 << 16;
  unsigned worker_count = default_worker_count();
  /// Size of the dense stopping-time table; 0 disables memoization.
  std::uint64_t cache_entries = 1 << 20;

  /// Throws ConfigError naming every violated constraint.
  void validate() const;
};

struct StoppingTimeRecord {
  std::uint64_t value = 0;
  std::uint64_t argmax = 0;
  friend bool operator==(const StoppingTimeRecord&, const StoppingTimeRecord&) = default;
};

struct ExcursionRecord {
  Nat value;
  std::uint64_t argmax = 0;
  friend bool operator==(const ExcursionRecord&, const ExcursionRecord&) = default;
};

struct NumberRange {
  std::uint64_t lo = 0;
  std::uint64_t hi = 0;
  friend bool operator==(const NumberRange&, const NumberRange&) = default;
};

/// Aggregate outcome of a range sweep. Maxima are taken over converged
/// numbers only; ties go to the smaller argmax.
struct VerifyReport {
  /// Covered numbers as sorted, disjoint, non-adjacent segments; empty for
  /// the empty report.
  std::vector<NumberRange> segments;
  /// Numbers classified; the total length of `segments`.
  std::uint64_t covered = 0;
  std::uint64_t verified_count = 0;
  /// Ascending.
  std::vector<std::uint64_t> unresolved;
  /// Loops other than (1,4,2,1) entered by unresolved numbers; ascending, unique.
  std::vector<ClosedLoop> cycles_found;
  std::optional<StoppingTimeRecord> max_total_stopping_time;
  std::optional<ExcursionRecord> max_excursion;
  std::chrono::nanoseconds wall_time{0};

  /// Smallest segment containing every covered number.
  [[nodiscard]] std::optional<NumberRange> range() const;
  /// Numbers per second.
  [[nodiscard]] double throughput() const;
};

/// Equality of everything except timing.
bool same_results(const VerifyReport& a, const VerifyReport& b);

/// Dense memo of total stopping time and peak value for small starts.
/// Filled once, sequentially, in ascending order, each entry reusing the
/// entries below it; read-only afterwards.
class StoppingTimeCache {
 public:
  struct Entry {
    std::uint32_t steps;
    std::uint64_t peak;
  };

  StoppingTimeCache() = default;
  StoppingTimeCache(std::uint64_t entries, std::uint64_t step_budget);

  [[nodiscard]] std::uint64_t size() const noexcept { return steps_.size(); }
  [[nodiscard]] std::optional<Entry> lookup(u128 v) const noexcept {
    if (v >= steps_.size() || steps_[static_cast<std::size_t>(v)] == kUnknown) return std::nullopt;
    const auto i = static_cast<std::size_t>(v);
    return Entry{steps_[i], peaks_[i]};
  }

 private:
  static constexpr std::uint32_t kUnknown = ~std::uint32_t{0};
  std::vector<std::uint32_t> steps_;
  std::vector<std::uint64_t> peaks_;
};

/// Result of walking one start value for a sweep. `steps` is the total
/// stopping time and `peak` the largest value on the full trajectory.
struct NumberVerdict {
  bool converged = false;
  std::uint64_t steps = 0;
  Nat peak;
};

/// Walks x with a 128-bit word, switching to arbitrary precision if the
/// trajectory outgrows it. Certification happens on reaching 1, a cached
/// value, or a value below `assume_verified_below`. `step_budget` bounds the
/// walk up to certification; after it the walk continues until the
/// statistics are complete, and throws std::runtime_error if that takes
/// implausibly long (the cutoff assumption was false).
NumberVerdict verify_number(const Nat& x, std::uint64_t assume_verified_below,
                            std::uint64_t step_budget, const StoppingTimeCache& cache);

/// Classifies every x in [lo, hi]. Converged means the trajectory reached 1
/// or dropped below `assume_verified_below`; in the latter case it is still
/// followed to 1 (or into the cache) so statistics stay exact. Results do
/// not depend on chunk_size or worker_count.
VerifyReport verify_range(const VerifyConfig& config);
VerifyReport verify_range(const VerifyConfig& config, const StoppingTimeCache& cache);

/// verify_range in ascending waves of doubling width. When the certified
/// territory below the range is contiguous (assume_verified_below ==
/// range_lo), each wave uses its own lower bound as the cutoff, never
/// passing the smallest unresolved number seen so far.
VerifyReport verify_progressive(const VerifyConfig& config);

/// Combines reports over non-overlapping ranges. Associative and
/// commutative; the empty report is the identity. Throws std::invalid_argument
/// on overlap.
VerifyReport merge_reports(const VerifyReport& a, const VerifyReport& b);

struct SerializeOptions {
  bool include_timing = true;
};

/// Values that do not fit 64 bits are written as decimal strings. `range`
/// is the hull; a `segments` list follows when the coverage has gaps.
std::string to_json(const VerifyReport& report, const SerializeOptions& options = {});
/// Header `statistic,value,argmax`, one row per statistic.
std::string to_csv(const VerifyReport& report, const SerializeOptions& options = {});

}  // namespace collatz
