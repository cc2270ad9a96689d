#include "collatz/verifier.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <limits>
#include <sstream>
#include <thread>

#include "collatz/dynamics.hpp"
#include "json.hpp"

namespace collatz {
namespace {

constexpr u128 kTripleLimit = (~static_cast<u128>(0) - 1) / 3;

// Steps allowed between certification and reaching 1. Everything below the
// cutoff is assumed to converge, so running past this means the assumption
// handed to the verifier was false.
constexpr std::uint64_t kContinuationCap = std::uint64_t{1} << 32;

[[noreturn]] void throw_assumption_violated(const Nat& v) {
  throw std::runtime_error("value " + v.to_string() +
                           " lies below assume_verified_below but does not reach 1");
}

struct WalkLimits {
  std::uint64_t cutoff;
  std::uint64_t budget;
};

// Continuation after the 128-bit word overflowed.
NumberVerdict walk_unbounded(Nat v, std::uint64_t steps, Nat peak, bool certified,
                    std::uint64_t certified_at, const WalkLimits& limits,
                    const StoppingTimeCache& cache) {
  const Nat cutoff(limits.cutoff);
  for (;;) {
    if (v.is_one()) return {true, steps, peak};
    if (const auto small = v.to_u128()) {
      if (const auto hit = cache.lookup(*small)) {
        return {true, steps + hit->steps, std::max(peak, Nat(hit->peak))};
      }
    }
    if (!certified && v < cutoff) {
      certified = true;
      certified_at = steps;
    }
    if (!certified && steps == limits.budget) return {false, steps, peak};
    if (certified && steps - certified_at > kContinuationCap) throw_assumption_violated(v);
    v = col(v);
    ++steps;
    if (v > peak) peak = v;
  }
}

NumberVerdict walk(u128 x, const WalkLimits& limits, const StoppingTimeCache& cache) {
  u128 v = x;
  u128 peak = x;
  std::uint64_t steps = 0;
  std::uint64_t certified_at = 0;
  bool certified = false;
  for (;;) {
    if (v == 1) return {true, steps, Nat::from_u128(peak)};
    if (const auto hit = cache.lookup(v)) {
      return {true, steps + hit->steps, Nat::from_u128(std::max<u128>(peak, hit->peak))};
    }
    // Below the cutoff the number is known to converge; keep walking only to
    // complete its statistics.
    if (!certified && v < limits.cutoff) {
      certified = true;
      certified_at = steps;
    }
    if (!certified && steps == limits.budget) return {false, steps, Nat::from_u128(peak)};
    if (certified && steps - certified_at > kContinuationCap) {
      throw_assumption_violated(Nat::from_u128(v));
    }
    if ((v & 1) == 0) {
      v >>= 1;
    } else if (v > kTripleLimit) {
      return walk_unbounded(Nat::from_u128(v), steps, Nat::from_u128(peak), certified,
                            certified_at, limits, cache);
    } else {
      v = 3 * v + 1;
    }
    ++steps;
    if (v > peak) peak = v;
  }
}

const ClosedLoop& trivial_loop() {
  static const ClosedLoop loop = [] {
    const std::vector<Nat> values{1, 4, 2, 1};
    return validate_loop(values, MapVariant::Standard);
  }();
  return loop;
}

void insert_sorted_unique(std::vector<ClosedLoop>& loops, const ClosedLoop& loop) {
  const auto it = std::lower_bound(loops.begin(), loops.end(), loop);
  if (it == loops.end() || *it != loop) loops.insert(it, loop);
}

void absorb_stopping_time(std::optional<StoppingTimeRecord>& best, StoppingTimeRecord candidate) {
  if (!best || candidate.value > best->value ||
      (candidate.value == best->value && candidate.argmax < best->argmax)) {
    best = candidate;
  }
}

void absorb_excursion(std::optional<ExcursionRecord>& best, const ExcursionRecord& candidate) {
  if (!best || candidate.value > best->value ||
      (candidate.value == best->value && candidate.argmax < best->argmax)) {
    best = candidate;
  }
}

VerifyReport process_chunk(std::uint64_t lo, std::uint64_t hi, const VerifyConfig& config,
                           const StoppingTimeCache& cache) {
  VerifyReport report;
  report.segments = {NumberRange{lo, hi}};
  report.covered = hi - lo + 1;
  const WalkLimits limits{config.assume_verified_below, config.step_budget};
  for (std::uint64_t x = lo;; ++x) {
    NumberVerdict w = walk(x, limits, cache);
    if (w.converged) {
      ++report.verified_count;
      absorb_stopping_time(report.max_total_stopping_time, {w.steps, x});
      absorb_excursion(report.max_excursion, {std::move(w.peak), x});
    } else {
      report.unresolved.push_back(x);
      // Cold path: tell a genuine loop apart from a long trajectory.
      ClassifyOptions options;
      options.step_budget = config.step_budget;
      const auto record = classify_trajectory(Nat(x), options);
      if (const auto* cycle = std::get_if<EntersCycle>(&record.outcome)) {
        if (cycle->loop != trivial_loop()) insert_sorted_unique(report.cycles_found, cycle->loop);
      }
    }
    if (x == hi) break;
  }
  return report;
}

std::uint64_t cache_size_for(const VerifyConfig& config) {
  if (config.range_hi == std::numeric_limits<std::uint64_t>::max()) return config.cache_entries;
  return std::min(config.cache_entries, config.range_hi + 1);
}

void json_nat(nlohmann::ordered_json& slot, const Nat& n) {
  if (const auto small = n.to_u64()) {
    slot = *small;
  } else {
    slot = n.to_string();
  }
}

}  // namespace

NumberVerdict verify_number(const Nat& x, std::uint64_t assume_verified_below,
                            std::uint64_t step_budget, const StoppingTimeCache& cache) {
  if (x.is_zero()) throw DomainError("trajectory start must be a positive integer");
  const WalkLimits limits{assume_verified_below, step_budget};
  if (const auto small = x.to_u128(); small && !x.is_pinned()) return walk(*small, limits, cache);
  return walk_unbounded(x, 0, x, false, 0, limits, cache);
}

unsigned default_worker_count() { return std::max(1u, std::thread::hardware_concurrency()); }

void VerifyConfig::validate() const {
  std::vector<std::string> violations;
  if (range_lo == 0) violations.emplace_back("range_lo must be at least 1");
  if (range_lo > range_hi) violations.emplace_back("range_lo must not exceed range_hi");
  if (step_budget == 0) violations.emplace_back("step_budget must be at least 1");
  if (assume_verified_below == 0) violations.emplace_back("assume_verified_below must be at least 1");
  if (assume_verified_below > range_lo) {
    violations.emplace_back("assume_verified_below must not exceed range_lo");
  }
  if (chunk_size == 0) violations.emplace_back("chunk_size must be at least 1");
  if (worker_count == 0) violations.emplace_back("worker_count must be at least 1");
  if (cache_entries > std::numeric_limits<std::uint32_t>::max()) {
    violations.emplace_back("cache_entries must fit 32 bits");
  }
  if (violations.empty()) return;
  std::string message = "invalid verify config:";
  for (const auto& v : violations) message += " " + v + ";";
  message.pop_back();
  throw ConfigError(std::move(message), std::move(violations));
}

std::optional<NumberRange> VerifyReport::range() const {
  if (segments.empty()) return std::nullopt;
  return NumberRange{segments.front().lo, segments.back().hi};
}

double VerifyReport::throughput() const {
  const double seconds = std::chrono::duration<double>(wall_time).count();
  return seconds > 0 ? static_cast<double>(covered) / seconds : 0.0;
}

bool same_results(const VerifyReport& a, const VerifyReport& b) {
  return a.segments == b.segments && a.covered == b.covered && a.verified_count == b.verified_count &&
         a.unresolved == b.unresolved && a.cycles_found == b.cycles_found &&
         a.max_total_stopping_time == b.max_total_stopping_time &&
         a.max_excursion == b.max_excursion;
}

StoppingTimeCache::StoppingTimeCache(std::uint64_t entries, std::uint64_t step_budget)
    : steps_(entries, kUnknown), peaks_(entries, 0) {
  constexpr u128 kPeakLimit = std::numeric_limits<std::uint64_t>::max();
  for (std::uint64_t x = 1; x < entries; ++x) {
    u128 v = x;
    u128 peak = x;
    std::uint64_t steps = 0;
    for (;;) {
      if (v == 1) {
        steps_[x] = static_cast<std::uint32_t>(steps);
        peaks_[x] = static_cast<std::uint64_t>(peak);
        break;
      }
      if (v < x) {
        const std::uint64_t below = steps_[static_cast<std::size_t>(v)];
        if (below != kUnknown && steps + below < kUnknown) {
          steps_[x] = static_cast<std::uint32_t>(steps + below);
          peaks_[x] = std::max(static_cast<std::uint64_t>(peak), peaks_[static_cast<std::size_t>(v)]);
        }
        break;
      }
      if (steps == step_budget || ((v & 1) != 0 && v > kTripleLimit)) break;
      v = (v & 1) == 0 ? v >> 1 : 3 * v + 1;
      ++steps;
      peak = std::max(peak, v);
      if (peak > kPeakLimit) break;
    }
  }
}

VerifyReport verify_range(const VerifyConfig& config) {
  config.validate();
  const auto started = std::chrono::steady_clock::now();
  const StoppingTimeCache cache(cache_size_for(config), config.step_budget);
  VerifyReport report = verify_range(config, cache);
  report.wall_time = std::chrono::steady_clock::now() - started;
  return report;
}

VerifyReport verify_range(const VerifyConfig& config, const StoppingTimeCache& cache) {
  config.validate();
  const auto started = std::chrono::steady_clock::now();

  const std::uint64_t span_minus_one = config.range_hi - config.range_lo;
  const std::uint64_t chunk_count = span_minus_one / config.chunk_size + 1;
  std::vector<VerifyReport> parts(chunk_count);
  std::atomic<std::uint64_t> next{0};
  std::exception_ptr failure;
  std::atomic<bool> failed{false};

  auto work = [&] {
    for (;;) {
      const std::uint64_t i = next.fetch_add(1);
      if (i >= chunk_count || failed.load()) return;
      const std::uint64_t lo = config.range_lo + i * config.chunk_size;
      const std::uint64_t hi =
          (span_minus_one - i * config.chunk_size < config.chunk_size)
              ? config.range_hi
              : lo + config.chunk_size - 1;
      try {
        parts[i] = process_chunk(lo, hi, config, cache);
      } catch (...) {
        if (!failed.exchange(true)) failure = std::current_exception();
        return;
      }
    }
  };

  const auto workers = static_cast<unsigned>(
      std::min<std::uint64_t>(config.worker_count, chunk_count));
  if (workers <= 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
  }
  if (failure) std::rethrow_exception(failure);

  VerifyReport report;
  for (const auto& part : parts) report = merge_reports(report, part);
  report.wall_time = std::chrono::steady_clock::now() - started;
  return report;
}

VerifyReport verify_progressive(const VerifyConfig& config) {
  config.validate();
  const auto started = std::chrono::steady_clock::now();
  const StoppingTimeCache cache(cache_size_for(config), config.step_budget);
  const bool contiguous = config.assume_verified_below == config.range_lo;

  VerifyReport report;
  std::uint64_t cutoff = config.assume_verified_below;
  std::optional<std::uint64_t> smallest_unresolved;
  std::uint64_t wave_lo = config.range_lo;
  for (;;) {
    const std::uint64_t width = std::max(config.chunk_size, wave_lo);
    const std::uint64_t wave_hi =
        config.range_hi - wave_lo < width ? config.range_hi : wave_lo + width - 1;

    VerifyConfig wave = config;
    wave.range_lo = wave_lo;
    wave.range_hi = wave_hi;
    wave.assume_verified_below = cutoff;
    VerifyReport part = verify_range(wave, cache);
    if (!part.unresolved.empty() && !smallest_unresolved) smallest_unresolved = part.unresolved.front();
    report = merge_reports(report, part);

    if (wave_hi == config.range_hi) break;
    wave_lo = wave_hi + 1;
    if (contiguous) cutoff = std::min(wave_lo, smallest_unresolved.value_or(wave_lo));
  }
  report.wall_time = std::chrono::steady_clock::now() - started;
  return report;
}

VerifyReport merge_reports(const VerifyReport& a, const VerifyReport& b) {
  if (a.segments.empty()) return b;
  if (b.segments.empty()) return a;

  VerifyReport out;
  std::vector<NumberRange> all;
  all.reserve(a.segments.size() + b.segments.size());
  std::merge(a.segments.begin(), a.segments.end(), b.segments.begin(), b.segments.end(),
             std::back_inserter(all),
             [](const NumberRange& x, const NumberRange& y) { return x.lo < y.lo; });
  for (const NumberRange& seg : all) {
    if (out.segments.empty()) {
      out.segments.push_back(seg);
      continue;
    }
    NumberRange& last = out.segments.back();
    if (seg.lo <= last.hi) throw std::invalid_argument("cannot merge reports over overlapping ranges");
    if (seg.lo == last.hi + 1) {
      last.hi = seg.hi;
    } else {
      out.segments.push_back(seg);
    }
  }
  out.covered = a.covered + b.covered;
  out.verified_count = a.verified_count + b.verified_count;
  out.unresolved.reserve(a.unresolved.size() + b.unresolved.size());
  std::merge(a.unresolved.begin(), a.unresolved.end(), b.unresolved.begin(), b.unresolved.end(),
             std::back_inserter(out.unresolved));
  out.cycles_found = a.cycles_found;
  for (const auto& loop : b.cycles_found) insert_sorted_unique(out.cycles_found, loop);
  out.max_total_stopping_time = a.max_total_stopping_time;
  if (b.max_total_stopping_time) {
    absorb_stopping_time(out.max_total_stopping_time, *b.max_total_stopping_time);
  }
  out.max_excursion = a.max_excursion;
  if (b.max_excursion) absorb_excursion(out.max_excursion, *b.max_excursion);
  out.wall_time = a.wall_time + b.wall_time;
  return out;
}

std::string to_json(const VerifyReport& report, const SerializeOptions& options) {
  using nlohmann::ordered_json;
  ordered_json doc;
  if (const auto hull = report.range()) {
    doc["range"] = {{"lo", hull->lo}, {"hi", hull->hi}};
  } else {
    doc["range"] = nullptr;
  }
  if (report.segments.size() > 1) {
    auto& segments = doc["segments"] = ordered_json::array();
    for (const auto& seg : report.segments) segments.push_back({{"lo", seg.lo}, {"hi", seg.hi}});
  }
  doc["covered"] = report.covered;
  doc["verified_count"] = report.verified_count;
  doc["unresolved"] = report.unresolved;
  auto& loops = doc["cycles_found"] = ordered_json::array();
  for (const auto& loop : report.cycles_found) {
    ordered_json values = ordered_json::array();
    for (const auto& v : loop.values()) json_nat(values.emplace_back(), v);
    loops.push_back(std::move(values));
  }
  if (report.max_total_stopping_time) {
    doc["max_total_stopping_time"] = {{"value", report.max_total_stopping_time->value},
                                      {"argmax", report.max_total_stopping_time->argmax}};
  } else {
    doc["max_total_stopping_time"] = nullptr;
  }
  if (report.max_excursion) {
    ordered_json record;
    json_nat(record["value"], report.max_excursion->value);
    record["argmax"] = report.max_excursion->argmax;
    doc["max_excursion"] = std::move(record);
  } else {
    doc["max_excursion"] = nullptr;
  }
  if (options.include_timing) {
    doc["wall_time_ms"] = std::chrono::duration<double, std::milli>(report.wall_time).count();
    doc["throughput"] = report.throughput();
  }
  return doc.dump();
}

std::string to_csv(const VerifyReport& report, const SerializeOptions& options) {
  std::ostringstream os;
  os << "statistic,value,argmax\n";
  if (const auto hull = report.range()) {
    os << "range_lo," << hull->lo << ",\n";
    os << "range_hi," << hull->hi << ",\n";
  }
  os << "covered," << report.covered << ",\n";
  os << "verified_count," << report.verified_count << ",\n";
  os << "unresolved_count," << report.unresolved.size() << ",\n";
  os << "cycles_found," << report.cycles_found.size() << ",\n";
  if (report.max_total_stopping_time) {
    os << "max_total_stopping_time," << report.max_total_stopping_time->value << ','
       << report.max_total_stopping_time->argmax << '\n';
  }
  if (report.max_excursion) {
    os << "max_excursion," << report.max_excursion->value << ',' << report.max_excursion->argmax
       << '\n';
  }
  if (options.include_timing) {
    os << "wall_time_ms," << std::chrono::duration<double, std::milli>(report.wall_time).count()
       << ",\n";
    os << "throughput," << report.throughput() << ",\n";
  }
  return os.str();
}

}  // namespace collatz
