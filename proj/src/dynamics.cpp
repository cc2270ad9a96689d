#include "collatz/dynamics.hpp"

#include <utility>

namespace collatz {
namespace {

void require_positive(const Nat& x) {
  if (x.is_zero()) throw DomainError("trajectory start must be a positive integer");
}

}  // namespace

Nat iterate_k(const Nat& x, std::uint64_t k, MapVariant variant) {
  require_positive(x);
  Nat v = x;
  for (std::uint64_t i = 0; i < k; ++i) v = apply_map(v, variant);
  return v;
}

std::optional<std::uint64_t> total_stopping_time(const Nat& x, std::uint64_t budget) {
  require_positive(x);
  Nat v = x;
  for (std::uint64_t steps = 0;; ++steps) {
    if (v.is_one()) return steps;
    if (steps == budget) return std::nullopt;
    v = col(v);
  }
}

std::vector<Nat> preimage(const Nat& x) {
  require_positive(x);
  std::vector<Nat> out;
  if (x.mod(6) == 4) out.push_back((x - 1) / 3);
  out.push_back(x * 2);
  return out;
}

TrajectoryRecord classify_trajectory(const Nat& x, const ClassifyOptions& options) {
  require_positive(x);

  TrajectoryRecord record{.start = x, .values = std::nullopt, .outcome = ReachesOne{},
                          .max_excursion = x};
  if (options.keep_values) record.values.emplace(1, x);

  const bool start_is_one = x.is_one();
  Nat v = x;
  Nat tortoise = x;
  std::uint64_t power = 1;
  std::uint64_t period = 0;
  std::uint64_t steps = 0;

  for (;;) {
    if (!start_is_one && v.is_one()) {
      record.outcome = ReachesOne{steps};
      return record;
    }
    if (steps == options.step_budget || (options.value_bound && v > *options.value_bound)) {
      record.outcome = Unresolved{steps, record.max_excursion};
      return record;
    }

    v = apply_map(v, options.variant);
    ++steps;
    ++period;
    if (v > record.max_excursion) record.max_excursion = v;
    if (record.values) record.values->push_back(v);

    if (v == tortoise) break;
    if (period == power) {
      tortoise = v;
      power *= 2;
      period = 0;
    }
  }

  // The orbit is periodic with `period`; locate the first point on the loop.
  Nat lead = iterate_k(x, period, options.variant);
  Nat trail = x;
  std::uint64_t tail = 0;
  while (trail != lead) {
    trail = apply_map(trail, options.variant);
    lead = apply_map(lead, options.variant);
    ++tail;
  }
  std::vector<Nat> body;
  body.reserve(period);
  for (std::uint64_t i = 0; i < period; ++i) {
    body.push_back(trail);
    trail = apply_map(trail, options.variant);
  }
  if (record.values) record.values->resize(tail + period + 1);
  record.outcome = EntersCycle{canonical_loop_from_body(std::move(body), options.variant), tail};
  return record;
}

}  // namespace collatz
