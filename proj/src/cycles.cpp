#include "collatz/cycles.hpp"

#include <algorithm>
#include <sstream>

namespace collatz {

LoopError::LoopError(Kind kind, std::string message, std::size_t index, Nat expected, Nat actual)
    : std::invalid_argument(std::move(message)),
      kind_(kind),
      index_(index),
      expected_(std::move(expected)),
      actual_(std::move(actual)) {}

std::string ClosedLoop::to_string() const {
  std::ostringstream os;
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (i != 0) os << ' ';
    os << values_[i];
  }
  return os.str();
}

ClosedLoop validate_loop(std::span<const Nat> candidate, MapVariant variant) {
  using Kind = LoopError::Kind;
  if (candidate.size() < 2) {
    throw LoopError(Kind::EmptySequence, "a closed loop needs at least one step");
  }
  for (std::size_t i = 0; i < candidate.size(); ++i) {
    if (candidate[i].is_zero()) {
      throw LoopError(Kind::ZeroElement, "loop element " + std::to_string(i) + " is zero", i);
    }
  }
  if (candidate.back() != candidate.front()) {
    throw LoopError(Kind::EndpointMismatch,
                    "loop ends at " + candidate.back().to_string() + " but starts at " +
                        candidate.front().to_string(),
                    candidate.size() - 1, candidate.front(), candidate.back());
  }
  for (std::size_t i = 1; i < candidate.size(); ++i) {
    Nat expected = apply_map(candidate[i - 1], variant);
    if (expected != candidate[i]) {
      std::string msg = "step mismatch at index " + std::to_string(i) + ": map(" +
                        candidate[i - 1].to_string() + ") = " + expected.to_string() +
                        ", found " + candidate[i].to_string();
      throw LoopError(Kind::StepMismatch, std::move(msg), i, std::move(expected), candidate[i]);
    }
  }

  // Rotate the body (without the repeated endpoint) so the minimum leads.
  std::vector<Nat> body(candidate.begin(), candidate.end() - 1);
  const auto min_it = std::min_element(body.begin(), body.end());
  std::rotate(body.begin(), min_it, body.end());
  body.push_back(body.front());
  return ClosedLoop(std::move(body), variant);
}

ClosedLoop canonical_loop_from_body(std::vector<Nat> body, MapVariant variant) {
  if (!body.empty()) body.push_back(body.front());
  return validate_loop(body, variant);
}

ClosedLoop loop_power(const ClosedLoop& loop, std::uint64_t m) {
  if (m == 0) throw DomainError("loop power requires m >= 1");
  const auto& v = loop.values();
  std::vector<Nat> out;
  out.reserve(loop.period() * m + 1);
  out.push_back(v.front());
  for (std::uint64_t copy = 0; copy < m; ++copy) {
    out.insert(out.end(), v.begin() + 1, v.end());
  }
  return validate_loop(out, loop.variant());
}

std::optional<ClosedLoop> find_cycle(const Nat& start, MapVariant variant,
                                     std::uint64_t step_budget) {
  if (start.is_zero()) throw DomainError("trajectory start must be positive");

  // Brent: the tortoise teleports to the hare at powers of two.
  Nat tortoise = start;
  Nat hare = start;
  std::uint64_t power = 1;
  std::uint64_t period = 0;
  std::uint64_t steps = 0;
  for (;;) {
    if (steps == step_budget) return std::nullopt;
    hare = apply_map(hare, variant);
    ++steps;
    ++period;
    if (hare == tortoise) break;
    if (period == power) {
      tortoise = hare;
      power *= 2;
      period = 0;
    }
  }

  // Any point on the loop will do; walk one period from the meeting point.
  std::vector<Nat> body;
  body.reserve(period);
  Nat v = hare;
  for (std::uint64_t i = 0; i < period; ++i) {
    body.push_back(v);
    v = apply_map(v, variant);
  }
  return canonical_loop_from_body(std::move(body), variant);
}

}  // namespace collatz
