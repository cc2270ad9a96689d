#include <random>

#include "collatz/dynamics.hpp"
#include "collatz/verifier.hpp"
#include "doctest.h"
#include "json.hpp"
#include "oracle.hpp"

using namespace collatz;

namespace {

VerifyConfig range(std::uint64_t lo, std::uint64_t hi) {
  VerifyConfig c;
  c.range_lo = lo;
  c.range_hi = hi;
  c.worker_count = 1;
  return c;
}

struct OracleStats {
  StoppingTimeRecord stopping;
  ExcursionRecord excursion;
};

OracleStats oracle_stats(std::uint64_t lo, std::uint64_t hi) {
  OracleStats s{{0, 0}, {Nat(0), 0}};
  bool first = true;
  for (std::uint64_t x = lo; x <= hi; ++x) {
    const auto [steps, peak] = oracle::stopping_time_and_peak(x);
    if (first || steps > s.stopping.value) s.stopping = {steps, x};
    if (first || Nat(peak) > s.excursion.value) s.excursion = {Nat(peak), x};
    first = false;
  }
  return s;
}

}  // namespace

TEST_CASE("single number range") {
  const auto r = verify_range(range(1, 1));
  CHECK(r.verified_count == 1);
  CHECK(r.covered == 1);
  CHECK(r.max_total_stopping_time == StoppingTimeRecord{0, 1});
  CHECK(r.max_excursion == ExcursionRecord{Nat(1), 1});
  CHECK(r.unresolved.empty());
}

TEST_CASE("1..100 matches the iteration oracle") {
  const auto expected = oracle_stats(1, 100);
  CHECK(expected.stopping.argmax == 97);
  CHECK(expected.excursion == ExcursionRecord{Nat(9232), 27});
  for (std::uint64_t cache : {0u, 101u, 1u << 20}) {
    auto c = range(1, 100);
    c.cache_entries = cache;
    const auto r = verify_range(c);
    CHECK(r.verified_count == 100);
    CHECK(r.max_total_stopping_time == expected.stopping);
    CHECK(r.max_excursion == expected.excursion);
    CHECK(r.cycles_found.empty());
  }
}

TEST_CASE("config validation names every violation") {
  auto c = range(10, 5);
  c.chunk_size = 0;
  c.worker_count = 0;
  c.assume_verified_below = 11;
  try {
    c.validate();
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    CHECK(e.violations().size() == 4);
    const std::string what = e.what();
    CHECK(what.find("range_lo must not exceed range_hi") != std::string::npos);
    CHECK(what.find("chunk_size") != std::string::npos);
    CHECK(what.find("worker_count") != std::string::npos);
    CHECK(what.find("assume_verified_below") != std::string::npos);
  }
  CHECK_THROWS_AS(verify_range(range(0, 3)), ConfigError);
  auto zero_budget = range(1, 3);
  zero_budget.step_budget = 0;
  CHECK_THROWS_AS(verify_range(zero_budget), ConfigError);
}

TEST_CASE("budget exhaustion lands in unresolved") {
  auto c = range(1, 200);
  c.cache_entries = 0;
  c.step_budget = 50;
  const auto r = verify_range(c);
  std::vector<std::uint64_t> expected;
  for (std::uint64_t x = 1; x <= 200; ++x) {
    if (oracle::stopping_time_and_peak(x).first > 50) expected.push_back(x);
  }
  CHECK(r.unresolved == expected);
  CHECK(r.verified_count + r.unresolved.size() == 200);
  CHECK(r.cycles_found.empty());
}

TEST_CASE("merge_reports") {
  const auto whole = verify_range(range(1, 100));
  const auto left = verify_range(range(1, 50));
  const auto right = verify_range(range(51, 100));
  CHECK(same_results(merge_reports(left, right), whole));
  CHECK(same_results(merge_reports(right, left), whole));

  const VerifyReport empty;
  CHECK(same_results(merge_reports(whole, empty), whole));
  CHECK(same_results(merge_reports(empty, whole), whole));
  CHECK_THROWS_AS(merge_reports(whole, left), std::invalid_argument);

  std::mt19937_64 rng(9);
  const auto full = verify_range(range(1, 1000));
  for (int trial = 0; trial < 25; ++trial) {
    std::uint64_t a = rng() % 998 + 1;
    std::uint64_t b = rng() % 998 + 1;
    if (a > b) std::swap(a, b);
    if (a == b) ++b;
    const auto p = verify_range(range(1, a));
    const auto q = verify_range(range(a + 1, b));
    const auto s = verify_range(range(b + 1, 1000));
    CHECK(same_results(merge_reports(p, q), merge_reports(q, p)));
    CHECK(same_results(merge_reports(merge_reports(p, q), s), merge_reports(p, merge_reports(q, s))));
    CHECK(same_results(merge_reports(merge_reports(s, p), q), full));
  }
}

TEST_CASE("reports do not depend on workers or chunking") {
  auto base = range(1, 30'000);
  base.chunk_size = 777;
  const auto reference = verify_range(base);
  for (unsigned workers : {1u, 2u, 8u}) {
    for (std::uint64_t chunk : {1u, 1000u, 1u << 16}) {
      auto c = base;
      c.worker_count = workers;
      c.chunk_size = chunk;
      const auto r = verify_range(c);
      CHECK(same_results(r, reference));
      CHECK(to_json(r, {.include_timing = false}) == to_json(reference, {.include_timing = false}));
    }
  }
}

TEST_CASE("cutoff runs converge on the same set as naive runs") {
  auto naive = range(1, 100'000);
  naive.cache_entries = 0;
  const auto reference = verify_range(naive);
  CHECK(reference.verified_count == 100'000);

  auto staged = naive;
  staged.chunk_size = 4096;
  staged.worker_count = 2;
  CHECK(same_results(verify_progressive(staged), reference));

  // A later segment certified against the territory below it.
  auto tail = range(50'001, 100'000);
  tail.cache_entries = 0;
  tail.assume_verified_below = 50'001;
  auto tail_naive = tail;
  tail_naive.assume_verified_below = 1;
  CHECK(same_results(verify_range(tail), verify_range(tail_naive)));
}

TEST_CASE("progressive waves stop raising the cutoff at the first unresolved number") {
  auto c = range(1, 5000);
  c.cache_entries = 0;
  c.step_budget = 120;
  c.chunk_size = 64;
  const auto staged = verify_progressive(c);
  const auto flat = verify_range(c);
  // The budget bounds the walk to certification, so a raised cutoff can only
  // rescue numbers, never lose them.
  CHECK_FALSE(staged.unresolved.empty());
  CHECK(staged.unresolved.size() < flat.unresolved.size());
  CHECK(std::includes(flat.unresolved.begin(), flat.unresolved.end(), staged.unresolved.begin(),
                      staged.unresolved.end()));
  CHECK(staged.verified_count + staged.unresolved.size() == 5000);
  for (std::uint64_t x : staged.unresolved) CHECK(oracle::stopping_time_and_peak(x).first > 120);
}

TEST_CASE("excursion matches classify_trajectory on 1..10^4") {
  const auto r = verify_range(range(1, 10'000));
  Nat best;
  std::uint64_t argmax = 0;
  for (std::uint64_t x = 1; x <= 10'000; ++x) {
    const auto rec = classify_trajectory(Nat(x));
    if (rec.max_excursion > best) {
      best = rec.max_excursion;
      argmax = x;
    }
  }
  CHECK(r.max_excursion == ExcursionRecord{best, argmax});
}

TEST_CASE("stopping time cache agrees with the oracle") {
  const StoppingTimeCache cache(5000, 100'000);
  CHECK_FALSE(cache.lookup(0).has_value());
  CHECK_FALSE(cache.lookup(5000).has_value());
  for (std::uint64_t x = 1; x < 5000; ++x) {
    const auto e = cache.lookup(x);
    REQUIRE(e);
    const auto [steps, peak] = oracle::stopping_time_and_peak(x);
    CHECK(e->steps == steps);
    CHECK(e->peak == peak);
  }
}

TEST_CASE("verify_number escalates past 128 bits") {
  const StoppingTimeCache none;
  // 2^127 + 1 is odd and triples out of the fixed-width word.
  const Nat x = Nat::from_big((BigInt(1) << 127) + 1);
  const auto verdict = verify_number(x, 1, 100'000, none);
  const auto rec = classify_trajectory(x);
  REQUIRE(verdict.converged);
  CHECK(verdict.steps == std::get<ReachesOne>(rec.outcome).steps);
  CHECK(verdict.peak == rec.max_excursion);
  CHECK(verdict.peak.is_unbounded());

  std::mt19937_64 rng(21);
  const StoppingTimeCache cache(1 << 12, 100'000);
  for (int trial = 0; trial < 300; ++trial) {
    const Nat y(rng() % 1'000'000 + 1);
    const auto fast = verify_number(y, 1, 100'000, cache);
    const auto slow = verify_number(Nat::unbounded(y), 1, 100'000, cache);
    CHECK(fast.converged == slow.converged);
    CHECK(fast.steps == slow.steps);
    CHECK(fast.peak == slow.peak);
  }
}

TEST_CASE("JSON and CSV serialization") {
  auto r = verify_range(range(1, 100));
  const auto doc = nlohmann::json::parse(to_json(r));
  CHECK(doc["range"]["lo"] == 1);
  CHECK(doc["range"]["hi"] == 100);
  CHECK(doc["verified_count"] == 100);
  CHECK(doc["max_total_stopping_time"]["argmax"] == 97);
  CHECK(doc["max_excursion"]["value"] == 9232);
  CHECK(doc["max_excursion"]["argmax"] == 27);
  CHECK(doc.contains("wall_time_ms"));
  CHECK(doc.contains("throughput"));
  CHECK_FALSE(nlohmann::json::parse(to_json(r, {.include_timing = false})).contains("wall_time_ms"));

  const auto csv = to_csv(r, {.include_timing = false});
  CHECK(csv ==
        "statistic,value,argmax\n"
        "range_lo,1,\n"
        "range_hi,100,\n"
        "covered,100,\n"
        "verified_count,100,\n"
        "unresolved_count,0,\n"
        "cycles_found,0,\n"
        "max_total_stopping_time,118,97\n"
        "max_excursion,9232,27\n");

  r.max_excursion->value = Nat::parse("123456789012345678901234567890");
  CHECK(nlohmann::json::parse(to_json(r))["max_excursion"]["value"] ==
        "123456789012345678901234567890");

  const auto empty = nlohmann::json::parse(to_json(VerifyReport{}));
  CHECK(empty["range"].is_null());
  CHECK(empty["max_excursion"].is_null());
}

TEST_CASE("gapped coverage serializes its segments") {
  VerifyConfig a;
  a.range_lo = 1;
  a.range_hi = 10;
  VerifyConfig b = a;
  b.range_lo = 21;
  b.range_hi = 30;
  const auto merged = merge_reports(verify_range(a), verify_range(b));
  CHECK(merged.covered == 20);
  const auto doc = nlohmann::json::parse(to_json(merged, {.include_timing = false}));
  CHECK(doc["range"]["lo"] == 1);
  CHECK(doc["range"]["hi"] == 30);
  REQUIRE(doc["segments"].size() == 2);
  CHECK(doc["segments"][1]["lo"] == 21);
  CHECK_FALSE(nlohmann::json::parse(to_json(verify_range(a))).contains("segments"));
}
