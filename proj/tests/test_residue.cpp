#include <regex>

#include "collatz/map.hpp"
#include "collatz/residue.hpp"
#include "doctest.h"
#include "oracle.hpp"

using namespace collatz;

namespace {

std::vector<std::pair<std::size_t, std::size_t>> pairs_of(const TransitionGraph& g) {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (const auto& e : g.edges()) out.emplace_back(e.from, e.to);
  return out;
}

std::size_t count_edge_lines(const std::string& dot) {
  const std::regex edge_line(R"(^\s+\d+ -> \d+ )");
  std::size_t n = 0;
  std::istringstream in(dot);
  for (std::string line; std::getline(in, line);) n += std::regex_search(line, edge_line) ? 1 : 0;
  return n;
}

}  // namespace

TEST_CASE("class_of") {
  CHECK(class_of(Nat(21), 10).residue == 1);
  CHECK(class_of(Nat(10), 10).residue == 0);
  CHECK(class_of(Nat(47), 10).residue == 7);
  CHECK_THROWS_AS(class_of(Nat(5), 0), DomainError);
  CHECK_THROWS_AS(class_of(Nat(0), 10), DomainError);

  const ResidueClass zero{10, 0};
  CHECK_FALSE(zero.contains(Nat(0)));
  CHECK(zero.contains(Nat(10)));
  // Membership matches "last digit is k, value positive".
  for (std::uint64_t x = 1; x <= 1000; ++x) {
    for (std::uint64_t k = 0; k < 10; ++k) {
      CHECK(ResidueClass{10, k}.contains(Nat(x)) == (x % 10 == k));
    }
  }
}

TEST_CASE("transition_targets documented cases") {
  using T = std::vector<Transition>;
  CHECK(transition_targets(10, 1) == T{{4, Branch::Triple}});
  CHECK(transition_targets(10, 2) == T{{1, Branch::Halve}, {6, Branch::Halve}});
  CHECK(transition_targets(10, 0) == T{{0, Branch::Halve}, {5, Branch::Halve}});
  CHECK(transition_targets(3, 2) == T{{1, Branch::Halve}, {1, Branch::Triple}});
  CHECK(transition_targets(2, 1) == T{{0, Branch::Triple}});
  CHECK(transition_targets(1, 0) == T{{0, Branch::Halve}, {0, Branch::Triple}});
  CHECK_THROWS_AS(transition_targets(10, 10), DomainError);
  CHECK_THROWS_AS(transition_targets(0, 0), DomainError);

  // Brute force over x = 2 mod 3, x <= 30.
  std::set<std::uint64_t> seen;
  for (std::uint64_t x = 2; x <= 30; x += 3) seen.insert(oracle::step(x) % 3);
  CHECK(seen == std::set<std::uint64_t>{1});
}

TEST_CASE("odd moduli: halving multiplies by the inverse of two") {
  for (std::uint64_t m = 3; m <= 51; m += 2) {
    for (std::uint64_t r = 0; r < m; ++r) {
      const auto t = transition_targets(m, r);
      const auto halve = std::find_if(t.begin(), t.end(),
                                      [](const Transition& e) { return e.branch == Branch::Halve; });
      REQUIRE(halve != t.end());
      CHECK((halve->to * 2) % m == r);
    }
  }
}

TEST_CASE("build_graph reproduces the decimal transition graph") {
  const auto g = build_graph(10);
  const std::vector<Edge> expected{
      {0, 0, Branch::Halve}, {0, 5, Branch::Halve},  {1, 4, Branch::Triple},
      {2, 1, Branch::Halve}, {2, 6, Branch::Halve},  {3, 0, Branch::Triple},
      {4, 2, Branch::Halve}, {4, 7, Branch::Halve},  {5, 6, Branch::Triple},
      {6, 3, Branch::Halve}, {6, 8, Branch::Halve},  {7, 2, Branch::Triple},
      {8, 4, Branch::Halve}, {8, 9, Branch::Halve},  {9, 8, Branch::Triple}};
  CHECK(g.edges() == expected);
  CHECK(g.distinct_edge_count() == 15);
}

TEST_CASE("small graphs") {
  const auto g2 = build_graph(2);
  CHECK(g2.edges() == std::vector<Edge>{{0, 0, Branch::Halve}, {0, 1, Branch::Halve},
                                        {1, 0, Branch::Triple}});
  std::set<std::pair<std::uint64_t, std::uint64_t>> witnessed;
  for (const auto& w : oracle::witness_edges(2, 20)) witnessed.insert({w.from, w.to});
  CHECK(witnessed.size() == 3);

  const auto g1 = build_graph(1);
  CHECK(g1.modulus() == 1);
  CHECK(g1.successors(0) == std::vector<std::uint64_t>{0});
  CHECK_THROWS_AS(build_graph(0), DomainError);
}

TEST_CASE("out_degree") {
  const auto g10 = build_graph(10);
  CHECK(out_degree(g10, 3) == 1);
  CHECK(out_degree(g10, 8) == 2);
  CHECK(out_degree(build_graph(3), 2) == 1);
  CHECK_THROWS_AS((void)out_degree(g10, 10), DomainError);
}

TEST_CASE("edges are sound and complete against witnesses, m in 2..50") {
  for (std::uint64_t m = 2; m <= 50; ++m) {
    const auto g = build_graph(m);
    std::set<oracle::WitnessEdge> from_graph;
    for (const auto& e : g.edges()) from_graph.insert({e.from, e.to, e.branch == Branch::Triple});
    CHECK_MESSAGE(from_graph == oracle::witness_edges(m, 10 * m), "modulus " << m);
  }
}

TEST_CASE("even moduli: degree law and 3m/2 distinct edges") {
  for (std::uint64_t m = 2; m <= 100; m += 2) {
    const auto g = build_graph(m);
    for (std::uint64_t r = 0; r < m; ++r) CHECK(g.out_degree(r) == (r % 2 == 1 ? 1u : 2u));
    CHECK(g.distinct_edge_count() == 3 * m / 2);
  }
}

TEST_CASE("in-degree at modulus 10 mirrors the parity law") {
  const auto g = build_graph(10);
  for (std::uint64_t r = 0; r < 10; ++r) {
    std::size_t brute = 0;
    for (const auto& e : g.edges()) brute += e.to == r ? 1 : 0;
    CHECK(g.in_degree(r) == brute);
    CHECK(g.in_degree(r) == (r % 2 == 1 ? 1u : 2u));
  }
}

TEST_CASE("strongly connected components") {
  using Parts = std::vector<std::vector<std::uint64_t>>;
  CHECK(strongly_connected_components(build_graph(10)) ==
        Parts{{0, 1, 2, 3, 4, 5, 6, 7, 8, 9}});
  CHECK(strongly_connected_components(build_graph(2)) == Parts{{0, 1}});
  CHECK(strongly_connected_components(build_graph(1)) == Parts{{0}});

  for (std::uint64_t m = 1; m <= 60; ++m) {
    const auto g = build_graph(m);
    CHECK_MESSAGE(strongly_connected_components(g) ==
                      oracle::components_by_reachability(m, pairs_of(g)),
                  "modulus " << m);
  }

  // A graph with several components and a cross edge.
  const TransitionGraph custom(5, {{0, 1, Branch::Halve},
                                   {1, 0, Branch::Halve},
                                   {1, 2, Branch::Triple},
                                   {3, 4, Branch::Halve},
                                   {4, 3, Branch::Triple}});
  CHECK(strongly_connected_components(custom) == Parts{{0, 1}, {2}, {3, 4}});
}

TEST_CASE("to_dot") {
  const auto dot10 = to_dot(build_graph(10));
  CHECK(count_edge_lines(dot10) == 15);
  CHECK(dot10.find("  8 -> 9 [label=\"Col\", branch=\"Halve\"];\n") != std::string::npos);
  CHECK(dot10.find("  9 -> 8 [label=\"Col\", branch=\"Triple\"];\n") != std::string::npos);
  CHECK(dot10 == to_dot(build_graph(10)));

  const auto dot1 = to_dot(build_graph(1));
  CHECK(count_edge_lines(dot1) == 1);
  CHECK(dot1.find("0 -> 0 [label=\"Col\", branch=\"Halve|Triple\"]") != std::string::npos);
  CHECK(count_edge_lines(to_dot(build_graph(2))) == 3);
}

TEST_CASE("JSON adjacency export") {
  const auto g = build_graph(10);
  const auto text = to_json(g);
  CHECK(text.rfind(R"({"modulus":10,"edges":[{"from":0,"to":0,"branch":"Halve"},)", 0) == 0);
  for (std::uint64_t m = 1; m <= 30; ++m) CHECK(graph_from_json(to_json(build_graph(m))) == build_graph(m));
  CHECK_THROWS(graph_from_json(R"({"modulus":2,"edges":[{"from":0,"to":5,"branch":"Halve"}]})"));
  CHECK_THROWS(graph_from_json(R"({"modulus":2,"edges":[{"from":0,"to":1,"branch":"Up"}]})"));
}
