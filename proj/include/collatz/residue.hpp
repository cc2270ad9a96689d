#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "collatz/nat.hpp"

namespace collatz {

/// The positive integers congruent to `residue` modulo `modulus`. The class
/// is identified with its least nonnegative representative.
struct ResidueClass {
  std::uint64_t modulus = 1;
  std::uint64_t residue = 0;

  /// x >= 1 and x = residue (mod modulus).
  [[nodiscard]] bool contains(const Nat& x) const;

  friend bool operator==(const ResidueClass&, const ResidueClass&) = default;
};

ResidueClass class_of(const Nat& x, std::uint64_t modulus);

/// Which case of the map produced a transition.
enum class Branch { Halve, Triple };

std::string_view to_string(Branch b);
Branch parse_branch(std::string_view text);

struct Transition {
  std::uint64_t to = 0;
  Branch branch = Branch::Halve;

  friend bool operator==(const Transition&, const Transition&) = default;
  friend auto operator<=>(const Transition&, const Transition&) = default;
};

/// Residues mod `modulus` reachable in one step from members of the class of
/// `residue`, each tagged with the branch that gets there. Sorted by
/// (to, branch).
///
/// Even modulus fixes the parity of every member: odd residues only triple
/// (3r+1), even residues only halve, landing on r/2 or r/2 + m/2 depending
/// on the next digit. Odd modulus admits both parities, so both branches
/// appear: halving multiplies by the inverse of 2.
std::vector<Transition> transition_targets(std::uint64_t modulus, std::uint64_t residue);

struct Edge {
  std::uint64_t from = 0;
  std::uint64_t to = 0;
  Branch branch = Branch::Halve;

  friend bool operator==(const Edge&, const Edge&) = default;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

/// Branch-labelled transition multigraph on Z/mZ. Immutable once built;
/// edges are sorted by (from, to, branch).
class TransitionGraph {
 public:
  /// Builds from an explicit edge list; validates ranges and sorts.
  TransitionGraph(std::uint64_t modulus, std::vector<Edge> edges);

  [[nodiscard]] std::uint64_t modulus() const noexcept { return modulus_; }
  [[nodiscard]] const std::vector<Edge>& edges() const noexcept { return edges_; }

  /// Distinct successor residues of `residue`, ascending.
  [[nodiscard]] std::vector<std::uint64_t> successors(std::uint64_t residue) const;
  /// Number of distinct successors; parallel edges with different branch
  /// labels count once.
  [[nodiscard]] std::size_t out_degree(std::uint64_t residue) const;
  /// Number of distinct predecessors.
  [[nodiscard]] std::size_t in_degree(std::uint64_t residue) const;
  /// Count of distinct (from, to) pairs.
  [[nodiscard]] std::size_t distinct_edge_count() const;

  friend bool operator==(const TransitionGraph&, const TransitionGraph&) = default;

 private:
  void check_vertex(std::uint64_t residue) const;

  std::uint64_t modulus_;
  std::vector<Edge> edges_;
  // offsets_[r]..offsets_[r+1] index the out-edges of r in edges_.
  std::vector<std::size_t> offsets_;
};

TransitionGraph build_graph(std::uint64_t modulus);

std::size_t out_degree(const TransitionGraph& graph, std::uint64_t residue);

/// Maximal strongly connected vertex sets (Tarjan). Each component is sorted
/// ascending and components are ordered by their minimum vertex.
std::vector<std::vector<std::uint64_t>> strongly_connected_components(const TransitionGraph& graph);

/// Graphviz digraph. One line per distinct (from, to) pair, label "Col",
/// and a `branch` attribute naming the branch; pairs reached by both
/// branches (odd moduli only) carry branch="Halve|Triple".
std::string to_dot(const TransitionGraph& graph);

/// {"modulus":m,"edges":[{"from":a,"to":b,"branch":"Halve"},...]} with the
/// graph's edge order, one edge per branch label.
std::string to_json(const TransitionGraph& graph);
TransitionGraph graph_from_json(std::string_view text);

}  // namespace collatz
