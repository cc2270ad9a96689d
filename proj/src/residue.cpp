#include "collatz/residue.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace collatz {
namespace {

void require_modulus(std::uint64_t modulus) {
  if (modulus == 0) throw DomainError("modulus must be at least 1");
}

void require_residue(std::uint64_t modulus, std::uint64_t residue) {
  require_modulus(modulus);
  if (residue >= modulus) {
    throw DomainError("residue " + std::to_string(residue) + " out of range for modulus " +
                      std::to_string(modulus));
  }
}

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<u128>(a) * b % m);
}

}  // namespace

bool ResidueClass::contains(const Nat& x) const {
  return !x.is_zero() && x.mod(modulus) == residue;
}

ResidueClass class_of(const Nat& x, std::uint64_t modulus) {
  require_modulus(modulus);
  if (x.is_zero()) throw DomainError("residue classes hold positive integers only");
  return ResidueClass{modulus, x.mod(modulus)};
}

std::string_view to_string(Branch b) { return b == Branch::Halve ? "Halve" : "Triple"; }

Branch parse_branch(std::string_view text) {
  if (text == "Halve") return Branch::Halve;
  if (text == "Triple") return Branch::Triple;
  throw std::invalid_argument("unknown branch label '" + std::string(text) + "'");
}

std::vector<Transition> transition_targets(std::uint64_t modulus, std::uint64_t residue) {
  require_residue(modulus, residue);
  const auto triple = static_cast<std::uint64_t>((static_cast<u128>(residue) * 3 + 1) % modulus);
  std::vector<Transition> out;
  if (modulus % 2 == 0) {
    if (residue % 2 == 1) {
      out.push_back({triple, Branch::Triple});
    } else {
      // x = r + m*t halves to r/2 + (m/2)*t: t's parity picks the target.
      out.push_back({residue / 2, Branch::Halve});
      out.push_back({residue / 2 + modulus / 2, Branch::Halve});
    }
  } else {
    const std::uint64_t inverse_of_two = modulus / 2 + 1;
    out.push_back({mul_mod(residue, inverse_of_two, modulus), Branch::Halve});
    out.push_back({triple, Branch::Triple});
  }
  std::sort(out.begin(), out.end());
  return out;
}

TransitionGraph::TransitionGraph(std::uint64_t modulus, std::vector<Edge> edges)
    : modulus_(modulus), edges_(std::move(edges)) {
  require_modulus(modulus_);
  for (const Edge& e : edges_) {
    if (e.from >= modulus_ || e.to >= modulus_) {
      throw DomainError("edge " + std::to_string(e.from) + " -> " + std::to_string(e.to) +
                        " leaves the vertex set of modulus " + std::to_string(modulus_));
    }
  }
  std::sort(edges_.begin(), edges_.end());
  edges_.erase(std::unique(edges_.begin(), edges_.end()), edges_.end());

  offsets_.assign(modulus_ + 1, 0);
  for (const Edge& e : edges_) ++offsets_[e.from + 1];
  for (std::uint64_t r = 0; r < modulus_; ++r) offsets_[r + 1] += offsets_[r];
}

void TransitionGraph::check_vertex(std::uint64_t residue) const {
  require_residue(modulus_, residue);
}

std::vector<std::uint64_t> TransitionGraph::successors(std::uint64_t residue) const {
  check_vertex(residue);
  std::vector<std::uint64_t> out;
  for (std::size_t i = offsets_[residue]; i < offsets_[residue + 1]; ++i) {
    // Out-edges are sorted by target, so duplicates are adjacent.
    if (out.empty() || out.back() != edges_[i].to) out.push_back(edges_[i].to);
  }
  return out;
}

std::size_t TransitionGraph::out_degree(std::uint64_t residue) const {
  return successors(residue).size();
}

std::size_t TransitionGraph::in_degree(std::uint64_t residue) const {
  check_vertex(residue);
  std::size_t count = 0;
  for (std::size_t i = 0; i < edges_.size(); ++i) {
    const bool repeat = i > 0 && edges_[i - 1].from == edges_[i].from &&
                        edges_[i - 1].to == edges_[i].to;
    if (edges_[i].to == residue && !repeat) ++count;
  }
  return count;
}

std::size_t TransitionGraph::distinct_edge_count() const {
  std::size_t count = 0;
  for (std::uint64_t r = 0; r < modulus_; ++r) count += out_degree(r);
  return count;
}

TransitionGraph build_graph(std::uint64_t modulus) {
  require_modulus(modulus);
  std::vector<Edge> edges;
  edges.reserve(modulus * 2);
  for (std::uint64_t r = 0; r < modulus; ++r) {
    for (const Transition& t : transition_targets(modulus, r)) {
      edges.push_back({r, t.to, t.branch});
    }
  }
  return TransitionGraph(modulus, std::move(edges));
}

std::size_t out_degree(const TransitionGraph& graph, std::uint64_t residue) {
  return graph.out_degree(residue);
}

std::vector<std::vector<std::uint64_t>> strongly_connected_components(
    const TransitionGraph& graph) {
  const std::uint64_t n = graph.modulus();
  constexpr std::uint64_t kUnvisited = ~std::uint64_t{0};
  std::vector<std::uint64_t> index(n, kUnvisited);
  std::vector<std::uint64_t> lowlink(n, 0);
  std::vector<bool> on_stack(n, false);
  std::vector<std::uint64_t> stack;
  std::vector<std::vector<std::uint64_t>> components;
  std::vector<std::vector<std::uint64_t>> adjacency(n);
  for (std::uint64_t r = 0; r < n; ++r) adjacency[r] = graph.successors(r);

  // Iterative Tarjan: each frame is (vertex, next successor position).
  std::vector<std::pair<std::uint64_t, std::size_t>> frames;
  std::uint64_t counter = 0;
  for (std::uint64_t root = 0; root < n; ++root) {
    if (index[root] != kUnvisited) continue;
    frames.emplace_back(root, 0);
    index[root] = lowlink[root] = counter++;
    stack.push_back(root);
    on_stack[root] = true;

    while (!frames.empty()) {
      auto& [v, pos] = frames.back();
      if (pos < adjacency[v].size()) {
        const std::uint64_t w = adjacency[v][pos++];
        if (index[w] == kUnvisited) {
          index[w] = lowlink[w] = counter++;
          stack.push_back(w);
          on_stack[w] = true;
          frames.emplace_back(w, 0);
        } else if (on_stack[w]) {
          lowlink[v] = std::min(lowlink[v], index[w]);
        }
        continue;
      }
      const std::uint64_t done = v;
      frames.pop_back();
      if (!frames.empty()) {
        const std::uint64_t parent = frames.back().first;
        lowlink[parent] = std::min(lowlink[parent], lowlink[done]);
      }
      if (lowlink[done] == index[done]) {
        std::vector<std::uint64_t> component;
        std::uint64_t w = 0;
        do {
          w = stack.back();
          stack.pop_back();
          on_stack[w] = false;
          component.push_back(w);
        } while (w != done);
        std::sort(component.begin(), component.end());
        components.push_back(std::move(component));
      }
    }
  }
  std::sort(components.begin(), components.end(),
            [](const auto& a, const auto& b) { return a.front() < b.front(); });
  return components;
}

std::string to_dot(const TransitionGraph& graph) {
  std::ostringstream os;
  os << "digraph collatz_mod_" << graph.modulus() << " {\n";
  for (std::uint64_t r = 0; r < graph.modulus(); ++r) os << "  " << r << ";\n";
  const auto& edges = graph.edges();
  for (std::size_t i = 0; i < edges.size();) {
    std::size_t j = i;
    std::string branch;
    while (j < edges.size() && edges[j].from == edges[i].from && edges[j].to == edges[i].to) {
      if (!branch.empty()) branch += '|';
      branch += to_string(edges[j].branch);
      ++j;
    }
    os << "  " << edges[i].from << " -> " << edges[i].to << " [label=\"Col\", branch=\""
       << branch << "\"];\n";
    i = j;
  }
  os << "}\n";
  return os.str();
}

std::string to_json(const TransitionGraph& graph) {
  nlohmann::ordered_json doc;
  doc["modulus"] = graph.modulus();
  auto& edges = doc["edges"] = nlohmann::ordered_json::array();
  for (const Edge& e : graph.edges()) {
    edges.push_back({{"from", e.from}, {"to", e.to}, {"branch", std::string(to_string(e.branch))}});
  }
  return doc.dump();
}

TransitionGraph graph_from_json(std::string_view text) {
  const auto doc = nlohmann::json::parse(text);
  std::vector<Edge> edges;
  for (const auto& e : doc.at("edges")) {
    edges.push_back({e.at("from").get<std::uint64_t>(), e.at("to").get<std::uint64_t>(),
                     parse_branch(e.at("branch").get<std::string>())});
  }
  return TransitionGraph(doc.at("modulus").get<std::uint64_t>(), std::move(edges));
}

}  // namespace collatz
