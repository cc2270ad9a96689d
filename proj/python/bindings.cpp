#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <string>

#include "collatz/cycles.hpp"
#include "collatz/dynamics.hpp"
#include "collatz/residue.hpp"
#include "collatz/verifier.hpp"

namespace py = pybind11;

// Python int <-> Nat through the decimal representation.
namespace pybind11::detail {
template <>
struct type_caster<collatz::Nat> {
  PYBIND11_TYPE_CASTER(collatz::Nat, const_name("int"));

  bool load(handle src, bool) {
    if (!PyLong_Check(src.ptr()) || PyBool_Check(src.ptr())) return false;
    const std::string text = py::str(src);
    if (!text.empty() && text.front() == '-') throw py::value_error("expected a nonnegative integer");
    value = collatz::Nat::parse(text);
    return true;
  }

  static handle cast(const collatz::Nat& n, return_value_policy, handle) {
    return PyLong_FromString(n.to_string().c_str(), nullptr, 10);
  }
};
}  // namespace pybind11::detail

namespace {

using namespace collatz;

py::dict record_to_dict(const TrajectoryRecord& rec) {
  py::dict d;
  d["start"] = rec.start;
  d["max_excursion"] = rec.max_excursion;
  if (rec.values) d["values"] = *rec.values;
  std::visit(
      [&d](const auto& o) {
        using T = std::decay_t<decltype(o)>;
        if constexpr (std::is_same_v<T, ReachesOne>) {
          d["outcome"] = "reaches_one";
          d["steps"] = o.steps;
        } else if constexpr (std::is_same_v<T, EntersCycle>) {
          d["outcome"] = "enters_cycle";
          d["loop"] = o.loop;
          d["tail_length"] = o.tail_length;
        } else {
          d["outcome"] = "unresolved";
          d["steps_taken"] = o.steps_taken;
          d["max_value_seen"] = o.max_value_seen;
        }
      },
      rec.outcome);
  return d;
}

py::object optional_record(const std::optional<StoppingTimeRecord>& r) {
  if (!r) return py::none();
  return py::make_tuple(r->value, r->argmax);
}

py::object optional_record(const std::optional<ExcursionRecord>& r) {
  if (!r) return py::none();
  return py::make_tuple(r->value, r->argmax);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Collatz dynamics, residue transition graphs and range verification";

  py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
  py::register_exception<LoopError>(m, "LoopError", PyExc_ValueError);
  py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);

  py::enum_<MapVariant>(m, "Variant")
      .value("standard", MapVariant::Standard)
      .value("star", MapVariant::Star);

  m.def("col", &col, py::arg("x"));
  m.def("col_star", &col_star, py::arg("x"));
  m.def("iterate_k", &iterate_k, py::arg("x"), py::arg("k"),
        py::arg("variant") = MapVariant::Standard);
  m.def("total_stopping_time", &total_stopping_time, py::arg("x"), py::arg("budget") = 100'000);
  m.def("preimage", &preimage, py::arg("x"));
  m.def(
      "classify_trajectory",
      [](const Nat& x, MapVariant variant, std::uint64_t step_budget,
         std::optional<Nat> value_bound, bool keep_values) {
        ClassifyOptions options;
        options.variant = variant;
        options.step_budget = step_budget;
        options.value_bound = std::move(value_bound);
        options.keep_values = keep_values;
        return record_to_dict(classify_trajectory(x, options));
      },
      py::arg("x"), py::arg("variant") = MapVariant::Standard, py::arg("step_budget") = 100'000,
      py::arg("value_bound") = py::none(), py::arg("keep_values") = false);

  py::class_<ClosedLoop>(m, "ClosedLoop")
      .def_property_readonly("values", &ClosedLoop::values)
      .def_property_readonly("variant", &ClosedLoop::variant)
      .def_property_readonly("period", &ClosedLoop::period)
      .def("__eq__", [](const ClosedLoop& a, const ClosedLoop& b) { return a == b; })
      .def("__repr__", [](const ClosedLoop& l) { return "ClosedLoop(" + l.to_string() + ")"; });
  m.def(
      "validate_loop",
      [](const std::vector<Nat>& values, MapVariant variant) {
        return validate_loop(values, variant);
      },
      py::arg("values"), py::arg("variant") = MapVariant::Standard);
  m.def("loop_power", &loop_power, py::arg("loop"), py::arg("m"));
  m.def("find_cycle", &find_cycle, py::arg("start"), py::arg("variant") = MapVariant::Standard,
        py::arg("step_budget") = 100'000);

  m.def(
      "class_of",
      [](const Nat& x, std::uint64_t modulus) { return class_of(x, modulus).residue; },
      py::arg("x"), py::arg("modulus"));
  m.def(
      "transition_targets",
      [](std::uint64_t modulus, std::uint64_t residue) {
        std::vector<std::pair<std::uint64_t, std::string>> out;
        for (const auto& t : transition_targets(modulus, residue)) {
          out.emplace_back(t.to, std::string(to_string(t.branch)));
        }
        return out;
      },
      py::arg("modulus"), py::arg("residue"));

  py::class_<TransitionGraph>(m, "TransitionGraph")
      .def_property_readonly("modulus", &TransitionGraph::modulus)
      .def_property_readonly("edges",
                             [](const TransitionGraph& g) {
                               std::vector<std::tuple<std::uint64_t, std::uint64_t, std::string>> out;
                               for (const auto& e : g.edges()) {
                                 out.emplace_back(e.from, e.to, std::string(to_string(e.branch)));
                               }
                               return out;
                             })
      .def("successors", &TransitionGraph::successors, py::arg("residue"))
      .def("out_degree", &TransitionGraph::out_degree, py::arg("residue"))
      .def("in_degree", &TransitionGraph::in_degree, py::arg("residue"))
      .def("__eq__", [](const TransitionGraph& a, const TransitionGraph& b) { return a == b; });
  m.def("build_graph", &build_graph, py::arg("modulus"));
  m.def("strongly_connected_components", &strongly_connected_components, py::arg("graph"));
  m.def("to_dot", py::overload_cast<const TransitionGraph&>(&to_dot), py::arg("graph"));
  m.def("graph_to_json", py::overload_cast<const TransitionGraph&>(&to_json), py::arg("graph"));
  m.def("graph_from_json", &graph_from_json, py::arg("text"));

  py::class_<VerifyReport>(m, "VerifyReport")
      .def_property_readonly("range",
                             [](const VerifyReport& r) -> py::object {
                               const auto hull = r.range();
                               if (!hull) return py::none();
                               return py::make_tuple(hull->lo, hull->hi);
                             })
      .def_readonly("covered", &VerifyReport::covered)
      .def_readonly("verified_count", &VerifyReport::verified_count)
      .def_readonly("unresolved", &VerifyReport::unresolved)
      .def_readonly("cycles_found", &VerifyReport::cycles_found)
      .def_property_readonly("max_total_stopping_time",
                             [](const VerifyReport& r) { return optional_record(r.max_total_stopping_time); })
      .def_property_readonly("max_excursion",
                             [](const VerifyReport& r) { return optional_record(r.max_excursion); })
      .def_property_readonly("wall_time_ms",
                             [](const VerifyReport& r) {
                               return std::chrono::duration<double, std::milli>(r.wall_time).count();
                             })
      .def_property_readonly("throughput", &VerifyReport::throughput)
      .def(
          "to_json",
          [](const VerifyReport& r, bool timing) {
            return to_json(r, SerializeOptions{.include_timing = timing});
          },
          py::arg("include_timing") = true)
      .def(
          "to_csv",
          [](const VerifyReport& r, bool timing) {
            return to_csv(r, SerializeOptions{.include_timing = timing});
          },
          py::arg("include_timing") = true);

  m.def(
      "verify_range",
      [](std::uint64_t lo, std::uint64_t hi, std::uint64_t step_budget,
         std::uint64_t assume_verified_below, std::optional<unsigned> workers,
         std::uint64_t chunk_size, std::uint64_t cache_entries, bool progressive) {
        VerifyConfig config;
        config.range_lo = lo;
        config.range_hi = hi;
        config.step_budget = step_budget;
        config.assume_verified_below = assume_verified_below;
        if (workers) config.worker_count = *workers;
        config.chunk_size = chunk_size;
        config.cache_entries = cache_entries;
        py::gil_scoped_release release;
        return progressive ? verify_progressive(config) : verify_range(config);
      },
      py::arg("lo"), py::arg("hi"), py::arg("step_budget") = 100'000,
      py::arg("assume_verified_below") = 1, py::arg("workers") = py::none(),
      py::arg("chunk_size") = 1 << 16, py::arg("cache_entries") = 1 << 20,
      py::arg("progressive") = false);
  m.def("merge_reports", &merge_reports, py::arg("a"), py::arg("b"));
}
