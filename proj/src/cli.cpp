#include "collatz/cli.hpp"

#include <algorithm>
#include <ostream>

#include "CLI11.hpp"
#include "collatz/cycles.hpp"
#include "collatz/dynamics.hpp"
#include "collatz/residue.hpp"
#include "collatz/verifier.hpp"

namespace collatz::cli {
namespace {

// Option targets for every subcommand; CLI11 writes into these.
struct Slots {
  std::string traj_x, traj_variant = "standard";
  std::uint64_t traj_max_steps = kDefaultMaxSteps;
  bool traj_values = false;

  std::string preimage_x;

  std::string cycle_x, cycle_variant = "standard";
  std::uint64_t cycle_max_steps = kDefaultMaxSteps;

  std::uint64_t graph_modulus = 10;
  std::string graph_format = "dot";

  std::uint64_t verify_from = 1, verify_to = 1, verify_max_steps = kDefaultMaxSteps;
  std::optional<std::uint64_t> verify_assume, verify_chunk;
  std::optional<unsigned> verify_workers;
  std::string verify_format = "json";
  bool verify_progressive = false, verify_no_timing = false;
};

struct App {
  CLI::App root{"Collatz dynamics, residue transition graphs and range verification", "collatz"};
  CLI::App* traj = nullptr;
  CLI::App* preimage = nullptr;
  CLI::App* cycle = nullptr;
  CLI::App* graph = nullptr;
  CLI::App* verify = nullptr;

  explicit App(Slots& s) {
    root.require_subcommand(1);
    const auto variants = CLI::IsMember({"standard", "star"});

    traj = root.add_subcommand("traj", "Classify the trajectory of x");
    traj->add_option("x", s.traj_x, "Start value (positive integer)")->required();
    traj->add_option("--variant", s.traj_variant, "Map variant: standard or star")
        ->check(variants);
    traj->add_option("--max-steps", s.traj_max_steps, "Step budget")->check(CLI::PositiveNumber);
    traj->add_flag("--values", s.traj_values, "Print the visited values");

    preimage = root.add_subcommand("preimage", "All y with Col(y) = x, ascending");
    preimage->add_option("x", s.preimage_x, "Target value (positive integer)")->required();

    cycle = root.add_subcommand("cycle", "Canonical loop entered by the orbit of x");
    cycle->add_option("x", s.cycle_x, "Start value (positive integer)")->required();
    cycle->add_option("--variant", s.cycle_variant, "Map variant: standard or star")
        ->check(variants);
    cycle->add_option("--max-steps", s.cycle_max_steps, "Step budget")
        ->check(CLI::PositiveNumber);

    graph = root.add_subcommand("graph", "Residue transition graph modulo M");
    graph->add_option("--modulus", s.graph_modulus, "Modulus M >= 1")->required();
    graph->add_option("--format", s.graph_format, "dot or json")
        ->check(CLI::IsMember({"dot", "json"}));

    verify = root.add_subcommand("verify", "Verify convergence for every x in [A, B]");
    verify->add_option("--from", s.verify_from, "Range start A")->required();
    verify->add_option("--to", s.verify_to, "Range end B")->required();
    verify->add_option("--assume-verified-below", s.verify_assume,
                       "Certify trajectories once they drop below C");
    verify->add_option("--workers", s.verify_workers, "Worker threads");
    verify->add_option("--format", s.verify_format, "json or csv")
        ->check(CLI::IsMember({"json", "csv"}));
    verify->add_option("--max-steps", s.verify_max_steps, "Step budget per trajectory")
        ->check(CLI::PositiveNumber);
    verify->add_option("--chunk-size", s.verify_chunk, "Numbers per work unit");
    verify->add_flag("--progressive", s.verify_progressive,
                     "Raise the cutoff wave by wave as the range is certified");
    verify->add_flag("--no-timing", s.verify_no_timing, "Omit wall time and throughput");
  }
};

Nat parse_value(const std::string& text, const CLI::App& sub) {
  try {
    return Nat::parse(text);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what(), sub.help());
  }
}

std::string join(const std::vector<Nat>& values) {
  std::string out;
  for (const auto& v : values) {
    if (!out.empty()) out += ' ';
    out += v.to_string();
  }
  return out;
}

void print_record(const TrajectoryRecord& record, MapVariant variant, std::ostream& out) {
  out << "start: " << record.start << '\n';
  out << "variant: " << to_string(variant) << '\n';
  std::visit(
      [&out](const auto& outcome) {
        using T = std::decay_t<decltype(outcome)>;
        if constexpr (std::is_same_v<T, ReachesOne>) {
          out << "outcome: reaches_one\n";
          out << "steps: " << outcome.steps << '\n';
        } else if constexpr (std::is_same_v<T, EntersCycle>) {
          out << "outcome: enters_cycle\n";
          out << "loop: " << outcome.loop.to_string() << '\n';
          out << "tail_length: " << outcome.tail_length << '\n';
        } else {
          out << "outcome: unresolved\n";
          out << "steps_taken: " << outcome.steps_taken << '\n';
          out << "max_value_seen: " << outcome.max_value_seen << '\n';
        }
      },
      record.outcome);
  out << "max_excursion: " << record.max_excursion << '\n';
  if (record.values) out << "values: " << join(*record.values) << '\n';
}

void run(const Command& command, std::ostream& out) {
  std::visit(
      [&out](const auto& c) {
        using T = std::decay_t<decltype(c)>;
        if constexpr (std::is_same_v<T, TrajCommand>) {
          ClassifyOptions options;
          options.variant = c.variant;
          options.step_budget = c.max_steps;
          options.keep_values = c.values;
          const auto record = classify_trajectory(c.x, options);
          print_record(record, c.variant, out);
        } else if constexpr (std::is_same_v<T, PreimageCommand>) {
          out << join(preimage(c.x)) << '\n';
        } else if constexpr (std::is_same_v<T, CycleCommand>) {
          const auto loop = find_cycle(c.x, c.variant, c.max_steps);
          out << (loop ? loop->to_string() : std::string("none")) << '\n';
        } else if constexpr (std::is_same_v<T, GraphCommand>) {
          const auto graph = build_graph(c.modulus);
          if (c.format == GraphFormat::Dot) {
            out << to_dot(graph);
          } else {
            out << to_json(graph) << '\n';
          }
        } else {
          VerifyConfig config;
          config.range_lo = c.from;
          config.range_hi = c.to;
          config.step_budget = c.max_steps;
          if (c.assume_verified_below) config.assume_verified_below = *c.assume_verified_below;
          if (c.workers) config.worker_count = *c.workers;
          if (c.chunk_size) config.chunk_size = *c.chunk_size;
          const auto report = c.progressive ? verify_progressive(config) : verify_range(config);
          const SerializeOptions options{.include_timing = c.timing};
          if (c.format == ReportFormat::Json) {
            out << to_json(report, options) << '\n';
          } else {
            out << to_csv(report, options);
          }
        }
      },
      command);
}

}  // namespace

Command parse_command(std::span<const std::string> args) {
  Slots s;
  App app(s);
  // CLI11 consumes a reversed argument vector.
  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.root.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    const CLI::App* selected = &app.root;
    for (const auto* sub : app.root.get_subcommands()) selected = sub;
    throw HelpRequested(selected->help());
  } catch (const CLI::ParseError& e) {
    const auto subs = app.root.get_subcommands();
    throw UsageError(e.what(), subs.empty() ? app.root.help() : subs.front()->help());
  }

  if (app.traj->parsed()) {
    return TrajCommand{parse_value(s.traj_x, *app.traj), parse_variant(s.traj_variant),
                       s.traj_max_steps, s.traj_values};
  }
  if (app.preimage->parsed()) return PreimageCommand{parse_value(s.preimage_x, *app.preimage)};
  if (app.cycle->parsed()) {
    return CycleCommand{parse_value(s.cycle_x, *app.cycle), parse_variant(s.cycle_variant),
                        s.cycle_max_steps};
  }
  if (app.graph->parsed()) {
    return GraphCommand{s.graph_modulus,
                        s.graph_format == "json" ? GraphFormat::Json : GraphFormat::Dot};
  }
  return VerifyCommand{s.verify_from,
                       s.verify_to,
                       s.verify_assume,
                       s.verify_workers,
                       s.verify_format == "csv" ? ReportFormat::Csv : ReportFormat::Json,
                       s.verify_max_steps,
                       s.verify_chunk,
                       s.verify_progressive,
                       !s.verify_no_timing};
}

std::vector<std::string> canonical_args(const Command& command) {
  return std::visit(
      [](const auto& c) {
        using T = std::decay_t<decltype(c)>;
        std::vector<std::string> a;
        if constexpr (std::is_same_v<T, TrajCommand>) {
          a = {"traj", c.x.to_string(), "--variant", std::string(to_string(c.variant)),
               "--max-steps", std::to_string(c.max_steps)};
          if (c.values) a.emplace_back("--values");
        } else if constexpr (std::is_same_v<T, PreimageCommand>) {
          a = {"preimage", c.x.to_string()};
        } else if constexpr (std::is_same_v<T, CycleCommand>) {
          a = {"cycle", c.x.to_string(), "--variant", std::string(to_string(c.variant)),
               "--max-steps", std::to_string(c.max_steps)};
        } else if constexpr (std::is_same_v<T, GraphCommand>) {
          a = {"graph", "--modulus", std::to_string(c.modulus), "--format",
               c.format == GraphFormat::Json ? "json" : "dot"};
        } else {
          a = {"verify", "--from", std::to_string(c.from), "--to", std::to_string(c.to)};
          if (c.assume_verified_below) {
            a.insert(a.end(), {"--assume-verified-below", std::to_string(*c.assume_verified_below)});
          }
          if (c.workers) a.insert(a.end(), {"--workers", std::to_string(*c.workers)});
          a.insert(a.end(), {"--format", c.format == ReportFormat::Csv ? "csv" : "json",
                             "--max-steps", std::to_string(c.max_steps)});
          if (c.chunk_size) a.insert(a.end(), {"--chunk-size", std::to_string(*c.chunk_size)});
          if (c.progressive) a.emplace_back("--progressive");
          if (!c.timing) a.emplace_back("--no-timing");
        }
        return a;
      },
      command);
}

int dispatch(std::span<const std::string> args, std::ostream& out, std::ostream& err) {
  Command command;
  try {
    command = parse_command(args);
  } catch (const HelpRequested& help) {
    out << help.what();
    return 0;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n\n" << e.usage();
    return 2;
  }
  try {
    run(command, out);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}

}  // namespace collatz::cli
