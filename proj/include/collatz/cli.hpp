#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "collatz/map.hpp"
#include "collatz/nat.hpp"

namespace collatz::cli {

inline constexpr std::uint64_t kDefaultMaxSteps = 100'000;

struct TrajCommand {
  Nat x;
  MapVariant variant = MapVariant::Standard;
  std::uint64_t max_steps = kDefaultMaxSteps;
  bool values = false;
  friend bool operator==(const TrajCommand&, const TrajCommand&) = default;
};

struct PreimageCommand {
  Nat x;
  friend bool operator==(const PreimageCommand&, const PreimageCommand&) = default;
};

struct CycleCommand {
  Nat x;
  MapVariant variant = MapVariant::Standard;
  std::uint64_t max_steps = kDefaultMaxSteps;
  friend bool operator==(const CycleCommand&, const CycleCommand&) = default;
};

enum class GraphFormat { Dot, Json };

struct GraphCommand {
  std::uint64_t modulus = 10;
  GraphFormat format = GraphFormat::Dot;
  friend bool operator==(const GraphCommand&, const GraphCommand&) = default;
};

enum class ReportFormat { Json, Csv };

struct VerifyCommand {
  std::uint64_t from = 1;
  std::uint64_t to = 1;
  std::optional<std::uint64_t> assume_verified_below;
  /// Unset means the machine's available parallelism.
  std::optional<unsigned> workers;
  ReportFormat format = ReportFormat::Json;
  std::uint64_t max_steps = kDefaultMaxSteps;
  std::optional<std::uint64_t> chunk_size;
  bool progressive = false;
  bool timing = true;
  friend bool operator==(const VerifyCommand&, const VerifyCommand&) = default;
};

using Command =
    std::variant<TrajCommand, PreimageCommand, CycleCommand, GraphCommand, VerifyCommand>;

/// Malformed command line; `what()` carries the message, `usage()` the help
/// text of the relevant (sub)command.
class UsageError : public std::runtime_error {
 public:
  UsageError(const std::string& message, std::string usage)
      : std::runtime_error(message), usage_(std::move(usage)) {}
  [[nodiscard]] const std::string& usage() const noexcept { return usage_; }

 private:
  std::string usage_;
};

/// Thrown by parse_command for -h/--help; carries the help text.
class HelpRequested : public std::runtime_error {
 public:
  explicit HelpRequested(const std::string& text) : std::runtime_error(text) {}
};

/// Parses arguments (without the program name). Throws UsageError or
/// HelpRequested.
Command parse_command(std::span<const std::string> args);

/// Canonical argument list: parse_command(canonical_args(c)) == c.
std::vector<std::string> canonical_args(const Command& command);

/// Runs a command line. Exit status 0 on success, 1 on domain errors,
/// 2 on usage errors.
int dispatch(std::span<const std::string> args, std::ostream& out, std::ostream& err);

}  // namespace collatz::cli
