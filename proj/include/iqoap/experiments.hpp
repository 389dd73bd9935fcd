#pragma once

// The four experiments behind the `iqoap` command line tool. Each command is
// a pure function of its configuration and returns the files to write plus a
// short report for stdout.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "iqoap/io.hpp"
#include "iqoap/lattice.hpp"
#include "iqoap/loop.hpp"

namespace iqoap::cli {

class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

enum class ExitCode : int { kOk = 0, kFailure = 1, kUsage = 2, kBudget = 3, kIo = 4 };

/// Builtin bases "a", "b", "c" of one four-dimensional lattice: a is the
/// diagonal basis of minimal vectors, b and c increasingly bad ones.
Basis builtin_basis(const std::string& label);
const std::vector<std::string>& builtin_labels();

struct BasisSource {
  std::string label;  // builtin label or file stem
  Basis basis;
  std::optional<std::vector<std::int64_t>> minima_squared;  // known for builtins
};

struct ExperimentConfig {
  std::string experiment;  // spectrum | scaling | converge | ensemble
  std::vector<BasisSource> bases;
  std::vector<unsigned> k;
  std::size_t trials = 100;
  std::int64_t entry_range = 10;
  std::size_t runs = 50;
  std::size_t iterations = 50;
  std::size_t retries = 100;
  std::size_t shots = 1;
  std::size_t grid_points = 256;
  double tolerance = 1e-6;
  bool analytic_optimizer = false;
  std::size_t lattices = 50;
  std::size_t runs_per_lattice = 1;
  std::size_t dimension = 4;
  std::int64_t max_diagonal = 4;
  std::uint64_t seed = 1;
  std::filesystem::path out = "out";
  unsigned qubit_budget = 24;
  std::uint64_t enumeration_budget = kDefaultEnumerationBudget;
};

/// Parses the JSON configuration. Relative basis file paths resolve against
/// base_dir. A non-empty `experiment` takes precedence over the config's own
/// "experiment" field. Throws UsageError on unknown experiments or malformed
/// fields.
ExperimentConfig parse_config(const std::string& json_text, const std::filesystem::path& base_dir = {},
                              const std::string& experiment = {});

/// "2,3,5" -> {2, 3, 5}. Throws UsageError on empty or malformed lists.
std::vector<unsigned> parse_k_list(const std::string& text);

struct CommandOutput {
  io::FileSet files;
  std::string report;
};

CommandOutput cmd_spectrum(const ExperimentConfig& config);
CommandOutput cmd_scaling(const ExperimentConfig& config);
CommandOutput cmd_converge(const ExperimentConfig& config);
CommandOutput cmd_ensemble(const ExperimentConfig& config);

/// Dispatches on config.experiment.
CommandOutput run_experiment(const ExperimentConfig& config);

/// Runs a command end to end, writes its files, prints the report; maps
/// failures to exit codes (usage 2, budget or overflow 3, IO 4).
ExitCode execute(const ExperimentConfig& config, std::ostream& out, std::ostream& err);

}  // namespace iqoap::cli
