#include "iqoap/experiments.hpp"

#include <algorithm>
#include <charconv>
#include <ostream>
#include <sstream>

#include "json.hpp"
#include "iqoap/encoding.hpp"
#include "iqoap/seeding.hpp"

namespace iqoap::cli {

using nlohmann::json;

namespace {

const std::vector<std::vector<std::int64_t>> kBasisA = {{1, 0, 0, 0}, {0, 2, 0, 0}, {0, 0, 3, 0}, {0, 0, 0, 4}};
const std::vector<std::vector<std::int64_t>> kBasisB = {
    {3, 0, 15, -12}, {0, 4, 3, 8}, {28, -18, 9, 8}, {0, 0, 3, -4}};
const std::vector<std::vector<std::int64_t>> kBasisC = {
    {25, 78, 105, 160}, {-3, 32, 18, 64}, {53, 128, 195, 264}, {0, 8, 9, 12}};

std::vector<std::int64_t> builtin_minima() { return sorted_squared_lengths(Basis(SquareMatrix(kBasisA))); }

BasisSource source_from_json(const json& j, const std::filesystem::path& base_dir) {
  if (j.is_string()) {
    const auto label = j.get<std::string>();
    return {label, builtin_basis(label), builtin_minima()};
  }
  if (!j.is_object()) throw UsageError("basis entries must be a builtin label or an object");
  if (j.contains("builtin")) return source_from_json(j.at("builtin"), base_dir);
  if (!j.contains("file")) throw UsageError("basis object needs \"builtin\" or \"file\"");
  std::filesystem::path path = j.at("file").get<std::string>();
  if (path.is_relative() && !base_dir.empty()) path = base_dir / path;
  BasisSource src{path.stem().string(), io::read_basis(path), std::nullopt};
  if (j.contains("minima_squared")) {
    auto m = j.at("minima_squared").get<std::vector<std::int64_t>>();
    if (m.size() != src.basis.dim()) throw UsageError("minima_squared length must equal the dimension");
    std::sort(m.begin(), m.end());
    src.minima_squared = std::move(m);
  }
  return src;
}

template <typename T>
void read_field(const json& j, const char* name, T& target) {
  if (!j.contains(name)) return;
  try {
    target = j.at(name).get<T>();
  } catch (const json::exception& e) {
    throw UsageError(std::string("config field \"") + name + "\": " + e.what());
  }
}

IterationConfig loop_config(const ExperimentConfig& c, std::uint64_t seed) {
  if (c.k.size() != 1) throw UsageError(c.experiment + " needs exactly one k");
  IterationConfig it;
  it.k = c.k.front();
  it.max_iterations = c.iterations;
  it.max_qaoa_retries = c.retries;
  it.shots_per_attempt = c.shots;
  it.optimizer.grid_points = c.grid_points;
  it.optimizer.tolerance = c.tolerance;
  it.analytic_optimizer = c.analytic_optimizer;
  it.seed = seed;
  it.qubit_budget = c.qubit_budget;
  try {
    it.validate();
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  if (c.grid_points < 8) throw UsageError("grid_points must be at least 8");
  return it;
}

void require_k(const ExperimentConfig& c) {
  if (c.k.empty()) throw UsageError("no k values given");
}

std::string rates_report(const SuccessRates& r) {
  return "success_shortest=" + io::format_double(r.shortest_found) +
         " success_full_basis=" + io::format_double(r.full_basis) + "\n";
}

}  // namespace

const std::vector<std::string>& builtin_labels() {
  static const std::vector<std::string> labels = {"a", "b", "c"};
  return labels;
}

Basis builtin_basis(const std::string& label) {
  if (label == "a") return Basis(SquareMatrix(kBasisA));
  if (label == "b") return Basis(SquareMatrix(kBasisB));
  if (label == "c") return Basis(SquareMatrix(kBasisC));
  throw UsageError("unknown builtin basis \"" + label + "\" (expected a, b or c)");
}

std::vector<unsigned> parse_k_list(const std::string& text) {
  std::vector<unsigned> out;
  if (!text.empty() && text.back() == ',') throw UsageError("malformed k list \"" + text + "\"");
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    unsigned v = 0;
    auto [ptr, ec] = std::from_chars(item.data(), item.data() + item.size(), v);
    if (item.empty() || ec != std::errc() || ptr != item.data() + item.size() || v == 0) {
      throw UsageError("malformed k list \"" + text + "\"");
    }
    out.push_back(v);
  }
  if (out.empty()) throw UsageError("empty k list");
  return out;
}

ExperimentConfig parse_config(const std::string& json_text, const std::filesystem::path& base_dir,
                              const std::string& experiment) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::exception& e) {
    throw UsageError(std::string("config is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) throw UsageError("config must be a JSON object");

  ExperimentConfig c;
  read_field(j, "experiment", c.experiment);
  if (!experiment.empty()) c.experiment = experiment;
  static const std::vector<std::string> known = {"spectrum", "scaling", "converge", "ensemble"};
  if (std::find(known.begin(), known.end(), c.experiment) == known.end()) {
    throw UsageError("unknown experiment \"" + c.experiment + "\"");
  }

  try {
    if (j.contains("basis")) c.bases.push_back(source_from_json(j.at("basis"), base_dir));
    if (j.contains("bases")) {
      if (!j.at("bases").is_array()) throw UsageError("\"bases\" must be an array");
      for (const auto& b : j.at("bases")) c.bases.push_back(source_from_json(b, base_dir));
    }
  } catch (const json::exception& e) {
    throw UsageError(std::string("basis specification: ") + e.what());
  }
  if (c.bases.empty()) {
    std::vector<std::string> defaults;
    if (c.experiment == "spectrum") defaults = builtin_labels();
    if (c.experiment == "scaling") defaults = {"a"};
    if (c.experiment == "converge") defaults = {"c"};
    for (const auto& l : defaults) c.bases.push_back({l, builtin_basis(l), builtin_minima()});
  }

  if (j.contains("k")) {
    if (j.at("k").is_number_unsigned()) {
      c.k = {j.at("k").get<unsigned>()};
    } else {
      read_field(j, "k", c.k);
    }
    if (std::any_of(c.k.begin(), c.k.end(), [](unsigned k) { return k == 0; })) throw UsageError("k must be positive");
  } else {
    c.k = c.experiment == "scaling" ? std::vector<unsigned>{2, 3, 4, 5} : std::vector<unsigned>{2};
  }

  read_field(j, "trials", c.trials);
  read_field(j, "entry_range", c.entry_range);
  read_field(j, "runs", c.runs);
  read_field(j, "iterations", c.iterations);
  read_field(j, "retries", c.retries);
  read_field(j, "shots", c.shots);
  read_field(j, "grid_points", c.grid_points);
  read_field(j, "tolerance", c.tolerance);
  read_field(j, "analytic_optimizer", c.analytic_optimizer);
  read_field(j, "lattices", c.lattices);
  read_field(j, "runs_per_lattice", c.runs_per_lattice);
  read_field(j, "dimension", c.dimension);
  read_field(j, "max_diagonal", c.max_diagonal);
  read_field(j, "seed", c.seed);
  read_field(j, "qubit_budget", c.qubit_budget);
  read_field(j, "enumeration_budget", c.enumeration_budget);
  std::string out;
  read_field(j, "out", out);
  if (!out.empty()) c.out = out;
  if (c.entry_range < 1) throw UsageError("entry_range must be at least 1");
  return c;
}

CommandOutput cmd_spectrum(const ExperimentConfig& c) {
  require_k(c);
  if (c.k.size() != 1) throw UsageError("spectrum needs exactly one k");
  CommandOutput out;
  for (const auto& src : c.bases) {
    const Encoding enc(src.basis.dim(), c.k.front());
    const auto spectrum = truncated_spectrum(gram(src.basis), enc, c.qubit_budget);
    out.files["spectrum_" + src.label + ".csv"] = io::spectrum_csv(src.label, spectrum);
    out.report += src.label + ": levels=" + std::to_string(spectrum.size()) +
                  " lowest_nonzero=" + std::to_string(spectrum.size() > 1 ? spectrum[1] : 0) + "\n";
  }
  return out;
}

CommandOutput cmd_scaling(const ExperimentConfig& c) {
  require_k(c);
  if (c.trials < 1) throw UsageError("trials must be at least 1");
  if (c.bases.size() != 1) throw UsageError("scaling needs exactly one seed basis");
  const auto points =
      scaling_experiment(c.bases.front().basis, c.k, c.trials, c.entry_range, c.seed, c.enumeration_budget);
  CommandOutput out;
  out.files["scaling.csv"] = io::scaling_csv(points);
  for (const auto& p : points) {
    out.report += "k=" + std::to_string(p.k) + " median=" + std::to_string(p.median) +
                  " q75=" + std::to_string(p.q75) + "\n";
  }
  return out;
}

CommandOutput cmd_converge(const ExperimentConfig& c) {
  require_k(c);
  if (c.runs < 1) throw UsageError("runs must be at least 1");
  if (c.bases.size() != 1) throw UsageError("converge needs exactly one basis");
  const BasisSource& src = c.bases.front();
  const IterationConfig cfg = loop_config(c, c.seed);
  const EnsembleResult result = ensemble({src.basis}, cfg, c.runs);

  CommandOutput out;
  out.files["converge_stats.csv"] = io::ensemble_csv(result.stats);
  for (std::size_t i = 0; i < result.records.size(); ++i) {
    out.files["runs/run_" + std::to_string(i) + ".jsonl"] = io::run_to_jsonl(result.records[i]);
  }
  out.report += "runs=" + std::to_string(c.runs) + " iterations=" + std::to_string(c.iterations) + "\n";
  std::string finals = "final_median_lengths=";
  for (std::size_t r = 0; r < result.stats.dim; ++r) {
    if (r) finals += ",";
    finals += io::format_double(result.stats.raw_at(result.stats.iterations, r).median);
  }
  out.report += finals + "\n";
  if (src.minima_squared) {
    const std::vector<std::vector<std::int64_t>> minima(result.records.size(), *src.minima_squared);
    out.report += rates_report(success_rates(result.records, minima));
  }
  return out;
}

CommandOutput cmd_ensemble(const ExperimentConfig& c) {
  require_k(c);
  if (c.lattices < 1 || c.runs_per_lattice < 1) throw UsageError("lattices and runs_per_lattice must be at least 1");
  if (c.dimension < 2) throw UsageError("dimension must be at least 2");
  if (c.max_diagonal < 1) throw UsageError("max_diagonal must be at least 1");

  std::vector<GeneratedLattice> lattices;
  std::vector<Basis> bases;
  std::vector<std::vector<std::int64_t>> minima;
  const std::uint64_t lattice_root = derive_seed(c.seed, 1);
  for (std::size_t i = 0; i < c.lattices; ++i) {
    auto rng = make_rng(lattice_root, i);
    lattices.push_back(generate_lattice(c.dimension, rng, c.max_diagonal, c.entry_range));
    bases.push_back(lattices.back().basis);
    minima.push_back(lattices.back().minima_squared());
  }
  const IterationConfig cfg = loop_config(c, derive_seed(c.seed, 2));
  const EnsembleResult result = ensemble(bases, cfg, c.runs_per_lattice, minima);

  CommandOutput out;
  out.files["ensemble_stats.csv"] = io::ensemble_csv(result.stats);
  std::string listing;
  for (const auto& l : lattices) {
    json j;
    j["diagonal"] = l.diagonal;
    j["basis"] = json::parse(io::basis_to_json(l.basis));
    listing += j.dump() + "\n";
  }
  out.files["ensemble_lattices.jsonl"] = listing;

  std::vector<std::vector<std::int64_t>> per_record;
  for (std::size_t i = 0; i < result.records.size(); ++i) per_record.push_back(minima[i / c.runs_per_lattice]);
  out.report += "lattices=" + std::to_string(c.lattices) + " runs_per_lattice=" + std::to_string(c.runs_per_lattice) +
                " iterations=" + std::to_string(c.iterations) + "\n";
  out.report += "final_rank1_scaled_median=" +
                io::format_double(result.stats.scaled[result.stats.iterations * result.stats.dim].median) + "\n";
  out.report += rates_report(success_rates(result.records, per_record));
  return out;
}

CommandOutput run_experiment(const ExperimentConfig& c) {
  if (c.experiment == "spectrum") return cmd_spectrum(c);
  if (c.experiment == "scaling") return cmd_scaling(c);
  if (c.experiment == "converge") return cmd_converge(c);
  if (c.experiment == "ensemble") return cmd_ensemble(c);
  throw UsageError("unknown experiment \"" + c.experiment + "\"");
}

ExitCode execute(const ExperimentConfig& config, std::ostream& out, std::ostream& err) {
  try {
    CommandOutput result = run_experiment(config);
    io::write_files(config.out, result.files);
    out << result.report;
    return ExitCode::kOk;
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return ExitCode::kUsage;
  } catch (const BudgetExceeded& e) {
    err << "budget exceeded: " << e.what() << "\n";
    return ExitCode::kBudget;
  } catch (const OverflowError& e) {
    err << "budget exceeded: " << e.what() << "\n";
    return ExitCode::kBudget;
  } catch (const io::IoError& e) {
    err << "io error: " << e.what() << "\n";
    return ExitCode::kIo;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return ExitCode::kFailure;
  }
}

}  // namespace iqoap::cli
