// iqoap <spectrum|scaling|converge|ensemble> --config FILE [--seed N] [--out DIR] [--k LIST]

#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "iqoap/experiments.hpp"
#include "iqoap/io.hpp"

int main(int argc, char** argv) {
  using iqoap::cli::ExitCode;

  CLI::App app{"Iterative QAOA with adaptive problem Hamiltonian for the shortest vector problem"};
  app.require_subcommand(1, 1);

  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> out_dir;
  std::optional<std::string> k_list;

  for (const char* name : {"spectrum", "scaling", "converge", "ensemble"}) {
    auto* sub = app.add_subcommand(name);
    sub->add_option("--config", config_path, "experiment configuration (JSON)")->required();
    sub->add_option("--seed", seed, "root seed, overrides the config");
    sub->add_option("--out", out_dir, "output directory, overrides the config");
    sub->add_option("--k", k_list, "comma-separated qubits per dimension, overrides the config");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : static_cast<int>(ExitCode::kUsage);
  }
  const std::string command = app.get_subcommands().front()->get_name();

  iqoap::cli::ExperimentConfig config;
  try {
    const std::filesystem::path path(config_path);
    config = iqoap::cli::parse_config(iqoap::io::read_text(path), path.parent_path(), command);
    if (seed) config.seed = *seed;
    if (out_dir) config.out = *out_dir;
    if (k_list) config.k = iqoap::cli::parse_k_list(*k_list);
  } catch (const iqoap::cli::UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return static_cast<int>(ExitCode::kUsage);
  } catch (const iqoap::io::IoError& e) {
    std::cerr << "io error: " << e.what() << "\n";
    return static_cast<int>(ExitCode::kIo);
  } catch (const std::exception& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return static_cast<int>(ExitCode::kUsage);
  }
  return static_cast<int>(iqoap::cli::execute(config, std::cout, std::cerr));
}
