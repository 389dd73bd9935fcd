#include <filesystem>
#include <sstream>

#include "doctest.h"
#include "fixtures.hpp"
#include "iqoap/experiments.hpp"

using namespace iqoap;
using namespace iqoap::cli;
using namespace iqoap::testing;
namespace fs = std::filesystem;

namespace {

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string line;
  while (std::getline(ss, line)) out.push_back(line);
  return out;
}

ExperimentConfig small_converge() {
  return parse_config(R"({"experiment":"converge","runs":4,"iterations":6,"grid_points":32,"seed":7})");
}

ExperimentConfig small_ensemble() {
  return parse_config(R"({"experiment":"ensemble","lattices":4,"iterations":6,"grid_points":32,"seed":7})");
}

}  // namespace

TEST_CASE("builtin bases") {
  CHECK(builtin_basis("a") == basis_a());
  CHECK(builtin_basis("b") == basis_b());
  CHECK(builtin_basis("c") == basis_c());
  CHECK_THROWS_AS(builtin_basis("d"), UsageError);
  CHECK(builtin_labels() == std::vector<std::string>{"a", "b", "c"});
}

TEST_CASE("parse_k_list") {
  CHECK(parse_k_list("2") == std::vector<unsigned>{2});
  CHECK(parse_k_list("2,3,5") == std::vector<unsigned>{2, 3, 5});
  for (const char* bad : {"", ",", "2,", "a", "2,,3", "0", "-1", "2.5", " 2"}) {
    CAPTURE(bad);
    CHECK_THROWS_AS(parse_k_list(bad), UsageError);
  }
}

TEST_CASE("parse_config defaults") {
  const auto s = parse_config(R"({"experiment":"spectrum"})");
  REQUIRE(s.bases.size() == 3);
  CHECK(s.bases[2].label == "c");
  CHECK(s.k == std::vector<unsigned>{2});
  CHECK(s.seed == 1);

  const auto sc = parse_config(R"({"experiment":"scaling"})");
  REQUIRE(sc.bases.size() == 1);
  CHECK(sc.bases[0].label == "a");
  CHECK(sc.k == std::vector<unsigned>{2, 3, 4, 5});
  CHECK(sc.trials == 100);

  const auto cv = parse_config(R"({"experiment":"converge"})");
  REQUIRE(cv.bases.size() == 1);
  CHECK(cv.bases[0].basis == basis_c());
  CHECK(cv.bases[0].minima_squared == std::vector<std::int64_t>{1, 4, 9, 16});
  CHECK(cv.runs == 50);
  CHECK(cv.iterations == 50);
  CHECK(cv.retries == 100);
  CHECK(cv.shots == 1);
}

TEST_CASE("parse_config fields") {
  const auto c = parse_config(
      R"({"experiment":"converge","basis":{"builtin":"b"},"k":3,"runs":7,"seed":99,"out":"dir",)"
      R"("analytic_optimizer":true,"grid_points":64,"tolerance":1e-4})");
  CHECK(c.bases.at(0).basis == basis_b());
  CHECK(c.k == std::vector<unsigned>{3});
  CHECK(c.runs == 7);
  CHECK(c.seed == 99);
  CHECK(c.out == fs::path("dir"));
  CHECK(c.analytic_optimizer);
  CHECK(c.grid_points == 64);
  CHECK(c.tolerance == 1e-4);

  const auto multi = parse_config(R"({"experiment":"spectrum","bases":["a",{"builtin":"c"}],"k":[2]})");
  REQUIRE(multi.bases.size() == 2);
  CHECK(multi.bases[1].label == "c");

  // The subcommand wins over the file's experiment field.
  CHECK(parse_config(R"({"experiment":"spectrum"})", {}, "scaling").experiment == "scaling");
  CHECK(parse_config("{}", {}, "converge").experiment == "converge");
}

TEST_CASE("parse_config basis files") {
  const fs::path dir = fs::temp_directory_path() / "iqoap_test_experiments_files";
  fs::remove_all(dir);
  io::write_files(dir, {{"mine.json", io::basis_to_json(basis_b())}});
  const auto c =
      parse_config(R"({"experiment":"converge","basis":{"file":"mine.json","minima_squared":[16,1,9,4]}})", dir);
  CHECK(c.bases.at(0).label == "mine");
  CHECK(c.bases.at(0).basis == basis_b());
  CHECK(c.bases.at(0).minima_squared == std::vector<std::int64_t>{1, 4, 9, 16});
  CHECK_FALSE(parse_config(R"({"experiment":"converge","basis":{"file":"mine.json"}})", dir)
                  .bases.at(0)
                  .minima_squared.has_value());
  CHECK_THROWS_AS(parse_config(R"({"experiment":"converge","basis":{"file":"gone.json"}})", dir), io::IoError);
  CHECK_THROWS_AS(parse_config(R"({"experiment":"converge","basis":{"file":"mine.json","minima_squared":[1]}})", dir),
                  UsageError);
  fs::remove_all(dir);
}

TEST_CASE("parse_config usage errors") {
  for (const char* bad : {"", "[]", "{", R"({"experiment":"nope"})", R"({})", R"({"experiment":"converge","k":0})",
                          R"({"experiment":"converge","runs":"many"})", R"({"experiment":"converge","basis":"z"})",
                          R"({"experiment":"converge","basis":{"other":1}})",
                          R"({"experiment":"converge","bases":"a"})", R"({"experiment":"scaling","entry_range":0})"}) {
    CAPTURE(bad);
    CHECK_THROWS_AS(parse_config(bad), UsageError);
  }
}

TEST_CASE("spectrum command") {
  const auto out = cmd_spectrum(parse_config(R"({"experiment":"spectrum"})"));
  REQUIRE(out.files.size() == 3);
  const auto a = lines_of(out.files.at("spectrum_a.csv"));
  CHECK(a.size() == 1 + 55);
  CHECK(a[1] == "a,0");
  CHECK(a[2] == "a,1");
  CHECK(lines_of(out.files.at("spectrum_b.csv"))[2] == "b,25");
  CHECK(lines_of(out.files.at("spectrum_c.csv"))[2] == "c,68");
  CHECK(out.report.find("c: levels=216 lowest_nonzero=68") != std::string::npos);
  CHECK_THROWS_AS(cmd_spectrum(parse_config(R"({"experiment":"spectrum","k":[2,3]})")), UsageError);
}

TEST_CASE("scaling command") {
  const auto cfg = parse_config(R"({"experiment":"scaling","trials":10,"k":[2,3]})");
  const auto out = cmd_scaling(cfg);
  const auto lines = lines_of(out.files.at("scaling.csv"));
  REQUIRE(lines.size() == 3);
  CHECK(lines[0] == "k,median,q75");
  CHECK(lines[1].rfind("2,", 0) == 0);
  CHECK(lines[2].rfind("3,", 0) == 0);
  CHECK(cmd_scaling(cfg).files == out.files);
}

TEST_CASE("converge command") {
  const auto cfg = small_converge();
  const auto out = cmd_converge(cfg);
  REQUIRE(out.files.size() == 1 + 4);
  const auto stats = lines_of(out.files.at("converge_stats.csv"));
  CHECK(stats[0] == "iteration,rank,median,q10,q90");
  CHECK(stats.size() == 1 + 7 * 4);
  CHECK(stats[1].rfind("0,1,", 0) == 0);
  for (int i = 0; i < 4; ++i) {
    const auto run = lines_of(out.files.at("runs/run_" + std::to_string(i) + ".jsonl"));
    REQUIRE(run.size() == 6);
    for (std::size_t t = 0; t < run.size(); ++t) CHECK(io::entry_from_json(run[t]).iteration == t + 1);
  }
  CHECK(out.report.find("success_shortest=") != std::string::npos);
  CHECK(cmd_converge(cfg).files == out.files);
  auto other = cfg;
  other.seed = 8;
  CHECK_FALSE(cmd_converge(other).files == out.files);
}

TEST_CASE("ensemble command") {
  const auto cfg = small_ensemble();
  const auto out = cmd_ensemble(cfg);
  const auto stats = lines_of(out.files.at("ensemble_stats.csv"));
  CHECK(stats[0] ==
        "iteration,rank,median,q10,q90,scaled_median,scaled_q10,scaled_q90,"
        "relative_median,relative_q10,relative_q90");
  CHECK(stats.size() == 1 + 7 * 4);
  CHECK(lines_of(out.files.at("ensemble_lattices.jsonl")).size() == 4);
  CHECK(out.report.find("final_rank1_scaled_median=") != std::string::npos);
  CHECK(cmd_ensemble(cfg).files == out.files);
}

TEST_CASE("execute maps failures to exit codes") {
  std::ostringstream out, err;
  const fs::path dir = fs::temp_directory_path() / "iqoap_test_experiments_exec";
  fs::remove_all(dir);

  auto cfg = parse_config(R"({"experiment":"spectrum","bases":["a"]})");
  cfg.out = dir;
  CHECK(execute(cfg, out, err) == ExitCode::kOk);
  CHECK(fs::exists(dir / "spectrum_a.csv"));

  auto budget = cfg;
  budget.k = {7};  // 28 qubits
  CHECK(execute(budget, out, err) == ExitCode::kBudget);

  auto scaling = parse_config(R"({"experiment":"scaling","trials":2,"k":[5],"enumeration_budget":1000})");
  scaling.out = dir;
  CHECK(execute(scaling, out, err) == ExitCode::kBudget);

  auto usage = parse_config(R"({"experiment":"converge","k":[2,3]})");
  usage.out = dir;
  CHECK(execute(usage, out, err) == ExitCode::kUsage);

  auto io_fail = cfg;
  io_fail.out = dir / "spectrum_a.csv";  // a file, not a directory
  CHECK(execute(io_fail, out, err) == ExitCode::kIo);
  fs::remove_all(dir);
}
