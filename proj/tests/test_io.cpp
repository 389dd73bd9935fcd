#include <filesystem>
#include <random>
#include <sstream>

#include "doctest.h"
#include "fixtures.hpp"
#include "iqoap/io.hpp"
#include "iqoap/seeding.hpp"

using namespace iqoap;
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

fs::path scratch_dir(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("iqoap_test_io_" + name);
  fs::remove_all(p);
  return p;
}

}  // namespace

TEST_CASE("basis JSON round trip") {
  for (const Basis& b : {basis_a(), basis_b(), basis_c()}) CHECK(io::basis_from_json(io::basis_to_json(b)) == b);
  CHECK(io::basis_to_json(basis_a()) == R"({"d":4,"rows":[[1,0,0,0],[0,2,0,0],[0,0,3,0],[0,0,0,4]]})");
}

TEST_CASE("basis JSON rejects malformed input") {
  CHECK_THROWS_AS(io::basis_from_json("not json"), std::invalid_argument);
  CHECK_THROWS_AS(io::basis_from_json(R"({"rows":[[1,0],[0,1]]})"), std::invalid_argument);
  CHECK_THROWS_AS(io::basis_from_json(R"({"d":3,"rows":[[1,0],[0,1]]})"), std::invalid_argument);
  CHECK_THROWS_AS(io::basis_from_json(R"({"d":2,"rows":[[1,0],[0]]})"), std::invalid_argument);
  CHECK_THROWS_AS(io::basis_from_json(R"({"d":2,"rows":[[1,2],[2,4]]})"), std::invalid_argument);
  CHECK_THROWS_AS(io::basis_from_json(R"({"d":2,"rows":[[1,"x"],[0,1]]})"), std::invalid_argument);
}

TEST_CASE("iteration entry JSON round trip") {
  std::mt19937_64 rng = make_rng(31, 0);
  std::uniform_int_distribution<std::int64_t> coeff(-1000, 1000);
  std::uniform_real_distribution<double> angle(0.0, 6.3);
  for (int trial = 0; trial < 200; ++trial) {
    IterationEntry e;
    e.iteration = static_cast<std::size_t>(trial);
    for (int i = 0; i < 4; ++i) e.sorted_squared_lengths.push_back(std::abs(coeff(rng)));
    e.accepted = trial % 3 != 0;
    if (e.accepted) {
      e.replaced_index = static_cast<std::size_t>(trial % 4);
      e.accepted_coefficients = CoefficientVector{coeff(rng), coeff(rng), coeff(rng), coeff(rng)};
    }
    e.qaoa_attempts = static_cast<std::size_t>(trial % 11 + 1);
    e.gamma = angle(rng);
    const std::string line = io::entry_to_json(e);
    CHECK(line.find('\n') == std::string::npos);
    CHECK(io::entry_from_json(line) == e);
  }
  const std::string rejected = io::entry_to_json(IterationEntry{3, {1, 4}, false, {}, {}, 10, 0.5});
  CHECK(rejected ==
        R"({"accepted":false,"accepted_coefficients":null,"gamma":0.5,"iteration":3,"qaoa_attempts":10,)"
        R"("replaced_index":null,"sorted_squared_lengths":[1,4]})");
  CHECK_THROWS_AS(io::entry_from_json(R"({"iteration":1})"), std::invalid_argument);
}

TEST_CASE("run_to_jsonl writes one line per entry") {
  RunRecord r{basis_c(), basis_c(), {}};
  for (std::size_t i = 1; i <= 3; ++i) r.entries.push_back({i, {1, 2, 3, 4}, false, {}, {}, 1, 0.0});
  const auto lines = lines_of(io::run_to_jsonl(r));
  REQUIRE(lines.size() == 3);
  for (std::size_t i = 0; i < 3; ++i) CHECK(io::entry_from_json(lines[i]) == r.entries[i]);
}

TEST_CASE("format_double is shortest round trip") {
  CHECK(io::format_double(1.0) == "1");
  CHECK(io::format_double(0.5) == "0.5");
  CHECK(io::format_double(0.1) == "0.1");
  const double v = 0.95720401164064006;
  CHECK(std::stod(io::format_double(v)) == v);
}

TEST_CASE("CSV layouts") {
  SUBCASE("spectrum") {
    const auto lines = lines_of(io::spectrum_csv("b", {0, 25, 26}));
    CHECK(lines == std::vector<std::string>{"basis_label,eigenvalue", "b,0", "b,25", "b,26"});
  }
  SUBCASE("scaling") {
    const auto lines = lines_of(io::scaling_csv({{2, 30, 50}, {3, 9, 16}}));
    CHECK(lines == std::vector<std::string>{"k,median,q75", "2,30,50", "3,9,16"});
  }
  SUBCASE("ensemble") {
    EnsembleStats s;
    s.iterations = 1;
    s.dim = 2;
    s.raw = {{1, 1, 2}, {2, 2, 3}, {1, 1, 1}, {2, 1.5, 2}};
    auto lines = lines_of(io::ensemble_csv(s));
    REQUIRE(lines.size() == 5);
    CHECK(lines[0] == "iteration,rank,median,q10,q90");
    CHECK(lines[1] == "0,1,1,1,2");
    CHECK(lines[4] == "1,2,2,1.5,2");
    s.has_normalized = true;
    s.scaled = s.raw;
    s.relative = s.raw;
    lines = lines_of(io::ensemble_csv(s));
    CHECK(lines[0] ==
          "iteration,rank,median,q10,q90,scaled_median,scaled_q10,scaled_q90,"
          "relative_median,relative_q10,relative_q90");
    CHECK(lines[2] == "0,2,2,2,3,2,2,3,2,2,3");
  }
  SUBCASE("no carriage returns") {
    CHECK(io::spectrum_csv("a", {0, 1}).find('\r') == std::string::npos);
  }
}

TEST_CASE("write_files and read_text") {
  const fs::path dir = scratch_dir("write");
  io::write_files(dir, {{"x.csv", "a,b\n1,2\n"}, {"runs/run_0.jsonl", "{}\n"}});
  CHECK(io::read_text(dir / "x.csv") == "a,b\n1,2\n");
  CHECK(io::read_text(dir / "runs" / "run_0.jsonl") == "{}\n");
  CHECK_FALSE(fs::exists(dir / "x.csv.tmp"));
  io::write_files(dir, {{"x.csv", "overwritten\n"}});
  CHECK(io::read_text(dir / "x.csv") == "overwritten\n");
  CHECK_THROWS_AS(io::read_text(dir / "missing.json"), io::IoError);
  // A regular file where a directory is needed.
  CHECK_THROWS_AS(io::write_files(dir / "x.csv", {{"y.csv", "1\n"}}), io::IoError);
  fs::remove_all(dir);
}

TEST_CASE("read_basis") {
  const fs::path dir = scratch_dir("read");
  io::write_files(dir, {{"b.json", io::basis_to_json(basis_b())}});
  CHECK(io::read_basis(dir / "b.json") == basis_b());
  CHECK_THROWS_AS(io::read_basis(dir / "none.json"), io::IoError);
  fs::remove_all(dir);
}
