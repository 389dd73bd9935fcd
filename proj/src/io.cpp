#include "iqoap/io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <system_error>

#include "json.hpp"

namespace iqoap::io {

using nlohmann::json;

std::string basis_to_json(const Basis& basis) {
  json j;
  j["d"] = basis.dim();
  j["rows"] = basis.matrix().to_rows();
  return j.dump();
}

Basis basis_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("basis JSON: ") + e.what());
  }
  if (!j.is_object() || !j.contains("d") || !j.contains("rows")) {
    throw std::invalid_argument("basis JSON needs fields \"d\" and \"rows\"");
  }
  std::vector<std::vector<std::int64_t>> rows;
  std::size_t d = 0;
  try {
    d = j.at("d").get<std::size_t>();
    rows = j.at("rows").get<std::vector<std::vector<std::int64_t>>>();
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("basis JSON: ") + e.what());
  }
  if (rows.size() != d) throw std::invalid_argument("basis JSON: \"d\" does not match the number of rows");
  return Basis(SquareMatrix(rows));
}

std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Basis read_basis(const std::filesystem::path& path) { return basis_from_json(read_text(path)); }

std::string entry_to_json(const IterationEntry& e) {
  json j;
  j["iteration"] = e.iteration;
  j["sorted_squared_lengths"] = e.sorted_squared_lengths;
  j["accepted"] = e.accepted;
  j["replaced_index"] = e.replaced_index ? json(*e.replaced_index) : json(nullptr);
  j["accepted_coefficients"] = e.accepted_coefficients ? json(*e.accepted_coefficients) : json(nullptr);
  j["qaoa_attempts"] = e.qaoa_attempts;
  j["gamma"] = e.gamma;
  return j.dump();
}

IterationEntry entry_from_json(const std::string& line) {
  try {
    const json j = json::parse(line);
    IterationEntry e;
    e.iteration = j.at("iteration").get<std::size_t>();
    e.sorted_squared_lengths = j.at("sorted_squared_lengths").get<std::vector<std::int64_t>>();
    e.accepted = j.at("accepted").get<bool>();
    if (!j.at("replaced_index").is_null()) e.replaced_index = j.at("replaced_index").get<std::size_t>();
    if (!j.at("accepted_coefficients").is_null()) {
      e.accepted_coefficients = j.at("accepted_coefficients").get<CoefficientVector>();
    }
    e.qaoa_attempts = j.at("qaoa_attempts").get<std::size_t>();
    e.gamma = j.at("gamma").get<double>();
    return e;
  } catch (const json::exception& ex) {
    throw std::invalid_argument(std::string("run record line: ") + ex.what());
  }
}

std::string run_to_jsonl(const RunRecord& record) {
  std::string out;
  for (const auto& e : record.entries) {
    out += entry_to_json(e);
    out += '\n';
  }
  return out;
}

std::string format_double(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  if (ec != std::errc()) throw std::runtime_error("format_double failed");
  return std::string(buf, ptr);
}

std::string spectrum_csv(const std::string& label, const std::vector<std::int64_t>& spectrum) {
  std::string out = std::string(kSpectrumHeader) + "\n";
  for (std::int64_t e : spectrum) out += label + "," + std::to_string(e) + "\n";
  return out;
}

std::string scaling_csv(const std::vector<ScalingPoint>& points) {
  std::string out = std::string(kScalingHeader) + "\n";
  for (const auto& p : points) {
    out += std::to_string(p.k) + "," + std::to_string(p.median) + "," + std::to_string(p.q75) + "\n";
  }
  return out;
}

std::string ensemble_csv(const EnsembleStats& s) {
  std::string out = kEnsembleHeader;
  if (s.has_normalized) out += kNormalizedColumns;
  out += '\n';
  auto append = [&out](const QuantileBand& b) {
    out += "," + format_double(b.median) + "," + format_double(b.q10) + "," + format_double(b.q90);
  };
  for (std::size_t it = 0; it <= s.iterations; ++it) {
    for (std::size_t rank = 0; rank < s.dim; ++rank) {
      const std::size_t at = it * s.dim + rank;
      out += std::to_string(it) + "," + std::to_string(rank + 1);
      append(s.raw[at]);
      if (s.has_normalized) {
        append(s.scaled[at]);
        append(s.relative[at]);
      }
      out += '\n';
    }
  }
  return out;
}

void write_files(const std::filesystem::path& out_dir, const FileSet& files) {
  namespace fs = std::filesystem;
  std::error_code ec;
  for (const auto& [rel, content] : files) {
    const fs::path target = out_dir / rel;
    fs::create_directories(target.parent_path(), ec);
    if (ec) throw IoError("cannot create " + target.parent_path().string() + ": " + ec.message());
    fs::path tmp = target;
    tmp += ".tmp";
    {
      std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
      if (!f) throw IoError("cannot write " + tmp.string());
      f.write(content.data(), static_cast<std::streamsize>(content.size()));
      if (!f) throw IoError("write failed for " + tmp.string());
    }
    fs::rename(tmp, target, ec);
    if (ec) throw IoError("cannot rename " + tmp.string() + ": " + ec.message());
  }
}

}  // namespace iqoap::io
