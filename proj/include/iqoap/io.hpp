#pragma once

// Serialization: bases as JSON, run logs as JSON lines, statistics as CSV.

#include <filesystem>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "iqoap/encoding.hpp"
#include "iqoap/lattice.hpp"
#include "iqoap/loop.hpp"

namespace iqoap::io {

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// {"d": int, "rows": [[int, ...], ...]}
std::string basis_to_json(const Basis& basis);
/// Throws std::invalid_argument on malformed input or a d/rows mismatch.
Basis basis_from_json(const std::string& text);
Basis read_basis(const std::filesystem::path& path);

/// One JSON object per iteration entry, fields named as in IterationEntry.
std::string entry_to_json(const IterationEntry& entry);
IterationEntry entry_from_json(const std::string& line);
std::string run_to_jsonl(const RunRecord& record);

/// basis_label,eigenvalue
std::string spectrum_csv(const std::string& label, const std::vector<std::int64_t>& spectrum);
/// k,median,q75
std::string scaling_csv(const std::vector<ScalingPoint>& points);
/// iteration,rank,median,q10,q90 followed, when the stats carry them, by the
/// scaled_* and relative_* normalized bands.
std::string ensemble_csv(const EnsembleStats& stats);

inline constexpr const char* kSpectrumHeader = "basis_label,eigenvalue";
inline constexpr const char* kScalingHeader = "k,median,q75";
inline constexpr const char* kEnsembleHeader = "iteration,rank,median,q10,q90";
inline constexpr const char* kNormalizedColumns =
    ",scaled_median,scaled_q10,scaled_q90,relative_median,relative_q10,relative_q90";

/// Shortest decimal form that parses back to the same double.
std::string format_double(double v);

/// Files to emit, keyed by path relative to the output directory.
using FileSet = std::map<std::string, std::string>;

/// Writes every file via a temporary sibling and rename. Throws IoError.
void write_files(const std::filesystem::path& out_dir, const FileSet& files);

std::string read_text(const std::filesystem::path& path);

}  // namespace iqoap::io
