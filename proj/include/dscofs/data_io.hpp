#pragma once

#include <optional>
#include <string>

#include "dscofs/types.hpp"

#include <nlohmann/json.hpp>

namespace dscofs {

using Json = nlohmann::ordered_json;

struct DatasetFile {
  std::string path;
  bool want_labels = false;
  std::string label_column = "label";
};

struct LoadedDataset {
  DataMatrix data;                       // d x n, transposed from samples-as-rows
  std::optional<LabelVector> labels;     // contiguous 0-based ids
  std::vector<std::string> label_names;  // original label text, by id
};

// Samples-as-rows CSV with an optional header (auto-detected by a non-numeric
// first row). Values are not centered here.
LoadedDataset load_csv(const DatasetFile& file);

// Samples-as-rows CSV with 17 significant digits, optional label column.
void save_dataset_csv(const std::string& path, const DataMatrix& data,
                      const LabelVector* labels);

// Header row of method names (optional leading dataset-name column).
ScoreTable load_score_table(const std::string& path);

void save_report(const Json& report, const std::string& path);
Json load_json(const std::string& path);

// Standard wrapper: payload plus version, seed, and config echo.
Json report_envelope(const Json& payload, std::uint64_t seed,
                     const Json& config_echo);

Json config_to_json(const SolverConfig& c);
SolverConfig config_from_json(const Json& j, SolverConfig base = {});

}  // namespace dscofs
