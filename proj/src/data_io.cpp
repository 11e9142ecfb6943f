#include "dscofs/data_io.hpp"

#include <nlohmann/json.hpp>

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

#include "dscofs/version.hpp"

namespace dscofs {

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  std::stringstream ss(line);
  while (std::getline(ss, cell, ',')) {
    if (!cell.empty() && cell.back() == '\r') cell.pop_back();
    cells.push_back(cell);
  }
  if (!line.empty() && line.back() == ',') cells.emplace_back();
  return cells;
}

bool parse_double(const std::string& text, double& out) {
  const char* begin = text.data();
  const char* end = begin + text.size();
  while (begin < end && (*begin == ' ' || *begin == '\t')) ++begin;
  while (end > begin && (end[-1] == ' ' || end[-1] == '\t')) --end;
  if (begin == end) return false;
  auto [ptr, ec] = std::from_chars(begin, end, out);
  return ec == std::errc() && ptr == end && std::isfinite(out);
}

std::vector<std::vector<std::string>> read_table(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::vector<std::vector<std::string>> rows;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line == "\r") continue;
    rows.push_back(split_csv_line(line));
  }
  if (rows.empty()) throw std::runtime_error(path + ": empty file");
  const std::size_t width = rows.front().size();
  for (std::size_t r = 1; r < rows.size(); ++r) {
    if (rows[r].size() != width) {
      throw std::runtime_error(path + ": ragged row " + std::to_string(r + 1) +
                               " (" + std::to_string(rows[r].size()) +
                               " cells, expected " + std::to_string(width) + ")");
    }
  }
  return rows;
}

}  // namespace

LoadedDataset load_csv(const DatasetFile& file) {
  auto rows = read_table(file.path);
  const std::size_t width = rows.front().size();

  // header iff the first row has any non-numeric cell
  bool has_header = false;
  for (const auto& cell : rows.front()) {
    double tmp;
    if (!parse_double(cell, tmp)) {
      has_header = true;
      break;
    }
  }

  long label_col = -1;
  if (has_header) {
    for (std::size_t c = 0; c < width; ++c) {
      if (rows.front()[c] == file.label_column) {
        label_col = static_cast<long>(c);
        break;
      }
    }
  }
  if (file.want_labels && label_col < 0) {
    throw std::runtime_error(file.path + ": label column '" +
                             file.label_column + "' not found");
  }

  const std::size_t first_data = has_header ? 1 : 0;
  const std::size_t n = rows.size() - first_data;
  if (n < 1) throw std::runtime_error(file.path + ": no data rows");
  const std::size_t d = width - (label_col >= 0 ? 1 : 0);
  if (d < 1) throw std::runtime_error(file.path + ": no feature columns");

  LoadedDataset out;
  out.data.values.resize(static_cast<Eigen::Index>(d),
                         static_cast<Eigen::Index>(n));
  LabelVector labels;
  std::map<std::string, int> label_ids;  // insertion order kept separately
  if (label_col >= 0) labels.reserve(n);

  for (std::size_t r = 0; r < n; ++r) {
    const auto& row = rows[r + first_data];
    Eigen::Index feat = 0;
    for (std::size_t c = 0; c < width; ++c) {
      if (static_cast<long>(c) == label_col) {
        auto it = label_ids.find(row[c]);
        if (it == label_ids.end()) {
          const int id = static_cast<int>(out.label_names.size());
          label_ids.emplace(row[c], id);
          out.label_names.push_back(row[c]);
          labels.push_back(id);
        } else {
          labels.push_back(it->second);
        }
        continue;
      }
      double value;
      if (!parse_double(row[c], value)) {
        throw std::runtime_error(file.path + ": non-numeric cell at row " +
                                 std::to_string(r + first_data + 1) +
                                 ", column " + std::to_string(c + 1));
      }
      out.data.values(feat++, static_cast<Eigen::Index>(r)) = value;
    }
  }
  if (label_col >= 0) out.labels = std::move(labels);
  return out;
}

void save_dataset_csv(const std::string& path, const DataMatrix& data,
                      const LabelVector* labels) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  const Eigen::Index d = data.d(), n = data.n();
  if (labels && static_cast<Eigen::Index>(labels->size()) != n) {
    throw std::invalid_argument("save_dataset_csv: label count mismatch");
  }
  for (Eigen::Index f = 0; f < d; ++f) {
    out << 'f' << (f + 1);
    if (f + 1 < d || labels) out << ',';
  }
  if (labels) out << "label";
  out << '\n';
  char buf[40];
  for (Eigen::Index j = 0; j < n; ++j) {
    for (Eigen::Index f = 0; f < d; ++f) {
      std::snprintf(buf, sizeof(buf), "%.17g", data.values(f, j));
      out << buf;
      if (f + 1 < d || labels) out << ',';
    }
    if (labels) out << (*labels)[j];
    out << '\n';
  }
  if (!out) throw std::runtime_error("write failed: " + path);
}

ScoreTable load_score_table(const std::string& path) {
  auto rows = read_table(path);
  if (rows.size() < 2) throw std::runtime_error(path + ": need header plus rows");
  const std::size_t width = rows.front().size();

  // a leading dataset-name column is detected from the body, not the header
  bool has_name_col = false;
  for (std::size_t r = 1; r < rows.size(); ++r) {
    double tmp;
    if (!parse_double(rows[r][0], tmp)) has_name_col = true;
  }
  const std::size_t first_score = has_name_col ? 1 : 0;
  const std::size_t k = width - first_score;
  if (k < 2) throw std::runtime_error(path + ": need at least 2 method columns");

  ScoreTable table;
  for (std::size_t c = first_score; c < width; ++c) {
    table.method_names.push_back(rows.front()[c]);
  }
  const std::size_t N = rows.size() - 1;
  table.scores.resize(static_cast<Eigen::Index>(N), static_cast<Eigen::Index>(k));
  for (std::size_t r = 1; r < rows.size(); ++r) {
    table.dataset_names.push_back(has_name_col ? rows[r][0]
                                               : "dataset" + std::to_string(r));
    for (std::size_t c = first_score; c < width; ++c) {
      double value;
      if (!parse_double(rows[r][c], value)) {
        throw std::runtime_error(path + ": non-numeric score at row " +
                                 std::to_string(r + 1) + ", column " +
                                 std::to_string(c + 1));
      }
      table.scores(static_cast<Eigen::Index>(r - 1),
                   static_cast<Eigen::Index>(c - first_score)) = value;
    }
  }
  return table;
}

void save_report(const Json& report, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << report.dump(2) << '\n';
  if (!out) throw std::runtime_error("write failed: " + path);
}

Json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return Json::parse(in);
}

Json report_envelope(const Json& payload, std::uint64_t seed,
                     const Json& config_echo) {
  Json j;
  j["version"] = DSCOFS_VERSION;
  j["seed"] = seed;
  j["config"] = config_echo;
  j["result"] = payload;
  return j;
}

Json config_to_json(const SolverConfig& c) {
  Json j;
  j["mu1"] = c.mu1;
  j["mu2"] = c.mu2;
  j["tau1"] = c.tau1;
  j["tau2"] = c.tau2;
  j["tau3"] = c.tau3;
  j["beta"] = c.beta;
  j["rho"] = c.rho;
  j["m"] = c.m;
  j["s"] = c.s;
  j["r"] = c.r;
  j["alpha"] = c.alpha;
  j["max_outer_iter"] = c.max_outer_iter;
  j["outer_tol"] = c.outer_tol;
  j["inner_max_iter"] = c.inner_max_iter;
  j["inner_tol"] = c.inner_tol;
  j["restarts"] = c.restarts;
  j["rng_seed"] = c.rng_seed;
  return j;
}

SolverConfig config_from_json(const Json& j, SolverConfig base) {
  auto get = [&](const char* key, auto& field) {
    if (j.contains(key)) field = j.at(key).get<std::decay_t<decltype(field)>>();
  };
  get("mu1", base.mu1);
  get("mu2", base.mu2);
  get("tau1", base.tau1);
  get("tau2", base.tau2);
  get("tau3", base.tau3);
  get("beta", base.beta);
  get("rho", base.rho);
  get("m", base.m);
  get("s", base.s);
  get("r", base.r);
  get("alpha", base.alpha);
  get("max_outer_iter", base.max_outer_iter);
  get("outer_tol", base.outer_tol);
  get("inner_max_iter", base.inner_max_iter);
  get("inner_tol", base.inner_tol);
  get("restarts", base.restarts);
  get("rng_seed", base.rng_seed);
  return base;
}

}  // namespace dscofs
