#include "markov/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <utility>

#include "json.hpp"

namespace markov::io {

namespace {

using nlohmann::json;

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r\n");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r\n");
  return s.substr(begin, end - begin + 1);
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::istringstream in(line);
  while (std::getline(in, field, ',')) fields.push_back(trim(field));
  return fields;
}

double parse_double(const std::string& token) {
  double value = 0.0;
  const char* begin = token.data();
  const char* end = begin + token.size();
  const auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc{} || ptr != end) {
    throw ParseError("cannot parse number '" + token + "'");
  }
  return value;
}

int parse_int(const std::string& token) {
  int value = 0;
  const char* begin = token.data();
  const char* end = begin + token.size();
  const auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc{} || ptr != end) {
    throw ParseError("cannot parse integer '" + token + "'");
  }
  return value;
}

std::ifstream open_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path.string());
  return in;
}

void write_row(std::ostream& out, const double* row, int count, int precision) {
  out << std::fixed << std::setprecision(precision);
  for (int j = 0; j < count; ++j) {
    if (j > 0) out << ',';
    out << row[j];
  }
  out << '\n';
}

json require(const json& j, const char* key, const char* where) {
  if (!j.contains(key)) {
    throw ParseError(std::string(where) + " is missing field '" + key + "'");
  }
  return j.at(key);
}

}  // namespace

TransitionMatrix read_matrix(const std::filesystem::path& path) {
  std::ifstream in = open_file(path);
  // JSON matrices start with '{'; anything else is treated as CSV rows.
  int c = in.peek();
  while (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
    in.get();
    c = in.peek();
  }
  if (c == '{') return parse_matrix_json(in);
  return parse_matrix_csv(in);
}

TransitionMatrix parse_matrix_csv(std::istream& in) {
  std::vector<std::vector<double>> rows;
  std::string line;
  while (std::getline(in, line)) {
    if (trim(line).empty()) continue;
    std::vector<double> row;
    for (const std::string& token : split_csv(line)) row.push_back(parse_double(token));
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw ParseError("matrix file has no rows");
  return TransitionMatrix(rows);
}

TransitionMatrix parse_matrix_json(std::istream& in) {
  json j;
  try {
    j = json::parse(in);
  } catch (const json::exception& e) {
    throw ParseError(std::string("invalid JSON matrix: ") + e.what());
  }
  const json rows_json = require(j, "rows", "matrix");
  if (!rows_json.is_array() || rows_json.empty()) {
    throw ParseError("matrix 'rows' must be a nonempty array");
  }
  std::vector<std::vector<double>> rows;
  for (const json& row : rows_json) {
    if (!row.is_array()) throw ParseError("matrix rows must be arrays");
    rows.push_back(row.get<std::vector<double>>());
  }
  if (j.contains("d") && j.at("d").get<int>() != static_cast<int>(rows.size())) {
    throw ParseError("matrix 'd' does not match the number of rows");
  }
  return TransitionMatrix(rows);
}

void write_matrix_csv(std::ostream& out, const TransitionMatrix& m, int precision) {
  for (int i = 0; i < m.dim(); ++i) {
    write_row(out, m.row(i).data(), m.dim(), precision);
  }
}

void write_matrix_json(std::ostream& out, const TransitionMatrix& m) {
  json rows = json::array();
  for (int i = 0; i < m.dim(); ++i) {
    rows.push_back(std::vector<double>(m.row(i).begin(), m.row(i).end()));
  }
  out << json{{"d", m.dim()}, {"rows", rows}}.dump(2) << '\n';
}

StateSequence read_sequence(const std::filesystem::path& path, int d) {
  std::ifstream in = open_file(path);
  return parse_sequence_csv(in, d);
}

StateSequence parse_sequence_csv(std::istream& in, int d) {
  std::string line;
  std::string content;
  bool seen = false;
  while (std::getline(in, line)) {
    if (trim(line).empty()) continue;
    if (seen) throw ParseError("sequence files hold a single CSV line");
    content = line;
    seen = true;
  }
  if (!seen) throw ParseError("sequence file has no observations");
  std::vector<int> states;
  for (const std::string& token : split_csv(content)) {
    states.push_back(parse_int(token) - 1);  // file states are 1-based
  }
  return StateSequence(d, std::move(states));
}

void write_sequence_csv(std::ostream& out, const StateSequence& seq) {
  for (int k = 0; k < seq.size(); ++k) {
    if (k > 0) out << ',';
    out << seq[k] + 1;
  }
  out << '\n';
}

void write_batch_csv(std::ostream& out, const BootstrapBatch& batch, int precision) {
  const int dd = batch.d * batch.d;
  for (int k = 0; k < batch.B; ++k) {
    write_row(out, batch.estimates.data() + static_cast<std::size_t>(k) * dd, dd,
              precision);
  }
}

void write_batch_json(std::ostream& out, const BootstrapBatch& batch,
                      const std::vector<ConfidenceInterval>& cis, double alpha) {
  const int dd = batch.d * batch.d;
  json mean = json::array();
  for (int i = 0; i < batch.d; ++i) {
    for (int j = 0; j < batch.d; ++j) {
      mean.push_back({{"i", i + 1},
                      {"j", j + 1},
                      {"value", batch.mean[static_cast<std::size_t>(i) * batch.d + j]}});
    }
  }
  json cov = json::array();
  for (int r = 0; r < dd; ++r) {
    const double* row = batch.covariance.data() + static_cast<std::size_t>(r) * dd;
    cov.push_back(std::vector<double>(row, row + dd));
  }
  json intervals = json::array();
  for (int i = 0; i < batch.d; ++i) {
    for (int j = 0; j < batch.d; ++j) {
      const ConfidenceInterval& ci = cis[static_cast<std::size_t>(i) * batch.d + j];
      intervals.push_back(
          {{"i", i + 1}, {"j", j + 1}, {"lower", ci.lower}, {"upper", ci.upper}});
    }
  }
  out << json{{"d", batch.d},
              {"B", batch.B},
              {"alpha", alpha},
              {"mean", mean},
              {"covariance", cov},
              {"cis", intervals}}
             .dump(2)
      << '\n';
}

void write_ecdf_csv(std::ostream& out, const EmpiricalCDF& cdf) {
  const std::vector<double>& v = cdf.sorted_values();
  out << std::fixed << std::setprecision(6);
  for (std::size_t k = 0; k < v.size();) {
    std::size_t e = k;
    while (e + 1 < v.size() && v[e + 1] == v[k]) ++e;
    out << v[k] << ','
        << static_cast<double>(e + 1) / static_cast<double>(v.size()) << '\n';
    k = e + 1;
  }
}

std::vector<StudyConfig> load_study_configs(const std::filesystem::path& path) {
  std::ifstream in = open_file(path);
  json j;
  try {
    j = json::parse(in);
  } catch (const json::exception& e) {
    throw ParseError(std::string("invalid study config: ") + e.what());
  }

  std::vector<std::string> truth_names;
  if (j.contains("truths")) {
    truth_names = j.at("truths").get<std::vector<std::string>>();
  } else {
    truth_names.push_back(require(j, "truth", "study config").get<std::string>());
  }
  if (truth_names.empty()) throw ParseError("study config lists no truth matrices");

  StudyConfig base{TransitionMatrix::identity(1), "", {}, {}, 5000, 1000, 0.90, {}, {}};
  base.n_grid = j.value("n_grid", std::vector<int>{25, 50, 100});
  base.u_grid.clear();
  for (const json& u : j.value("u_grid", json::array({"0.5", "1", "2", "inf"}))) {
    base.u_grid.push_back(u.is_string() ? SmoothingParam::parse(u.get<std::string>())
                                        : SmoothingParam(u.get<double>()));
  }
  base.B = j.value("B", 5000);
  base.R = j.value("R", 1000);
  base.nominal = j.value("nominal", 0.90);
  for (const auto& cell :
       j.value("cells", std::vector<std::vector<int>>{{1, 1}, {1, 2}})) {
    if (cell.size() != 2) throw ParseError("cells must be pairs");
    base.tracked_cells.emplace_back(cell[0] - 1, cell[1] - 1);  // file cells are 1-based
  }
  base.seed = SeedSpec{j.value("seed", std::uint64_t{0}), 0};

  std::vector<StudyConfig> configs;
  for (const std::string& name : truth_names) {
    StudyConfig cfg = base;
    if (auto it = builtin_matrices().find(name); it != builtin_matrices().end()) {
      cfg.truth = it->second;
      cfg.truth_name = name;
    } else {
      const std::filesystem::path matrix_path = path.parent_path() / name;
      cfg.truth = read_matrix(matrix_path);
      cfg.truth_name = matrix_path.stem().string();
    }
    configs.push_back(std::move(cfg));
  }
  return configs;
}

namespace {

// The cells of one report, grouped into consecutive (n, u) arms.  All arms
// hold the tracked cells in config order.
std::vector<std::pair<std::size_t, std::size_t>> arm_ranges(const CoverageReport& r) {
  std::vector<std::pair<std::size_t, std::size_t>> ranges;
  for (std::size_t k = 0; k < r.cells.size();) {
    std::size_t e = k;
    while (e + 1 < r.cells.size() && r.cells[e + 1].n == r.cells[k].n &&
           r.cells[e + 1].u == r.cells[k].u) {
      ++e;
    }
    ranges.emplace_back(k, e + 1);
    k = e + 1;
  }
  return ranges;
}

std::string cell_label(const CoverageCell& c) {
  return std::to_string(c.i + 1) + std::to_string(c.j + 1);
}

}  // namespace

std::string report_csv(const std::vector<CoverageReport>& reports) {
  if (reports.empty()) throw EmptyListError("no coverage reports");
  std::ostringstream out;
  out << std::fixed << std::setprecision(6);

  const auto first_ranges = arm_ranges(reports.front());
  out << "matrix,n,u";
  const auto [fb, fe] = first_ranges.front();
  for (std::size_t k = fb; k < fe; ++k) {
    const std::string label = cell_label(reports.front().cells[k]);
    out << ",coverage_" << label << ",width_" << label;
  }
  out << ",R\n";

  for (const CoverageReport& report : reports) {
    for (const auto& [begin, end] : arm_ranges(report)) {
      const CoverageCell& head = report.cells[begin];
      out << report.truth_name << ',' << head.n << ',' << head.u.str();
      for (std::size_t k = begin; k < end; ++k) {
        out << ',' << report.cells[k].coverage << ',' << report.cells[k].mean_width;
      }
      out << ',' << head.replications << '\n';
    }
  }
  return out.str();
}

std::string report_table(const std::vector<CoverageReport>& reports) {
  if (reports.empty()) throw EmptyListError("no coverage reports");
  const CoverageReport& first = reports.front();
  const auto ranges = arm_ranges(first);

  std::ostringstream out;
  out << std::setw(6) << "n" << std::setw(8) << "u";
  for (const CoverageReport& report : reports) {
    const auto [b, e] = arm_ranges(report).front();
    for (std::size_t k = b; k < e; ++k) {
      out << std::setw(12) << (report.truth_name + " P" + cell_label(report.cells[k]));
    }
  }
  out << '\n';

  out << std::fixed << std::setprecision(1);
  for (const auto& [begin, end] : ranges) {
    const CoverageCell& head = first.cells[begin];
    out << std::setw(6) << head.n << std::setw(8) << head.u.str();
    for (const CoverageReport& report : reports) {
      for (std::size_t k = begin; k < end; ++k) {
        const CoverageCell& cell = first.cells[k];
        out << std::setw(12)
            << 100.0 * report.find(cell.n, cell.u, cell.i, cell.j).coverage;
      }
    }
    out << '\n';
  }
  return out.str();
}

}  // namespace markov::io
