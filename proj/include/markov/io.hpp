#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "markov/bootstrap.hpp"
#include "markov/study.hpp"
#include "markov/types.hpp"

namespace markov::io {

// Matrix files: CSV (one row per line, d comma-separated floats) or JSON
// {"d": d, "rows": [[...], ...]}, chosen by sniffing the first character.
TransitionMatrix read_matrix(const std::filesystem::path& path);
TransitionMatrix parse_matrix_csv(std::istream& in);
TransitionMatrix parse_matrix_json(std::istream& in);
void write_matrix_csv(std::ostream& out, const TransitionMatrix& m, int precision = 6);
void write_matrix_json(std::ostream& out, const TransitionMatrix& m);

// Sequence files: a single CSV line of 1-based states.
StateSequence read_sequence(const std::filesystem::path& path, int d);
StateSequence parse_sequence_csv(std::istream& in, int d);
void write_sequence_csv(std::ostream& out, const StateSequence& seq);

// Batch export: B rows by d^2 columns of vectorized estimates.
void write_batch_csv(std::ostream& out, const BootstrapBatch& batch, int precision = 6);
// JSON summary {mean, covariance, cis} with 1-based cell labels.
void write_batch_json(std::ostream& out, const BootstrapBatch& batch,
                      const std::vector<ConfidenceInterval>& cis, double alpha);

// Sorted distinct value / cumulative probability pairs.
void write_ecdf_csv(std::ostream& out, const EmpiricalCDF& cdf);

// Study config: JSON {truth (name or path; or "truths" list), n_grid,
// u_grid as strings ("0.5", "1", "2", "inf"), B, R, nominal, cells (1-based
// pairs), seed}.  One StudyConfig per truth.  Matrix paths are resolved
// relative to the config file.
std::vector<StudyConfig> load_study_configs(const std::filesystem::path& path);

// Report CSV: one row per (matrix, n, u) with coverage/mean-width column
// pairs per tracked cell.
std::string report_csv(const std::vector<CoverageReport>& reports);
// Text table for reading side by side: one row per (n, u), one coverage
// column per (matrix, cell), percentages to one decimal.
std::string report_table(const std::vector<CoverageReport>& reports);

}  // namespace markov::io
