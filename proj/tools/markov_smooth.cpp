#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "markov/chain.hpp"
#include "markov/io.hpp"
#include "markov/mle.hpp"
#include "markov/smoothing.hpp"
#include "markov/study.hpp"

namespace {

using namespace markov;

constexpr int kExitOk = 0;
constexpr int kExitInputError = 2;
constexpr int kExitNoLimit = 3;

double parse_real(const std::string& token) {
  std::size_t used = 0;
  double value = 0.0;
  try {
    value = std::stod(token, &used);
  } catch (const std::exception&) {
    throw ParseError("cannot parse number '" + token + "'");
  }
  if (used != token.size()) throw ParseError("cannot parse number '" + token + "'");
  return value;
}

// "uniform", a single 1-based state for a point mass, or a comma-separated
// probability vector.
Distribution parse_initial(const std::string& text, int d) {
  if (text == "uniform") return Distribution::uniform(d);
  if (text.find(',') != std::string::npos) {
    std::vector<double> probs;
    std::istringstream in(text);
    std::string token;
    while (std::getline(in, token, ',')) probs.push_back(parse_real(token));
    if (static_cast<int>(probs.size()) != d) {
      throw DimensionMismatchError("initial distribution needs " + std::to_string(d) +
                                   " probabilities");
    }
    return Distribution(std::move(probs));
  }
  const double state = parse_real(text);
  if (state != static_cast<int>(state)) {
    throw ParseError("point-mass state must be an integer");
  }
  return Distribution::point_mass(d, static_cast<int>(state) - 1);
}

template <typename WriteFn>
int with_output(const std::string& out_path, const WriteFn& write) {
  if (out_path.empty()) {
    write(std::cout);
    return kExitOk;
  }
  std::ofstream out(out_path);
  if (!out) throw ParseError("cannot open " + out_path + " for writing");
  write(out);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Markov chain estimation, smoothing, and bootstrap toolkit"};
  app.require_subcommand(1);

  std::string matrix_path;
  std::string sequence_path;
  std::string config_path;
  std::string out_path;
  std::string initial_text = "uniform";
  std::string u_text;
  std::string format = "csv";
  std::int64_t n = 0;
  int d = 0;
  int B = 0;
  int R = 0;
  double alpha = 0.05;
  double nominal = 0.0;
  double tol = kSteadyStateTol;
  std::uint64_t seed = 0;
  int workers = 1;

  CLI::App* generate = app.add_subcommand("generate", "Simulate a chain from a matrix");
  generate->add_option("--matrix", matrix_path, "Transition matrix file (CSV or JSON)")
      ->required();
  generate->add_option("--n", n, "Chain length")->required()->check(CLI::PositiveNumber);
  generate->add_option("--seed", seed, "RNG seed")->envname("MARKOV_SMOOTH_SEED");
  generate->add_option("--initial", initial_text,
                       "Initial distribution: 'uniform', a state, or probabilities");
  generate->add_option("--out", out_path, "Output file (default stdout)");

  CLI::App* estimate = app.add_subcommand("estimate", "Estimate a matrix from a chain");
  estimate->add_option("--sequence", sequence_path, "Chain file (CSV of 1-based states)")
      ->required();
  estimate->add_option("--d", d, "Number of states")->required()->check(CLI::PositiveNumber);
  estimate->add_option("--u", u_text, "Smoothing exponent ('inf' for none)");
  estimate->add_option("--format", format, "Output format")
      ->check(CLI::IsMember({"csv", "json"}));
  estimate->add_option("--out", out_path, "Output file (default stdout)");

  CLI::App* bootstrap = app.add_subcommand("bootstrap", "Resample a generator matrix");
  bootstrap->add_option("--matrix", matrix_path, "Generator matrix file")->required();
  bootstrap->add_option("--n", n, "Resample length")->required()->check(CLI::PositiveNumber);
  bootstrap->add_option("--B", B, "Resample count")->required()->check(CLI::PositiveNumber);
  bootstrap->add_option("--alpha", alpha, "Per-tail interval level");
  bootstrap->add_option("--seed", seed, "RNG seed")->envname("MARKOV_SMOOTH_SEED");
  bootstrap->add_option("--initial", initial_text,
                        "Resample initial distribution (default uniform)");
  bootstrap->add_option("--workers", workers, "Worker threads")->check(CLI::PositiveNumber);
  bootstrap->add_option("--out", out_path, "Output file (default stdout)");

  CLI::App* study = app.add_subcommand("study", "Run a coverage study from a config");
  study->add_option("config", config_path, "Study config JSON")->required();
  study->add_option("--B", B, "Override resample count");
  study->add_option("--R", R, "Override replication count");
  study->add_option("--nominal", nominal, "Override nominal level");
  study->add_option("--seed", seed, "Override RNG seed");
  study->add_option("--workers", workers, "Worker threads")->check(CLI::PositiveNumber);
  study->add_option("--out", out_path,
                    "Report CSV file; the rendered table then goes to stdout");

  CLI::App* steady = app.add_subcommand("steady", "Steady-state distribution");
  steady->add_option("--matrix", matrix_path, "Transition matrix file")->required();
  steady->add_option("--tol", tol, "Row-coincidence tolerance");
  steady->add_option("--out", out_path, "Output file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << '\n';
    return kExitInputError;
  }

  try {
    if (*generate) {
      const TransitionMatrix P = io::read_matrix(matrix_path);
      const Distribution initial = parse_initial(initial_text, P.dim());
      const StateSequence chain = generate_chain(P, initial, n, SeedSpec{seed, 0});
      return with_output(out_path, [&](std::ostream& out) {
        io::write_sequence_csv(out, chain);
      });
    }

    if (*estimate) {
      const StateSequence chain = io::read_sequence(sequence_path, d);
      TransitionMatrix P = mle_estimate(chain);
      if (!u_text.empty()) P = smooth(P, chain.size(), SmoothingParam::parse(u_text));
      return with_output(out_path, [&](std::ostream& out) {
        if (format == "json") {
          io::write_matrix_json(out, P);
        } else {
          io::write_matrix_csv(out, P);
        }
      });
    }

    if (*bootstrap) {
      const TransitionMatrix generator = io::read_matrix(matrix_path);
      BootstrapConfig cfg{B, n, generator, parse_initial(initial_text, generator.dim()),
                          SeedSpec{seed, 0}};
      const BootstrapBatch batch = run_bootstrap(cfg, workers);
      const std::vector<ConfidenceInterval> cis = element_cis(batch, alpha);
      return with_output(out_path, [&](std::ostream& out) {
        io::write_batch_json(out, batch, cis, alpha);
      });
    }

    if (*study) {
      std::vector<StudyConfig> configs = io::load_study_configs(config_path);
      for (StudyConfig& cfg : configs) {
        if (study->count("--B") > 0) cfg.B = B;
        if (study->count("--R") > 0) cfg.R = R;
        if (study->count("--nominal") > 0) cfg.nominal = nominal;
        if (study->count("--seed") > 0) cfg.seed = SeedSpec{seed, 0};
      }
      std::vector<CoverageReport> reports;
      reports.reserve(configs.size());
      for (const StudyConfig& cfg : configs) reports.push_back(run_study(cfg, workers));
      const std::string csv = io::report_csv(reports);
      if (out_path.empty()) {
        std::cout << csv;
      } else {
        std::ofstream out(out_path);
        if (!out) throw ParseError("cannot open " + out_path + " for writing");
        out << csv;
        std::cout << io::report_table(reports);
      }
      return kExitOk;
    }

    if (*steady) {
      const TransitionMatrix P = io::read_matrix(matrix_path);
      const auto pi = steady_state(P, tol);
      if (!pi) {
        std::cerr << "NoLimit: matrix powers do not converge to coinciding rows\n";
        return kExitNoLimit;
      }
      return with_output(out_path, [&](std::ostream& out) {
        for (int i = 0; i < pi->dim(); ++i) {
          if (i > 0) out << ',';
          out << (*pi)[i];
        }
        out << '\n';
      });
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInputError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInputError;
  }
  return kExitOk;
}
