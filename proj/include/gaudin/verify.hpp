#pragma once

// Named verification suites over one model, and the run configuration that
// selects them. Reports serialize to JSON and to aligned text.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "gaudin/hilbert.hpp"

namespace gaudin {

struct RunConfig {
  std::string preset = "tiny";
  int N = 2;
  int n = 2;
  std::optional<double> hbar;      ///< overrides the seeded value
  std::vector<Complex> x;          ///< explicit marked points (with k, replaces the seeded model)
  std::vector<Complex> k;
  std::uint64_t seed = 7;
  std::vector<std::string> suites;  ///< empty means all
  double tolerance = 1e-9;          ///< joint diagonalization and tau-fit tolerance
  std::map<std::string, double> check_tolerances;  ///< overrides per check name
  int K = 3;                        ///< number of times in random samples
  int window = 64;                  ///< bilinear series window
  int schur_degree = 4;
  int samples = 10;                 ///< random (t, t') pairs
  std::vector<int> sector;          ///< spectrum filter
  std::string out_dir;
  std::string format = "text";
};

/// tiny (2,2), small (2,3), medium (3,3); seed 7. Throws std::invalid_argument.
void apply_preset(RunConfig& config, const std::string& name);

void to_json(nlohmann::json& j, const RunConfig& c);
/// Unknown keys are rejected.
void from_json(const nlohmann::json& j, RunConfig& c);

/// Builds the model; throws std::invalid_argument naming the violated invariant.
GaudinModel make_model(const RunConfig& config);

const std::vector<std::string>& suite_names();

struct Check {
  std::string name;
  double residual = 0.0;
  double tolerance = 0.0;
  bool pass = false;
  std::string detail;
};

struct SuiteReport {
  std::string suite;
  std::vector<Check> checks;
  double max_residual = 0.0;
  bool pass = true;
  nlohmann::json data;  ///< suite-specific tables
};

struct Report {
  RunConfig config;
  std::vector<SuiteReport> suites;
  bool pass = true;
};

/// Throws std::invalid_argument for an unknown suite name.
SuiteReport run_suite(const std::string& suite, const GaudinModel& model, const RunConfig& config);
Report run_verify(const RunConfig& config);

nlohmann::json to_json(const SuiteReport& s);
nlohmann::json to_json(const Report& r);
std::string to_text(const Report& r);

/// Per-sector quantum spectra, accepted and rejected classical solutions and their pairing.
nlohmann::json spectrum_report(const GaudinModel& model, const RunConfig& config);
std::string spectrum_text(const nlohmann::json& report);
std::string spectrum_csv(const nlohmann::json& report);

nlohmann::json complex_json(Complex z);
Complex complex_from_json(const nlohmann::json& j);

}  // namespace gaudin
