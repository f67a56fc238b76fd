// SPDX-License-Identifier: Apache-2.0
//
// Parameter sweeps, figure presets, crossover search and three-way
// validation. SNRs are in dB here and converted at the evaluator boundary.

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "wiretap/config.hpp"
#include "wiretap/monte_carlo.hpp"

namespace wiretap {

enum class Metric {
  Outage,          ///< P_out(R_s)
  NonzeroSecrecy,  ///< Pr(C_s > 0)
  OutageCapacity,  ///< C_out(epsilon)
};

enum class Evaluator { ClosedForm, Quadrature, MonteCarlo };

enum class SweptParameter { GammaBarBDb, NAlice, Epsilon };

std::string_view to_string(Metric metric);
std::string_view to_string(Evaluator evaluator);
std::string_view to_string(SweptParameter parameter);
Metric parse_metric(std::string_view text);        ///< pout | pnz | cout
Evaluator parse_evaluator(std::string_view text);  ///< cf | quad | mc
SweptParameter parse_swept_parameter(std::string_view text);

/// The analytic evaluators only exist for TAS-Alamouti.
bool supports(Scheme scheme, Evaluator evaluator);

/// One operating point as it appears on the command line.
struct PointSpec {
  int n_alice = 2;
  int n_bob = 1;
  int n_eve = 1;
  double gamma_b_db = 0.0;
  double gamma_e_db = 0.0;
  double rate_rs = 0.0;
  double epsilon = 0.01;

  SystemConfig config() const;
  PointSpec with(SweptParameter parameter, double value) const;
};

struct MonteCarloSettings {
  std::uint64_t trials = 1'000'000;
  std::uint64_t seed = 1;
};

/// Value of one metric at one point from one evaluator.
struct Evaluation {
  double value = 0.0;
  std::optional<double> std_error;  ///< Monte Carlo only
  std::uint64_t n_trials = 0;       ///< 0 for analytic evaluators
};

/// Throws std::invalid_argument for unsupported combinations and
/// PrecisionExhausted / NumericalFailure from the evaluators.
Evaluation evaluate(const PointSpec& point, Scheme scheme, Metric metric,
                    Evaluator evaluator, const MonteCarloSettings& mc);

struct SweepSpec {
  std::string name = "custom";
  std::vector<Scheme> schemes;
  std::vector<PointSpec> series;  ///< one curve per entry
  SweptParameter parameter = SweptParameter::GammaBarBDb;
  std::vector<double> values;
  std::vector<Metric> metrics;
  std::vector<Evaluator> evaluators;
  MonteCarloSettings monte_carlo;
  std::string output;  ///< empty: caller decides
  bool timing = false; ///< fill wall_time_ms; off keeps output byte-stable

  /// Throws std::invalid_argument naming the first violated rule.
  void validate() const;
};

struct SweepRow {
  std::string preset;
  Scheme scheme = Scheme::TasAlamouti;
  PointSpec point;
  Metric metric = Metric::Outage;
  Evaluator evaluator = Evaluator::ClosedForm;
  std::optional<double> value;
  std::optional<double> std_error;
  std::uint64_t n_trials = 0;
  std::optional<std::uint64_t> seed;
  std::string error;
  std::optional<double> wall_time_ms;
};

/// Rows ordered by series, scheme, metric, evaluator, then sweep value.
/// Scheme/evaluator pairs without support produce no rows. Evaluator errors
/// land in the row's error column. For gamma_b sweeps the Monte Carlo points
/// of a curve share one set of channel draws.
std::vector<SweepRow> run_sweep(const SweepSpec& spec);

std::vector<std::string> preset_names();
SweepSpec preset_sweep(std::string_view name);

/// Parses a JSON sweep description; see README for the layout.
SweepSpec parse_sweep_spec(std::string_view json_text);

struct CrossoverSpec {
  PointSpec point;  ///< gamma_b_db is ignored
  Scheme scheme_a = Scheme::TasAlamouti;
  Scheme scheme_b = Scheme::SingleTas;
  Metric metric = Metric::Outage;  ///< Outage or NonzeroSecrecy
  double lo_db = 0.0;
  double hi_db = 20.0;
  double tolerance_db = 0.01;
  MonteCarloSettings monte_carlo;
};

struct CrossoverResult {
  bool found = false;
  double location_db = 0.0;
  /// Region around the location where the paired 95% interval of the
  /// difference still contains zero.
  double low_db = 0.0;
  double high_db = 0.0;
  double half_width_db = 0.0;
  double diff_at_lo = 0.0;  ///< metric(a) - metric(b) at the bracket ends
  double diff_at_hi = 0.0;
  std::uint64_t n_trials = 0;
};

/// Bisection on the Monte Carlo metric difference with both schemes driven by
/// the same channel draws. The bracket is scanned in cells of at most 1 dB
/// for the first sign change; if there is none, found = false.
CrossoverResult find_crossover(const CrossoverSpec& spec);

struct ValidationGrid {
  std::vector<int> n_alice;
  std::vector<int> n_bob;
  std::vector<int> n_eve;
  std::vector<double> gamma_b_db;
  std::vector<double> gamma_e_db;
  std::vector<double> rate_rs;

  static ValidationGrid by_name(std::string_view name);  ///< default | quick
};

struct ValidationThresholds {
  double quadrature_abs = 1e-6;
  double mc_sigmas = 4.0;
  double mc_pass_fraction = 0.99;
};

struct ValidationPoint {
  PointSpec point;
  std::optional<double> closed_form;
  std::optional<double> quadrature;
  std::optional<EstimatorResult> monte_carlo;
  double cancellation_ratio = 0.0;
  double error_bound = 0.0;
  std::optional<double> psi3;
  std::optional<double> psi4;
  std::string error;  ///< evaluator failure text, empty if none
  bool precision_exhausted = false;
  bool quadrature_ok = false;
  bool mc_ok = false;
};

struct ValidationReport {
  std::vector<ValidationPoint> points;
  ValidationThresholds thresholds;
  /// Above the quadrature threshold, or an evaluator error other than
  /// precision exhaustion.
  std::size_t quadrature_failures = 0;
  std::size_t mc_failures = 0;
  std::size_t flagged = 0;   ///< precision exhausted, no value reported
  std::size_t evaluated = 0; ///< points with all three values

  bool passed() const;
};

/// Closed form vs Monte Carlo for one point: within mc_sigmas standard errors
/// when 0 < events < trials, otherwise inside the rule-of-three interval.
bool mc_agrees(double closed_form, const EstimatorResult& mc, double sigmas);

/// Monte Carlo draws are shared by all points with the same antenna counts.
ValidationReport run_validation(const ValidationGrid& grid,
                                const MonteCarloSettings& mc,
                                const ValidationThresholds& thresholds = {});

std::string format_report(const ValidationReport& report);

}  // namespace wiretap
