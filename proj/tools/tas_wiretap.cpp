// SPDX-License-Identifier: Apache-2.0
//
// tas_wiretap: sweeps, figure presets, crossover search and validation for
// TAS-Alamouti secrecy metrics.
//
// Exit status: 0 success, 1 usage or configuration error, 2 validation
// failure, 3 numerical failure.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "wiretap/csv.hpp"
#include "wiretap/experiments.hpp"

namespace {

using namespace wiretap;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitValidation = 2;
constexpr int kExitNumerical = 3;

void add_point_options(CLI::App& cmd, PointSpec& p, bool with_gamma_b) {
  cmd.add_option("--n-alice", p.n_alice, "transmit antennas at Alice")->capture_default_str();
  cmd.add_option("--n-bob", p.n_bob, "receive antennas at Bob")->capture_default_str();
  cmd.add_option("--n-eve", p.n_eve, "receive antennas at Eve")->capture_default_str();
  if (with_gamma_b) {
    cmd.add_option("--gamma-b-db", p.gamma_b_db, "average SNR at Bob, dB")
        ->capture_default_str();
  }
  cmd.add_option("--gamma-e-db", p.gamma_e_db, "average SNR at Eve, dB")
      ->capture_default_str();
  cmd.add_option("--rate", p.rate_rs, "target secrecy rate R_s, bits/use")
      ->capture_default_str();
}

std::string render(const std::vector<SweepRow>& rows) {
  std::ostringstream out;
  write_sweep_csv(out, rows);
  return out.str();
}

/// Writes to \p path, or stdout when it is empty.
void emit(const std::string& path, const std::string& text) {
  if (path.empty()) {
    std::cout << text;
  } else {
    write_file(path, text);
  }
}

int finish_sweep(const SweepSpec& spec) {
  const auto rows = run_sweep(spec);
  emit(spec.output, render(rows));
  std::size_t failed = 0;
  for (const auto& r : rows) failed += !r.error.empty();
  if (failed > 0) {
    std::cerr << failed << " of " << rows.size()
              << " rows carry an evaluator error (see the error column)\n";
  }
  return kExitOk;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::invalid_argument("cannot read '" + path + "'");
  std::ostringstream text;
  text << in.rdbuf();
  return text.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Secrecy outage of TAS-Alamouti in MIMO wiretap channels"};
  app.require_subcommand(1);

  // sweep
  std::string spec_file;
  std::uint64_t trials = 0;
  std::uint64_t seed = 0;
  std::string out_path;
  bool timing = false;
  auto* sweep = app.add_subcommand("sweep", "run a sweep described by a JSON file");
  sweep->add_option("spec", spec_file, "sweep description")->required()->check(CLI::ExistingFile);
  auto* sweep_trials = sweep->add_option("--trials", trials, "Monte Carlo trials per point");
  auto* sweep_seed = sweep->add_option("--seed", seed, "Monte Carlo seed");
  sweep->add_option("--out", out_path, "CSV output path (default: spec, else stdout)");
  sweep->add_flag("--timing", timing, "fill the wall_time_ms column");

  // preset
  std::string preset_name;
  auto* preset = app.add_subcommand("preset", "reproduce one figure as CSV");
  preset->add_option("name", preset_name, "fig2 | fig3 | fig4 | fig5 | fig6")
      ->required()
      ->check(CLI::IsMember(preset_names()));
  auto* preset_trials = preset->add_option("--trials", trials, "Monte Carlo trials per point");
  auto* preset_seed = preset->add_option("--seed", seed, "Monte Carlo seed");
  preset->add_option("--out", out_path, "CSV output path (default: stdout)");
  preset->add_flag("--timing", timing, "fill the wall_time_ms column");

  // crossover
  CrossoverSpec cross;
  cross.point.n_alice = 3;
  cross.point.n_bob = 3;
  cross.point.n_eve = 2;
  cross.point.gamma_e_db = 5.0;
  cross.point.rate_rs = 1.0;
  cross.monte_carlo.trials = 10'000'000;
  std::string cross_metric = "pout";
  std::string scheme_a = "tas-alamouti";
  std::string scheme_b = "single-tas";
  auto* crossover = app.add_subcommand("crossover", "locate where two schemes perform alike");
  add_point_options(*crossover, cross.point, false);
  crossover->add_option("--metric", cross_metric, "pout | pnz")
      ->check(CLI::IsMember({"pout", "pnz"}))
      ->capture_default_str();
  crossover->add_option("--scheme-a", scheme_a)->capture_default_str();
  crossover->add_option("--scheme-b", scheme_b)->capture_default_str();
  crossover->add_option("--lo-db", cross.lo_db, "bracket start, dB")->capture_default_str();
  crossover->add_option("--hi-db", cross.hi_db, "bracket end, dB")->capture_default_str();
  crossover->add_option("--tolerance-db", cross.tolerance_db)->capture_default_str();
  crossover->add_option("--trials", cross.monte_carlo.trials)->capture_default_str();
  crossover->add_option("--seed", cross.monte_carlo.seed)->capture_default_str();

  // validate
  std::string grid_name = "default";
  MonteCarloSettings validate_mc;
  std::string validate_csv;
  auto* validate = app.add_subcommand("validate", "compare closed form, quadrature and Monte Carlo");
  validate->add_option("--grid", grid_name, "default | quick")
      ->check(CLI::IsMember({"default", "quick"}))
      ->capture_default_str();
  validate->add_option("--trials", validate_mc.trials)->capture_default_str();
  validate->add_option("--seed", validate_mc.seed)->capture_default_str();
  validate->add_option("--csv", validate_csv, "per-point CSV output path");

  // eval
  PointSpec point;
  std::string metric_name;
  std::string evaluator_name;
  std::string scheme_name = "tas-alamouti";
  MonteCarloSettings eval_mc;
  auto* eval = app.add_subcommand("eval", "evaluate one metric at one point");
  eval->add_option("--metric", metric_name, "pout | pnz | cout")
      ->required()
      ->check(CLI::IsMember({"pout", "pnz", "cout"}));
  eval->add_option("--evaluator", evaluator_name, "cf | quad | mc")
      ->required()
      ->check(CLI::IsMember({"cf", "quad", "mc"}));
  eval->add_option("--scheme", scheme_name)->capture_default_str();
  add_point_options(*eval, point, true);
  eval->add_option("--epsilon", point.epsilon, "outage target for cout")->capture_default_str();
  eval->add_option("--trials", eval_mc.trials)->capture_default_str();
  eval->add_option("--seed", eval_mc.seed)->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*sweep) {
      SweepSpec spec = parse_sweep_spec(read_file(spec_file));
      if (*sweep_trials) spec.monte_carlo.trials = trials;
      if (*sweep_seed) spec.monte_carlo.seed = seed;
      if (!out_path.empty()) spec.output = out_path;
      if (timing) spec.timing = true;
      return finish_sweep(spec);
    }
    if (*preset) {
      SweepSpec spec = preset_sweep(preset_name);
      if (*preset_trials) spec.monte_carlo.trials = trials;
      if (*preset_seed) spec.monte_carlo.seed = seed;
      spec.output = out_path;
      spec.timing = timing;
      return finish_sweep(spec);
    }
    if (*crossover) {
      cross.metric = parse_metric(cross_metric);
      cross.scheme_a = parse_scheme(scheme_a);
      cross.scheme_b = parse_scheme(scheme_b);
      const auto r = find_crossover(cross);
      if (r.found) {
        std::printf("crossover %.3f dB, +- %.3f dB (interval contains zero on [%.3f, %.3f] dB), %llu trials\n",
                    r.location_db, r.half_width_db, r.low_db, r.high_db,
                    static_cast<unsigned long long>(r.n_trials));
      } else {
        std::printf("no crossover in [%.3f, %.3f] dB: difference %.6g at start, %.6g at end\n",
                    cross.lo_db, cross.hi_db, r.diff_at_lo, r.diff_at_hi);
      }
      return kExitOk;
    }
    if (*validate) {
      const auto report = run_validation(ValidationGrid::by_name(grid_name), validate_mc);
      std::cout << format_report(report);
      if (!validate_csv.empty()) {
        std::ostringstream csv;
        write_validation_csv(csv, report);
        write_file(validate_csv, csv.str());
      }
      return report.passed() ? kExitOk : kExitValidation;
    }
    if (*eval) {
      SweepRow row;
      row.preset = "eval";
      row.scheme = parse_scheme(scheme_name);
      row.point = point;
      row.metric = parse_metric(metric_name);
      row.evaluator = parse_evaluator(evaluator_name);
      const auto e = evaluate(point, row.scheme, row.metric, row.evaluator, eval_mc);
      row.value = e.value;
      row.std_error = e.std_error;
      row.n_trials = e.n_trials;
      if (row.evaluator == Evaluator::MonteCarlo) row.seed = eval_mc.seed;
      std::cout << sweep_csv_header() << '\n' << sweep_csv_line(row) << '\n';
      return kExitOk;
    }
  } catch (const PrecisionExhausted& e) {
    std::cerr << "precision exhausted: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const NumericalFailure& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}
