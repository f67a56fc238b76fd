// SPDX-License-Identifier: Apache-2.0

#include "wiretap/experiments.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <span>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "parallel.hpp"
#include "wiretap/closed_form.hpp"
#include "wiretap/quadrature.hpp"
#include "wiretap/root_finding.hpp"

namespace wiretap {

namespace {

using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

/// Error column text for an evaluator failure.
std::string describe_failure() {
  try {
    throw;
  } catch (const PrecisionExhausted& e) {
    return std::string("precision exhausted: ") + e.what();
  } catch (const NumericalFailure& e) {
    return std::string("numerical failure: ") + e.what();
  } catch (const std::invalid_argument& e) {
    return std::string("invalid input: ") + e.what();
  } catch (const std::exception& e) {
    return e.what();
  }
}

void check_epsilon(double epsilon) {
  if (!(epsilon > 0.0 && epsilon < 1.0)) {
    throw std::invalid_argument("epsilon must lie in (0, 1)");
  }
}

int as_antenna_count(double value) {
  if (value != std::floor(value) || value < 1.0 || value > 1e6) {
    throw std::invalid_argument("n_alice sweep values must be positive integers");
  }
  return static_cast<int>(value);
}

std::string format_short(double v) {
  char buffer[32];
  std::snprintf(buffer, sizeof buffer, "%.3g", v);
  return buffer;
}

}  // namespace

std::string_view to_string(Metric metric) {
  switch (metric) {
    case Metric::Outage:
      return "pout";
    case Metric::NonzeroSecrecy:
      return "pnz";
    case Metric::OutageCapacity:
      return "cout";
  }
  return "unknown";
}

std::string_view to_string(Evaluator evaluator) {
  switch (evaluator) {
    case Evaluator::ClosedForm:
      return "cf";
    case Evaluator::Quadrature:
      return "quad";
    case Evaluator::MonteCarlo:
      return "mc";
  }
  return "unknown";
}

std::string_view to_string(SweptParameter parameter) {
  switch (parameter) {
    case SweptParameter::GammaBarBDb:
      return "gamma_b_db";
    case SweptParameter::NAlice:
      return "n_alice";
    case SweptParameter::Epsilon:
      return "epsilon";
  }
  return "unknown";
}

Metric parse_metric(std::string_view text) {
  if (text == "pout") return Metric::Outage;
  if (text == "pnz") return Metric::NonzeroSecrecy;
  if (text == "cout") return Metric::OutageCapacity;
  throw std::invalid_argument("unknown metric '" + std::string(text) +
                              "' (expected pout, pnz or cout)");
}

Evaluator parse_evaluator(std::string_view text) {
  if (text == "cf") return Evaluator::ClosedForm;
  if (text == "quad") return Evaluator::Quadrature;
  if (text == "mc") return Evaluator::MonteCarlo;
  throw std::invalid_argument("unknown evaluator '" + std::string(text) +
                              "' (expected cf, quad or mc)");
}

SweptParameter parse_swept_parameter(std::string_view text) {
  if (text == "gamma_b_db") return SweptParameter::GammaBarBDb;
  if (text == "n_alice") return SweptParameter::NAlice;
  if (text == "epsilon") return SweptParameter::Epsilon;
  throw std::invalid_argument("unknown swept parameter '" + std::string(text) +
                              "' (expected gamma_b_db, n_alice or epsilon)");
}

bool supports(Scheme scheme, Evaluator evaluator) {
  return evaluator == Evaluator::MonteCarlo || scheme == Scheme::TasAlamouti;
}

SystemConfig PointSpec::config() const {
  SystemConfig c;
  c.n_alice = n_alice;
  c.n_bob = n_bob;
  c.n_eve = n_eve;
  c.gamma_bar_b = db_to_linear(gamma_b_db);
  c.gamma_bar_e = db_to_linear(gamma_e_db);
  c.rate_rs = rate_rs;
  return c;
}

PointSpec PointSpec::with(SweptParameter parameter, double value) const {
  PointSpec p = *this;
  switch (parameter) {
    case SweptParameter::GammaBarBDb:
      p.gamma_b_db = value;
      break;
    case SweptParameter::NAlice:
      p.n_alice = as_antenna_count(value);
      break;
    case SweptParameter::Epsilon:
      p.epsilon = value;
      break;
  }
  return p;
}

Evaluation evaluate(const PointSpec& point, Scheme scheme, Metric metric,
                    Evaluator evaluator, const MonteCarloSettings& mc) {
  if (!supports(scheme, evaluator)) {
    throw std::invalid_argument(std::string(to_string(evaluator)) +
                                " is not available for " +
                                std::string(to_string(scheme)));
  }
  const SystemConfig config = point.config();
  config.validate_for(scheme);
  if (metric == Metric::OutageCapacity) check_epsilon(point.epsilon);

  Evaluation out;
  if (evaluator == Evaluator::MonteCarlo) {
    out.n_trials = mc.trials;
    switch (metric) {
      case Metric::Outage: {
        const auto r = estimate_outage(config, scheme, mc.trials, mc.seed);
        out.value = r.estimate;
        out.std_error = r.std_error;
        break;
      }
      case Metric::NonzeroSecrecy: {
        const auto r = estimate_nonzero_secrecy(config, scheme, mc.trials, mc.seed);
        out.value = r.estimate;
        out.std_error = r.std_error;
        break;
      }
      case Metric::OutageCapacity: {
        const auto r = estimate_eps_outage_capacity(config, scheme, point.epsilon,
                                                    mc.trials, mc.seed);
        out.value = r.value;
        out.std_error = (r.ci95_high - r.ci95_low) / (2.0 * 1.96);
        break;
      }
    }
    return out;
  }

  const bool closed = evaluator == Evaluator::ClosedForm;
  auto outage = [&](double rate) {
    return closed ? closed_form_outage(config, rate) : outage_quadrature(config, rate);
  };
  switch (metric) {
    case Metric::Outage:
      out.value = outage(config.rate_rs);
      break;
    case Metric::NonzeroSecrecy:
      out.value = closed ? prob_nonzero_secrecy(config) : 1.0 - outage(0.0);
      break;
    case Metric::OutageCapacity:
      out.value = closed ? eps_outage_capacity(config, point.epsilon)
                         : largest_feasible_rate(outage, point.epsilon);
      break;
  }
  return out;
}

void SweepSpec::validate() const {
  if (schemes.empty()) throw std::invalid_argument("sweep: no schemes given");
  if (series.empty()) throw std::invalid_argument("sweep: no series given");
  if (metrics.empty()) throw std::invalid_argument("sweep: no metrics given");
  if (evaluators.empty()) throw std::invalid_argument("sweep: no evaluators given");
  if (values.empty()) throw std::invalid_argument("sweep: no sweep values given");
  for (std::size_t i = 1; i < values.size(); ++i) {
    if (!(values[i] > values[i - 1])) {
      throw std::invalid_argument("sweep: values must be strictly increasing");
    }
  }
  for (double v : values) {
    if (!std::isfinite(v)) throw std::invalid_argument("sweep: non-finite value");
    if (parameter == SweptParameter::NAlice) as_antenna_count(v);
    if (parameter == SweptParameter::Epsilon) check_epsilon(v);
  }
  if (monte_carlo.trials == 0) throw std::invalid_argument("sweep: trials must be positive");
  for (const auto& s : series) {
    s.with(parameter, values.front()).config().validate();
    if (std::find(metrics.begin(), metrics.end(), Metric::OutageCapacity) !=
            metrics.end() &&
        parameter != SweptParameter::Epsilon) {
      check_epsilon(s.epsilon);
    }
  }
}

std::vector<SweepRow> run_sweep(const SweepSpec& spec) {
  spec.validate();
  std::vector<SweepRow> rows;
  for (const auto& base : spec.series) {
    for (Scheme scheme : spec.schemes) {
      for (Metric metric : spec.metrics) {
        for (Evaluator evaluator : spec.evaluators) {
          if (!supports(scheme, evaluator)) continue;
          const std::size_t first = rows.size();
          for (double v : spec.values) {
            SweepRow row;
            row.preset = spec.name;
            row.scheme = scheme;
            row.point = base.with(spec.parameter, v);
            row.metric = metric;
            row.evaluator = evaluator;
            if (evaluator == Evaluator::MonteCarlo) row.seed = spec.monte_carlo.seed;
            rows.push_back(std::move(row));
          }
          std::span<SweepRow> curve(rows.data() + first, spec.values.size());

          // A curve over gamma_b reuses one set of draws for every point.
          const bool batched = evaluator == Evaluator::MonteCarlo &&
                               spec.parameter == SweptParameter::GammaBarBDb &&
                               metric != Metric::OutageCapacity;
          if (batched) {
            const auto start = Clock::now();
            try {
              std::vector<OperatingPoint> points;
              for (const auto& row : curve) {
                const auto c = row.point.config();
                points.push_back({c.gamma_bar_b, c.gamma_bar_e,
                                  metric == Metric::Outage ? c.rate_rs : 0.0});
              }
              const auto results =
                  estimate_outage_batch(curve.front().point.config(), scheme, points,
                                        spec.monte_carlo.trials, spec.monte_carlo.seed);
              for (std::size_t i = 0; i < curve.size(); ++i) {
                auto r = results[i];
                if (metric == Metric::NonzeroSecrecy) {
                  r = EstimatorResult::from_counts(r.n_trials - r.n_events, r.n_trials);
                }
                curve[i].value = r.estimate;
                curve[i].std_error = r.std_error;
                curve[i].n_trials = r.n_trials;
              }
            } catch (...) {
              const std::string message = describe_failure();
              for (auto& row : curve) row.error = message;
            }
            if (spec.timing) {
              const double share = elapsed_ms(start) / static_cast<double>(curve.size());
              for (auto& row : curve) row.wall_time_ms = share;
            }
            continue;
          }

          for (auto& row : curve) {
            const auto start = Clock::now();
            try {
              const auto e = evaluate(row.point, scheme, metric, evaluator,
                                      spec.monte_carlo);
              row.value = e.value;
              row.std_error = e.std_error;
              row.n_trials = e.n_trials;
            } catch (...) {
              row.error = describe_failure();
            }
            if (spec.timing) row.wall_time_ms = elapsed_ms(start);
          }
        }
      }
    }
  }
  return rows;
}

std::vector<std::string> preset_names() {
  return {"fig2", "fig3", "fig4", "fig5", "fig6"};
}

SweepSpec preset_sweep(std::string_view name) {
  auto range = [](double from, double to) {
    std::vector<double> v;
    for (double x = from; x <= to; x += 1.0) v.push_back(x);
    return v;
  };
  SweepSpec spec;
  spec.name = std::string(name);
  spec.schemes = {Scheme::TasAlamouti, Scheme::SingleTas};
  spec.evaluators = {Evaluator::ClosedForm, Evaluator::MonteCarlo};
  spec.metrics = {Metric::Outage};
  spec.parameter = SweptParameter::GammaBarBDb;
  spec.values = range(0.0, 25.0);

  PointSpec base;
  base.rate_rs = 1.0;
  base.gamma_e_db = 5.0;
  base.n_alice = 4;
  base.n_bob = 3;
  base.n_eve = 2;

  if (name == "fig2") {
    for (int na : {2, 3, 4}) {
      PointSpec p = base;
      p.n_alice = na;
      spec.series.push_back(p);
    }
  } else if (name == "fig3") {
    for (int nb : {2, 3, 4}) {
      PointSpec p = base;
      p.n_bob = nb;
      spec.series.push_back(p);
    }
  } else if (name == "fig4") {
    for (int ne : {1, 2, 3}) {
      PointSpec p = base;
      p.n_eve = ne;
      spec.series.push_back(p);
    }
  } else if (name == "fig5") {
    spec.metrics = {Metric::NonzeroSecrecy};
    spec.values = range(-10.0, 25.0);
    for (double ge : {0.0, 5.0}) {
      PointSpec p = base;
      p.rate_rs = 0.0;
      p.gamma_e_db = ge;
      spec.series.push_back(p);
    }
  } else if (name == "fig6") {
    spec.metrics = {Metric::OutageCapacity};
    spec.parameter = SweptParameter::NAlice;
    spec.values = range(2.0, 8.0);
    for (int ne : {1, 2, 3}) {
      PointSpec p;
      p.n_bob = 2;
      p.n_eve = ne;
      p.gamma_b_db = 20.0;
      p.gamma_e_db = 0.0;
      p.rate_rs = 0.0;
      p.epsilon = 0.01;
      spec.series.push_back(p);
    }
  } else {
    throw std::invalid_argument("unknown preset '" + std::string(name) +
                                "' (expected fig2 ... fig6)");
  }
  return spec;
}

namespace {

using nlohmann::json;

void reject_unknown_keys(const json& object, std::initializer_list<const char*> known,
                         const std::string& where) {
  if (!object.is_object()) throw std::invalid_argument(where + " must be an object");
  for (const auto& item : object.items()) {
    const bool ok = std::any_of(known.begin(), known.end(),
                                [&](const char* k) { return item.key() == k; });
    if (!ok) throw std::invalid_argument("unknown key '" + item.key() + "' in " + where);
  }
}

PointSpec parse_point(const json& j, PointSpec p, const std::string& where) {
  reject_unknown_keys(j, {"n_alice", "n_bob", "n_eve", "gamma_b_db", "gamma_e_db",
                          "rate_rs", "epsilon"},
                      where);
  if (j.contains("n_alice")) p.n_alice = j.at("n_alice").get<int>();
  if (j.contains("n_bob")) p.n_bob = j.at("n_bob").get<int>();
  if (j.contains("n_eve")) p.n_eve = j.at("n_eve").get<int>();
  if (j.contains("gamma_b_db")) p.gamma_b_db = j.at("gamma_b_db").get<double>();
  if (j.contains("gamma_e_db")) p.gamma_e_db = j.at("gamma_e_db").get<double>();
  if (j.contains("rate_rs")) p.rate_rs = j.at("rate_rs").get<double>();
  if (j.contains("epsilon")) p.epsilon = j.at("epsilon").get<double>();
  return p;
}

std::vector<double> parse_values(const json& sweep) {
  if (sweep.contains("values")) {
    if (sweep.contains("from") || sweep.contains("to") || sweep.contains("step")) {
      throw std::invalid_argument("sweep: give either values or from/to/step");
    }
    return sweep.at("values").get<std::vector<double>>();
  }
  const double from = sweep.at("from").get<double>();
  const double to = sweep.at("to").get<double>();
  const double step = sweep.value("step", 1.0);
  if (!(step > 0.0) || !(to >= from)) {
    throw std::invalid_argument("sweep: need step > 0 and to >= from");
  }
  const auto count = static_cast<std::size_t>(std::floor((to - from) / step + 1e-9)) + 1;
  std::vector<double> v(count);
  for (std::size_t i = 0; i < count; ++i) v[i] = from + static_cast<double>(i) * step;
  return v;
}

}  // namespace

SweepSpec parse_sweep_spec(std::string_view json_text) {
  json root;
  try {
    root = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(std::string("sweep spec is not valid JSON: ") + e.what());
  }
  try {
    reject_unknown_keys(root, {"name", "schemes", "base", "series", "sweep", "metrics",
                               "evaluators", "monte_carlo", "output", "timing"},
                        "sweep spec");
    SweepSpec spec;
    spec.name = root.value("name", std::string("custom"));
    for (const auto& s : root.at("schemes")) {
      spec.schemes.push_back(parse_scheme(s.get<std::string>()));
    }
    const PointSpec base =
        root.contains("base") ? parse_point(root.at("base"), PointSpec{}, "base")
                              : PointSpec{};
    if (root.contains("series")) {
      for (const auto& s : root.at("series")) {
        spec.series.push_back(parse_point(s, base, "series entry"));
      }
    } else {
      spec.series.push_back(base);
    }
    const auto& sweep = root.at("sweep");
    reject_unknown_keys(sweep, {"parameter", "values", "from", "to", "step"}, "sweep");
    spec.parameter = parse_swept_parameter(sweep.at("parameter").get<std::string>());
    spec.values = parse_values(sweep);
    for (const auto& m : root.at("metrics")) {
      spec.metrics.push_back(parse_metric(m.get<std::string>()));
    }
    for (const auto& e : root.at("evaluators")) {
      spec.evaluators.push_back(parse_evaluator(e.get<std::string>()));
    }
    if (root.contains("monte_carlo")) {
      const auto& mc = root.at("monte_carlo");
      reject_unknown_keys(mc, {"trials", "seed"}, "monte_carlo");
      spec.monte_carlo.trials = mc.value("trials", spec.monte_carlo.trials);
      spec.monte_carlo.seed = mc.value("seed", spec.monte_carlo.seed);
    }
    spec.output = root.value("output", std::string());
    spec.timing = root.value("timing", false);
    return spec;
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("sweep spec: ") + e.what());
  }
}

CrossoverResult find_crossover(const CrossoverSpec& spec) {
  if (spec.metric == Metric::OutageCapacity) {
    throw std::invalid_argument("crossover: metric must be pout or pnz");
  }
  if (!(spec.hi_db > spec.lo_db) || !(spec.tolerance_db > 0.0)) {
    throw std::invalid_argument("crossover: need lo < hi and a positive tolerance");
  }
  SystemConfig config = spec.point.config();
  if (spec.metric == Metric::NonzeroSecrecy) config.rate_rs = 0.0;
  const PairedOutageTable table(config, spec.scheme_a, spec.scheme_b,
                                spec.monte_carlo.trials, spec.monte_carlo.seed);
  // Pr(C_s > 0) = 1 - P_out(0), so its difference is the negated outage one.
  const double sign = spec.metric == Metric::NonzeroSecrecy ? -1.0 : 1.0;
  struct Sample {
    double diff;
    double std_error;
  };
  auto at = [&](double db) {
    const auto d = table.at(db_to_linear(db));
    return Sample{sign * d.diff, d.std_error};
  };

  CrossoverResult result;
  result.n_trials = table.n_trials();
  const Sample lo = at(spec.lo_db);
  const Sample hi = at(spec.hi_db);
  result.diff_at_lo = lo.diff;
  result.diff_at_hi = hi.diff;
  // Coarse scan for the first sign change between nonzero differences; the
  // difference is exactly zero where both schemes see no outage at all.
  const int cells = std::max(1, static_cast<int>(std::ceil(spec.hi_db - spec.lo_db)));
  const double width = (spec.hi_db - spec.lo_db) / cells;
  double last_x = spec.lo_db;
  double last_diff = lo.diff;
  bool bracketed = false;
  double a = 0.0;
  double b = 0.0;
  for (int c = 1; c <= cells && !bracketed; ++c) {
    const double x = c == cells ? spec.hi_db : spec.lo_db + c * width;
    const double d = c == cells ? hi.diff : at(x).diff;
    if (d == 0.0) continue;
    if (last_diff != 0.0 && last_diff * d < 0.0) {
      bracketed = true;
      a = last_x;
      b = x;
    }
    last_x = x;
    last_diff = d;
  }
  if (!bracketed) return result;

  const double s_lo = at(a).diff > 0.0 ? 1.0 : -1.0;
  const auto root = bisect_boundary(
      [&](double db) { return s_lo * at(db).diff > 0.0; }, a, b, spec.tolerance_db);
  result.found = true;
  result.location_db = 0.5 * (root.lo + root.hi);

  constexpr double kZ = 1.96;
  auto separated = [&](double db, double s) {
    const Sample x = at(db);
    return s * x.diff > kZ * x.std_error;
  };
  // Walk outward with doubling steps to the nearest point where the two
  // schemes separate, then bisect back. Far from the crossover the difference
  // can shrink into the noise again, so a single bisection over the whole
  // half-bracket would be misled.
  auto edge = [&](double direction, double limit, double s) {
    double inside = result.location_db;
    for (double step = spec.tolerance_db;; step *= 2.0) {
      const double x = direction > 0.0 ? std::min(limit, result.location_db + step)
                                       : std::max(limit, result.location_db - step);
      if (separated(x, s)) {
        const double a = std::min(inside, x);
        const double b = std::max(inside, x);
        const auto br = bisect_boundary(
            [&](double db) { return direction > 0.0 ? !separated(db, s) : separated(db, s); },
            a, b, spec.tolerance_db);
        return direction > 0.0 ? br.lo : br.hi;
      }
      if (x == limit) return limit;
      inside = x;
    }
  };
  result.low_db = edge(-1.0, spec.lo_db, s_lo);
  result.high_db = edge(1.0, spec.hi_db, -s_lo);
  result.half_width_db = std::max(result.location_db - result.low_db,
                                  result.high_db - result.location_db);
  return result;
}

ValidationGrid ValidationGrid::by_name(std::string_view name) {
  if (name == "default") {
    return {{2, 3, 4, 6}, {1, 2, 3}, {1, 2, 3}, {0, 5, 10, 15, 20}, {0, 5}, {0, 1, 2}};
  }
  if (name == "quick") {
    return {{2, 3}, {1, 2}, {1, 2}, {0, 10, 20}, {0, 5}, {0, 1}};
  }
  throw std::invalid_argument("unknown validation grid '" + std::string(name) +
                              "' (expected default or quick)");
}

bool ValidationReport::passed() const {
  if (evaluated == 0 || quadrature_failures > 0) return false;
  const double agree = static_cast<double>(evaluated - mc_failures) /
                       static_cast<double>(evaluated);
  return agree >= thresholds.mc_pass_fraction;
}

bool mc_agrees(double closed_form, const EstimatorResult& mc, double sigmas) {
  if (mc.n_events == 0 || mc.n_events == mc.n_trials) {
    return closed_form >= mc.ci95_low && closed_form <= mc.ci95_high;
  }
  return std::abs(closed_form - mc.estimate) <= sigmas * mc.std_error;
}

ValidationReport run_validation(const ValidationGrid& grid,
                                const MonteCarloSettings& mc,
                                const ValidationThresholds& thresholds) {
  ValidationReport report;
  report.thresholds = thresholds;
  for (int na : grid.n_alice) {
    for (int nb : grid.n_bob) {
      for (int ne : grid.n_eve) {
        const std::size_t first = report.points.size();
        std::vector<OperatingPoint> ops;
        for (double gb : grid.gamma_b_db) {
          for (double ge : grid.gamma_e_db) {
            for (double r : grid.rate_rs) {
              ValidationPoint v;
              v.point.n_alice = na;
              v.point.n_bob = nb;
              v.point.n_eve = ne;
              v.point.gamma_b_db = gb;
              v.point.gamma_e_db = ge;
              v.point.rate_rs = r;
              report.points.push_back(v);
              ops.push_back({db_to_linear(gb), db_to_linear(ge), r});
            }
          }
        }
        std::span<ValidationPoint> block(report.points.data() + first, ops.size());
        try {
          const auto results = estimate_outage_batch(block.front().point.config(),
                                                     Scheme::TasAlamouti, ops,
                                                     mc.trials, mc.seed);
          for (std::size_t i = 0; i < block.size(); ++i) block[i].monte_carlo = results[i];
        } catch (...) {
          const std::string message = "monte carlo: " + describe_failure();
          for (auto& v : block) v.error = message;
        }
      }
    }
  }

  detail::parallel_for(report.points.size(), [&](std::uint64_t i) {
    auto& v = report.points[i];
    const SystemConfig config = v.point.config();
    try {
      const auto b = closed_form_outage_breakdown(config, config.rate_rs);
      v.closed_form = b.probability;
      v.cancellation_ratio = b.cancellation_ratio;
      v.error_bound = b.error_bound;
      v.psi3 = b.psi[2].value;
      v.psi4 = b.psi[3].value;
    } catch (const PrecisionExhausted& e) {
      v.precision_exhausted = true;
      v.error = std::string("precision exhausted: ") + e.what();
    } catch (...) {
      v.error = "closed form: " + describe_failure();
    }
    try {
      v.quadrature = outage_quadrature(config, config.rate_rs);
    } catch (...) {
      if (v.error.empty()) v.error = "quadrature: " + describe_failure();
    }
  });

  for (auto& v : report.points) {
    if (v.precision_exhausted) {
      ++report.flagged;
      continue;
    }
    if (!v.closed_form || !v.quadrature || !v.monte_carlo) {
      // Anything else that failed is a hard failure of the comparison.
      ++report.quadrature_failures;
      continue;
    }
    ++report.evaluated;
    v.quadrature_ok = std::abs(*v.closed_form - *v.quadrature) <= thresholds.quadrature_abs;
    v.mc_ok = mc_agrees(*v.closed_form, *v.monte_carlo, thresholds.mc_sigmas);
    if (!v.quadrature_ok) ++report.quadrature_failures;
    if (!v.mc_ok) ++report.mc_failures;
  }
  return report;
}

std::string format_report(const ValidationReport& report) {
  std::ostringstream out;
  double max_quad = 0.0;
  double max_cancel = 0.0;
  double max_bound = 0.0;
  for (const auto& v : report.points) {
    if (v.closed_form && v.quadrature) {
      max_quad = std::max(max_quad, std::abs(*v.closed_form - *v.quadrature));
    }
    if (v.closed_form) {
      max_cancel = std::max(max_cancel, v.cancellation_ratio);
      max_bound = std::max(max_bound, v.error_bound);
    }
  }
  const auto& t = report.thresholds;
  out << "points: " << report.points.size() << ", evaluated: " << report.evaluated
      << ", precision exhausted: " << report.flagged << '\n';
  out << "closed form vs quadrature: max |diff| " << format_short(max_quad) << ", "
      << report.quadrature_failures << " failures (limit " << format_short(t.quadrature_abs)
      << ")\n";
  const double agree =
      report.evaluated == 0
          ? 0.0
          : 100.0 * static_cast<double>(report.evaluated - report.mc_failures) /
                static_cast<double>(report.evaluated);
  out << "closed form vs monte carlo: " << report.evaluated - report.mc_failures << '/'
      << report.evaluated << " within " << format_short(t.mc_sigmas) << " stderr ("
      << format_short(agree) << "%, need " << format_short(100.0 * t.mc_pass_fraction)
      << "%)\n";
  out << "worst cancellation ratio " << format_short(max_cancel)
      << ", worst rounding bound " << format_short(max_bound) << '\n';
  for (const auto& v : report.points) {
    const bool bad = v.precision_exhausted || !v.error.empty() ||
                     (v.closed_form && v.quadrature && v.monte_carlo &&
                      (!v.quadrature_ok || !v.mc_ok));
    if (!bad) continue;
    const auto& p = v.point;
    out << "  N_A=" << p.n_alice << " N_B=" << p.n_bob << " N_E=" << p.n_eve
        << " gB=" << p.gamma_b_db << "dB gE=" << p.gamma_e_db << "dB R=" << p.rate_rs
        << ": ";
    if (!v.error.empty()) {
      out << v.error;
    } else {
      out << "cf " << format_short(*v.closed_form) << " quad "
          << format_short(*v.quadrature) << " mc "
          << format_short(v.monte_carlo->estimate) << " +- "
          << format_short(v.monte_carlo->std_error);
    }
    out << '\n';
  }
  out << "result: " << (report.passed() ? "PASS" : "FAIL") << '\n';
  return out.str();
}

}  // namespace wiretap
