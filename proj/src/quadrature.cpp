// SPDX-License-Identifier: Apache-2.0

#include "wiretap/quadrature.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/special_functions/gamma.hpp>

#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <string>

namespace wiretap {

namespace {

constexpr double kInnerTolerance = 1e-12;
constexpr double kOuterTolerance = 1e-11;
constexpr unsigned kMaxDepth = 20;
// Panels whose error is below this are converged whatever their relative
// accuracy; it sits far under the 1e-6 level the oracle is compared at.
constexpr double kAbsoluteFloor = 1e-15;

struct Panel {
  double value = 0.0;
  double error = 0.0;
  double l1 = 0.0;
};

/// Adaptive Gauss-Kronrod on [a, b] without a convergence verdict.
template <typename F>
Panel integrate_panel(F&& f, double a, double b, double tolerance) {
  if (!(b > a)) return {};
  // Boost compares its error estimate in reference coordinates against a
  // tolerance in user coordinates, which never converges on short panels.
  // Mapping onto [0, 1] keeps the two on the same scale.
  const double width = b - a;
  auto unit = [&](double t) { return width * f(a + width * t); };
  Panel p;
  p.value = boost::math::quadrature::gauss_kronrod<double, 31>::integrate(
      unit, 0.0, 1.0, kMaxDepth, tolerance, &p.error, &p.l1);
  return p;
}

/// \p tolerance is relative to the L1 norm of the integrand, with
/// kAbsoluteFloor as a lower bound.
void check_converged(const Panel& p, double a, double b, double tolerance) {
  if (!std::isfinite(p.value) || p.error > std::max(1e2 * tolerance * p.l1, kAbsoluteFloor)) {
    char message[160];
    std::snprintf(message, sizeof message,
                  "quadrature did not converge on [%.6g, %.6g]: value %.6g, "
                  "error estimate %.3g, L1 %.3g",
                  a, b, p.value, p.error, p.l1);
    throw NumericalFailure(message);
  }
}

template <typename F>
double integrate(F&& f, double a, double b, double tolerance) {
  const Panel p = integrate_panel(f, a, b, tolerance);
  check_converged(p, a, b, tolerance);
  return p.value;
}

/// Unit-scale Erlang branch: pdf, cdf and upper tail.
class Erlang {
 public:
  explicit Erlang(int shape) : shape_(shape) {}

  double pdf(double x) const {
    if (x < 0.0) return 0.0;
    return boost::math::gamma_p_derivative(static_cast<double>(shape_), x);
  }

  double tail(double x) const {
    if (x <= 0.0) return 1.0;
    return boost::math::gamma_q(static_cast<double>(shape_), x);
  }

  double cdf(double x) const {
    if (x <= 0.0) return 0.0;
    return boost::math::gamma_p(static_cast<double>(shape_), x);
  }

  /// A point beyond which factor * tail(x) < mass.
  double upper_point(double factor, double mass) const {
    double x = std::max(1.0, static_cast<double>(shape_));
    while (factor * tail(x) >= mass) x *= 1.25;
    return x;
  }

 private:
  int shape_;
};

}  // namespace

DensityGrid::DensityGrid(std::function<double(double)> pdf,
                         std::function<double(double)> cdf, double x_max,
                         std::function<double(double)> ccdf)
    : pdf_(std::move(pdf)), cdf_(std::move(cdf)), ccdf_(std::move(ccdf)), x_max_(x_max) {}

double DensityGrid::cdf(double x) const {
  if (x <= 0.0) return 0.0;
  return cdf_(x);
}

double DensityGrid::ccdf(double x) const {
  if (x <= 0.0) return 1.0;
  return ccdf_ ? ccdf_(x) : 1.0 - cdf_(x);
}

double DensityGrid::expect(const std::function<double(double)>& g,
                           double tolerance) const {
  // Splitting at a few interior points keeps the bulk of the mass away from
  // the long, nearly empty tail panel.
  const double cuts[] = {0.0, 0.05 * x_max_, 0.15 * x_max_, 0.35 * x_max_, x_max_};
  // Convergence is judged on the whole support, so an empty tail panel does
  // not need relative accuracy of its own.
  Panel total;
  for (int s = 0; s + 1 < 5; ++s) {
    const Panel p = integrate_panel([&](double x) { return g(x) * pdf_(x); }, cuts[s],
                                    cuts[s + 1], tolerance);
    total.value += p.value;
    total.error += p.error;
    total.l1 += p.l1;
  }
  check_converged(total, 0.0, x_max_, tolerance);
  return total.value;
}

double DensityGrid::total_mass() const {
  return expect([](double) { return 1.0; });
}

double DensityGrid::mean() const {
  return expect([](double x) { return x; });
}

DensityGrid gamma_branch_density(int shape, double scale) {
  if (shape < 1 || !(scale > 0.0)) {
    throw std::invalid_argument("gamma_branch_density: need shape >= 1 and scale > 0");
  }
  const Erlang branch(shape);
  const double x_max = scale * branch.upper_point(1.0, 0.1 * DensityGrid::kTailMass);
  return DensityGrid(
      [branch, scale](double x) { return branch.pdf(x / scale) / scale; },
      [branch, scale](double x) { return branch.cdf(x / scale); }, x_max,
      [branch, scale](double x) { return branch.tail(x / scale); });
}

DensityGrid density_sum_two_largest(int n_candidates, int branch_shape,
                                    double scale) {
  if (n_candidates < 2 || branch_shape < 1 || !(scale > 0.0)) {
    throw std::invalid_argument(
        "density_sum_two_largest: need n_candidates >= 2, branch_shape >= 1, scale > 0");
  }
  const Erlang branch(branch_shape);
  const double n = n_candidates;
  const double pair_count = n * (n - 1.0);
  const int others = n_candidates - 2;

  // Joint density of the top two order statistics (x >= y) is
  // N(N-1) f(x) f(y) F(y)^{N-2}. With S = x + y, the second-largest y ranges
  // over [0, S/2].
  auto lower_weight = [=](double y) {
    return pair_count * branch.pdf(y) * std::pow(branch.cdf(y), others);
  };
  auto pdf_unit = [=](double z) {
    if (z <= 0.0) return 0.0;
    return integrate([&](double y) { return lower_weight(y) * branch.pdf(z - y); },
                     0.0, 0.5 * z, kInnerTolerance);
  };
  // Pr(S <= z): y <= z/2 and y <= x <= z - y.
  auto cdf_unit = [=](double z) {
    if (z <= 0.0) return 0.0;
    return integrate(
        [&](double y) {
          return lower_weight(y) * (branch.cdf(z - y) - branch.cdf(y));
        },
        0.0, 0.5 * z, kInnerTolerance);
  };
  // S <= 2 X_(1) and Pr(X_(1) > x) <= N tail(x).
  const double x_max =
      2.0 * scale * branch.upper_point(n, 0.1 * DensityGrid::kTailMass);
  return DensityGrid([=](double s) { return pdf_unit(s / scale) / scale; },
                     [=](double s) { return cdf_unit(s / scale); }, x_max);
}

namespace {

struct OutageDensities {
  DensityGrid bob;
  DensityGrid eve;
};

OutageDensities outage_densities(const SystemConfig& config) {
  config.validate_for(Scheme::TasAlamouti);
  // gamma_B = (|f_a1|^2 + |f_a2|^2) gamma_bar_b / 2; Eve's two columns are
  // effectively random, so her sum is a plain Gamma(2 N_E).
  return {density_sum_two_largest(config.n_alice, config.n_bob,
                                  0.5 * config.gamma_bar_b),
          gamma_branch_density(2 * config.n_eve, 0.5 * config.gamma_bar_e)};
}

}  // namespace

double outage_quadrature(const SystemConfig& config, double rate_rs) {
  if (!(rate_rs >= 0.0)) {
    throw std::invalid_argument("outage_quadrature: R_s must be nonnegative");
  }
  const auto d = outage_densities(config);
  const double factor = std::exp2(rate_rs);
  const double u1 = d.eve.expect(
      [&](double y) { return d.bob.cdf(factor * (1.0 + y) - 1.0); }, kOuterTolerance);
  return std::min(1.0, std::max(0.0, u1));
}

OutageSplit outage_quadrature_split(const SystemConfig& config, double rate_rs) {
  if (!(rate_rs >= 0.0)) {
    throw std::invalid_argument("outage_quadrature_split: R_s must be nonnegative");
  }
  const auto d = outage_densities(config);
  OutageSplit s;
  s.u1 = outage_quadrature(config, rate_rs);
  s.u2 = d.eve.expect([&](double y) { return d.bob.cdf(y); }, kOuterTolerance);
  s.v1 = s.u1 - s.u2;
  s.v2 = d.bob.expect([&](double x) { return d.eve.ccdf(x); }, kOuterTolerance);
  return s;
}

}  // namespace wiretap
