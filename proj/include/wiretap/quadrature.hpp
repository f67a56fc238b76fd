// SPDX-License-Identifier: Apache-2.0
//
// Semi-analytic outage evaluator. Builds the exact distributions of the
// combined SNRs from order statistics of Gamma-distributed branch gains and
// integrates them numerically. Shares no code with the closed form.

#pragma once

#include <functional>

#include "wiretap/config.hpp"

namespace wiretap {

/// Distribution on [0, x_max] given by pdf/cdf evaluators; the mass beyond
/// x_max is below kTailMass.
class DensityGrid {
 public:
  static constexpr double kTailMass = 1e-12;

  /// \p ccdf is optional; without it the survival function is 1 - cdf.
  DensityGrid(std::function<double(double)> pdf,
              std::function<double(double)> cdf, double x_max,
              std::function<double(double)> ccdf = {});

  double pdf(double x) const { return pdf_(x); }
  double cdf(double x) const;
  /// Pr(X > x), without cancellation when a survival function was given.
  double ccdf(double x) const;
  double x_max() const { return x_max_; }

  /// Adaptive integral of g(x) * pdf(x) over the support.
  double expect(const std::function<double(double)>& g,
                double tolerance = 1e-12) const;

  double total_mass() const;
  double mean() const;

 private:
  std::function<double(double)> pdf_;
  std::function<double(double)> cdf_;
  std::function<double(double)> ccdf_;
  double x_max_;
};

/// Gamma(shape, scale) with integer shape.
DensityGrid gamma_branch_density(int shape, double scale);

/// Sum of the two largest of \p n_candidates i.i.d. Gamma(branch_shape, scale)
/// variables.
DensityGrid density_sum_two_largest(int n_candidates, int branch_shape,
                                    double scale);

/// U1 = int f_E(y) F_B(2^R_s (1 + y) - 1) dy for TAS-Alamouti.
double outage_quadrature(const SystemConfig& config, double rate_rs);

/// The four integrals of the outage decomposition, computed independently:
/// P_out = V1 + V2 with V1 = U1 - U2, and V2 = Pr(gamma_b < gamma_e) taken
/// from Bob's density side while U2 is taken from Eve's.
struct OutageSplit {
  double u1 = 0.0;
  double u2 = 0.0;
  double v1 = 0.0;
  double v2 = 0.0;
};

OutageSplit outage_quadrature_split(const SystemConfig& config,
                                    double rate_rs);

}  // namespace wiretap
