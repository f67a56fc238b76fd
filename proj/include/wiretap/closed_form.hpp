// SPDX-License-Identifier: Apache-2.0
//
// Closed-form secrecy metrics of TAS-Alamouti in i.i.d. Rayleigh fading.
//
//   P_out(R_s) = 1 - N_A (N_A - 1) [Psi1 - Psi2 + Psi3 - Psi4]
//                    / [(N_B - 1)! (N_E - 1)!]^2
//
// Psi1 collects the region where the second-largest branch exceeds half the
// threshold, Psi2..Psi4 the complementary region (Psi2 is its i = 0 part,
// Psi3 and Psi4 the two halves of the incomplete-gamma split for i >= 1).
// Eve's combined gain enters through the F1 (n-sum) and F2 (q-sum) terms.
//
// Every summand is assembled in the log domain and the four sums are
// accumulated with Neumaier compensation. The supported envelope is
// N_A, N_B, N_E <= kMaxAntennas; outside it, or when the estimated rounding
// error becomes comparable to the clamping slack, PrecisionExhausted is
// thrown instead of returning a value.

#pragma once

#include <array>
#include <vector>

#include "wiretap/config.hpp"

namespace wiretap {

inline constexpr int kMaxAntennas = 8;

/// Excursions outside [0, 1] up to this size are rounding and get clamped.
inline constexpr double kClampSlack = 1e-9;

/// Coefficients a_t of z^t in (sum_{k<n_b} z^k / k!)^i.
using CoefficientTable = std::vector<double>;

CoefficientTable expansion_coeffs(int n_b, int i);

/// W(r, u) = int_0^inf x^r e^{-u x} dx = r! u^{-r-1}, and 0 for r = -1.
/// The result is multiplied by exp(log_scale) before leaving the log domain.
double w_integral(int r, double u, double log_scale = 0.0);

/// F1 = (2N_E - m - n - 2) W(lambda, phi) - W(lambda + 1, phi).
double f1_term(int n_e, int m, int n, int lambda, double phi,
               double log_scale = 0.0);

/// F2 = (2N_E - m - 1) W(lambda, phi) - W(lambda + 1, phi), with
/// lambda = 2N_E + u - m - 2 (the F1 form at n = -1).
double f2_term(int n_e, int m, int lambda, double phi, double log_scale = 0.0);

/// Config-derived constants and index-dependent exponents of the Psi sums.
class ClosedFormContext {
 public:
  ClosedFormContext(const SystemConfig& config, double rate_rs);

  int omega1(int t, int j, int k) const { return 2 * n_b_ + t - j - k - 2; }
  int omega2(int p, int t) const { return n_b_ + p + t - 1; }
  int omega3(int j, int p) const { return n_b_ - j - p - 1; }
  int lambda(int u, int m, int n) const { return 2 * n_e_ + u - m - n - 3; }

  double phi1(int i) const;
  double phi2() const;

  /// C(N_A-2, i) j! C(N_B-1, j) m! C(N_E-1, m), as a logarithm.
  double log_g(int i, int j, int m) const;
  /// j! C(N_B-1, j) m! C(N_E-1, m), as a logarithm.
  double log_h(int j, int m) const;

  /// log(2^R_s gamma_bar_e / gamma_bar_b)
  double log_snr_ratio() const { return log_ratio_; }
  /// log((2^{R_s+1} - 2) / gamma_bar_b); -inf at R_s = 0.
  double log_offset() const { return log_offset_; }
  /// Exponent (2^R_s - 1)(i + 2) / gamma_bar_b, negated.
  double log_decay1(int i) const;
  /// Exponent (2^{R_s+1} - 2) / gamma_bar_b, negated.
  double log_decay2() const;

  const SystemConfig& config() const { return config_; }
  double rate_rs() const { return rate_rs_; }

 private:
  SystemConfig config_;
  double rate_rs_;
  int n_b_;
  int n_e_;
  double rate_factor_;  // 2^R_s
  double log_ratio_;
  double log_offset_;
};

/// One Psi sum together with its conditioning.
struct PsiSum {
  double value = 0.0;
  double max_abs_term = 0.0;
  double sum_abs_terms = 0.0;
};

PsiSum psi1(const SystemConfig& config, double rate_rs);
PsiSum psi2(const SystemConfig& config, double rate_rs);
PsiSum psi3(const SystemConfig& config, double rate_rs);
PsiSum psi4(const SystemConfig& config, double rate_rs);

struct OutageBreakdown {
  double probability = 0.0;
  double unclamped = 0.0;
  std::array<PsiSum, 4> psi;
  /// max |summand| / |Psi1 - Psi2 + Psi3 - Psi4|
  double cancellation_ratio = 0.0;
  /// First-order bound on the absolute rounding error of the probability.
  double error_bound = 0.0;
};

OutageBreakdown closed_form_outage_breakdown(const SystemConfig& config,
                                             double rate_rs);

double closed_form_outage(const SystemConfig& config, double rate_rs);

/// 1 - P_out(0).
double prob_nonzero_secrecy(const SystemConfig& config);

/// Largest R_s with P_out(R_s) <= epsilon, to within 1e-6 bits; 0 when even
/// R_s = 0 violates the target.
double eps_outage_capacity(const SystemConfig& config, double epsilon);

}  // namespace wiretap
