// SPDX-License-Identifier: Apache-2.0

#include "wiretap/closed_form.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

#include "wiretap/root_finding.hpp"

namespace wiretap {

namespace {

constexpr double kLn2 = std::numbers::ln2;
constexpr double kNegInf = -std::numeric_limits<double>::infinity();

double log_factorial(int n) { return std::lgamma(static_cast<double>(n) + 1.0); }

double log_binomial(int n, int k) {
  return log_factorial(n) - log_factorial(k) - log_factorial(n - k);
}

double sign_of_power(int exponent) { return exponent % 2 == 0 ? 1.0 : -1.0; }

/// Neumaier-compensated sum that also tracks conditioning.
class Accumulator {
 public:
  void add(double x) {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
      comp_ += (sum_ - t) + x;
    } else {
      comp_ += (x - t) + sum_;
    }
    sum_ = t;
    max_abs_ = std::max(max_abs_, std::abs(x));
    sum_abs_ += std::abs(x);
  }

  PsiSum result() const { return {sum_ + comp_, max_abs_, sum_abs_}; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
  double max_abs_ = 0.0;
  double sum_abs_ = 0.0;
};

void check_envelope(const SystemConfig& config) {
  config.validate_for(Scheme::TasAlamouti);
  if (config.n_alice > kMaxAntennas || config.n_bob > kMaxAntennas ||
      config.n_eve > kMaxAntennas) {
    throw PrecisionExhausted(
        "closed form: antenna counts above " + std::to_string(kMaxAntennas) +
        " are outside the supported numeric envelope");
  }
}

/// Eve's bracket [sum_n ... F1(phi) + sum_q ... F2(phi)] for every (m, u),
/// each scaled by snr_ratio^u. \p extra_halving is 1 for the Psi2 variant,
/// whose printed normalisation moves a factor 2 from Eve's side to Bob's.
class EveBrackets {
 public:
  EveBrackets(const ClosedFormContext& ctx, double phi, int max_u,
              int extra_halving)
      : stride_(max_u + 1) {
    const int n_e = ctx.config().n_eve;
    values_.resize(static_cast<std::size_t>(n_e) * stride_);
    for (int m = 0; m < n_e; ++m) {
      const int n_top = 2 * n_e - m - 2;
      const int q_top = n_e - m - 1;
      for (int u = 0; u <= max_u; ++u) {
        const double log_scale = u * ctx.log_snr_ratio();
        double s = 0.0;
        for (int n = 0; n <= n_top; ++n) {
          const double coeff = std::exp(log_factorial(n) + log_binomial(n_top, n) -
                                        (n_top + extra_halving) * kLn2);
          s += coeff * f1_term(n_e, m, n, ctx.lambda(u, m, n), phi, log_scale);
        }
        const double f2 = f2_term(n_e, m, 2 * n_e + u - m - 2, phi, log_scale);
        for (int q = 0; q <= q_top; ++q) {
          const double coeff =
              sign_of_power(q) *
              std::exp(log_binomial(q_top, q) - (n_e + q - 1 + extra_halving) * kLn2) /
              (n_e + q);
          s += coeff * f2;
        }
        values_[static_cast<std::size_t>(m) * stride_ + u] = s;
      }
    }
  }

  double operator()(int m, int u) const {
    return values_[static_cast<std::size_t>(m) * stride_ + u];
  }

 private:
  std::size_t stride_;
  std::vector<double> values_;
};

/// sum_{u=0}^{w} C(w,u) offset^{w-u} * eve(m,u), each term already carrying
/// exp(log_prefactor). Terms go straight into \p acc with sign \p sign.
void add_u_sum(Accumulator& acc, double sign, double log_prefactor, int w,
               int m, const ClosedFormContext& ctx, const EveBrackets& eve) {
  const double log_offset = ctx.log_offset();
  for (int u = 0; u <= w; ++u) {
    const int power = w - u;
    double log_term = log_prefactor + log_binomial(w, u);
    if (power > 0) {
      if (log_offset == kNegInf) continue;  // R_s = 0: only u = w survives
      log_term += power * log_offset;
    }
    acc.add(sign * std::exp(log_term) * eve(m, u));
  }
}

}  // namespace

CoefficientTable expansion_coeffs(int n_b, int i) {
  if (n_b < 1 || i < 0) {
    throw std::invalid_argument("expansion_coeffs: need n_b >= 1 and i >= 0");
  }
  std::vector<double> base(static_cast<std::size_t>(n_b));
  double inv_fact = 1.0;
  for (int k = 0; k < n_b; ++k) {
    if (k > 0) inv_fact /= k;
    base[static_cast<std::size_t>(k)] = inv_fact;
  }
  CoefficientTable table{1.0};
  for (int power = 0; power < i; ++power) {
    CoefficientTable next(table.size() + base.size() - 1, 0.0);
    for (std::size_t a = 0; a < table.size(); ++a) {
      for (std::size_t b = 0; b < base.size(); ++b) next[a + b] += table[a] * base[b];
    }
    table = std::move(next);
  }
  return table;
}

double w_integral(int r, double u, double log_scale) {
  if (r < -1 || !(u > 0.0)) {
    throw std::invalid_argument("w_integral: need r >= -1 and u > 0");
  }
  if (r == -1) return 0.0;
  return std::exp(log_scale + log_factorial(r) - (r + 1) * std::log(u));
}

double f1_term(int n_e, int m, int n, int lambda, double phi, double log_scale) {
  return (2 * n_e - m - n - 2) * w_integral(lambda, phi, log_scale) -
         w_integral(lambda + 1, phi, log_scale);
}

double f2_term(int n_e, int m, int lambda, double phi, double log_scale) {
  return (2 * n_e - m - 1) * w_integral(lambda, phi, log_scale) -
         w_integral(lambda + 1, phi, log_scale);
}

ClosedFormContext::ClosedFormContext(const SystemConfig& config, double rate_rs)
    : config_(config),
      rate_rs_(rate_rs),
      n_b_(config.n_bob),
      n_e_(config.n_eve),
      rate_factor_(std::exp2(rate_rs)) {
  config_.rate_rs = rate_rs;
  config_.validate();
  log_ratio_ = std::log(rate_factor_ * config.gamma_bar_e / config.gamma_bar_b);
  const double offset = (2.0 * rate_factor_ - 2.0) / config.gamma_bar_b;
  log_offset_ = offset > 0.0 ? std::log(offset) : kNegInf;
}

double ClosedFormContext::phi1(int i) const {
  return (config_.gamma_bar_b +
          0.5 * rate_factor_ * (i + 2) * config_.gamma_bar_e) /
         config_.gamma_bar_b;
}

double ClosedFormContext::phi2() const {
  return (config_.gamma_bar_b + rate_factor_ * config_.gamma_bar_e) /
         config_.gamma_bar_b;
}

double ClosedFormContext::log_g(int i, int j, int m) const {
  return log_binomial(config_.n_alice - 2, i) + log_h(j, m);
}

double ClosedFormContext::log_h(int j, int m) const {
  return log_factorial(j) + log_binomial(n_b_ - 1, j) + log_factorial(m) +
         log_binomial(n_e_ - 1, m);
}

double ClosedFormContext::log_decay1(int i) const {
  return -(rate_factor_ - 1.0) * (i + 2) / config_.gamma_bar_b;
}

double ClosedFormContext::log_decay2() const {
  return -(2.0 * rate_factor_ - 2.0) / config_.gamma_bar_b;
}

PsiSum psi1(const SystemConfig& config, double rate_rs) {
  check_envelope(config);
  const ClosedFormContext ctx(config, rate_rs);
  const int n_b = config.n_bob;
  const int n_e = config.n_eve;
  Accumulator acc;
  for (int i = 0; i <= config.n_alice - 2; ++i) {
    const auto a = expansion_coeffs(n_b, i);
    const EveBrackets eve(ctx, ctx.phi1(i), 2 * n_b - 2 + (n_b - 1) * i, 0);
    const double sign = sign_of_power(i + 1);
    for (int j = 0; j < n_b; ++j) {
      for (int m = 0; m < n_e; ++m) {
        const double log_g = ctx.log_g(i, j, m);
        for (int t = 0; t < static_cast<int>(a.size()); ++t) {
          const int top = ctx.omega1(t, j, 0);  // omega1 + k, fixed over k
          for (int k = 0; k <= top; ++k) {
            const int w = ctx.omega1(t, j, k);
            const double log_pre = log_g + std::log(a[t]) + log_factorial(k) +
                                   log_binomial(top, k) - w * kLn2 -
                                   (k + 1) * std::log(i + 2.0) + ctx.log_decay1(i);
            add_u_sum(acc, sign, log_pre, w, m, ctx, eve);
          }
        }
      }
    }
  }
  return acc.result();
}

PsiSum psi2(const SystemConfig& config, double rate_rs) {
  check_envelope(config);
  const ClosedFormContext ctx(config, rate_rs);
  const int n_b = config.n_bob;
  const int n_e = config.n_eve;
  const EveBrackets eve(ctx, ctx.phi2(), 2 * n_b - 1, 1);
  Accumulator acc;
  for (int j = 0; j < n_b; ++j) {
    const int w = 2 * n_b - j - 1;
    for (int m = 0; m < n_e; ++m) {
      const double log_h = ctx.log_h(j, m);
      for (int p = 0; p <= n_b - j - 1; ++p) {
        const double log_pre = log_h + log_binomial(n_b - j - 1, p) -
                               (n_b + p - 1) * kLn2 - std::log(n_b + p) +
                               ctx.log_decay2();
        add_u_sum(acc, sign_of_power(p), log_pre, w, m, ctx, eve);
      }
    }
  }
  return acc.result();
}

PsiSum psi3(const SystemConfig& config, double rate_rs) {
  check_envelope(config);
  const ClosedFormContext ctx(config, rate_rs);
  const int n_b = config.n_bob;
  const int n_e = config.n_eve;
  Accumulator acc;
  for (int i = 1; i <= config.n_alice - 2; ++i) {
    const auto a = expansion_coeffs(n_b, i);
    const EveBrackets eve(ctx, ctx.phi1(i), 2 * n_b - 2 + (n_b - 1) * i, 0);
    for (int j = 0; j < n_b; ++j) {
      for (int m = 0; m < n_e; ++m) {
        const double log_g = ctx.log_g(i, j, m);
        for (int t = 0; t < static_cast<int>(a.size()); ++t) {
          for (int p = 0; p <= n_b - j - 1; ++p) {
            const double sign = sign_of_power(i + p);
            const int top = ctx.omega2(p, t);
            for (int k = 0; k <= top; ++k) {
              const int w = ctx.omega1(t, j, k);
              const double log_pre =
                  log_g + std::log(a[t]) + log_binomial(n_b - j - 1, p) +
                  log_factorial(k) + log_binomial(top, k) - (top - k) * kLn2 -
                  (k + 1) * std::log(static_cast<double>(i)) + ctx.log_decay1(i);
              add_u_sum(acc, sign, log_pre, w, m, ctx, eve);
            }
          }
        }
      }
    }
  }
  return acc.result();
}

PsiSum psi4(const SystemConfig& config, double rate_rs) {
  check_envelope(config);
  const ClosedFormContext ctx(config, rate_rs);
  const int n_b = config.n_bob;
  const int n_e = config.n_eve;
  Accumulator acc;
  if (config.n_alice < 3) return acc.result();
  const EveBrackets eve(ctx, ctx.phi2(), n_b - 1, 0);
  for (int i = 1; i <= config.n_alice - 2; ++i) {
    const auto a = expansion_coeffs(n_b, i);
    for (int j = 0; j < n_b; ++j) {
      for (int m = 0; m < n_e; ++m) {
        const double log_g = ctx.log_g(i, j, m);
        for (int t = 0; t < static_cast<int>(a.size()); ++t) {
          for (int p = 0; p <= n_b - j - 1; ++p) {
            const int top = ctx.omega2(p, t);
            const double log_pre = log_g + std::log(a[t]) +
                                   log_binomial(n_b - j - 1, p) +
                                   log_factorial(top) -
                                   (top + 1) * std::log(static_cast<double>(i)) +
                                   ctx.log_decay2();
            add_u_sum(acc, sign_of_power(i + p), log_pre, ctx.omega3(j, p), m,
                      ctx, eve);
          }
        }
      }
    }
  }
  return acc.result();
}

OutageBreakdown closed_form_outage_breakdown(const SystemConfig& config,
                                             double rate_rs) {
  check_envelope(config);
  if (!(rate_rs >= 0.0)) {
    throw std::invalid_argument("closed_form_outage: R_s must be nonnegative");
  }
  OutageBreakdown out;
  out.psi = {psi1(config, rate_rs), psi2(config, rate_rs), psi3(config, rate_rs),
             psi4(config, rate_rs)};
  const double bracket =
      out.psi[0].value - out.psi[1].value + out.psi[2].value - out.psi[3].value;
  const double log_norm =
      2.0 * (log_factorial(config.n_bob - 1) + log_factorial(config.n_eve - 1));
  const double scale =
      config.n_alice * (config.n_alice - 1.0) * std::exp(-log_norm);

  double max_abs = 0.0;
  double sum_abs = 0.0;
  for (const auto& p : out.psi) {
    max_abs = std::max(max_abs, p.max_abs_term);
    sum_abs += p.sum_abs_terms;
  }
  out.cancellation_ratio =
      bracket != 0.0 ? max_abs / std::abs(bracket)
                     : std::numeric_limits<double>::infinity();
  out.error_bound = 64.0 * std::numeric_limits<double>::epsilon() * scale * sum_abs;
  out.unclamped = 1.0 - scale * bracket;

  if (!std::isfinite(out.unclamped) || out.error_bound > 1e-8) {
    throw PrecisionExhausted("closed form: rounding error bound " +
                             std::to_string(out.error_bound) +
                             " exceeds the supported envelope");
  }
  if (out.unclamped < -kClampSlack || out.unclamped > 1.0 + kClampSlack) {
    throw PrecisionExhausted("closed form: probability " +
                             std::to_string(out.unclamped) +
                             " outside [0, 1] beyond rounding slack");
  }
  out.probability = std::clamp(out.unclamped, 0.0, 1.0);
  return out;
}

double closed_form_outage(const SystemConfig& config, double rate_rs) {
  return closed_form_outage_breakdown(config, rate_rs).probability;
}

double prob_nonzero_secrecy(const SystemConfig& config) {
  return 1.0 - closed_form_outage(config, 0.0);
}

double eps_outage_capacity(const SystemConfig& config, double epsilon) {
  if (!(epsilon > 0.0 && epsilon < 1.0)) {
    throw std::invalid_argument("eps_outage_capacity: epsilon must lie in (0, 1)");
  }
  return largest_feasible_rate(
      [&](double rate) { return closed_form_outage(config, rate); }, epsilon);
}

}  // namespace wiretap
