// SPDX-License-Identifier: Apache-2.0
//
// Plain Monte Carlo estimators of the secrecy metrics.
//
// Trials are split into fixed-size blocks and block b draws from
// RandomStream(seed, b). Counts are reduced exactly, so an estimate depends
// only on (config, scheme, n_trials, seed) and never on the worker count.

#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "wiretap/channel.hpp"
#include "wiretap/config.hpp"

namespace wiretap {

inline constexpr std::uint64_t kTrialsPerBlock = 1u << 14;

struct EstimatorResult {
  double estimate = 0.0;
  double std_error = 0.0;
  std::uint64_t n_trials = 0;
  std::uint64_t n_events = 0;
  double ci95_low = 0.0;
  double ci95_high = 0.0;

  /// Bernoulli estimate from an event count. The interval is the normal
  /// approximation clamped to [0, 1]; with zero (or all) events it falls back
  /// to the rule-of-three bound 3 / n.
  static EstimatorResult from_counts(std::uint64_t events,
                                     std::uint64_t trials);
};

/// log2(1 + gamma_b) - log2(1 + gamma_e) when gamma_b > gamma_e, else 0.
double secrecy_capacity(double gamma_b, double gamma_e);

/// Outage event C_s < R_s. At R_s = 0 this is gamma_b <= gamma_e, the exact
/// complement of the non-zero secrecy event.
bool in_outage(const SnrSample& snr, double rate_rs);

/// Point at which outage is evaluated on shared channel draws.
struct OperatingPoint {
  double gamma_bar_b = 1.0;
  double gamma_bar_e = 1.0;
  double rate_rs = 0.0;
};

/// Outage estimates for several operating points from the same channel
/// draws. Only the antenna counts of \p dims are used.
std::vector<EstimatorResult> estimate_outage_batch(
    const SystemConfig& dims, Scheme scheme,
    std::span<const OperatingPoint> points, std::uint64_t n_trials,
    std::uint64_t seed);

EstimatorResult estimate_outage(const SystemConfig& config, Scheme scheme,
                                std::uint64_t n_trials, std::uint64_t seed);

/// Pr(C_s > 0). Shares draws with estimate_outage for equal seeds, so
/// estimate_nonzero + estimate_outage(R_s = 0) == 1 exactly.
EstimatorResult estimate_nonzero_secrecy(const SystemConfig& config,
                                         Scheme scheme, std::uint64_t n_trials,
                                         std::uint64_t seed);

/// Empirical epsilon-outage secrecy capacity: the largest rate whose
/// empirical outage frequency is at most epsilon.
struct CapacityEstimate {
  double value = 0.0;
  double ci95_low = 0.0;
  double ci95_high = 0.0;
  std::uint64_t n_trials = 0;
};

CapacityEstimate estimate_eps_outage_capacity(const SystemConfig& config,
                                              Scheme scheme, double epsilon,
                                              std::uint64_t n_trials,
                                              std::uint64_t seed);

/// Per-trial outage thresholds in gamma_bar_b for two schemes driven by the
/// same channel draws. A trial is in outage for a scheme exactly when
/// gamma_bar_b <= its threshold, so outage curves over gamma_bar_b can be
/// evaluated anywhere without redrawing.
class PairedOutageTable {
 public:
  PairedOutageTable(const SystemConfig& config, Scheme scheme_a,
                    Scheme scheme_b, std::uint64_t n_trials,
                    std::uint64_t seed);

  struct Difference {
    double p_a = 0.0;
    double p_b = 0.0;
    double diff = 0.0;    ///< p_a - p_b
    double std_error = 0.0; ///< paired standard error of diff
  };

  Difference at(double gamma_bar_b) const;
  std::uint64_t n_trials() const { return threshold_a_.size(); }

 private:
  std::vector<double> threshold_a_;
  std::vector<double> threshold_b_;
};

}  // namespace wiretap
