// SPDX-License-Identifier: Apache-2.0

#include "wiretap/monte_carlo.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "parallel.hpp"

namespace wiretap {

namespace {

std::uint64_t block_count(std::uint64_t n_trials) {
  return (n_trials + kTrialsPerBlock - 1) / kTrialsPerBlock;
}

/// Selection-dependent squared norms of one trial.
struct TrialGains {
  double bob1 = 0.0;
  double bob2 = 0.0;
  double eve1 = 0.0;
  double eve2 = 0.0;
};

/// Draws every trial of block \p block and hands its gains to \p visit.
/// Both selections are reported so that paired comparisons reuse the draw.
template <typename Visit>
void run_block(const SystemConfig& dims, std::uint64_t n_trials,
               std::uint64_t seed, std::uint64_t block, Visit&& visit) {
  RandomStream stream(seed, block);
  ChannelRealization ch{Eigen::MatrixXcd(dims.n_bob, dims.n_alice),
                        Eigen::MatrixXcd(dims.n_eve, dims.n_alice)};
  std::vector<double> bob(static_cast<std::size_t>(dims.n_alice));
  const std::uint64_t first = block * kTrialsPerBlock;
  const std::uint64_t last = std::min(n_trials, first + kTrialsPerBlock);
  const int count = dims.n_alice >= 2 ? 2 : 1;
  for (std::uint64_t trial = first; trial < last; ++trial) {
    redraw_channel(ch, stream);
    column_norms(ch.f_matrix, bob);
    const auto sel = select_antennas(bob, count);
    TrialGains g;
    g.bob1 = bob[sel.alpha1];
    g.eve1 = ch.g_matrix.col(sel.alpha1).squaredNorm();
    if (sel.alpha2) {
      g.bob2 = bob[*sel.alpha2];
      g.eve2 = ch.g_matrix.col(*sel.alpha2).squaredNorm();
    }
    visit(trial, g);
  }
}

SnrSample snr_for(Scheme scheme, const TrialGains& g, double gamma_bar_b,
                  double gamma_bar_e) {
  if (scheme == Scheme::TasAlamouti) {
    return {snr_tas_alamouti(g.bob1, g.bob2, gamma_bar_b),
            snr_tas_alamouti(g.eve1, g.eve2, gamma_bar_e)};
  }
  return {snr_single_tas(g.bob1, gamma_bar_b),
          snr_single_tas(g.eve1, gamma_bar_e)};
}

void check_trials(std::uint64_t n_trials) {
  if (n_trials == 0) throw std::invalid_argument("n_trials must be positive");
}

}  // namespace

EstimatorResult EstimatorResult::from_counts(std::uint64_t events,
                                             std::uint64_t trials) {
  if (trials == 0 || events > trials) {
    throw std::invalid_argument("EstimatorResult: invalid counts");
  }
  EstimatorResult r;
  const double n = static_cast<double>(trials);
  r.n_trials = trials;
  r.n_events = events;
  r.estimate = static_cast<double>(events) / n;
  r.std_error = std::sqrt(r.estimate * (1.0 - r.estimate) / n);
  if (events == 0) {
    r.ci95_low = 0.0;
    r.ci95_high = std::min(1.0, 3.0 / n);
  } else if (events == trials) {
    r.ci95_low = std::max(0.0, 1.0 - 3.0 / n);
    r.ci95_high = 1.0;
  } else {
    r.ci95_low = std::max(0.0, r.estimate - 1.96 * r.std_error);
    r.ci95_high = std::min(1.0, r.estimate + 1.96 * r.std_error);
  }
  return r;
}

double secrecy_capacity(double gamma_b, double gamma_e) {
  if (gamma_b <= gamma_e) return 0.0;
  return std::log2(1.0 + gamma_b) - std::log2(1.0 + gamma_e);
}

bool in_outage(const SnrSample& snr, double rate_rs) {
  const bool secure = snr.gamma_b > snr.gamma_e &&
                      1.0 + snr.gamma_b > std::exp2(rate_rs) * (1.0 + snr.gamma_e);
  return !secure;
}

std::vector<EstimatorResult> estimate_outage_batch(
    const SystemConfig& dims, Scheme scheme,
    std::span<const OperatingPoint> points, std::uint64_t n_trials,
    std::uint64_t seed) {
  check_trials(n_trials);
  dims.validate_for(scheme);
  for (const auto& p : points) {
    SystemConfig c = dims;
    c.gamma_bar_b = p.gamma_bar_b;
    c.gamma_bar_e = p.gamma_bar_e;
    c.rate_rs = p.rate_rs;
    c.validate();
  }
  const std::uint64_t n_blocks = block_count(n_trials);
  const std::size_t n_points = points.size();
  std::vector<std::uint64_t> counts(n_blocks * n_points, 0);
  detail::parallel_for(n_blocks, [&](std::uint64_t b) {
    std::uint64_t* local = counts.data() + b * n_points;
    run_block(dims, n_trials, seed, b, [&](std::uint64_t, const TrialGains& g) {
      for (std::size_t p = 0; p < n_points; ++p) {
        const auto& op = points[p];
        local[p] += in_outage(snr_for(scheme, g, op.gamma_bar_b, op.gamma_bar_e),
                              op.rate_rs);
      }
    });
  });
  std::vector<EstimatorResult> out;
  out.reserve(n_points);
  for (std::size_t p = 0; p < n_points; ++p) {
    std::uint64_t events = 0;
    for (std::uint64_t b = 0; b < n_blocks; ++b) events += counts[b * n_points + p];
    out.push_back(EstimatorResult::from_counts(events, n_trials));
  }
  return out;
}

EstimatorResult estimate_outage(const SystemConfig& config, Scheme scheme,
                                std::uint64_t n_trials, std::uint64_t seed) {
  const OperatingPoint point{config.gamma_bar_b, config.gamma_bar_e,
                             config.rate_rs};
  return estimate_outage_batch(config, scheme, std::span(&point, 1), n_trials,
                               seed)
      .front();
}

EstimatorResult estimate_nonzero_secrecy(const SystemConfig& config,
                                         Scheme scheme, std::uint64_t n_trials,
                                         std::uint64_t seed) {
  SystemConfig at_zero = config;
  at_zero.rate_rs = 0.0;
  const auto outage = estimate_outage(at_zero, scheme, n_trials, seed);
  return EstimatorResult::from_counts(n_trials - outage.n_events, n_trials);
}

CapacityEstimate estimate_eps_outage_capacity(const SystemConfig& config,
                                              Scheme scheme, double epsilon,
                                              std::uint64_t n_trials,
                                              std::uint64_t seed) {
  check_trials(n_trials);
  config.validate_for(scheme);
  if (!(epsilon > 0.0 && epsilon < 1.0)) {
    throw std::invalid_argument("epsilon must lie in (0, 1)");
  }
  std::vector<double> capacity(n_trials);
  detail::parallel_for(block_count(n_trials), [&](std::uint64_t b) {
    run_block(config, n_trials, seed, b, [&](std::uint64_t trial, const TrialGains& g) {
      const auto snr = snr_for(scheme, g, config.gamma_bar_b, config.gamma_bar_e);
      capacity[trial] = secrecy_capacity(snr.gamma_b, snr.gamma_e);
    });
  });
  std::sort(capacity.begin(), capacity.end());

  // #(C_s < R) <= floor(eps n) holds exactly for R <= capacity[floor(eps n)].
  const double n = static_cast<double>(n_trials);
  auto at_rank = [&](double rank) {
    const double clamped = std::clamp(std::floor(rank), 0.0, n - 1.0);
    return capacity[static_cast<std::size_t>(clamped)];
  };
  const double rank = std::floor(epsilon * n);
  const double spread = 1.96 * std::sqrt(n * epsilon * (1.0 - epsilon));
  return {at_rank(rank), at_rank(rank - spread), at_rank(rank + spread),
          n_trials};
}

PairedOutageTable::PairedOutageTable(const SystemConfig& config,
                                     Scheme scheme_a, Scheme scheme_b,
                                     std::uint64_t n_trials,
                                     std::uint64_t seed) {
  check_trials(n_trials);
  config.validate_for(scheme_a);
  config.validate_for(scheme_b);
  threshold_a_.resize(n_trials);
  threshold_b_.resize(n_trials);
  const double rate_factor = std::exp2(config.rate_rs);
  // Outage iff 1 + gamma_bar_b * bob <= 2^R (1 + gamma_bar_e * eve), where
  // bob/eve are the SNRs at unit average SNR.
  auto threshold = [&](Scheme s, const TrialGains& g) {
    const auto unit = snr_for(s, g, 1.0, 1.0);
    const double numer = rate_factor * (1.0 + config.gamma_bar_e * unit.gamma_e) - 1.0;
    return unit.gamma_b > 0.0 ? numer / unit.gamma_b
                              : std::numeric_limits<double>::infinity();
  };
  detail::parallel_for(block_count(n_trials), [&](std::uint64_t b) {
    run_block(config, n_trials, seed, b, [&](std::uint64_t trial, const TrialGains& g) {
      threshold_a_[trial] = threshold(scheme_a, g);
      threshold_b_[trial] = threshold(scheme_b, g);
    });
  });
}

PairedOutageTable::Difference PairedOutageTable::at(double gamma_bar_b) const {
  std::uint64_t a = 0;
  std::uint64_t b = 0;
  std::uint64_t both = 0;
  for (std::size_t t = 0; t < threshold_a_.size(); ++t) {
    const bool oa = gamma_bar_b <= threshold_a_[t];
    const bool ob = gamma_bar_b <= threshold_b_[t];
    a += oa;
    b += ob;
    both += oa && ob;
  }
  const double n = static_cast<double>(threshold_a_.size());
  Difference d;
  d.p_a = static_cast<double>(a) / n;
  d.p_b = static_cast<double>(b) / n;
  d.diff = d.p_a - d.p_b;
  const double discordant = static_cast<double>(a + b - 2 * both) / n;
  d.std_error = std::sqrt(std::max(0.0, discordant - d.diff * d.diff) / n);
  return d;
}

}  // namespace wiretap
