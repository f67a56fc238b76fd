// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "wiretap/channel.hpp"
#include "wiretap/monte_carlo.hpp"

using namespace wiretap;

namespace {

SystemConfig make(int na, int nb, int ne, double gb_db, double ge_db, double rate) {
  SystemConfig c;
  c.n_alice = na;
  c.n_bob = nb;
  c.n_eve = ne;
  c.gamma_bar_b = db_to_linear(gb_db);
  c.gamma_bar_e = db_to_linear(ge_db);
  c.rate_rs = rate;
  return c;
}

/// Single-threaded count over the same block streams, written against the
/// per-trial API only.
std::uint64_t serial_outage_count(const SystemConfig& config, Scheme scheme,
                                  std::uint64_t n_trials, std::uint64_t seed) {
  std::uint64_t events = 0;
  const std::uint64_t blocks = (n_trials + kTrialsPerBlock - 1) / kTrialsPerBlock;
  for (std::uint64_t b = 0; b < blocks; ++b) {
    RandomStream stream(seed, b);
    auto ch = draw_channel(config, stream);
    const std::uint64_t last = std::min(n_trials, (b + 1) * kTrialsPerBlock);
    for (std::uint64_t t = b * kTrialsPerBlock; t < last; ++t) {
      if (t != b * kTrialsPerBlock) redraw_channel(ch, stream);
      const auto snr = instantaneous_snr(ch, config, scheme);
      const double cs = secrecy_capacity(snr.gamma_b, snr.gamma_e);
      const bool outage = config.rate_rs > 0.0 ? cs < config.rate_rs : cs <= 0.0;
      events += outage;
    }
  }
  return events;
}

}  // namespace

TEST_CASE("secrecy_capacity") {
  CHECK(secrecy_capacity(3.0, 1.0) == doctest::Approx(1.0));
  CHECK(secrecy_capacity(1.0, 3.0) == 0.0);
  CHECK(secrecy_capacity(2.5, 2.5) == 0.0);
  CHECK(secrecy_capacity(0.0, 0.0) == 0.0);
}

TEST_CASE("outage event") {
  CHECK(in_outage({1.0, 3.0}, 0.0));
  CHECK(in_outage({2.0, 2.0}, 0.0));
  CHECK_FALSE(in_outage({2.0, 1.0}, 0.0));
  CHECK_FALSE(in_outage({3.5, 1.0}, 1.0));
  CHECK(in_outage({2.5, 1.0}, 1.0));
}

TEST_CASE("EstimatorResult from counts") {
  const auto r = EstimatorResult::from_counts(250, 1000);
  CHECK(r.estimate == 0.25);
  CHECK(r.std_error == doctest::Approx(std::sqrt(0.25 * 0.75 / 1000)));
  CHECK(r.ci95_low <= r.estimate);
  CHECK(r.ci95_high >= r.estimate);

  const auto none = EstimatorResult::from_counts(0, 1000);
  CHECK(none.estimate == 0.0);
  CHECK(none.ci95_low == 0.0);
  CHECK(none.ci95_high == doctest::Approx(0.003));
  const auto all = EstimatorResult::from_counts(1000, 1000);
  CHECK(all.ci95_low == doctest::Approx(0.997));
  CHECK(all.ci95_high == 1.0);

  CHECK_THROWS_AS(EstimatorResult::from_counts(5, 4), std::invalid_argument);
  CHECK_THROWS_AS(EstimatorResult::from_counts(0, 0), std::invalid_argument);
}

TEST_CASE("estimates are reproducible and independent of scheduling") {
  const auto config = make(4, 3, 2, 10.0, 5.0, 1.0);
  const std::uint64_t n = 3 * kTrialsPerBlock + 123;  // partial last block
  for (Scheme s : {Scheme::TasAlamouti, Scheme::SingleTas}) {
    const auto a = estimate_outage(config, s, n, 17);
    const auto b = estimate_outage(config, s, n, 17);
    CHECK(a.n_events == b.n_events);
    CHECK(a.estimate == b.estimate);
    CHECK(a.n_events == serial_outage_count(config, s, n, 17));
  }
  auto zero = config;
  zero.rate_rs = 0.0;
  CHECK(estimate_outage(zero, Scheme::TasAlamouti, n, 4).n_events ==
        serial_outage_count(zero, Scheme::TasAlamouti, n, 4));
  CHECK(estimate_outage(config, Scheme::TasAlamouti, n, 17).n_events !=
        estimate_outage(config, Scheme::TasAlamouti, n, 18).n_events);
}

TEST_CASE("batch estimates match one-point estimates") {
  const auto config = make(3, 2, 2, 0.0, 0.0, 0.0);
  std::vector<OperatingPoint> points;
  for (double gb : {0.0, 5.0, 10.0}) {
    points.push_back({db_to_linear(gb), db_to_linear(3.0), 1.0});
  }
  const auto batch = estimate_outage_batch(config, Scheme::TasAlamouti, points, 100'000, 8);
  REQUIRE(batch.size() == 3);
  for (std::size_t i = 0; i < points.size(); ++i) {
    auto c = config;
    c.gamma_bar_b = points[i].gamma_bar_b;
    c.gamma_bar_e = points[i].gamma_bar_e;
    c.rate_rs = points[i].rate_rs;
    CHECK(batch[i].n_events == estimate_outage(c, Scheme::TasAlamouti, 100'000, 8).n_events);
  }
  CHECK(batch[0].estimate >= batch[1].estimate);
  CHECK(batch[1].estimate >= batch[2].estimate);
}

TEST_CASE("non-zero secrecy is the exact complement of outage at zero rate") {
  auto config = make(3, 2, 2, 5.0, 5.0, 1.5);
  for (Scheme s : {Scheme::TasAlamouti, Scheme::SingleTas}) {
    const auto nz = estimate_nonzero_secrecy(config, s, 200'000, 99);
    auto zero = config;
    zero.rate_rs = 0.0;
    const auto out = estimate_outage(zero, s, 200'000, 99);
    CHECK(nz.n_events + out.n_events == 200'000u);
    CHECK(nz.estimate + out.estimate == 1.0);
  }
}

TEST_CASE("symmetric main and eavesdropper channels give one half") {
  const auto config = make(2, 2, 2, 5.0, 5.0, 0.0);
  const auto r = estimate_nonzero_secrecy(config, Scheme::TasAlamouti, 1'000'000, 3);
  CHECK(std::abs(r.estimate - 0.5) <= 4.0 * r.std_error);
}

TEST_CASE("degenerate and favourable regimes") {
  SUBCASE("vanishing eavesdropper") {
    const auto config = make(3, 2, 2, 10.0, -80.0, 0.0);
    const auto r = estimate_outage(config, Scheme::TasAlamouti, 100'000, 1);
    CHECK(r.estimate < 1e-3);
  }
  SUBCASE("secrecy survives a stronger eavesdropper") {
    const auto config = make(4, 3, 2, -5.0, 5.0, 0.0);
    const auto r = estimate_nonzero_secrecy(config, Scheme::TasAlamouti, 100'000, 1);
    CHECK(r.estimate > 0.0);
  }
  SUBCASE("TAS-Alamouti needs two antennas") {
    const auto config = make(1, 2, 2, 5.0, 5.0, 0.0);
    CHECK_THROWS_AS(estimate_outage(config, Scheme::TasAlamouti, 10, 1), std::invalid_argument);
    CHECK_NOTHROW(estimate_outage(config, Scheme::SingleTas, 10, 1));
  }
  CHECK_THROWS_AS(estimate_outage(make(2, 1, 1, 0, 0, 0), Scheme::TasAlamouti, 0, 1),
                  std::invalid_argument);
}

TEST_CASE("schemes are alike near the 10 dB crossover") {
  const auto config = make(3, 3, 2, 10.0, 5.0, 1.0);
  const auto a = estimate_outage(config, Scheme::TasAlamouti, 1'000'000, 12);
  const auto b = estimate_outage(config, Scheme::SingleTas, 1'000'000, 12);
  CHECK(a.ci95_low <= b.ci95_high);
  CHECK(b.ci95_low <= a.ci95_high);
}

TEST_CASE("standard error scales with the trial count") {
  const auto config = make(3, 2, 2, 5.0, 0.0, 1.0);
  const auto a = estimate_outage(config, Scheme::TasAlamouti, 200'000, 5);
  const auto b = estimate_outage(config, Scheme::TasAlamouti, 400'000, 5);
  CHECK(a.std_error / b.std_error == doctest::Approx(std::sqrt(2.0)).epsilon(0.05));
}

TEST_CASE("statistical monotonicity on a fixed seed") {
  const std::uint64_t n = 200'000;
  auto p = [&](const SystemConfig& c) {
    return estimate_outage(c, Scheme::TasAlamouti, n, 77);
  };
  auto overlaps_or_ordered = [](const EstimatorResult& lower, const EstimatorResult& higher) {
    return lower.estimate <= higher.estimate || lower.ci95_low <= higher.ci95_high;
  };
  const auto base = p(make(3, 2, 2, 10.0, 5.0, 1.0));
  CHECK(overlaps_or_ordered(p(make(3, 2, 2, 15.0, 5.0, 1.0)), base));
  CHECK(overlaps_or_ordered(base, p(make(3, 2, 2, 10.0, 5.0, 2.0))));
  CHECK(overlaps_or_ordered(base, p(make(3, 2, 2, 10.0, 8.0, 1.0))));
  CHECK(overlaps_or_ordered(base, p(make(3, 2, 3, 10.0, 5.0, 1.0))));
}

TEST_CASE("empirical outage capacity") {
  const auto config = make(4, 2, 1, 20.0, 0.0, 0.0);
  const auto c = estimate_eps_outage_capacity(config, Scheme::TasAlamouti, 0.05, 200'000, 2);
  CHECK(c.value > 0.0);
  CHECK(c.ci95_low <= c.value);
  CHECK(c.value <= c.ci95_high);
  // Empirical outage at that rate is within the target.
  auto at = config;
  at.rate_rs = c.value;
  const auto out = estimate_outage(at, Scheme::TasAlamouti, 200'000, 2);
  CHECK(out.estimate <= 0.05);
  CHECK_THROWS_AS(estimate_eps_outage_capacity(config, Scheme::TasAlamouti, 1.0, 10, 1),
                  std::invalid_argument);
}

TEST_CASE("paired table agrees with direct estimates") {
  const auto config = make(3, 3, 2, 0.0, 5.0, 1.0);
  const std::uint64_t n = 100'000;
  const PairedOutageTable table(config, Scheme::TasAlamouti, Scheme::SingleTas, n, 6);
  CHECK(table.n_trials() == n);
  for (double gb_db : {0.0, 8.0, 14.0}) {
    const auto d = table.at(db_to_linear(gb_db));
    auto c = config;
    c.gamma_bar_b = db_to_linear(gb_db);
    const auto a = estimate_outage(c, Scheme::TasAlamouti, n, 6);
    const auto b = estimate_outage(c, Scheme::SingleTas, n, 6);
    // Thresholds are algebraically identical to the event; allow a handful of
    // boundary roundings.
    CHECK(std::abs(d.p_a - a.estimate) * n <= 2.0);
    CHECK(std::abs(d.p_b - b.estimate) * n <= 2.0);
    CHECK(d.diff == doctest::Approx(d.p_a - d.p_b));
    CHECK(d.std_error >= 0.0);
    // Pairing removes most of the variance.
    CHECK(d.std_error < std::hypot(a.std_error, b.std_error));
  }
}
