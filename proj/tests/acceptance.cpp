// SPDX-License-Identifier: Apache-2.0
//
// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails. Takes a few minutes; the Monte Carlo parts dominate.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <functional>
#include <map>
#include <random>
#include <string>
#include <tuple>

#include "wiretap/alamouti.hpp"
#include "wiretap/closed_form.hpp"
#include "wiretap/experiments.hpp"
#include "wiretap/quadrature.hpp"

using namespace wiretap;

namespace {

constexpr std::uint64_t kCrossoverTrials = 10'000'000;
constexpr std::uint64_t kValidationTrials = 1'000'000;

SystemConfig make(int na, int nb, int ne, double gb_db, double ge_db, double rate = 0.0) {
  PointSpec p;
  p.n_alice = na;
  p.n_bob = nb;
  p.n_eve = ne;
  p.gamma_b_db = gb_db;
  p.gamma_e_db = ge_db;
  p.rate_rs = rate;
  return p.config();
}

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* format, auto... args) {
  char buffer[512];
  std::snprintf(buffer, sizeof buffer, format, args...);
  return buffer;
}

/// P_out crossovers between the schemes, computed once per antenna triple.
class CrossoverCache {
 public:
  const CrossoverResult& outage(int na, int nb, int ne) {
    const auto key = std::make_tuple(na, nb, ne, 5.0, 0);
    auto it = cache_.find(key);
    if (it != cache_.end()) return it->second;
    CrossoverSpec spec;
    spec.point.n_alice = na;
    spec.point.n_bob = nb;
    spec.point.n_eve = ne;
    spec.point.gamma_e_db = 5.0;
    spec.point.rate_rs = 1.0;
    spec.lo_db = 0.0;
    spec.hi_db = 20.0;
    spec.monte_carlo = {kCrossoverTrials, 1};
    return cache_.emplace(key, find_crossover(spec)).first->second;
  }

  const CrossoverResult& nonzero(int na, int nb, int ne, double ge_db) {
    const auto key = std::make_tuple(na, nb, ne, ge_db, 1);
    auto it = cache_.find(key);
    if (it != cache_.end()) return it->second;
    CrossoverSpec spec;
    spec.point.n_alice = na;
    spec.point.n_bob = nb;
    spec.point.n_eve = ne;
    spec.point.gamma_e_db = ge_db;
    spec.metric = Metric::NonzeroSecrecy;
    spec.lo_db = ge_db - 10.0;
    spec.hi_db = ge_db + 10.0;
    spec.monte_carlo = {kCrossoverTrials, 1};
    return cache_.emplace(key, find_crossover(spec)).first->second;
  }

 private:
  std::map<std::tuple<int, int, int, double, int>, CrossoverResult> cache_;
};

std::string describe(const CrossoverResult& r) {
  if (!r.found) return "none";
  return fmt("%.3f+-%.3f", r.location_db, r.half_width_db);
}

Outcome oracle_agreement() {
  const auto report = run_validation(ValidationGrid::by_name("default"),
                                     {kValidationTrials, 1});
  double max_quad = 0.0;
  for (const auto& v : report.points) {
    if (v.closed_form && v.quadrature) {
      max_quad = std::max(max_quad, std::abs(*v.closed_form - *v.quadrature));
    }
  }
  const double agree = report.evaluated == 0
                           ? 0.0
                           : static_cast<double>(report.evaluated - report.mc_failures) /
                                 static_cast<double>(report.evaluated);
  const bool pass = report.passed() && report.flagged == 0 &&
                    report.evaluated == report.points.size();
  return {pass, fmt("%zu points, max |cf-quad| %.2e (limit 1e-6, %zu over), "
                    "MC within 4 stderr %.2f%% (need 99%%), %zu flagged",
                    report.points.size(), max_quad, report.quadrature_failures,
                    100.0 * agree, report.flagged)};
}

Outcome fig2_crossover(CrossoverCache& cache) {
  const auto& three = cache.outage(3, 3, 2);
  const auto& four = cache.outage(4, 3, 2);
  const bool in_range = three.found && three.location_db >= 8.5 && three.location_db <= 11.5;
  const bool decreasing = three.found && four.found && four.location_db < three.location_db;
  return {in_range && decreasing,
          fmt("N_A=3 at %s dB (need [8.5, 11.5]), N_A=4 at %s dB (need lower)",
              describe(three).c_str(), describe(four).c_str())};
}

Outcome antenna_trends(CrossoverCache& cache) {
  bool pass = true;
  std::string detail = "P_out at 10 dB by N_B:";
  double prev = 2.0;
  for (int nb = 1; nb <= 4; ++nb) {
    const double p = closed_form_outage(make(4, nb, 2, 10.0, 5.0), 1.0);
    detail += fmt(" %.4g", p);
    pass = pass && p < prev;
    prev = p;
  }
  detail += "; by N_E:";
  prev = -1.0;
  for (int ne = 1; ne <= 4; ++ne) {
    const double p = closed_form_outage(make(4, 3, ne, 10.0, 5.0), 1.0);
    detail += fmt(" %.4g", p);
    pass = pass && p > prev;
    prev = p;
  }
  detail += "; crossover by N_B:";
  double last = 1e9;
  for (int nb = 2; nb <= 4; ++nb) {
    const auto& r = cache.outage(4, nb, 2);
    detail += " " + describe(r);
    pass = pass && r.found && r.location_db < last;
    last = r.location_db;
  }
  detail += "; by N_E:";
  last = -1e9;
  for (int ne = 1; ne <= 3; ++ne) {
    const auto& r = cache.outage(4, 3, ne);
    detail += " " + describe(r);
    pass = pass && r.found && r.location_db > last;
    last = r.location_db;
  }
  return {pass, detail};
}

Outcome nonzero_crossover(CrossoverCache& cache) {
  bool pass = true;
  std::string detail;
  for (double ge : {0.0, 5.0}) {
    const auto& r = cache.nonzero(4, 3, 2, ge);
    const bool near = r.found && std::abs(r.location_db - ge) <= 2.0;
    const double weak = prob_nonzero_secrecy(make(4, 3, 2, ge - 10.0, ge));
    pass = pass && near && weak > 0.0;
    detail += fmt("gamma_E=%g dB: crossover %s dB, Pr(C_s>0) at gamma_B-10 dB %.4g; ", ge,
                  describe(r).c_str(), weak);
  }
  detail.resize(detail.size() - 2);
  return {pass, detail};
}

Outcome capacity_trends() {
  double c[4][9] = {};
  for (int ne = 1; ne <= 3; ++ne) {
    for (int na = 2; na <= 8; ++na) {
      c[ne][na] = eps_outage_capacity(make(na, 2, ne, 20.0, 0.0), 0.01);
    }
  }
  bool pass = true;
  for (int ne = 1; ne <= 3; ++ne)
    for (int na = 3; na <= 8; ++na) pass = pass && c[ne][na] > c[ne][na - 1];
  for (int na = 2; na <= 8; ++na)
    for (int ne = 2; ne <= 3; ++ne) pass = pass && c[ne][na] < c[ne - 1][na];
  return {pass, fmt("C_out N_E=1: %.4f..%.4f, N_E=2: %.4f..%.4f, N_E=3: %.4f..%.4f (N_A 2..8)",
                    c[1][2], c[1][8], c[2][2], c[2][8], c[3][2], c[3][8])};
}

Outcome identities() {
  double duality = 0.0;
  double empty = 0.0;
  for (int na : {2, 3, 4, 6})
    for (int nb : {1, 2, 3})
      for (int ne : {1, 2, 3})
        for (double gb : {0.0, 5.0, 10.0, 15.0, 20.0})
          for (double ge : {0.0, 5.0}) {
            const auto c = make(na, nb, ne, gb, ge);
            duality = std::max(duality,
                               std::abs(prob_nonzero_secrecy(c) + closed_form_outage(c, 0.0) - 1.0));
            if (na == 2) {
              for (double r : {0.0, 1.0, 2.0}) {
                empty = std::max({empty, std::abs(psi3(c, r).value), std::abs(psi4(c, r).value)});
              }
            }
          }

  double sup = 0.0;
  for (int shape : {1, 2, 3}) {
    const auto top = density_sum_two_largest(2, shape, 1.0);
    const auto erlang = gamma_branch_density(2 * shape, 1.0);
    for (double x = 0.0; x <= 30.0; x += 0.01) {
      sup = std::max(sup, std::abs(top.pdf(x) - erlang.pdf(x)));
    }
  }

  RandomStream stream(2);
  Eigen::VectorXcd f1(3);
  Eigen::VectorXcd f2(3);
  for (int i = 0; i < 3; ++i) {
    f1(i) = stream.complex_normal();
    f2(i) = stream.complex_normal();
  }
  const auto rt = alamouti_roundtrip(f1, f2, 4.0, 1.0, 100'000, stream);
  const double want = snr_tas_alamouti(f1.squaredNorm(), f2.squaredNorm(), 4.0);
  const double snr_err = std::max(std::abs(rt.snr_x1 / want - 1.0), std::abs(rt.snr_x2 / want - 1.0));

  const bool pass = duality <= 1e-12 && empty == 0.0 && sup <= 1e-8 && snr_err <= 0.02;
  return {pass, fmt("duality %.2e (1e-12), Psi3/Psi4 at N_A=2 %.1e (0), top-2-of-2 vs "
                    "Erlang %.2e (1e-8), roundtrip SNR %.2f%% (2%%)",
                    duality, empty, sup, 100.0 * snr_err)};
}

Outcome bisection_contract() {
  std::mt19937_64 rng(2024);
  std::uniform_int_distribution<int> na_dist(2, 6);
  std::uniform_int_distribution<int> n_dist(1, 3);
  std::uniform_real_distribution<double> gb_dist(0.0, 25.0);
  std::uniform_real_distribution<double> ge_dist(-5.0, 10.0);
  std::uniform_real_distribution<double> log_eps(std::log(1e-3), std::log(0.5));
  int interior = 0;
  int infeasible = 0;
  int violations = 0;
  for (int i = 0; i < 20; ++i) {
    const int na = na_dist(rng);
    const int nb = n_dist(rng);
    const int ne = n_dist(rng);
    const double gb = gb_dist(rng);
    const double ge = ge_dist(rng);
    const auto config = make(na, nb, ne, gb, ge);
    const double eps = std::exp(log_eps(rng));
    const double c = eps_outage_capacity(config, eps);
    if (closed_form_outage(config, 0.0) > eps) {
      // No rate meets the target; the capacity is defined as 0.
      ++infeasible;
      if (c != 0.0) ++violations;
      continue;
    }
    if (closed_form_outage(config, c) > eps) ++violations;
    if (c > 0.0) {
      ++interior;
      if (!(closed_form_outage(config, c + 1e-5) > eps)) ++violations;
    }
  }
  return {violations == 0,
          fmt("20 pairs, %d with C_out > 0, %d infeasible (P_out(0) > eps, C_out = 0), "
              "%d contract violations",
              interior, infeasible, violations)};
}

}  // namespace

int main() {
  std::setvbuf(stdout, nullptr, _IOLBF, 0);
  CrossoverCache cache;
  const std::pair<const char*, std::function<Outcome()>> criteria[] = {
      {"three-way oracle agreement", oracle_agreement},
      {"fig2 crossover", [&] { return fig2_crossover(cache); }},
      {"N_B / N_E trends", [&] { return antenna_trends(cache); }},
      {"non-zero secrecy crossover", [&] { return nonzero_crossover(cache); }},
      {"outage capacity trends", capacity_trends},
      {"identities", identities},
      {"bisection contract", bisection_contract},
  };
  int failed = 0;
  int index = 0;
  for (const auto& [name, run] : criteria) {
    ++index;
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = run();
    } catch (const std::exception& e) {
      o = {false, std::string("error: ") + e.what()};
    }
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    failed += !o.pass;
    std::printf("criterion %d %s: %s -- %s (%.1f s)\n", index, o.pass ? "PASS" : "FAIL", name,
                o.detail.c_str(), seconds);
  }
  return failed == 0 ? 0 : 1;
}
