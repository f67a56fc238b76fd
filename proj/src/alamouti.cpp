// SPDX-License-Identifier: Apache-2.0

#include "wiretap/alamouti.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace wiretap {

namespace {

void check_dims(const Eigen::VectorXcd& f1, const Eigen::VectorXcd& f2) {
  if (f1.size() == 0 || f1.size() != f2.size()) {
    throw std::invalid_argument("alamouti: channel vectors must be non-empty "
                                "and of equal length");
  }
}

}  // namespace

AlamoutiFrame alamouti_transmit(const Eigen::VectorXcd& f1,
                                const Eigen::VectorXcd& f2,
                                std::complex<double> x1,
                                std::complex<double> x2,
                                const Eigen::VectorXcd& noise1,
                                const Eigen::VectorXcd& noise2,
                                double noise_variance) {
  check_dims(f1, f2);
  if (noise1.size() != f1.size() || noise2.size() != f1.size()) {
    throw std::invalid_argument("alamouti: noise length differs from N_B");
  }
  AlamoutiFrame frame;
  frame.symbols = {x1, x2};
  frame.noise_variance = noise_variance;
  frame.received[0] = f1 * x1 + f2 * x2 + noise1;
  frame.received[1] = -f1 * std::conj(x2) + f2 * std::conj(x1) + noise2;
  return frame;
}

std::array<std::complex<double>, 2> alamouti_combine(
    const Eigen::VectorXcd& f1, const Eigen::VectorXcd& f2,
    const AlamoutiFrame& frame) {
  check_dims(f1, f2);
  const auto& y1 = frame.received[0];
  const auto& y2 = frame.received[1];
  if (y1.size() != f1.size() || y2.size() != f1.size()) {
    throw std::invalid_argument("alamouti: received block length differs from N_B");
  }
  // x1: f1^H y(1) + y(2)^H f2        x2: f2^H y(1) - y(2)^H f1
  const std::complex<double> x1_hat = f1.dot(y1) + std::conj(f2.dot(y2));
  const std::complex<double> x2_hat = f2.dot(y1) - std::conj(f1.dot(y2));
  return {x1_hat, x2_hat};
}

AlamoutiSnr alamouti_roundtrip(const Eigen::VectorXcd& f1,
                               const Eigen::VectorXcd& f2,
                               double total_power, double noise_variance,
                               std::size_t n_draws, RandomStream& stream) {
  check_dims(f1, f2);
  if (!(total_power > 0.0) || !(noise_variance > 0.0) || n_draws == 0) {
    throw std::invalid_argument("alamouti_roundtrip: power, noise variance and "
                                "draw count must be positive");
  }
  const double gain = f1.squaredNorm() + f2.squaredNorm();
  const double amplitude = std::sqrt(0.5 * total_power);
  const auto n = f1.size();

  Eigen::VectorXcd noise1(n);
  Eigen::VectorXcd noise2(n);
  double err1 = 0.0;
  double err2 = 0.0;
  for (std::size_t d = 0; d < n_draws; ++d) {
    auto qpsk = [&] {
      const double phase = std::numbers::pi / 4.0 +
                           std::numbers::pi / 2.0 *
                               std::floor(4.0 * stream.uniform());
      return std::polar(amplitude, phase);
    };
    const auto x1 = qpsk();
    const auto x2 = qpsk();
    for (Eigen::Index r = 0; r < n; ++r) noise1(r) = stream.complex_normal(noise_variance);
    for (Eigen::Index r = 0; r < n; ++r) noise2(r) = stream.complex_normal(noise_variance);

    const auto frame = alamouti_transmit(f1, f2, x1, x2, noise1, noise2, noise_variance);
    const auto [x1_hat, x2_hat] = alamouti_combine(f1, f2, frame);
    err1 += std::norm(x1_hat - gain * x1);
    err2 += std::norm(x2_hat - gain * x2);
  }
  const double signal = gain * gain * amplitude * amplitude;
  const double draws = static_cast<double>(n_draws);
  return {signal / (err1 / draws), signal / (err2 / draws), n_draws};
}

}  // namespace wiretap
