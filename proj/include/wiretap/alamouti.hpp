// SPDX-License-Identifier: Apache-2.0
//
// Signal-level Alamouti transmission over the two selected antennas followed
// by space-time combining and MRC at an N-antenna receiver. Used to check the
// closed-form SNR expression against the actual signal processing.

#pragma once

#include <Eigen/Dense>

#include <array>
#include <complex>
#include <cstddef>

#include "wiretap/random_stream.hpp"

namespace wiretap {

/// One Alamouti codeword as seen by the receiver.
struct AlamoutiFrame {
  std::array<std::complex<double>, 2> symbols;  ///< x1, x2 as transmitted
  double noise_variance = 1.0;                  ///< per receive antenna
  std::array<Eigen::VectorXcd, 2> received;     ///< y(1), y(2)
};

/// Slot 1 sends (x1, x2), slot 2 sends (-conj(x2), conj(x1)).
AlamoutiFrame alamouti_transmit(const Eigen::VectorXcd& f1,
                                const Eigen::VectorXcd& f2,
                                std::complex<double> x1,
                                std::complex<double> x2,
                                const Eigen::VectorXcd& noise1,
                                const Eigen::VectorXcd& noise2,
                                double noise_variance);

/// Linear combiner outputs (x1_hat, x2_hat); each equals
/// (|f1|^2 + |f2|^2) * x + noise, with no cross-symbol interference.
std::array<std::complex<double>, 2> alamouti_combine(
    const Eigen::VectorXcd& f1, const Eigen::VectorXcd& f2,
    const AlamoutiFrame& frame);

struct AlamoutiSnr {
  double snr_x1 = 0.0;
  double snr_x2 = 0.0;
  std::size_t n_draws = 0;
};

/// Empirical post-combining SNR per symbol over \p n_draws noise draws.
///
/// Each symbol carries total_power / 2; noise entries are CN(0, noise_variance).
/// Symbols are unit-modulus QPSK scaled to that power.
AlamoutiSnr alamouti_roundtrip(const Eigen::VectorXcd& f1,
                               const Eigen::VectorXcd& f2,
                               double total_power, double noise_variance,
                               std::size_t n_draws, RandomStream& stream);

}  // namespace wiretap
