// SPDX-License-Identifier: Apache-2.0
//
// Quasi-static Rayleigh channel draws, transmit antenna selection and the
// instantaneous SNRs that follow from MRC at Bob and Eve.

#pragma once

#include <Eigen/Dense>

#include <optional>
#include <span>
#include <vector>

#include "wiretap/config.hpp"
#include "wiretap/random_stream.hpp"

namespace wiretap {

/// One fading block. Column alpha of each matrix is the channel vector from
/// Alice's antenna alpha.
struct ChannelRealization {
  Eigen::MatrixXcd f_matrix;  ///< n_bob x n_alice, main channel
  Eigen::MatrixXcd g_matrix;  ///< n_eve x n_alice, eavesdropper channel
};

struct AntennaSelection {
  int alpha1 = 0;
  std::optional<int> alpha2;
};

/// Instantaneous post-combining SNRs (linear).
struct SnrSample {
  double gamma_b = 0.0;
  double gamma_e = 0.0;
};

ChannelRealization draw_channel(const SystemConfig& config,
                                RandomStream& stream);

/// Redraws \p channel in place; its dimensions must already match \p config.
void redraw_channel(ChannelRealization& channel, RandomStream& stream);

/// Squared Euclidean norm of every column.
std::vector<double> column_norms(const Eigen::MatrixXcd& matrix);
void column_norms(const Eigen::MatrixXcd& matrix, std::span<double> out);

/// Strongest (count = 1) or two strongest (count = 2) entries of \p norms.
/// Ties go to the lowest index.
AntennaSelection select_antennas(std::span<const double> norms, int count);

/// (norm1 + norm2) * gamma_bar / 2: Alamouti splits the power over two
/// antennas. Inputs are squared column norms of a unit-variance channel.
double snr_tas_alamouti(double norm1, double norm2, double gamma_bar);

/// norm1 * gamma_bar: single antenna at full power.
double snr_single_tas(double norm1, double gamma_bar);

/// Selection driven by Bob's channel, with Eve combining over the same
/// transmit antennas.
SnrSample instantaneous_snr(const ChannelRealization& channel,
                            const SystemConfig& config, Scheme scheme);

}  // namespace wiretap
