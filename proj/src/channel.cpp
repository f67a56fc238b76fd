// SPDX-License-Identifier: Apache-2.0

#include "wiretap/channel.hpp"

#include <stdexcept>
#include <string>

namespace wiretap {

namespace {

void fill_gaussian(Eigen::MatrixXcd& m, RandomStream& stream) {
  // Column-major fill keeps the draw order independent of the dimensions of
  // the other matrix.
  for (Eigen::Index c = 0; c < m.cols(); ++c) {
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
      m(r, c) = stream.complex_normal();
    }
  }
}

}  // namespace

ChannelRealization draw_channel(const SystemConfig& config,
                                RandomStream& stream) {
  config.validate();
  ChannelRealization ch{Eigen::MatrixXcd(config.n_bob, config.n_alice),
                        Eigen::MatrixXcd(config.n_eve, config.n_alice)};
  redraw_channel(ch, stream);
  return ch;
}

void redraw_channel(ChannelRealization& channel, RandomStream& stream) {
  fill_gaussian(channel.f_matrix, stream);
  fill_gaussian(channel.g_matrix, stream);
}

std::vector<double> column_norms(const Eigen::MatrixXcd& matrix) {
  std::vector<double> out(static_cast<std::size_t>(matrix.cols()));
  column_norms(matrix, out);
  return out;
}

void column_norms(const Eigen::MatrixXcd& matrix, std::span<double> out) {
  if (matrix.size() == 0) {
    throw std::invalid_argument("column_norms: empty matrix");
  }
  if (out.size() != static_cast<std::size_t>(matrix.cols())) {
    throw std::invalid_argument("column_norms: output size mismatch");
  }
  for (Eigen::Index c = 0; c < matrix.cols(); ++c) {
    out[static_cast<std::size_t>(c)] = matrix.col(c).squaredNorm();
  }
}

AntennaSelection select_antennas(std::span<const double> norms, int count) {
  if (count != 1 && count != 2) {
    throw std::invalid_argument("select_antennas: count must be 1 or 2");
  }
  if (norms.size() < static_cast<std::size_t>(count)) {
    throw std::invalid_argument("select_antennas: " +
                                std::to_string(norms.size()) +
                                " antennas, need " + std::to_string(count));
  }
  // Strict comparisons keep the lowest index on ties.
  int best = 0;
  int second = -1;
  for (int a = 1; a < static_cast<int>(norms.size()); ++a) {
    if (norms[a] > norms[best]) {
      second = best;
      best = a;
    } else if (second < 0 || norms[a] > norms[second]) {
      second = a;
    }
  }
  AntennaSelection sel{best, std::nullopt};
  if (count == 2) sel.alpha2 = second;
  return sel;
}

double snr_tas_alamouti(double norm1, double norm2, double gamma_bar) {
  if (norm1 < 0.0 || norm2 < 0.0 || gamma_bar < 0.0) {
    throw std::invalid_argument("snr_tas_alamouti: negative input");
  }
  return 0.5 * (norm1 + norm2) * gamma_bar;
}

double snr_single_tas(double norm1, double gamma_bar) {
  if (norm1 < 0.0 || gamma_bar < 0.0) {
    throw std::invalid_argument("snr_single_tas: negative input");
  }
  return norm1 * gamma_bar;
}

SnrSample instantaneous_snr(const ChannelRealization& channel,
                            const SystemConfig& config, Scheme scheme) {
  const auto bob = column_norms(channel.f_matrix);
  const auto sel = select_antennas(bob, selected_antennas(scheme));
  const auto& g = channel.g_matrix;
  if (scheme == Scheme::TasAlamouti) {
    const int a2 = *sel.alpha2;
    return {snr_tas_alamouti(bob[sel.alpha1], bob[a2], config.gamma_bar_b),
            snr_tas_alamouti(g.col(sel.alpha1).squaredNorm(),
                             g.col(a2).squaredNorm(), config.gamma_bar_e)};
  }
  return {snr_single_tas(bob[sel.alpha1], config.gamma_bar_b),
          snr_single_tas(g.col(sel.alpha1).squaredNorm(), config.gamma_bar_e)};
}

}  // namespace wiretap
