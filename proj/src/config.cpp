// SPDX-License-Identifier: Apache-2.0

#include "wiretap/config.hpp"

#include <cmath>
#include <string>

namespace wiretap {

std::string_view to_string(Scheme scheme) {
  switch (scheme) {
    case Scheme::TasAlamouti:
      return "tas-alamouti";
    case Scheme::SingleTas:
      return "single-tas";
  }
  return "unknown";
}

Scheme parse_scheme(std::string_view text) {
  if (text == "tas-alamouti" || text == "alamouti") return Scheme::TasAlamouti;
  if (text == "single-tas" || text == "single") return Scheme::SingleTas;
  throw std::invalid_argument("unknown scheme '" + std::string(text) + "'");
}

void SystemConfig::validate() const {
  if (n_alice < 1 || n_bob < 1 || n_eve < 1) {
    throw std::invalid_argument("antenna counts must be positive");
  }
  if (!(gamma_bar_b > 0.0) || !(gamma_bar_e > 0.0) ||
      !std::isfinite(gamma_bar_b) || !std::isfinite(gamma_bar_e)) {
    throw std::invalid_argument("average SNRs must be positive and finite");
  }
  if (!(rate_rs >= 0.0) || !std::isfinite(rate_rs)) {
    throw std::invalid_argument("secrecy rate must be nonnegative and finite");
  }
}

void SystemConfig::validate_for(Scheme scheme) const {
  validate();
  if (n_alice < selected_antennas(scheme)) {
    throw std::invalid_argument(std::string(to_string(scheme)) + " needs at least " +
                                std::to_string(selected_antennas(scheme)) +
                                " transmit antennas, got " +
                                std::to_string(n_alice));
  }
}

}  // namespace wiretap
