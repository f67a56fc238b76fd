// SPDX-License-Identifier: Apache-2.0
//
// System parameters shared by every evaluator.

#pragma once

#include <cmath>
#include <stdexcept>
#include <string>
#include <string_view>

namespace wiretap {

/// Transmission scheme at Alice.
enum class Scheme {
  TasAlamouti,  ///< two strongest antennas, Alamouti code, half power each
  SingleTas,    ///< strongest antenna only, full power
};

std::string_view to_string(Scheme scheme);
Scheme parse_scheme(std::string_view text);

/// Number of antennas a scheme selects at Alice.
constexpr int selected_antennas(Scheme scheme) {
  return scheme == Scheme::TasAlamouti ? 2 : 1;
}

/// Antenna counts and average SNRs of the MIMO wiretap channel.
///
/// SNRs are linear and per receive antenna; the ratio P_A / sigma^2 is folded
/// into them, so channel entries always have unit variance.
struct SystemConfig {
  int n_alice = 2;
  int n_bob = 1;
  int n_eve = 1;
  double gamma_bar_b = 1.0;
  double gamma_bar_e = 1.0;
  double rate_rs = 0.0;

  /// Throws std::invalid_argument on out-of-domain values.
  void validate() const;

  /// validate() plus the antenna requirement of \p scheme.
  void validate_for(Scheme scheme) const;
};

inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
inline double linear_to_db(double linear) { return 10.0 * std::log10(linear); }

/// Evaluator failed because the alternating sums lost too many digits.
class PrecisionExhausted : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An iterative numerical routine did not converge.
class NumericalFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace wiretap
