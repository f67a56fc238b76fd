// SPDX-License-Identifier: Apache-2.0

#include "wiretap/random_stream.hpp"

#include <cmath>

namespace wiretap {

namespace {

std::seed_seq make_seed_seq(std::uint64_t seed, std::uint64_t stream_id) {
  return std::seed_seq{static_cast<std::uint32_t>(seed),
                       static_cast<std::uint32_t>(seed >> 32),
                       static_cast<std::uint32_t>(stream_id),
                       static_cast<std::uint32_t>(stream_id >> 32)};
}

}  // namespace

RandomStream::RandomStream(std::uint64_t seed, std::uint64_t stream_id)
    : seed_(seed), stream_id_(stream_id) {
  auto seq = make_seed_seq(seed, stream_id);
  engine_.seed(seq);
}

std::complex<double> RandomStream::complex_normal(double variance) {
  const double sigma = std::sqrt(0.5 * variance);
  const double re = normal_(engine_);
  const double im = normal_(engine_);
  return {sigma * re, sigma * im};
}

double RandomStream::uniform() { return uniform_(engine_); }

}  // namespace wiretap
