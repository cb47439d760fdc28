// Copyright 2026 The qgen Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qgen/types.hpp"

#include <cmath>

namespace qgen {

std::string_view errc_name(Errc code) {
  switch (code) {
    case Errc::non_unitary: return "NonUnitary";
    case Errc::unnormalized_state: return "UnnormalizedState";
    case Errc::incomplete_partition: return "IncompletePartition";
    case Errc::dimension_mismatch: return "DimensionMismatch";
    case Errc::too_long: return "TooLong";
    case Errc::invalid_spec: return "InvalidSpec";
    case Errc::verification_failed: return "VerificationFailed";
    case Errc::zero_probability_path: return "ZeroProbabilityPath";
    case Errc::bad_wires: return "BadWires";
    case Errc::enumeration_too_large: return "EnumerationTooLarge";
    case Errc::bad_clamp: return "BadClamp";
    case Errc::underflow: return "Underflow";
    case Errc::empty_net: return "EmptyNet";
    case Errc::empty_samples: return "EmptySamples";
    case Errc::bad_eta: return "BadEta";
    case Errc::too_large: return "TooLarge";
    case Errc::io_error: return "IoError";
  }
  return "UnknownError";
}

void validate(const OutputDistribution& dist) {
  if (dist.length < 1 || dist.length > 62) {
    throw Error(Errc::too_long, "distribution length " + std::to_string(dist.length) +
                                    " outside [1, 62]");
  }
  if (static_cast<std::uint64_t>(dist.probs.size()) != dist.size()) {
    throw Error(Errc::dimension_mismatch,
                "table has " + std::to_string(dist.probs.size()) + " entries, expected 2^" +
                    std::to_string(dist.length));
  }
  for (Eigen::Index i = 0; i < dist.probs.size(); ++i) {
    const double p = dist.probs[i];
    if (!(p >= 0.0) || p > 1.0 + 1e-12) {
      throw Error(Errc::verification_failed,
                  "probability " + std::to_string(p) + " at index " + std::to_string(i) +
                      " outside [0, 1]");
    }
  }
  const double mass = dist.probs.sum();
  if (std::abs(mass - 1.0) > tol::distribution) {
    throw Error(Errc::verification_failed,
                "table mass " + std::to_string(mass) + " deviates from 1 beyond tolerance");
  }
}

double total_variation(const OutputDistribution& p, const OutputDistribution& q) {
  if (p.length != q.length) {
    throw Error(Errc::dimension_mismatch, "distributions have different lengths");
  }
  return 0.5 * (p.probs - q.probs).cwiseAbs().sum();
}

double linf_distance(const OutputDistribution& p, const OutputDistribution& q) {
  if (p.length != q.length) {
    throw Error(Errc::dimension_mismatch, "distributions have different lengths");
  }
  return (p.probs - q.probs).cwiseAbs().maxCoeff();
}

double marginal_one(const OutputDistribution& dist, int position) {
  if (position < 1 || position > dist.length) {
    throw Error(Errc::dimension_mismatch, "marginal position out of range");
  }
  double mass = 0.0;
  const std::uint64_t mask = std::uint64_t{1} << (dist.length - position);
  for (std::uint64_t x = 0; x < dist.size(); ++x) {
    if (x & mask) mass += dist.probs[static_cast<Eigen::Index>(x)];
  }
  return mass;
}

std::uint64_t bits_to_index(std::string_view bits) {
  std::uint64_t index = 0;
  for (char c : bits) {
    if (c != '0' && c != '1') {
      throw Error(Errc::io_error, "bitstring contains non-binary character");
    }
    index = (index << 1) | static_cast<std::uint64_t>(c - '0');
  }
  return index;
}

std::string index_to_bits(std::uint64_t index, int length) {
  std::string bits(static_cast<std::size_t>(length), '0');
  for (int t = 0; t < length; ++t) {
    if ((index >> (length - 1 - t)) & 1u) bits[static_cast<std::size_t>(t)] = '1';
  }
  return bits;
}

}  // namespace qgen
