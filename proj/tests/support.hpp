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
//
// Test-only oracles. Everything here recomputes expected values through
// plain loops over std::vector<std::complex<double>>, independent of the
// library's Eigen-based evolution path, so the two routes check each other.

#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <random>
#include <vector>

#include "qgen/generator.hpp"
#include "qgen/types.hpp"

namespace oracle {

using Cx = std::complex<double>;

// || M_{x_n} U ... M_{x_1} U psi ||^2 by naive dense loops.
inline double forward_probability(const qgen::QuantumGenerator& qg, std::uint64_t index,
                                  int length) {
  const int k = qg.dimension();
  std::vector<Cx> v(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) v[static_cast<std::size_t>(i)] = qg.initial[i];
  std::vector<Cx> next(static_cast<std::size_t>(k));
  for (int t = 1; t <= length; ++t) {
    const int symbol = qgen::bit_at(index, length, t);
    for (int r = 0; r < k; ++r) {
      Cx acc{0.0, 0.0};
      for (int c = 0; c < k; ++c) acc += qg.unitary(r, c) * v[static_cast<std::size_t>(c)];
      next[static_cast<std::size_t>(r)] =
          qg.measurement[static_cast<std::size_t>(r)] == symbol ? acc : Cx{0.0, 0.0};
    }
    v.swap(next);
  }
  double mass = 0.0;
  for (const Cx& a : v) mass += std::norm(a);
  return mass;
}

// Full table by calling the naive forward probability on every string.
inline qgen::OutputDistribution full_table(const qgen::QuantumGenerator& qg, int n) {
  qgen::OutputDistribution dist;
  dist.length = n;
  dist.probs.resize(Eigen::Index{1} << n);
  for (std::uint64_t x = 0; x < dist.size(); ++x) {
    dist.probs[static_cast<Eigen::Index>(x)] = forward_probability(qg, x, n);
  }
  return dist;
}

// Perturbed table computed directly from a base table: conditionals come
// from explicit suffix summations, corrections flip symbols on exactly-zero
// conditionals, and each stepwise conditional is clamped into
// [eps1, 1-eps1].
inline double perturbed_probability(const qgen::OutputDistribution& base, std::uint64_t x,
                                    double eps1) {
  const int n = base.length;
  auto mass_of_prefix = [&](std::uint64_t prefix, int len) {
    const int suffix = n - len;
    double mass = 0.0;
    for (std::uint64_t rest = 0; rest < (std::uint64_t{1} << suffix); ++rest) {
      mass += base.prob((prefix << suffix) | rest);
    }
    return mass;
  };
  double out = 1.0;
  std::uint64_t corrected = 0;
  for (int i = 1; i <= n; ++i) {
    const int symbol = qgen::bit_at(x, n, i);
    const double parent = mass_of_prefix(corrected, i - 1);
    const double child = mass_of_prefix((corrected << 1) | static_cast<std::uint64_t>(symbol), i);
    const double q = child / parent;
    out *= std::min(std::max(q, eps1), 1.0 - eps1);
    corrected = (corrected << 1) |
                static_cast<std::uint64_t>(child == 0.0 ? symbol ^ 1 : symbol);
  }
  return out;
}

// Upper regularized incomplete gamma Q(a, x): series for x < a+1, Lentz
// continued fraction otherwise. Used for chi-square tail probabilities.
inline double regularized_gamma_q(double a, double x) {
  if (x < 0.0 || a <= 0.0) return 1.0;
  if (x == 0.0) return 1.0;
  const double log_gamma = std::lgamma(a);
  if (x < a + 1.0) {
    double term = 1.0 / a;
    double sum = term;
    double ap = a;
    for (int i = 0; i < 500; ++i) {
      ap += 1.0;
      term *= x / ap;
      sum += term;
      if (std::abs(term) < std::abs(sum) * 1e-15) break;
    }
    const double p = sum * std::exp(-x + a * std::log(x) - log_gamma);
    return 1.0 - p;
  }
  double b = x + 1.0 - a;
  double c = 1e300;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i < 500; ++i) {
    const double an = -i * (i - a);
    b += 2.0;
    d = an * d + b;
    if (std::abs(d) < 1e-300) d = 1e-300;
    c = b + an / c;
    if (std::abs(c) < 1e-300) c = 1e-300;
    d = 1.0 / d;
    const double delta = d * c;
    h *= delta;
    if (std::abs(delta - 1.0) < 1e-15) break;
  }
  return std::exp(-x + a * std::log(x) - log_gamma) * h;
}

// Chi-square goodness-of-fit p-value of observed counts against expected
// probabilities; zero-probability cells must hold zero counts.
inline double chi_square_p_value(const std::vector<std::uint64_t>& counts,
                                 const qgen::OutputDistribution& expected,
                                 std::uint64_t total) {
  double stat = 0.0;
  int cells = 0;
  for (std::uint64_t x = 0; x < expected.size(); ++x) {
    const double p = expected.prob(x);
    const double observed = static_cast<double>(counts[static_cast<std::size_t>(x)]);
    if (p <= 0.0) {
      if (observed > 0.0) return 0.0;
      continue;
    }
    const double mean = p * static_cast<double>(total);
    stat += (observed - mean) * (observed - mean) / mean;
    ++cells;
  }
  if (cells <= 1) return 1.0;
  return regularized_gamma_q(0.5 * (cells - 1), 0.5 * stat);
}

// Haar-ish random unitary via QR of a Gaussian complex matrix.
inline qgen::CMatrix random_unitary(int k, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  qgen::CMatrix a(k, k);
  for (int r = 0; r < k; ++r) {
    for (int c = 0; c < k; ++c) a(r, c) = qgen::Complex{gauss(rng), gauss(rng)};
  }
  Eigen::HouseholderQR<qgen::CMatrix> qr(a);
  return qr.householderQ();
}

inline qgen::StateVector random_state(int k, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  qgen::CVector v(k);
  for (int i = 0; i < k; ++i) v[i] = qgen::Complex{gauss(rng), gauss(rng)};
  return v / v.norm();
}

inline qgen::MeasurementPartition random_partition(int k, std::mt19937_64& rng) {
  qgen::MeasurementPartition partition(static_cast<std::size_t>(k));
  while (true) {
    bool seen[2] = {false, false};
    for (int i = 0; i < k; ++i) {
      partition[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>(rng() & 1u);
      seen[partition[static_cast<std::size_t>(i)]] = true;
    }
    if (seen[0] && seen[1]) return partition;
  }
}

inline qgen::QuantumGenerator random_generator(int k, std::mt19937_64& rng) {
  return {random_state(k, rng), random_unitary(k, rng), random_partition(k, rng)};
}

// Random point on the probability simplex over 2^n strings.
inline qgen::OutputDistribution random_distribution(int n, std::mt19937_64& rng) {
  qgen::OutputDistribution dist;
  dist.length = n;
  dist.probs.resize(Eigen::Index{1} << n);
  std::exponential_distribution<double> expo(1.0);
  double total = 0.0;
  for (Eigen::Index i = 0; i < dist.probs.size(); ++i) {
    dist.probs[i] = expo(rng);
    total += dist.probs[i];
  }
  dist.probs /= total;
  return dist;
}

// Inverse-CDF sampling from an explicit table.
inline std::uint64_t sample_from_table(const qgen::OutputDistribution& dist,
                                       std::mt19937_64& rng) {
  const double u = qgen::next_unit(rng);
  double acc = 0.0;
  for (std::uint64_t x = 0; x + 1 < dist.size(); ++x) {
    acc += dist.prob(x);
    if (u < acc) return x;
  }
  return dist.size() - 1;
}

}  // namespace oracle
