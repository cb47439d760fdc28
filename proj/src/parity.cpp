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

#include "qgen/parity.hpp"

#include <cmath>
#include <string>

namespace qgen {

namespace {
constexpr double kInvSqrt2 = 0.70710678118654752440;
}

void validate(const ParitySpec& spec) {
  if (spec.n < 1) {
    throw Error(Errc::invalid_spec, "n must be at least 1");
  }
  if (spec.s.empty()) {
    throw Error(Errc::invalid_spec, "S must be nonempty");
  }
  if (*spec.s.begin() < 1 || *spec.s.rbegin() > spec.n) {
    throw Error(Errc::invalid_spec, "S must be a subset of {1.." + std::to_string(spec.n) + "}");
  }
  if (!(spec.eta > 0.0) || !(spec.eta < 0.5)) {
    throw Error(Errc::invalid_spec, "eta must lie strictly inside (0, 1/2)");
  }
}

int parity_of(const std::set<int>& s, std::uint64_t x, int n) {
  int parity = 0;
  for (int i : s) parity ^= bit_at(x, n, i);
  return parity;
}

QuantumGenerator build_parity_qg(const ParitySpec& spec) {
  validate(spec);
  const int n = spec.n;
  const int k = 4 * (n + 1);
  const int min_s = *spec.s.begin();

  QuantumGenerator qg;
  qg.unitary = CMatrix::Zero(k, k);
  const Complex half{kInvSqrt2, 0.0};
  const Complex half_i{0.0, kInvSqrt2};

  // Each column (j,k,l) holds exactly two nonzero entries in rows of
  // column index j+1 mod n+1; which rows depends on whether j+1 enters S,
  // opens S, or closes the block.
  for (int j = 0; j <= n; ++j) {
    for (int kb = 0; kb < 2; ++kb) {
      for (int lb = 0; lb < 2; ++lb) {
        const int col = to_linear({j, kb, lb});
        if (j == n) {
          qg.unitary(to_linear({0, kb, lb}), col) = Complex{std::sqrt(1.0 - spec.eta), 0.0};
          qg.unitary(to_linear({0, kb ^ 1, lb}), col) = Complex{0.0, std::sqrt(spec.eta)};
        } else if (spec.s.count(j + 1) == 0) {
          qg.unitary(to_linear({j + 1, kb, lb}), col) = half;
          qg.unitary(to_linear({j + 1, kb, lb ^ 1}), col) = half_i;
        } else if (j + 1 == min_s) {
          qg.unitary(to_linear({j + 1, kb, lb}), col) = half;
          qg.unitary(to_linear({j + 1, kb ^ 1, lb}), col) = half_i;
        } else {
          qg.unitary(to_linear({j + 1, kb ^ lb, kb}), col) = half;
          qg.unitary(to_linear({j + 1, 1 ^ kb ^ lb, kb}), col) = half_i;
        }
      }
    }
  }

  qg.measurement.assign(static_cast<std::size_t>(k), 0);
  for (int j = 0; j <= n; ++j) {
    const bool in_s = spec.s.count(j) != 0;
    for (int kb = 0; kb < 2; ++kb) {
      for (int lb = 0; lb < 2; ++lb) {
        int outcome;
        if (j != 0 && !in_s) {
          outcome = lb;
        } else if (in_s && j != min_s) {
          outcome = kb ^ lb;
        } else {
          outcome = kb;  // j = 0 and j = min(S)
        }
        qg.measurement[static_cast<std::size_t>(to_linear({j, kb, lb}))] =
            static_cast<std::uint8_t>(outcome);
      }
    }
  }

  qg.initial = CVector::Zero(k);
  qg.initial[to_linear({0, 0, 0})] = Complex{1.0, 0.0};
  validate(qg);
  return qg;
}

OutputDistribution reference_noisy_parity(const ParitySpec& spec) {
  validate(spec);
  const int n = spec.n;
  OutputDistribution dist;
  dist.length = n + 1;
  dist.probs.resize(Eigen::Index{1} << (n + 1));
  const double base = std::ldexp(1.0, -n);
  for (std::uint64_t x = 0; x < (std::uint64_t{1} << n); ++x) {
    const int label = parity_of(spec.s, x, n);
    dist.probs[static_cast<Eigen::Index>((x << 1) | static_cast<std::uint64_t>(label))] =
        base * (1.0 - spec.eta);
    dist.probs[static_cast<Eigen::Index>((x << 1) |
                                         static_cast<std::uint64_t>(label ^ 1))] =
        base * spec.eta;
  }
  return dist;
}

VerificationReport verify_construction(const ParitySpec& spec, int threads) {
  validate(spec);
  if (spec.n > kVerifyCap) {
    throw Error(Errc::too_long, "verification enumerates 2^(2(n+1)) strings; n capped at " +
                                    std::to_string(kVerifyCap));
  }
  const QuantumGenerator qg = build_parity_qg(spec);

  VerificationReport report;
  report.unitarity_residual = unitarity_residual(qg.unitary);

  const int block = spec.n + 1;
  EnumOptions options;
  options.threads = threads;
  const OutputDistribution one_block = exact_distribution(qg, block, options);
  report.tv_distance = total_variation(one_block, reference_noisy_parity(spec));

  const OutputDistribution two_blocks = exact_distribution(qg, 2 * block, options);
  const std::uint64_t mask = (std::uint64_t{1} << block) - 1;
  double worst = 0.0;
  for (std::uint64_t z = 0; z < two_blocks.size(); ++z) {
    const double product = one_block.prob(z >> block) * one_block.prob(z & mask);
    worst = std::max(worst, std::abs(two_blocks.prob(z) - product));
  }
  report.block_residual = worst;

  report.pass = report.unitarity_residual <= tol::distribution &&
                report.tv_distance <= tol::distribution &&
                report.block_residual <= tol::distribution;
  return report;
}

std::vector<BasisIndex> trace_basis_path(const ParitySpec& spec, std::string_view outcomes) {
  const QuantumGenerator qg = build_parity_qg(spec);
  const int k = qg.dimension();
  CVector v = qg.initial;
  CVector evolved(k);
  std::vector<BasisIndex> path;
  path.reserve(outcomes.size());
  for (std::size_t t = 0; t < outcomes.size(); ++t) {
    if (outcomes[t] != '0' && outcomes[t] != '1') {
      throw Error(Errc::io_error, "outcome string contains non-binary character");
    }
    const int symbol = outcomes[t] - '0';
    evolved.noalias() = qg.unitary * v;
    double mass = 0.0;
    for (int i = 0; i < k; ++i) {
      if (qg.measurement[static_cast<std::size_t>(i)] != symbol) evolved[i] = Complex{0, 0};
      mass += std::norm(evolved[i]);
    }
    if (mass <= tol::branch_prune) {
      throw Error(Errc::zero_probability_path,
                  "outcome prefix has zero probability at step " + std::to_string(t + 1));
    }
    v = evolved / std::sqrt(mass);

    int support = -1;
    for (int i = 0; i < k; ++i) {
      const double amp = std::abs(v[i]);
      if (amp > tol::basis_amp) {
        if (support >= 0 || std::abs(amp - 1.0) > tol::basis_amp) {
          support = -1;
          break;
        }
        support = i;
      }
    }
    if (support < 0) {
      throw Error(Errc::verification_failed,
                  "state is not a basis state after step " + std::to_string(t + 1));
    }
    path.push_back(from_linear(support));
  }
  return path;
}

int running_block_parity(const ParitySpec& spec, std::string_view outcomes, int t) {
  const int block = spec.n + 1;
  const int j = t % block;
  int parity = 0;
  for (int tp = t - j + 1; tp <= t; ++tp) {
    if (spec.s.count(tp % block) != 0 && outcomes[static_cast<std::size_t>(tp - 1)] == '1') {
      parity ^= 1;
    }
  }
  return parity;
}

}  // namespace qgen
