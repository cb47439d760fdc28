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

#include "qgen/reduce.hpp"

#include <cmath>
#include <random>

#include "qgen/generator.hpp"

namespace qgen {

double binary_entropy(double eta) {
  if (eta <= 0.0 || eta >= 1.0) return 0.0;
  return -eta * std::log2(eta) - (1.0 - eta) * std::log2(1.0 - eta);
}

double kl_threshold(double eps, double eta) {
  if (!(eta > 0.0) || !(eta < 0.5)) {
    throw Error(Errc::bad_eta, "eta must lie strictly inside (0, 1/2)");
  }
  if (!(eps > 0.0)) {
    throw Error(Errc::invalid_spec, "eps must be positive");
  }
  return eps * (1.0 - binary_entropy(eta));
}

ParityPredictor predictor_from_scores(int evaluator_length,
                                      std::function<double(std::uint64_t)> scores) {
  const int n = evaluator_length - 1;
  if (n < 1) {
    throw Error(Errc::dimension_mismatch, "evaluator must cover at least two symbols");
  }
  return ParityPredictor(n, [scores = std::move(scores)](std::uint64_t x) {
    return scores((x << 1) | 1u) > scores(x << 1) ? 1 : 0;
  });
}

ParityPredictor predictor_from_evaluator(const Evaluator& evaluator) {
  return predictor_from_scores(evaluator.length(),
                               [evaluator](std::uint64_t x) { return evaluator.prob(x); });
}

ParityPredictor exact_parity_predictor(const ParitySpec& spec) {
  validate(spec);
  return ParityPredictor(spec.n, [s = spec.s, n = spec.n](std::uint64_t x) {
    return parity_of(s, x, n);
  });
}

std::set<int> recover_set(const ParityPredictor& pred, int n, RecoveryMode mode, int trials,
                          std::uint64_t seed) {
  std::set<int> recovered;
  if (mode == RecoveryMode::exact) {
    for (int i = 1; i <= n; ++i) {
      if (pred(std::uint64_t{1} << (n - i)) == 1) recovered.insert(i);
    }
    return recovered;
  }
  if (trials < 1) {
    throw Error(Errc::invalid_spec, "voting mode needs a positive trial count");
  }
  std::mt19937_64 rng(seed);
  const std::uint64_t mask = n == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1;
  for (int i = 1; i <= n; ++i) {
    const std::uint64_t unit = std::uint64_t{1} << (n - i);
    int votes = 0;
    for (int t = 0; t < trials; ++t) {
      const std::uint64_t x = rng() & mask;
      votes += pred(x) ^ pred(x ^ unit);
    }
    if (2 * votes > trials) recovered.insert(i);
  }
  return recovered;
}

double prediction_error(const ParityPredictor& pred, const ParitySpec& spec, ErrorMode mode,
                        int trials, std::uint64_t seed) {
  validate(spec);
  const int n = spec.n;
  if (pred.input_length() != n) {
    throw Error(Errc::dimension_mismatch, "predictor input length does not match the spec");
  }
  if (mode == ErrorMode::exhaustive) {
    if (n > 20) {
      throw Error(Errc::too_large, "exhaustive error evaluation is capped at n = 20");
    }
    std::uint64_t disagreements = 0;
    for (std::uint64_t x = 0; x < (std::uint64_t{1} << n); ++x) {
      disagreements += static_cast<std::uint64_t>(pred(x) != parity_of(spec.s, x, n));
    }
    return std::ldexp(static_cast<double>(disagreements), -n);
  }
  if (trials < 1) {
    throw Error(Errc::invalid_spec, "sampled mode needs a positive trial count");
  }
  std::mt19937_64 rng(seed);
  const std::uint64_t mask = (std::uint64_t{1} << n) - 1;
  int disagreements = 0;
  for (int t = 0; t < trials; ++t) {
    const std::uint64_t x = rng() & mask;
    disagreements += pred(x) != parity_of(spec.s, x, n);
  }
  return static_cast<double>(disagreements) / static_cast<double>(trials);
}

}  // namespace qgen
