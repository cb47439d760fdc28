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

#pragma once

#include <cstdint>
#include <functional>
#include <set>

#include "qgen/evaluator.hpp"
#include "qgen/parity.hpp"
#include "qgen/types.hpp"

namespace qgen {

/// Binary entropy in bits: -eta log2 eta - (1-eta) log2 (1-eta).
double binary_entropy(double eta);

/// KL budget (bits) under which an evaluator of the noisy-parity
/// distribution is forced into an eps-accurate label predictor:
/// eps * (1 - H(eta)). Throws BadEta outside (0, 1/2).
double kl_threshold(double eps, double eta);

// Prediction budget bundling the target error with its KL threshold.
struct ReductionBudget {
  double eps;
  double eta;
  double threshold;
};

inline ReductionBudget make_reduction_budget(double eps, double eta) {
  return {eps, eta, kl_threshold(eps, eta)};
}

/// Deterministic 0/1 predictor on n-bit inputs. Calls are pure.
class ParityPredictor {
 public:
  ParityPredictor(int input_length, std::function<int(std::uint64_t)> fn)
      : input_length_(input_length), fn_(std::move(fn)) {}

  int input_length() const { return input_length_; }
  int operator()(std::uint64_t x) const { return fn_(x); }

 private:
  int input_length_;
  std::function<int(std::uint64_t)> fn_;
};

/// Label predictor from an evaluator over (n+1)-bit strings:
/// E'(x) = argmax_b E(x . b), ties resolved to 0. The decision depends only
/// on score ratios, so positive rescaling of the evaluator cannot change it.
ParityPredictor predictor_from_evaluator(const Evaluator& evaluator);
ParityPredictor predictor_from_scores(int evaluator_length,
                                      std::function<double(std::uint64_t)> scores);

/// Exact parity predictor for a known set; handy as a test subject.
ParityPredictor exact_parity_predictor(const ParitySpec& spec);

enum class RecoveryMode { exact, voting };

/// Recovers the hidden set from a predictor. Exact mode queries the unit
/// vectors e_i. Voting mode takes a majority over random probes
/// pred(x) xor pred(x xor e_i), which tolerates a small fraction of
/// predictor errors.
std::set<int> recover_set(const ParityPredictor& pred, int n, RecoveryMode mode,
                          int trials = 0, std::uint64_t seed = 0);

enum class ErrorMode { exhaustive, sampled };

/// Disagreement rate with the spec's parity under uniform inputs: exact in
/// exhaustive mode (n <= 20), an unbiased estimate in sampled mode.
double prediction_error(const ParityPredictor& pred, const ParitySpec& spec, ErrorMode mode,
                        int trials = 0, std::uint64_t seed = 0);

}  // namespace qgen
