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
#include <vector>

#include "qgen/evaluator.hpp"
#include "qgen/net.hpp"
#include "qgen/types.hpp"

namespace qgen {

enum class LogBase { bits, nats };

inline double log_in(double x, LogBase base) {
  return base == LogBase::bits ? std::log2(x) : std::log(x);
}

/// KL(P || Q) = sum_x P(x) log(P(x)/Q(x)) with 0 log(0/q) = 0. P must be
/// table-backed. Returns +infinity when Q vanishes somewhere on P's
/// support.
double kl_divergence(const Evaluator& p, const Evaluator& q, LogBase base = LogBase::bits);
double kl_divergence(const OutputDistribution& p, const OutputDistribution& q,
                     LogBase base = LogBase::bits);

// Inputs to the uniform-convergence bound: functions with range [0, M],
// accuracy eps, confidence delta, and log of the hypothesis count.
struct SampleBoundParams {
  double range_bound = 1.0;  // M
  double eps = 1.0;
  double delta = 1.0;
  double ln_family_size = 0.0;
};

/// m = ceil((M^2 / eps^2) (ln|F| + ln(1/delta))).
std::uint64_t sample_bound(const SampleBoundParams& params);

struct ClampLevels {
  double eps1;
  double eps2;
};

/// Clamp levels meeting the KL budget: eps2 = (eps_target / 2(n+1))^(2n) and
/// eps1 from eps1^n - eps2 = sqrt(eps2). Throws Underflow once eps2 falls
/// below the double-precision epsilon, where the defining relation is no
/// longer numerically meaningful.
ClampLevels choose_clamps(double eps_target, int n);

struct Samples {
  int length = 0;
  std::vector<std::uint64_t> values;
};

struct LearnResult {
  std::size_t selected_index = 0;
  double eps1 = 0.0;
  Eigen::VectorXd losses;  // empirical log-loss per net entry, in bits
  Evaluator evaluator;     // the perturbed selected entry
};

/// Scores every net entry by empirical log-loss of its perturbed
/// distribution over the samples and returns the minimizer (ties to the
/// earliest index). Scoring uses exact per-entry probabilities; nothing is
/// estimated. Entries may be scored in parallel; the selection is by index
/// order and does not depend on the thread count.
LearnResult learn(const Samples& samples, const std::vector<NetEntry>& net, double eps1,
                  int threads = 1);

}  // namespace qgen
