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

#include "qgen/learn.hpp"

#include <cmath>
#include <future>
#include <limits>

namespace qgen {

double kl_divergence(const OutputDistribution& p, const OutputDistribution& q, LogBase base) {
  if (p.length != q.length) {
    throw Error(Errc::dimension_mismatch, "distributions have different lengths");
  }
  double kl = 0.0;
  for (Eigen::Index i = 0; i < p.probs.size(); ++i) {
    const double pi = p.probs[i];
    if (pi <= 0.0) continue;
    const double qi = q.probs[i];
    if (qi <= 0.0) return std::numeric_limits<double>::infinity();
    kl += pi * log_in(pi / qi, base);
  }
  return std::max(kl, 0.0);
}

double kl_divergence(const Evaluator& p, const Evaluator& q, LogBase base) {
  if (!p.table_backed()) {
    throw Error(Errc::verification_failed, "KL divergence needs a table-backed first argument");
  }
  const OutputDistribution& table = p.table();
  if (q.length() != table.length) {
    throw Error(Errc::dimension_mismatch, "evaluators have different lengths");
  }
  double kl = 0.0;
  for (std::uint64_t x = 0; x < table.size(); ++x) {
    const double px = table.prob(x);
    if (px <= 0.0) continue;
    const double qx = q.prob(x);
    if (qx <= 0.0) return std::numeric_limits<double>::infinity();
    kl += px * log_in(px / qx, base);
  }
  return std::max(kl, 0.0);
}

std::uint64_t sample_bound(const SampleBoundParams& params) {
  if (!(params.range_bound > 0.0) || !(params.eps > 0.0) || !(params.delta > 0.0) ||
      params.ln_family_size < 0.0 || params.eps > params.range_bound) {
    throw Error(Errc::invalid_spec,
                "sample bound needs 0 < eps <= M, delta > 0, ln|F| >= 0");
  }
  const double ratio = params.range_bound / params.eps;
  const double m = ratio * ratio * (params.ln_family_size + std::log(1.0 / params.delta));
  return static_cast<std::uint64_t>(std::ceil(m));
}

ClampLevels choose_clamps(double eps_target, int n) {
  if (!(eps_target > 0.0) || n < 1) {
    throw Error(Errc::invalid_spec, "eps_target must be positive and n >= 1");
  }
  const double eps2 = std::pow(eps_target / (2.0 * (n + 1)), 2.0 * n);
  if (eps2 < std::numeric_limits<double>::epsilon()) {
    throw Error(Errc::underflow,
                "eps2 = (eps/2(n+1))^2n is below the double-precision epsilon; supply a "
                "practical clamp level directly");
  }
  const double eps1 = std::pow(eps2 + std::sqrt(eps2), 1.0 / n);
  if (!(eps1 > 0.0) || !(eps1 < 0.5)) {
    throw Error(Errc::underflow, "derived eps1 leaves the (0, 1/2) clamp range");
  }
  return {eps1, eps2};
}

LearnResult learn(const Samples& samples, const std::vector<NetEntry>& net, double eps1,
                  int threads) {
  if (net.empty()) {
    throw Error(Errc::empty_net, "cannot learn over an empty net");
  }
  if (samples.values.empty() || samples.length < 1) {
    throw Error(Errc::empty_samples, "cannot learn from an empty sample set");
  }
  const int n = samples.length;
  const std::uint64_t limit = std::uint64_t{1} << n;
  for (std::uint64_t x : samples.values) {
    if (x >= limit) {
      throw Error(Errc::dimension_mismatch, "sample exceeds the declared string length");
    }
  }

  const double m = static_cast<double>(samples.values.size());
  Eigen::VectorXd losses(static_cast<Eigen::Index>(net.size()));

  Eigen::VectorXd counts;
  if (n <= kDefaultTableCap) {
    counts = Eigen::VectorXd::Zero(Eigen::Index{1} << n);
    for (std::uint64_t x : samples.values) counts[static_cast<Eigen::Index>(x)] += 1.0;
  }

  // Pure per-entry scoring; entries write disjoint slots of the loss vector.
  auto score = [&](std::size_t e) {
    const PerturbedEvaluator perturbed(Evaluator::from_generator(compile(net[e]), n), eps1);
    double loss = 0.0;
    if (n <= kDefaultTableCap) {
      const OutputDistribution table = perturbed.to_table();
      for (Eigen::Index x = 0; x < counts.size(); ++x) {
        if (counts[x] > 0.0) loss -= counts[x] * std::log2(table.probs[x]);
      }
    } else {
      for (std::uint64_t x : samples.values) loss -= std::log2(perturbed.prob(x));
    }
    losses[static_cast<Eigen::Index>(e)] = loss / m;
  };

  if (threads <= 1 || net.size() < 2) {
    for (std::size_t e = 0; e < net.size(); ++e) score(e);
  } else {
    std::vector<std::future<void>> futures;
    const std::size_t chunk = (net.size() + threads - 1) / static_cast<std::size_t>(threads);
    for (std::size_t begin = 0; begin < net.size(); begin += chunk) {
      const std::size_t end = std::min(net.size(), begin + chunk);
      futures.push_back(std::async(std::launch::async, [&, begin, end] {
        for (std::size_t e = begin; e < end; ++e) score(e);
      }));
    }
    for (auto& f : futures) f.get();
  }

  std::size_t best = 0;
  for (std::size_t e = 1; e < net.size(); ++e) {
    if (losses[static_cast<Eigen::Index>(e)] < losses[static_cast<Eigen::Index>(best)]) {
      best = e;
    }
  }
  return {best, eps1, std::move(losses),
          Evaluator::from_perturbed(
              PerturbedEvaluator(Evaluator::from_generator(compile(net[best]), n), eps1))};
}

}  // namespace qgen
