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

#include "qgen/generator.hpp"

#include <cmath>
#include <future>
#include <utility>

namespace qgen {

namespace {

// Squared norm of the restriction of v to the basis states of one outcome.
double projected_mass(const CVector& v, const MeasurementPartition& partition, int outcome) {
  double mass = 0.0;
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (partition[static_cast<std::size_t>(i)] == outcome) mass += std::norm(v[i]);
  }
  return mass;
}

void project_into(const CVector& v, const MeasurementPartition& partition, int outcome,
                  CVector& out) {
  out.resize(v.size());
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    out[i] = partition[static_cast<std::size_t>(i)] == outcome ? v[i] : Complex{0.0, 0.0};
  }
}

}  // namespace

const QuantumGenerator& validate(const QuantumGenerator& qg) {
  const Eigen::Index k = qg.initial.size();
  if (k < 2) {
    throw Error(Errc::dimension_mismatch,
                "state dimension " + std::to_string(k) + " below minimum of 2");
  }
  if (qg.unitary.rows() != k || qg.unitary.cols() != k) {
    throw Error(Errc::dimension_mismatch,
                "unitary is " + std::to_string(qg.unitary.rows()) + "x" +
                    std::to_string(qg.unitary.cols()) + " but state dimension is " +
                    std::to_string(k));
  }
  if (static_cast<Eigen::Index>(qg.measurement.size()) != k) {
    throw Error(Errc::dimension_mismatch,
                "partition assigns " + std::to_string(qg.measurement.size()) +
                    " basis states, expected " + std::to_string(k));
  }
  const double norm_gap = std::abs(qg.initial.norm() - 1.0);
  if (norm_gap > tol::state_norm) {
    throw Error(Errc::unnormalized_state,
                "initial state norm deviates from 1 by " + std::to_string(norm_gap));
  }
  const double residual = unitarity_residual(qg.unitary);
  if (residual > tol::unitarity) {
    throw Error(Errc::non_unitary,
                "U'U deviates from identity by " + std::to_string(residual));
  }
  bool seen[2] = {false, false};
  for (std::uint8_t outcome : qg.measurement) {
    if (outcome > 1) {
      throw Error(Errc::incomplete_partition, "partition value outside {0,1}");
    }
    seen[outcome] = true;
  }
  if (!seen[0] || !seen[1]) {
    throw Error(Errc::incomplete_partition,
                "degenerate partition: outcome " + std::string(seen[0] ? "1" : "0") +
                    " has an empty projector");
  }
  return qg;
}

std::vector<StepOutcome> measure_step(const StateVector& state, const QuantumGenerator& qg) {
  if (state.size() != qg.initial.size()) {
    throw Error(Errc::dimension_mismatch, "state dimension does not match generator");
  }
  const CVector evolved = qg.unitary * state;
  std::vector<StepOutcome> outcomes;
  for (int sigma = 0; sigma < 2; ++sigma) {
    const double mass = projected_mass(evolved, qg.measurement, sigma);
    if (mass <= tol::branch_prune) continue;
    CVector post;
    project_into(evolved, qg.measurement, sigma, post);
    post /= std::sqrt(mass);
    outcomes.push_back({sigma, mass, std::move(post)});
  }
  return outcomes;
}

double sequence_probability(const QuantumGenerator& qg, std::uint64_t index, int length) {
  CVector v = qg.initial;
  CVector evolved(v.size());
  for (int t = 1; t <= length; ++t) {
    evolved.noalias() = qg.unitary * v;
    const int symbol = bit_at(index, length, t);
    project_into(evolved, qg.measurement, symbol, v);
  }
  return v.squaredNorm();
}

double sequence_probability(const QuantumGenerator& qg, std::string_view bits) {
  return sequence_probability(qg, bits_to_index(bits), static_cast<int>(bits.size()));
}

namespace {

// Iterative-deepening walk over the outcome tree. work/projected are
// per-depth scratch vectors so the hot loop performs no allocations.
struct TreeWalker {
  const QuantumGenerator& qg;
  int total_length;
  Eigen::VectorXd& table;
  std::vector<CVector> work;
  std::vector<CVector> projected;

  TreeWalker(const QuantumGenerator& qg_in, int total, Eigen::VectorXd& table_in)
      : qg(qg_in), total_length(total), table(table_in) {
    work.resize(static_cast<std::size_t>(total));
    projected.resize(static_cast<std::size_t>(total));
    for (auto& v : work) v.resize(qg.initial.size());
    for (auto& v : projected) v.resize(qg.initial.size());
  }

  void descend(int depth, std::uint64_t prefix, const CVector& v) {
    if (depth == total_length) {
      table[static_cast<Eigen::Index>(prefix)] = v.squaredNorm();
      return;
    }
    auto& evolved = work[static_cast<std::size_t>(depth)];
    evolved.noalias() = qg.unitary * v;
    for (int sigma = 0; sigma < 2; ++sigma) {
      const double mass = projected_mass(evolved, qg.measurement, sigma);
      if (mass <= tol::branch_prune) continue;  // zero-filled subtree
      auto& child = projected[static_cast<std::size_t>(depth)];
      project_into(evolved, qg.measurement, sigma, child);
      descend(depth + 1, (prefix << 1) | static_cast<std::uint64_t>(sigma), child);
    }
  }
};

}  // namespace

OutputDistribution exact_distribution(const QuantumGenerator& qg, int n,
                                      const EnumOptions& options) {
  if (n < 1) {
    throw Error(Errc::too_long, "symbol count must be positive");
  }
  if (n > options.max_length) {
    throw Error(Errc::too_long, "symbol count " + std::to_string(n) +
                                    " exceeds the table cap of " +
                                    std::to_string(options.max_length));
  }
  OutputDistribution dist;
  dist.length = n;
  dist.probs = Eigen::VectorXd::Zero(Eigen::Index{1} << n);

  const int threads = options.threads;
  if (threads <= 1 || n < 8) {
    TreeWalker walker(qg, n, dist.probs);
    walker.descend(0, 0, qg.initial);
    return dist;
  }

  // Expand the first few levels sequentially, then hand each surviving
  // prefix to a task. Prefixes own disjoint slices of the table, so the
  // merge is a plain write and the result is thread-count independent.
  int split = 1;
  while ((1 << split) < 4 * threads && split < n - 1) ++split;
  struct Job {
    std::uint64_t prefix;
    CVector v;
  };
  std::vector<Job> jobs;
  {
    std::vector<std::pair<std::uint64_t, CVector>> frontier{{0, qg.initial}};
    for (int depth = 0; depth < split; ++depth) {
      std::vector<std::pair<std::uint64_t, CVector>> next;
      CVector evolved(qg.initial.size());
      for (auto& [prefix, v] : frontier) {
        evolved.noalias() = qg.unitary * v;
        for (int sigma = 0; sigma < 2; ++sigma) {
          if (projected_mass(evolved, qg.measurement, sigma) <= tol::branch_prune) continue;
          CVector child;
          project_into(evolved, qg.measurement, sigma, child);
          next.emplace_back((prefix << 1) | static_cast<std::uint64_t>(sigma),
                            std::move(child));
        }
      }
      frontier = std::move(next);
    }
    for (auto& [prefix, v] : frontier) jobs.push_back({prefix, std::move(v)});
  }

  std::vector<std::future<void>> futures;
  std::size_t next_job = 0;
  const int remaining = n - split;
  auto run_chunk = [&](std::size_t begin, std::size_t end) {
    for (std::size_t j = begin; j < end; ++j) {
      const std::uint64_t base = jobs[j].prefix << remaining;
      Eigen::VectorXd slice = Eigen::VectorXd::Zero(Eigen::Index{1} << remaining);
      TreeWalker walker(qg, remaining, slice);
      walker.descend(0, 0, jobs[j].v);
      dist.probs.segment(static_cast<Eigen::Index>(base), slice.size()) = slice;
    }
  };
  const std::size_t per_thread = (jobs.size() + threads - 1) / static_cast<std::size_t>(threads);
  while (next_job < jobs.size()) {
    const std::size_t end = std::min(jobs.size(), next_job + per_thread);
    futures.push_back(std::async(std::launch::async, run_chunk, next_job, end));
    next_job = end;
  }
  for (auto& f : futures) f.get();
  return dist;
}

std::uint64_t sample_index(const QuantumGenerator& qg, int n, std::mt19937_64& rng) {
  CVector v = qg.initial;
  CVector evolved(v.size());
  std::uint64_t index = 0;
  for (int t = 0; t < n; ++t) {
    evolved.noalias() = qg.unitary * v;
    const double mass0 = projected_mass(evolved, qg.measurement, 0);
    const double mass1 = projected_mass(evolved, qg.measurement, 1);
    int outcome;
    if (mass0 <= tol::branch_prune) {
      outcome = 1;
    } else if (mass1 <= tol::branch_prune) {
      outcome = 0;
    } else {
      outcome = next_unit(rng) < mass0 / (mass0 + mass1) ? 0 : 1;
    }
    project_into(evolved, qg.measurement, outcome, v);
    v /= std::sqrt(outcome == 0 ? mass0 : mass1);
    index = (index << 1) | static_cast<std::uint64_t>(outcome);
  }
  return index;
}

std::string sample(const QuantumGenerator& qg, int n, std::mt19937_64& rng) {
  return index_to_bits(sample_index(qg, n, rng), n);
}

std::string sample(const QuantumGenerator& qg, int n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  return sample(qg, n, rng);
}

}  // namespace qgen
