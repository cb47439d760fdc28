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

#include "qgen/evaluator.hpp"

#include <algorithm>
#include <cmath>
#include <utility>
#include <variant>

namespace qgen {

namespace {

// Prefix masses of a table, stored as a binary heap: the node for a length-l
// prefix p sits at offset (1 << l) + p. Leaves are the table entries.
Eigen::VectorXd build_prefix_heap(const OutputDistribution& dist) {
  const Eigen::Index leaves = dist.probs.size();
  Eigen::VectorXd heap(2 * leaves);
  heap.tail(leaves) = dist.probs;
  for (Eigen::Index node = leaves - 1; node >= 1; --node) {
    heap[node] = heap[2 * node] + heap[2 * node + 1];
  }
  heap[0] = 0.0;  // unused
  return heap;
}

struct TableBacked {
  OutputDistribution dist;
  Eigen::VectorXd prefix_heap;
};

struct GeneratorBacked {
  QuantumGenerator qg;
  int length;
};

}  // namespace

struct Evaluator::Impl {
  std::variant<TableBacked, GeneratorBacked, PerturbedEvaluator> backend;
};

int Evaluator::length() const {
  if (const auto* t = std::get_if<TableBacked>(&impl_->backend)) return t->dist.length;
  if (const auto* g = std::get_if<GeneratorBacked>(&impl_->backend)) return g->length;
  return std::get<PerturbedEvaluator>(impl_->backend).length();
}

double Evaluator::prob(std::uint64_t x) const {
  if (const auto* t = std::get_if<TableBacked>(&impl_->backend)) return t->dist.prob(x);
  if (const auto* g = std::get_if<GeneratorBacked>(&impl_->backend)) {
    return sequence_probability(g->qg, x, g->length);
  }
  return std::get<PerturbedEvaluator>(impl_->backend).prob(x);
}

double Evaluator::prefix_mass(std::uint64_t prefix, int len) const {
  if (len < 0 || len > length()) {
    throw Error(Errc::dimension_mismatch, "prefix length out of range");
  }
  if (len == 0) return 1.0;
  if (const auto* t = std::get_if<TableBacked>(&impl_->backend)) {
    return t->prefix_heap[(Eigen::Index{1} << len) + static_cast<Eigen::Index>(prefix)];
  }
  if (const auto* g = std::get_if<GeneratorBacked>(&impl_->backend)) {
    return sequence_probability(g->qg, prefix, len);
  }
  return std::get<PerturbedEvaluator>(impl_->backend).prefix_mass(prefix, len);
}

double Evaluator::conditional(std::uint64_t prefix, int len, int symbol) const {
  const double parent = prefix_mass(prefix, len);
  if (parent <= 0.0) {
    throw Error(Errc::zero_probability_path, "conditioning on a zero-mass prefix");
  }
  return prefix_mass((prefix << 1) | static_cast<std::uint64_t>(symbol), len + 1) / parent;
}

bool Evaluator::table_backed() const {
  return std::holds_alternative<TableBacked>(impl_->backend);
}

const OutputDistribution& Evaluator::table() const {
  if (const auto* t = std::get_if<TableBacked>(&impl_->backend)) return t->dist;
  throw Error(Errc::verification_failed, "evaluator is not table-backed");
}

OutputDistribution Evaluator::to_table(int max_length) const {
  if (const auto* t = std::get_if<TableBacked>(&impl_->backend)) return t->dist;
  if (const auto* g = std::get_if<GeneratorBacked>(&impl_->backend)) {
    EnumOptions options;
    options.max_length = max_length;
    return exact_distribution(g->qg, g->length, options);
  }
  return std::get<PerturbedEvaluator>(impl_->backend).to_table(max_length);
}

Evaluator Evaluator::from_table(OutputDistribution table) {
  validate(table);
  auto heap = build_prefix_heap(table);
  auto impl = std::make_shared<Impl>();
  impl->backend = TableBacked{std::move(table), std::move(heap)};
  return Evaluator(std::move(impl));
}

Evaluator Evaluator::from_generator(QuantumGenerator qg, int length) {
  validate(qg);
  if (length < 1) {
    throw Error(Errc::too_long, "evaluator length must be positive");
  }
  auto impl = std::make_shared<Impl>();
  impl->backend = GeneratorBacked{std::move(qg), length};
  return Evaluator(std::move(impl));
}

Evaluator Evaluator::from_perturbed(PerturbedEvaluator perturbed) {
  auto impl = std::make_shared<Impl>();
  impl->backend = std::move(perturbed);
  return Evaluator(std::move(impl));
}

PerturbedEvaluator::PerturbedEvaluator(Evaluator base, double eps1)
    : base_(std::move(base)), eps1_(eps1) {
  if (!(eps1 > 0.0) || !(eps1 < 0.5)) {
    throw Error(Errc::bad_clamp, "eps1 must lie strictly inside (0, 1/2)");
  }
}

double PerturbedEvaluator::prefix_mass(std::uint64_t prefix, int len) const {
  const double lo = eps1_;
  const double hi = 1.0 - eps1_;
  double mass = 1.0;
  std::uint64_t corrected = 0;
  for (int i = 0; i < len; ++i) {
    const int symbol = bit_at(prefix, len, i + 1);
    const double q = base_.conditional(corrected, i, symbol);
    mass *= std::clamp(q, lo, hi);
    // A zero conditional means the base cannot emit this symbol here; the
    // corrected path continues from the flipped symbol.
    const int corrected_symbol = q == 0.0 ? symbol ^ 1 : symbol;
    corrected = (corrected << 1) | static_cast<std::uint64_t>(corrected_symbol);
  }
  return mass;
}

double PerturbedEvaluator::prob(std::uint64_t x) const { return prefix_mass(x, length()); }

OutputDistribution PerturbedEvaluator::to_table(int max_length) const {
  const int n = length();
  if (n > max_length) {
    throw Error(Errc::too_long, "perturbed table of length " + std::to_string(n) +
                                    " exceeds the cap of " + std::to_string(max_length));
  }
  OutputDistribution out;
  out.length = n;
  out.probs.resize(Eigen::Index{1} << n);

  const double lo = eps1_;
  const double hi = 1.0 - eps1_;
  // Walk the original prefix tree carrying (corrected prefix, accumulated
  // mass); both children of a node share its corrected prefix, so the two
  // clamped conditionals always sum to one.
  struct Frame {
    std::uint64_t prefix;
    std::uint64_t corrected;
    int len;
    double mass;
  };
  std::vector<Frame> stack{{0, 0, 0, 1.0}};
  while (!stack.empty()) {
    const Frame frame = stack.back();
    stack.pop_back();
    if (frame.len == n) {
      out.probs[static_cast<Eigen::Index>(frame.prefix)] = frame.mass;
      continue;
    }
    for (int symbol = 0; symbol < 2; ++symbol) {
      const double q = base_.conditional(frame.corrected, frame.len, symbol);
      const int corrected_symbol = q == 0.0 ? symbol ^ 1 : symbol;
      stack.push_back({(frame.prefix << 1) | static_cast<std::uint64_t>(symbol),
                       (frame.corrected << 1) | static_cast<std::uint64_t>(corrected_symbol),
                       frame.len + 1, frame.mass * std::clamp(q, lo, hi)});
    }
  }
  return out;
}

PerturbedEvaluator perturb(const Evaluator& p, double eps1) {
  return PerturbedEvaluator(p, eps1);
}

}  // namespace qgen
