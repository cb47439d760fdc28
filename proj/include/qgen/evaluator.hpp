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
#include <memory>

#include "qgen/generator.hpp"
#include "qgen/types.hpp"

namespace qgen {

class PerturbedEvaluator;

/// A total probability assignment on binary strings of a fixed length,
/// backed either by an explicit table or by a generator evaluated on
/// demand. Immutable and cheap to copy.
class Evaluator {
 public:
  int length() const;

  /// Probability of the full string given by index.
  double prob(std::uint64_t x) const;

  /// Mass of all strings extending the given prefix (len symbols). The
  /// empty prefix has mass 1 for normalized evaluators.
  double prefix_mass(std::uint64_t prefix, int len) const;

  double conditional(std::uint64_t prefix, int len, int symbol) const;

  bool table_backed() const;
  const OutputDistribution& table() const;  // table-backed only

  OutputDistribution to_table(int max_length = kDefaultTableCap) const;

  static Evaluator from_table(OutputDistribution table);
  static Evaluator from_generator(QuantumGenerator qg, int length);
  static Evaluator from_perturbed(PerturbedEvaluator perturbed);

 private:
  struct Impl;
  explicit Evaluator(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}
  std::shared_ptr<const Impl> impl_;
};

/// The base evaluator with every stepwise conditional clamped into
/// [eps1, 1-eps1]. Conditioning follows corrected prefixes: when the base
/// assigns zero mass to a symbol, the corrected path continues from the
/// flipped symbol, so conditionals stay well defined on every string. Every
/// full-string probability is at least eps1^n.
class PerturbedEvaluator {
 public:
  PerturbedEvaluator(Evaluator base, double eps1);

  int length() const { return base_.length(); }
  double eps1() const { return eps1_; }
  const Evaluator& base() const { return base_; }

  double prob(std::uint64_t x) const;
  double prefix_mass(std::uint64_t prefix, int len) const;
  OutputDistribution to_table(int max_length = kDefaultTableCap) const;

 private:
  Evaluator base_;
  double eps1_;
};

/// Clamps each stepwise conditional of P into [eps1, 1-eps1]. Throws
/// BadClamp unless 0 < eps1 < 1/2.
PerturbedEvaluator perturb(const Evaluator& p, double eps1);

}  // namespace qgen
