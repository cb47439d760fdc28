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

#include <Eigen/Dense>

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace qgen {

using Complex = std::complex<double>;
using CVector = Eigen::VectorXcd;
using CMatrix = Eigen::MatrixXcd;

// A quantum generator's state lives in C^k; we keep Eigen's dense types bare
// and enforce the domain invariants at validation boundaries.
using StateVector = CVector;
using UnitaryMatrix = CMatrix;

// outcome_of_basis[i] in {0,1}: the measurement outcome whose projector
// contains basis state i.
using MeasurementPartition = std::vector<std::uint8_t>;

namespace tol {
inline constexpr double unitarity = 1e-10;     // validation gate for U'U = I
inline constexpr double state_norm = 1e-9;     // |  ||psi|| - 1  |
inline constexpr double distribution = 1e-9;   // table mass vs 1
inline constexpr double branch_prune = 1e-12;  // outcome-branch mass treated as zero
inline constexpr double basis_amp = 1e-9;      // |amplitude| vs 1 in basis-path checks
}  // namespace tol

inline constexpr int kDefaultTableCap = 22;  // exact tables up to 2^22 entries

enum class Errc {
  non_unitary,
  unnormalized_state,
  incomplete_partition,
  dimension_mismatch,
  too_long,
  invalid_spec,
  verification_failed,
  zero_probability_path,
  bad_wires,
  enumeration_too_large,
  bad_clamp,
  underflow,
  empty_net,
  empty_samples,
  bad_eta,
  too_large,
  io_error,
};

std::string_view errc_name(Errc code);

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& message)
      : std::runtime_error(std::string(errc_name(code)) + ": " + message), code_(code) {}

  Errc code() const { return code_; }

 private:
  Errc code_;
};

// A k-state quantum generator: initial state, one-step unitary, and a binary
// projective measurement given as a partition of the basis states.
struct QuantumGenerator {
  StateVector initial;
  UnitaryMatrix unitary;
  MeasurementPartition measurement;

  int dimension() const { return static_cast<int>(initial.size()); }
};

// Explicit probability table over binary strings of a fixed length. Strings
// are indexed with the first emitted symbol as the most significant bit, so
// ascending index order is lexicographic order.
struct OutputDistribution {
  int length = 0;
  Eigen::VectorXd probs;

  double prob(std::uint64_t x) const { return probs[static_cast<Eigen::Index>(x)]; }
  std::uint64_t size() const { return std::uint64_t{1} << length; }
};

// Checks table shape, the [0,1] range of every entry, and unit total mass.
void validate(const OutputDistribution& dist);

double total_variation(const OutputDistribution& p, const OutputDistribution& q);
double linf_distance(const OutputDistribution& p, const OutputDistribution& q);

// Marginal P(x_t = 1) for a 1-based symbol position t.
double marginal_one(const OutputDistribution& dist, int position);

// --- bitstring helpers -------------------------------------------------
//
// "0110" <-> index 6 at length 4: symbol t (1-based) occupies bit (n - t).

std::uint64_t bits_to_index(std::string_view bits);
std::string index_to_bits(std::uint64_t index, int length);

inline std::uint64_t concat_bits(std::uint64_t hi, int lo_length, std::uint64_t lo) {
  return (hi << lo_length) | lo;
}

inline int bit_at(std::uint64_t index, int length, int position) {
  return static_cast<int>((index >> (length - position)) & 1u);
}

// Expression-friendly residual of U'U - I; works on any dense complex matrix.
template <typename Derived>
double unitarity_residual(const Eigen::MatrixBase<Derived>& u) {
  const Eigen::Index k = u.rows();
  return (u.adjoint() * u - Derived::PlainObject::Identity(k, k)).cwiseAbs().maxCoeff();
}

}  // namespace qgen
