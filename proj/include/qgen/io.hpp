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

#include <iosfwd>
#include <string>

#include "qgen/learn.hpp"
#include "qgen/parity.hpp"
#include "qgen/types.hpp"

namespace qgen {

// Generator JSON:
//   {"k": 2, "initial": [[re,im],...], "unitary": [[[re,im],...],...],
//    "measurement": [0,1,...]}
// with the unitary written row-major.
std::string generator_to_json(const QuantumGenerator& qg);
QuantumGenerator generator_from_json(const std::string& text);

QuantumGenerator load_generator(const std::string& path);
void save_generator(const std::string& path, const QuantumGenerator& qg);

// Parity spec JSON: {"n": int, "S": [ints], "eta": float}.
ParitySpec parity_spec_from_json(const std::string& text);
ParitySpec load_parity_spec(const std::string& path);

// Distribution tables: one "<bitstring> <probability>" line per string in
// lexicographic order, probabilities printed with 17 significant digits.
std::string distribution_to_text(const OutputDistribution& dist);
OutputDistribution distribution_from_text(std::istream& in);

OutputDistribution load_distribution(const std::string& path);
void save_distribution(const std::string& path, const OutputDistribution& dist);

// Sample files: one bitstring per line, uniform length.
std::string samples_to_text(const Samples& samples);
Samples samples_from_text(std::istream& in);

Samples load_samples(const std::string& path);
void save_samples(const std::string& path, const Samples& samples);

/// Writes the whole payload or nothing: content lands on disk only after a
/// successful full write.
void write_file_atomically(const std::string& path, const std::string& content);

std::string read_file(const std::string& path);

/// %.17g rendering used for every probability we print.
std::string format_probability(double value);

}  // namespace qgen
