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

#include "qgen/io.hpp"

#include <json.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace qgen {

using nlohmann::json;

std::string format_probability(double value) {
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "%.17g", value);
  return buffer;
}

std::string generator_to_json(const QuantumGenerator& qg) {
  const int k = qg.dimension();
  json out;
  out["k"] = k;
  json initial = json::array();
  for (int i = 0; i < k; ++i) {
    initial.push_back({qg.initial[i].real(), qg.initial[i].imag()});
  }
  out["initial"] = std::move(initial);
  json unitary = json::array();
  for (int r = 0; r < k; ++r) {
    json row = json::array();
    for (int c = 0; c < k; ++c) {
      row.push_back({qg.unitary(r, c).real(), qg.unitary(r, c).imag()});
    }
    unitary.push_back(std::move(row));
  }
  out["unitary"] = std::move(unitary);
  out["measurement"] = qg.measurement;
  return out.dump();
}

namespace {

Complex complex_from_json(const json& pair) {
  if (!pair.is_array() || pair.size() != 2) {
    throw Error(Errc::io_error, "complex entries must be [re, im] pairs");
  }
  return {pair[0].get<double>(), pair[1].get<double>()};
}

}  // namespace

QuantumGenerator generator_from_json(const std::string& text) {
  json in;
  try {
    in = json::parse(text);
  } catch (const json::exception& e) {
    throw Error(Errc::io_error, std::string("generator JSON parse failure: ") + e.what());
  }
  try {
    const int k = in.at("k").get<int>();
    if (k < 2 || k > 4096) {
      throw Error(Errc::dimension_mismatch, "k outside [2, 4096]");
    }
    QuantumGenerator qg;
    const json& initial = in.at("initial");
    if (static_cast<int>(initial.size()) != k) {
      throw Error(Errc::dimension_mismatch, "initial state entry count differs from k");
    }
    qg.initial.resize(k);
    for (int i = 0; i < k; ++i) qg.initial[i] = complex_from_json(initial[i]);

    const json& unitary = in.at("unitary");
    if (static_cast<int>(unitary.size()) != k) {
      throw Error(Errc::dimension_mismatch, "unitary row count differs from k");
    }
    qg.unitary.resize(k, k);
    for (int r = 0; r < k; ++r) {
      if (static_cast<int>(unitary[r].size()) != k) {
        throw Error(Errc::dimension_mismatch, "unitary row width differs from k");
      }
      for (int c = 0; c < k; ++c) qg.unitary(r, c) = complex_from_json(unitary[r][c]);
    }

    for (const auto& v : in.at("measurement")) {
      const int outcome = v.get<int>();
      if (outcome != 0 && outcome != 1) {
        throw Error(Errc::incomplete_partition, "measurement value outside {0,1}");
      }
      qg.measurement.push_back(static_cast<std::uint8_t>(outcome));
    }
    return qg;
  } catch (const json::exception& e) {
    throw Error(Errc::io_error, std::string("generator JSON structure failure: ") + e.what());
  }
}

QuantumGenerator load_generator(const std::string& path) {
  return generator_from_json(read_file(path));
}

ParitySpec parity_spec_from_json(const std::string& text) {
  try {
    const json in = json::parse(text);
    ParitySpec spec;
    spec.n = in.at("n").get<int>();
    for (const auto& v : in.at("S")) spec.s.insert(v.get<int>());
    spec.eta = in.at("eta").get<double>();
    validate(spec);
    return spec;
  } catch (const json::exception& e) {
    throw Error(Errc::io_error, std::string("parity spec JSON failure: ") + e.what());
  }
}

ParitySpec load_parity_spec(const std::string& path) {
  return parity_spec_from_json(read_file(path));
}

void save_generator(const std::string& path, const QuantumGenerator& qg) {
  write_file_atomically(path, generator_to_json(qg) + "\n");
}

std::string distribution_to_text(const OutputDistribution& dist) {
  std::string out;
  out.reserve(dist.size() * (static_cast<std::size_t>(dist.length) + 22));
  for (std::uint64_t x = 0; x < dist.size(); ++x) {
    out += index_to_bits(x, dist.length);
    out += ' ';
    out += format_probability(dist.prob(x));
    out += '\n';
  }
  return out;
}

OutputDistribution distribution_from_text(std::istream& in) {
  OutputDistribution dist;
  std::vector<double> probs;
  std::string bits;
  double p = 0.0;
  int length = -1;
  while (in >> bits >> p) {
    if (length < 0) {
      length = static_cast<int>(bits.size());
    } else if (static_cast<int>(bits.size()) != length) {
      throw Error(Errc::io_error, "distribution lines have inconsistent string lengths");
    }
    if (bits_to_index(bits) != probs.size()) {
      throw Error(Errc::io_error, "distribution lines must appear in lexicographic order");
    }
    probs.push_back(p);
  }
  if (length < 1) {
    throw Error(Errc::io_error, "distribution file is empty");
  }
  dist.length = length;
  dist.probs = Eigen::Map<const Eigen::VectorXd>(probs.data(),
                                                 static_cast<Eigen::Index>(probs.size()));
  validate(dist);
  return dist;
}

OutputDistribution load_distribution(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::io_error, "cannot open '" + path + "'");
  return distribution_from_text(in);
}

void save_distribution(const std::string& path, const OutputDistribution& dist) {
  write_file_atomically(path, distribution_to_text(dist));
}

std::string samples_to_text(const Samples& samples) {
  std::string out;
  for (std::uint64_t x : samples.values) {
    out += index_to_bits(x, samples.length);
    out += '\n';
  }
  return out;
}

Samples samples_from_text(std::istream& in) {
  Samples samples;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (samples.length == 0) {
      samples.length = static_cast<int>(line.size());
    } else if (static_cast<int>(line.size()) != samples.length) {
      throw Error(Errc::io_error, "sample lines have inconsistent lengths");
    }
    samples.values.push_back(bits_to_index(line));
  }
  if (samples.values.empty()) {
    throw Error(Errc::empty_samples, "sample file contains no strings");
  }
  return samples;
}

Samples load_samples(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::io_error, "cannot open '" + path + "'");
  return samples_from_text(in);
}

void save_samples(const std::string& path, const Samples& samples) {
  write_file_atomically(path, samples_to_text(samples));
}

void write_file_atomically(const std::string& path, const std::string& content) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(Errc::io_error, "cannot open '" + tmp + "' for writing");
    out << content;
    if (!out) throw Error(Errc::io_error, "short write to '" + tmp + "'");
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    throw Error(Errc::io_error, "cannot move output into place at '" + path + "'");
  }
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::io_error, "cannot open '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

}  // namespace qgen
