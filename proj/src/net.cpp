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

#include "qgen/net.hpp"

#include <cmath>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>

namespace qgen {

int max_state_exponent(int k, double eps0) {
  const double ratio = static_cast<double>(k) / eps0;
  return static_cast<int>(std::ceil(ratio * std::log(ratio)));
}

void validate(const DiscretizedState& state) {
  const int k = static_cast<int>(state.exponents.size());
  if (k < 2) {
    throw Error(Errc::invalid_spec, "discretized state needs at least 2 entries");
  }
  if (!(state.eps0 > 0.0) || !(state.eps0 < static_cast<double>(k))) {
    throw Error(Errc::invalid_spec, "eps0 must lie in (0, k)");
  }
  const int cap = max_state_exponent(k, state.eps0);
  for (int i = 0; i < k; ++i) {
    if (state.exponents[i] < 0 || state.exponents[i] > cap) {
      throw Error(Errc::invalid_spec,
                  "exponent " + std::to_string(state.exponents[i]) + " outside [0, " +
                      std::to_string(cap) + "]");
    }
  }
}

StateVector discretized_state_vector(const DiscretizedState& state) {
  validate(state);
  const int k = static_cast<int>(state.exponents.size());
  const double q = 1.0 - state.eps0 / static_cast<double>(k);
  CVector v(k);
  for (int i = 0; i < k; ++i) {
    v[i] = Complex{std::pow(q, static_cast<double>(state.exponents[i])), 0.0};
  }
  return v / v.norm();
}

QuantumGenerator compile(const NetEntry& entry) {
  QuantumGenerator qg;
  qg.initial = discretized_state_vector(entry.state);
  qg.unitary = circuit_unitary(entry.circuit);
  qg.measurement = entry.measurement;
  validate(qg);
  return qg;
}

double state_distance_bound(double eps0, int n) {
  if (!(eps0 >= 0.0)) {
    throw Error(Errc::invalid_spec, "eps0 must be nonnegative");
  }
  return static_cast<double>(n + 2) * eps0;
}

namespace {

std::vector<Gate> gate_instances(int width) {
  std::vector<Gate> instances;
  for (GateKind kind : {GateKind::identity, GateKind::s, GateKind::k}) {
    for (int w = 0; w < width; ++w) instances.push_back({kind, {w}});
  }
  if (width >= 2) {
    for (int a = 0; a < width; ++a) {
      for (int b = 0; b < width; ++b) {
        if (a != b) instances.push_back({GateKind::cnot, {a, b}});
      }
    }
  }
  if (width >= 3) {
    for (int a = 0; a < width; ++a) {
      for (int b = 0; b < width; ++b) {
        for (int c = 0; c < width; ++c) {
          if (a != b && a != c && b != c) instances.push_back({GateKind::toffoli, {a, b, c}});
        }
      }
    }
  }
  return instances;
}

// Exponent vectors are canonicalized to min = 0: shifting every exponent by
// a constant rescales the state uniformly and normalization erases it.
std::vector<Eigen::VectorXi> grid_states(int k, int grid) {
  std::vector<Eigen::VectorXi> states;
  Eigen::VectorXi current = Eigen::VectorXi::Zero(k);
  while (true) {
    if (current.minCoeff() == 0) states.push_back(current);
    int pos = k - 1;
    while (pos >= 0 && current[pos] == grid) {
      current[pos] = 0;
      --pos;
    }
    if (pos < 0) break;
    ++current[pos];
  }
  return states;
}

double raw_entry_count(int instances, int max_gates, std::size_t states,
                       std::size_t partitions) {
  double circuits = 0.0;
  double level = 1.0;
  for (int d = 0; d <= max_gates; ++d) {
    circuits += level;
    level *= static_cast<double>(instances);
  }
  return circuits * static_cast<double>(states) * static_cast<double>(partitions);
}

}  // namespace

std::vector<NetEntry> enumerate_net(const NetParams& params) {
  if (params.width < 1 || params.max_gates < 0 || params.state_grid < 0) {
    throw Error(Errc::invalid_spec, "width must be >= 1, max_gates and state_grid >= 0");
  }
  if (params.measurements.empty()) {
    throw Error(Errc::invalid_spec, "at least one measurement partition is required");
  }
  const int k = 1 << params.width;
  const int exponent_cap = max_state_exponent(k, params.eps0);
  const int grid = std::min(params.state_grid, exponent_cap);

  const std::vector<Gate> instances = gate_instances(params.width);
  const std::vector<Eigen::VectorXi> states = grid_states(k, grid);

  const double raw = raw_entry_count(static_cast<int>(instances.size()), params.max_gates,
                                     states.size(), params.measurements.size());
  if (raw > static_cast<double>(params.max_raw_entries)) {
    std::ostringstream msg;
    msg << "raw enumeration of " << raw << " entries exceeds the cap of "
        << params.max_raw_entries;
    throw Error(Errc::enumeration_too_large, msg.str());
  }

  // Kept entries are bucketed by the first probability rounded to a grid
  // coarser than dedup_tol; a candidate within dedup_tol of a kept entry
  // lands in the same or an adjacent bucket.
  std::vector<NetEntry> net;
  std::vector<OutputDistribution> net_dists;
  std::map<long long, std::vector<std::size_t>> buckets;
  const double bucket_width = 1e-8;

  auto consider = [&](const NetEntry& entry) {
    const QuantumGenerator qg = compile(entry);
    const OutputDistribution dist = exact_distribution(qg, params.dedup_length);
    const long long key = std::llround(dist.probs[0] / bucket_width);
    for (long long probe = key - 1; probe <= key + 1; ++probe) {
      auto it = buckets.find(probe);
      if (it == buckets.end()) continue;
      for (std::size_t idx : it->second) {
        if (linf_distance(dist, net_dists[idx]) <= params.dedup_tol) return;
      }
    }
    buckets[key].push_back(net.size());
    net.push_back(entry);
    net_dists.push_back(dist);
  };

  std::vector<std::size_t> gate_choice;
  for (int count = 0; count <= params.max_gates; ++count) {
    gate_choice.assign(static_cast<std::size_t>(count), 0);
    while (true) {
      GateCircuit circuit;
      circuit.width = params.width;
      for (std::size_t g : gate_choice) circuit.gates.push_back(instances[g]);
      for (const Eigen::VectorXi& exponents : states) {
        for (const MeasurementPartition& measurement : params.measurements) {
          consider({circuit, {exponents, params.eps0}, measurement});
        }
      }
      // next lexicographic gate choice
      int pos = count - 1;
      while (pos >= 0 && gate_choice[static_cast<std::size_t>(pos)] == instances.size() - 1) {
        gate_choice[static_cast<std::size_t>(pos)] = 0;
        --pos;
      }
      if (pos < 0) break;
      ++gate_choice[static_cast<std::size_t>(pos)];
    }
  }
  return net;
}

void save_net(std::ostream& out, const std::vector<NetEntry>& net) {
  if (net.empty()) {
    throw Error(Errc::empty_net, "refusing to save an empty net");
  }
  out << "# width=" << net.front().circuit.width << " eps0=" << net.front().state.eps0
      << "\n";
  for (const NetEntry& entry : net) {
    out << "circuit=" << format_circuit(entry.circuit) << " state=";
    for (int i = 0; i < entry.state.exponents.size(); ++i) {
      if (i > 0) out << ',';
      out << entry.state.exponents[i];
    }
    out << " meas=";
    for (std::size_t i = 0; i < entry.measurement.size(); ++i) {
      if (i > 0) out << ',';
      out << static_cast<int>(entry.measurement[i]);
    }
    out << "\n";
  }
}

namespace {

std::vector<int> parse_int_list(std::string_view text) {
  std::vector<int> values;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t sep = text.find(',', pos);
    if (sep == std::string_view::npos) sep = text.size();
    values.push_back(std::stoi(std::string(text.substr(pos, sep - pos))));
    pos = sep + 1;
  }
  return values;
}

std::string_view field_value(std::string_view line, std::string_view key) {
  const std::size_t at = line.find(key);
  if (at == std::string_view::npos) {
    throw Error(Errc::io_error, "net manifest line missing field '" + std::string(key) + "'");
  }
  const std::size_t start = at + key.size();
  std::size_t end = line.find(' ', start);
  if (end == std::string_view::npos) end = line.size();
  return line.substr(start, end - start);
}

}  // namespace

std::vector<NetEntry> load_net(std::istream& in) {
  std::string header;
  if (!std::getline(in, header) || header.rfind("# width=", 0) != 0) {
    throw Error(Errc::io_error, "net manifest must start with '# width=... eps0=...'");
  }
  const int width = std::stoi(std::string(field_value(header, "width=")));
  const double eps0 = std::stod(std::string(field_value(header, "eps0=")));

  std::vector<NetEntry> net;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    NetEntry entry;
    entry.circuit = parse_circuit(field_value(line, "circuit="), width);
    const std::vector<int> exponents = parse_int_list(field_value(line, "state="));
    entry.state.exponents =
        Eigen::Map<const Eigen::VectorXi>(exponents.data(), static_cast<int>(exponents.size()));
    entry.state.eps0 = eps0;
    for (int v : parse_int_list(field_value(line, "meas="))) {
      if (v != 0 && v != 1) throw Error(Errc::io_error, "partition value outside {0,1}");
      entry.measurement.push_back(static_cast<std::uint8_t>(v));
    }
    compile(entry);  // structural check
    net.push_back(std::move(entry));
  }
  if (net.empty()) {
    throw Error(Errc::empty_net, "net manifest contains no entries");
  }
  return net;
}

}  // namespace qgen
