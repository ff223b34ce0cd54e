// Copyright 2026 The qnoise Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include "qnoise/circuit.hpp"
#include "qnoise/hardware.hpp"
#include "qnoise/noise.hpp"

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace qnoise {

/// One simulated configuration point of a Grover or QFT sweep.
struct ExperimentRecord {
  std::string algorithm;
  std::string backend;
  std::string connectivity;  ///< "native" or "full"
  std::string noise;
  double noise_strength = 0.0;
  int qubits = 0;
  std::uint64_t seed = 0;
  int depth_logical = 0;
  int depth_transpiled = 0;
  int swaps = 0;
  double success_probability = 0.0;
  double fidelity = 0.0;
  std::optional<double> wall_time;  ///< seconds; only filled when timing is requested

  friend bool operator==(const ExperimentRecord&, const ExperimentRecord&) = default;
};

struct ExperimentPoint {
  std::string algorithm;  ///< "grover" or "qft"
  BackendSpec backend;
  bool full_connectivity = false;
  NoiseSpec noise{NoiseKind::Native, 0.0};
  int qubits = 2;
  std::uint64_t seed = 0;
};

/// Marked Grover element for a sweep point, first character is qubit 0.
std::string grover_marked(int num_qubits, std::uint64_t seed);
/// Basis state produced by the QFT experiment for a sweep point.
std::size_t qft_target(int num_qubits, std::uint64_t seed);

/// Logical circuit of an experiment point together with its ideal output bitstring.
std::pair<Circuit, std::string> experiment_circuit(std::string_view algorithm, int num_qubits, std::uint64_t seed);

/// Build, transpile, simulate and score a single point.
ExperimentRecord run_experiment(const ExperimentPoint& point, bool timing = false);

/// Runs `count` independent tasks on `jobs` worker threads. Each task writes
/// only its own result slot, so output order never depends on scheduling.
void parallel_for(std::size_t count, int jobs, const std::function<void(std::size_t)>& task);

inline constexpr std::string_view kRecordColumns[] = {
    "algorithm", "backend",          "connectivity", "noise",   "noise_strength",      "qubits",   "seed",
    "depth_logical", "depth_transpiled", "swaps",    "success_probability", "fidelity", "wall_time"};

void write_records_csv(std::ostream& os, std::span<const ExperimentRecord> records);
void write_records_json(std::ostream& os, std::span<const ExperimentRecord> records);

/// "a..b" or a single integer; throws std::invalid_argument otherwise.
std::pair<int, int> parse_qubit_range(std::string_view text);

/// "all", a builtin name, or a path to a backend file.
std::vector<BackendSpec> resolve_backends(std::string_view selector);

/// Entry point of the qnoise tool. Returns the process exit code: 0 on
/// success, 1 when some configuration points failed, 2 on usage errors.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace qnoise
