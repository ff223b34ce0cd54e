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

#include "qnoise/gates.hpp"

#include <array>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace qnoise {

class Circuit {
 public:
  Circuit() = default;
  explicit Circuit(int num_qubits);

  int num_qubits() const { return num_qubits_; }
  const std::vector<GateInstance>& instructions() const { return instructions_; }
  std::size_t size() const { return instructions_.size(); }
  bool empty() const { return instructions_.empty(); }

  /// Validates the gate and its qubit range before appending.
  Circuit& add(GateInstance g);
  Circuit& add(Gate kind, std::vector<int> qubits, std::vector<double> params = {});
  Circuit& append(const Circuit& other);

  friend bool operator==(const Circuit&, const Circuit&) = default;

 private:
  int num_qubits_ = 0;
  std::vector<GateInstance> instructions_;
};

/// Longest chain of non-virtual instructions that pairwise share a qubit.
int depth(const Circuit& c);

// Algorithm builders ---------------------------------------------------------

inline constexpr int kMaxAlgorithmQubits = 12;

/// Optimal Grover iteration count floor(pi/4 * sqrt(2^n)).
int grover_iterations(int num_qubits);

/// Uniform superposition followed by grover_iterations(n) rounds of
/// {X-conjugated MCZ phase oracle, diffusion}. `marked` is read with its first
/// character as qubit 0.
Circuit build_grover(int num_qubits, std::string_view marked);

/// H and CP(pi/2^k) ladder per qubit, followed by the qubit-reversal SWAP layer.
Circuit build_qft(int num_qubits);

/// Product-state preparation whose image under build_qft(n) is |target>.
Circuit build_qft_input(int num_qubits, std::size_t target);

inline constexpr int kVqcQubits = 4;
inline constexpr int kVqcParams = 12;

struct VqcParameters {
  std::array<double, kVqcParams> theta{};

  double& operator[](std::size_t i) { return theta[i]; }
  double operator[](std::size_t i) const { return theta[i]; }
  friend bool operator==(const VqcParameters&, const VqcParameters&) = default;
};

/// Four-qubit regression circuit: Ry(asin x) encoding on every qubit, then one
/// trainable Ry/Rz layer with CX entanglers (control on the higher index).
/// The readout is <Z> on kVqcReadoutQubit.
Circuit build_vqc(double x, const VqcParameters& theta);

inline constexpr int kVqcReadoutQubit = 1;

// Text IR --------------------------------------------------------------------
//
//   qubits N
//   GATE q0[,q1..] [@ p0,p1..]
//
// Blank lines and '#' comments are ignored.

void write_circuit(std::ostream& os, const Circuit& c);
std::string to_text(const Circuit& c);
/// Throws ParseError with the offending line number.
Circuit read_circuit(std::istream& is);
Circuit parse_circuit(std::string_view text);

}  // namespace qnoise
