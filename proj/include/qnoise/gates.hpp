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

#include "qnoise/qmath.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace qnoise {

/// Gate catalog. Covers the logical gates used by the algorithm builders and
/// every native gate of the modeled vendors.
enum class Gate {
  X,
  SX,
  H,
  Y,
  Z,
  Rx,
  Ry,
  Rz,
  P,
  CX,
  CZ,
  CP,
  XY,
  SWAP,
  MS,
  GPi,
  GPi2,
  MCZ,
};

inline constexpr Gate kAllGates[] = {Gate::X,  Gate::SX, Gate::H,  Gate::Y,    Gate::Z,   Gate::Rx,
                                     Gate::Ry, Gate::Rz, Gate::P,  Gate::CX,   Gate::CZ,  Gate::CP,
                                     Gate::XY, Gate::SWAP, Gate::MS, Gate::GPi, Gate::GPi2, Gate::MCZ};

std::string_view gate_name(Gate g);
/// Case-sensitive catalog lookup; throws std::invalid_argument for unknown names.
Gate gate_from_name(std::string_view name);
std::optional<Gate> try_gate_from_name(std::string_view name);

/// Fixed arity of the gate; 0 for MCZ, whose arity is given by its qubit list (>= 2).
int gate_arity(Gate g);
int gate_param_count(Gate g);

/// Diagonal phase gates that vendors implement in software: zero duration,
/// zero error and no contribution to depth.
bool is_virtual(Gate g);

struct GateInstance {
  Gate kind;
  std::vector<int> qubits;
  std::vector<double> params;

  /// Throws std::invalid_argument if qubits repeat, the qubit count does not
  /// match the arity, or the parameter count is wrong.
  void validate() const;
  int arity() const { return static_cast<int>(qubits.size()); }

  friend bool operator==(const GateInstance&, const GateInstance&) = default;
};

GateInstance make_gate(Gate kind, std::vector<int> qubits, std::vector<double> params = {});

/// Unitary of the gate in its own qubit order (qubits[0] is the most significant bit).
CMatrix unitary_of(const GateInstance& g);

// Matrix conventions, usable without a GateInstance.
namespace mat {
CMatrix identity(int num_qubits);
CMatrix x();
CMatrix y();
CMatrix z();
CMatrix h();
CMatrix sx();
CMatrix rx(double theta);
CMatrix ry(double theta);
CMatrix rz(double theta);
CMatrix phase(double lambda);
CMatrix gpi(double phi);
CMatrix gpi2(double phi);
CMatrix cx();
CMatrix cz();
CMatrix cp(double lambda);
CMatrix xy(double theta);
CMatrix swap();
CMatrix ms();
CMatrix mcz(int num_qubits);
}  // namespace mat

}  // namespace qnoise
