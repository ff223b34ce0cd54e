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
#include "qnoise/noise.hpp"
#include "qnoise/qmath.hpp"

#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

namespace qnoise {

/// Widest register the dense density-matrix engine accepts.
inline constexpr int kMaxSimQubits = 12;

struct SimulationResult {
  DensityMatrix final_state;
  std::vector<double> probabilities;  ///< diagonal of final_state, basis order
  int depth = 0;
};

struct SimulationOptions {
  /// Validate the density-matrix invariants after every instruction.
  bool check_each_step = false;
};

/// Exact evolution from |0...0><0...0|: each instruction's unitary, followed
/// (for non-virtual gates, when `noise` is given) by the arity-matching channel
/// on the gate's qubits. Throws ResourceError above kMaxSimQubits.
SimulationResult simulate(const Circuit& c, const NoiseModel* noise = nullptr,
                          const SimulationOptions& options = {});
SimulationResult simulate(const Circuit& c, const NoiseModel& noise, const SimulationOptions& options = {});

/// Probability of the basis outcome `target` (first character is qubit 0).
double success_probability(const SimulationResult& r, std::string_view target);
/// <psi| rho |psi>.
double state_fidelity(const SimulationResult& r, const PureState& ideal);
/// Tr(rho Z_qubit).
double expectation_z(const SimulationResult& r, int qubit);
double expectation_z(const DensityMatrix& rho, int qubit);

/// Smallest s with s >= ln(2/delta) / (2 epsilon^2).
std::uint64_t hoeffding_samples(double epsilon, double delta);

/// Full 2^n unitary of a circuit (noiseless reference path).
CMatrix circuit_unitary(const Circuit& c);
/// Noiseless output statevector starting from |0...0>.
PureState ideal_output(const Circuit& c);

/// Bitstring (qubit 0 first) -> basis index.
std::size_t basis_index(std::string_view bits);
std::string basis_label(std::size_t index, int num_qubits);

// In-place kernels on a 2^n x 2^n density matrix; `targets[0]` is the most
// significant local qubit.

/// rho <- U rho U^dagger
void apply_unitary(CMatrix& rho, const CMatrix& u, std::span<const int> targets);
/// Local Liouville action: vec(rho_local) <- S vec(rho_local), row-major vectorization.
void apply_superoperator(CMatrix& rho, const CMatrix& s, std::span<const int> targets);

}  // namespace qnoise
