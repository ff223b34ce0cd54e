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

#include <chrono>
#include <optional>
#include <string_view>
#include <vector>

namespace qnoise {

struct BackendSpec;

using Seconds = std::chrono::duration<double>;

/// Completeness tolerance for sum_k E_k^dagger E_k = I.
inline constexpr double kCompletenessTol = 1e-9;

/// A CPTP map rho -> sum_k E_k rho E_k^dagger on `num_qubits` qubits.
class KrausChannel {
 public:
  /// Validates shape and completeness; throws std::invalid_argument otherwise.
  explicit KrausChannel(std::vector<CMatrix> operators);
  static KrausChannel identity(int num_qubits);
  /// Minimal Kraus set of the channel whose Choi matrix is `choi`
  /// (J = sum_ij |i><j| ⊗ E(|i><j|)).
  static KrausChannel from_choi(const CMatrix& choi, int num_qubits);

  int num_qubits() const { return num_qubits_; }
  Eigen::Index dim() const { return static_cast<Eigen::Index>(dim_of(num_qubits_)); }
  const std::vector<CMatrix>& operators() const { return operators_; }

  /// True when the channel is exactly a single identity operator.
  bool is_identity() const;
  double completeness_error() const;

  /// Liouville matrix acting on the row-major vectorization of a local rho.
  CMatrix superoperator() const;
  CMatrix choi() const;
  /// Equivalent channel with at most d^2 operators.
  KrausChannel canonical() const;

  /// Kraus-sum action on a state of exactly num_qubits() qubits.
  DensityMatrix apply(const DensityMatrix& rho) const;

 private:
  int num_qubits_;
  std::vector<CMatrix> operators_;
};

/// `second ∘ first`: apply `first`, then `second`.
KrausChannel compose(const KrausChannel& second, const KrausChannel& first);
/// Independent channels on adjacent registers; `a` acts on the more significant qubits.
KrausChannel tensor(const KrausChannel& a, const KrausChannel& b);

KrausChannel bit_flip(double p);
KrausChannel phase_flip(double p);
KrausChannel bit_phase_flip(double p);
/// (1-p) rho + p I / 2^n, realized with the uniform n-qubit Pauli-string Kraus set.
KrausChannel depolarizing(double p, int num_qubits);
/// Amplitude damping toward |0> with populations decaying as exp(-t/T1) and
/// coherences as exp(-t/T2). Requires T1 > 0, 0 < T2 <= 2 T1, t >= 0.
KrausChannel thermal_relaxation(Seconds t1, Seconds t2, Seconds t_gate);

/// 1 - p (1 - 2^-n).
double depolarizing_fidelity(double p, int num_qubits);
/// Haar-averaged <psi|E(psi)|psi>, via F_avg = (d F_pro + 1) / (d + 1).
double average_gate_fidelity(const KrausChannel& ch);
double process_fidelity(const KrausChannel& ch);

struct CompositeCalibration {
  KrausChannel channel;  ///< depolarizing ∘ thermal
  double depolarizing_p;
  double thermal_fidelity;
  double target_fidelity;
};

/// Solves p = (F_R - F_targ) / (F_R - 2^-n) for the depolarizing strength that
/// brings a thermal-relaxation channel down to `f_target`. For two qubits the
/// thermal part is two independent single-qubit channels over `t_gate`.
/// Throws InfeasibleError when f_target > F_R and std::invalid_argument when
/// f_target <= 2^-n.
CompositeCalibration calibrate_composite(double f_target, Seconds t1, Seconds t2, Seconds t_gate,
                                         int num_qubits);

enum class NoiseKind { None, BitFlip, PhaseFlip, BitPhaseFlip, Depolarizing, Thermal, Native };

std::string_view noise_kind_name(NoiseKind k);
/// Accepts the CLI spellings (none, native, bitflip, phaseflip, bitphaseflip,
/// depolarizing, thermal) plus the snake_case forms.
NoiseKind noise_kind_from_name(std::string_view name);

struct NoiseSpec {
  NoiseKind kind = NoiseKind::None;
  double strength = 0.0;  ///< unused for Thermal and Native

  /// Throws std::invalid_argument unless 0 <= strength <= 1.
  void validate() const;
  friend bool operator==(const NoiseSpec&, const NoiseSpec&) = default;
};

/// Channels attached after every non-virtual gate on the gate's qubits.
struct NoiseModel {
  KrausChannel one_qubit;
  KrausChannel two_qubit;
  /// Set when the model was derived from an elementary spec; enables the
  /// wider-gate generalization used for logical (unlowered) circuits.
  std::optional<NoiseSpec> elementary;
  /// Per-qubit thermal channel for wider gates under NoiseKind::Thermal.
  std::optional<KrausChannel> thermal_single;

  /// Channel for a gate of the given arity. Arity >= 3 is supported only for
  /// elementary models (Pauli flips and thermal act per qubit, depolarizing jointly up to 4 qubits).
  KrausChannel channel_for(int arity) const;
  bool is_identity() const { return one_qubit.is_identity() && two_qubit.is_identity(); }
};

/// Composite model calibrated to the backend's F1 over TG1 and F2 over TG2.
NoiseModel build_native_model(const BackendSpec& backend);

/// Model for any NoiseSpec. Thermal and Native need `backend`; None yields nullopt.
std::optional<NoiseModel> make_noise_model(const NoiseSpec& spec, const BackendSpec* backend);

}  // namespace qnoise
