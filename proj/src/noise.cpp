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

#include "qnoise/noise.hpp"

#include "qnoise/errors.hpp"
#include "qnoise/gates.hpp"
#include "qnoise/hardware.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <sstream>
#include <string>

namespace qnoise {

namespace {

// Choi eigenvalues below this are treated as numerical noise.
constexpr double kChoiCutoff = 1e-15;

void check_probability(double p, const char* what) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw std::invalid_argument(std::string(what) + ": probability " + std::to_string(p) +
                                " outside [0, 1]");
  }
}

KrausChannel pauli_mixture(double p, const CMatrix& pauli, const char* what) {
  check_probability(p, what);
  if (p == 0.0) return KrausChannel::identity(1);
  return KrausChannel({std::sqrt(1.0 - p) * mat::identity(1), std::sqrt(p) * pauli});
}

std::vector<CMatrix> pauli_strings(int n) {
  const CMatrix singles[] = {mat::identity(1), mat::x(), mat::y(), mat::z()};
  std::vector<CMatrix> out{CMatrix::Identity(1, 1)};
  for (int q = 0; q < n; ++q) {
    std::vector<CMatrix> next;
    next.reserve(out.size() * 4);
    for (const auto& prefix : out) {
      for (const auto& s : singles) next.push_back(tensor_product(prefix, s));
    }
    out = std::move(next);
  }
  return out;
}

}  // namespace

KrausChannel::KrausChannel(std::vector<CMatrix> operators) : operators_(std::move(operators)) {
  if (operators_.empty()) throw std::invalid_argument("KrausChannel: no operators");
  const auto d = operators_.front().rows();
  num_qubits_ = qubits_of(d);
  for (const auto& e : operators_) {
    if (e.rows() != d || e.cols() != d) throw std::invalid_argument("KrausChannel: operator shape mismatch");
    if (!e.allFinite()) throw std::invalid_argument("KrausChannel: non-finite operator entry");
  }
  if (completeness_error() > kCompletenessTol) {
    throw std::invalid_argument("KrausChannel: operators are not trace preserving");
  }
}

KrausChannel KrausChannel::identity(int num_qubits) { return KrausChannel({mat::identity(num_qubits)}); }

double KrausChannel::completeness_error() const {
  CMatrix acc = CMatrix::Zero(dim(), dim());
  for (const auto& e : operators_) acc += e.adjoint() * e;
  return (acc - CMatrix::Identity(dim(), dim())).cwiseAbs().maxCoeff();
}

bool KrausChannel::is_identity() const {
  return operators_.size() == 1 && operators_.front() == CMatrix::Identity(dim(), dim());
}

CMatrix KrausChannel::superoperator() const {
  const auto d = dim();
  CMatrix s = CMatrix::Zero(d * d, d * d);
  for (const auto& e : operators_) s += tensor_product(e, e.conjugate());
  return s;
}

CMatrix KrausChannel::choi() const {
  // J[(i,k),(j,l)] = sum_m E_m[k,i] conj(E_m[l,j])
  const auto d = dim();
  CMatrix j = CMatrix::Zero(d * d, d * d);
  for (const auto& e : operators_) {
    Eigen::Map<const CVector> col_major(e.data(), d * d);  // index i*d + k holds E[k,i]
    j += col_major * col_major.adjoint();
  }
  return j;
}

KrausChannel KrausChannel::from_choi(const CMatrix& choi, int num_qubits) {
  const auto d = static_cast<Eigen::Index>(dim_of(num_qubits));
  if (choi.rows() != d * d || choi.cols() != d * d) throw std::invalid_argument("from_choi: bad shape");
  Eigen::SelfAdjointEigenSolver<CMatrix> es(choi);
  std::vector<CMatrix> ops;
  for (Eigen::Index m = es.eigenvalues().size() - 1; m >= 0; --m) {
    const double lambda = es.eigenvalues()(m);
    if (lambda <= kChoiCutoff) continue;
    CVector v = std::sqrt(lambda) * es.eigenvectors().col(m);
    ops.emplace_back(Eigen::Map<const CMatrix>(v.data(), d, d));
  }
  if (ops.empty()) throw std::invalid_argument("from_choi: Choi matrix has no positive eigenvalue");
  return KrausChannel(std::move(ops));
}

KrausChannel KrausChannel::canonical() const {
  if (is_identity()) return *this;
  return from_choi(choi(), num_qubits_);
}

DensityMatrix KrausChannel::apply(const DensityMatrix& rho) const {
  if (rho.num_qubits() != num_qubits_) throw std::invalid_argument("KrausChannel::apply: width mismatch");
  CMatrix out = CMatrix::Zero(dim(), dim());
  for (const auto& e : operators_) out += e * rho.matrix() * e.adjoint();
  return DensityMatrix::unchecked(std::move(out));
}

KrausChannel compose(const KrausChannel& second, const KrausChannel& first) {
  if (second.num_qubits() != first.num_qubits()) throw std::invalid_argument("compose: width mismatch");
  if (first.is_identity()) return second;
  if (second.is_identity()) return first;
  std::vector<CMatrix> ops;
  ops.reserve(first.operators().size() * second.operators().size());
  for (const auto& b : second.operators()) {
    for (const auto& a : first.operators()) ops.push_back(b * a);
  }
  return KrausChannel(std::move(ops)).canonical();
}

KrausChannel tensor(const KrausChannel& a, const KrausChannel& b) {
  std::vector<CMatrix> ops;
  ops.reserve(a.operators().size() * b.operators().size());
  for (const auto& ea : a.operators()) {
    for (const auto& eb : b.operators()) ops.push_back(tensor_product(ea, eb));
  }
  return KrausChannel(std::move(ops));
}

KrausChannel bit_flip(double p) { return pauli_mixture(p, mat::x(), "bit_flip"); }
KrausChannel phase_flip(double p) { return pauli_mixture(p, mat::z(), "phase_flip"); }
KrausChannel bit_phase_flip(double p) { return pauli_mixture(p, mat::y(), "bit_phase_flip"); }

KrausChannel depolarizing(double p, int num_qubits) {
  check_probability(p, "depolarizing");
  if (num_qubits < 1 || num_qubits > 4) {
    throw std::invalid_argument("depolarizing: qubit count must be in [1, 4]");
  }
  if (p == 0.0) return KrausChannel::identity(num_qubits);
  const double d2 = std::ldexp(1.0, 2 * num_qubits);
  auto ops = pauli_strings(num_qubits);
  ops.front() *= std::sqrt(1.0 - p + p / d2);
  for (std::size_t i = 1; i < ops.size(); ++i) ops[i] *= std::sqrt(p / d2);
  return KrausChannel(std::move(ops));
}

KrausChannel thermal_relaxation(Seconds t1, Seconds t2, Seconds t_gate) {
  if (!(t1.count() > 0.0)) throw std::invalid_argument("thermal_relaxation: T1 must be positive");
  if (!(t2.count() > 0.0)) throw std::invalid_argument("thermal_relaxation: T2 must be positive");
  if (t2.count() > 2.0 * t1.count()) {
    throw std::invalid_argument("thermal_relaxation: T2 > 2 T1 is not completely positive");
  }
  if (!(t_gate.count() >= 0.0)) throw std::invalid_argument("thermal_relaxation: negative gate time");
  if (t_gate.count() == 0.0) return KrausChannel::identity(1);

  const double pop = std::exp(-t_gate / t1);  // surviving excited population
  const double coh = std::exp(-t_gate / t2);  // surviving coherence
  // Choi matrix in the |i k> basis (input i, output k).
  CMatrix j = CMatrix::Zero(4, 4);
  j(0, 0) = 1.0;
  j(0, 3) = j(3, 0) = coh;
  j(2, 2) = 1.0 - pop;
  j(3, 3) = pop;
  return KrausChannel::from_choi(j, 1);
}

double depolarizing_fidelity(double p, int num_qubits) {
  return 1.0 - p * (1.0 - std::ldexp(1.0, -num_qubits));
}

double process_fidelity(const KrausChannel& ch) {
  const double d = static_cast<double>(ch.dim());
  double acc = 0.0;
  for (const auto& e : ch.operators()) acc += std::norm(e.trace());
  return acc / (d * d);
}

double average_gate_fidelity(const KrausChannel& ch) {
  const double d = static_cast<double>(ch.dim());
  return (d * process_fidelity(ch) + 1.0) / (d + 1.0);
}

CompositeCalibration calibrate_composite(double f_target, Seconds t1, Seconds t2, Seconds t_gate,
                                         int num_qubits) {
  if (num_qubits != 1 && num_qubits != 2) {
    throw std::invalid_argument("calibrate_composite: only one- and two-qubit channels");
  }
  const double floor = std::ldexp(1.0, -num_qubits);
  if (!(f_target > floor) || f_target > 1.0) {
    throw std::invalid_argument("calibrate_composite: target fidelity " + std::to_string(f_target) +
                                " outside (2^-n, 1]");
  }
  const KrausChannel single = thermal_relaxation(t1, t2, t_gate);
  const KrausChannel thermal = num_qubits == 1 ? single : tensor(single, single);
  const double f_thermal = average_gate_fidelity(thermal);
  if (f_target > f_thermal) {
    std::ostringstream msg;
    msg.precision(10);
    msg << "infeasible calibration: thermal relaxation alone gives F_R = " << f_thermal
        << ", below the target F_targ = " << f_target;
    throw InfeasibleError(msg.str());
  }
  const double p = (f_thermal - f_target) / (f_thermal - floor);
  KrausChannel channel = p == 0.0 ? thermal : compose(depolarizing(p, num_qubits), thermal);
  return CompositeCalibration{std::move(channel), p, f_thermal, f_target};
}

std::string_view noise_kind_name(NoiseKind k) {
  switch (k) {
    case NoiseKind::None: return "none";
    case NoiseKind::BitFlip: return "bitflip";
    case NoiseKind::PhaseFlip: return "phaseflip";
    case NoiseKind::BitPhaseFlip: return "bitphaseflip";
    case NoiseKind::Depolarizing: return "depolarizing";
    case NoiseKind::Thermal: return "thermal";
    case NoiseKind::Native: return "native";
  }
  return "?";
}

NoiseKind noise_kind_from_name(std::string_view name) {
  if (name == "none") return NoiseKind::None;
  if (name == "bitflip" || name == "bit_flip") return NoiseKind::BitFlip;
  if (name == "phaseflip" || name == "phase_flip") return NoiseKind::PhaseFlip;
  if (name == "bitphaseflip" || name == "bit_phase_flip") return NoiseKind::BitPhaseFlip;
  if (name == "depolarizing") return NoiseKind::Depolarizing;
  if (name == "thermal") return NoiseKind::Thermal;
  if (name == "native" || name == "native_composite") return NoiseKind::Native;
  throw std::invalid_argument("unknown noise kind '" + std::string(name) + "'");
}

void NoiseSpec::validate() const { check_probability(strength, "NoiseSpec"); }

KrausChannel NoiseModel::channel_for(int arity) const {
  if (arity == 1) return one_qubit;
  if (arity == 2) return two_qubit;
  if (arity < 1) throw std::invalid_argument("channel_for: arity must be positive");
  auto repeat = [arity](const KrausChannel& single) {
    KrausChannel out = single;
    for (int i = 1; i < arity; ++i) out = tensor(out, single).canonical();
    return out;
  };
  if (thermal_single) return repeat(*thermal_single);
  if (!elementary) {
    throw std::invalid_argument("noise model has no channel for " + std::to_string(arity) +
                                "-qubit gates; lower the circuit first");
  }
  switch (elementary->kind) {
    case NoiseKind::None: return KrausChannel::identity(arity);
    case NoiseKind::BitFlip:
    case NoiseKind::PhaseFlip:
    case NoiseKind::BitPhaseFlip: return repeat(one_qubit);
    case NoiseKind::Depolarizing: return depolarizing(elementary->strength, arity);
    default: break;
  }
  throw std::invalid_argument("noise model has no channel for wide gates");
}

NoiseModel build_native_model(const BackendSpec& backend) {
  auto one = calibrate_composite(backend.f1, backend.t1, backend.t2, backend.tg1, 1);
  auto two = calibrate_composite(backend.f2, backend.t1, backend.t2, backend.tg2, 2);
  return NoiseModel{std::move(one.channel), std::move(two.channel), std::nullopt, std::nullopt};
}

std::optional<NoiseModel> make_noise_model(const NoiseSpec& spec, const BackendSpec* backend) {
  spec.validate();
  const double p = spec.strength;
  auto per_qubit = [&](KrausChannel single) {
    KrausChannel pair = tensor(single, single);
    return NoiseModel{std::move(single), std::move(pair), spec, std::nullopt};
  };
  switch (spec.kind) {
    case NoiseKind::None: return std::nullopt;
    case NoiseKind::BitFlip: return per_qubit(bit_flip(p));
    case NoiseKind::PhaseFlip: return per_qubit(phase_flip(p));
    case NoiseKind::BitPhaseFlip: return per_qubit(bit_phase_flip(p));
    case NoiseKind::Depolarizing:
      return NoiseModel{depolarizing(p, 1), depolarizing(p, 2), spec, std::nullopt};
    case NoiseKind::Thermal: {
      if (backend == nullptr) throw std::invalid_argument("thermal noise needs a backend");
      KrausChannel one = thermal_relaxation(backend->t1, backend->t2, backend->tg1);
      KrausChannel two_single = thermal_relaxation(backend->t1, backend->t2, backend->tg2);
      KrausChannel two = tensor(two_single, two_single);
      return NoiseModel{std::move(one), std::move(two), spec, std::move(two_single)};
    }
    case NoiseKind::Native:
      if (backend == nullptr) throw std::invalid_argument("native noise needs a backend");
      return build_native_model(*backend);
  }
  return std::nullopt;
}

}  // namespace qnoise
