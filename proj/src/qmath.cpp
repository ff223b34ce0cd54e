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

#include "qnoise/qmath.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <string>

namespace qnoise {

namespace {

void check_targets(std::span<const int> targets, int num_qubits, const char* what) {
  for (std::size_t i = 0; i < targets.size(); ++i) {
    if (targets[i] < 0 || targets[i] >= num_qubits) {
      throw std::invalid_argument(std::string(what) + ": qubit index " +
                                  std::to_string(targets[i]) + " out of range");
    }
    for (std::size_t j = 0; j < i; ++j) {
      if (targets[i] == targets[j]) {
        throw std::invalid_argument(std::string(what) + ": duplicate qubit " +
                                    std::to_string(targets[i]));
      }
    }
  }
}

// Bit position (from the least significant end) of qubit q in an n-qubit index.
inline int bit_of(int q, int n) { return n - 1 - q; }

}  // namespace

int qubits_of(Eigen::Index dim) {
  if (dim <= 0 || (dim & (dim - 1)) != 0) {
    throw std::invalid_argument("dimension " + std::to_string(dim) + " is not a power of two");
  }
  int n = 0;
  while ((Eigen::Index{1} << n) < dim) ++n;
  return n;
}

double phase_invariant_distance(const CMatrix& a, const CMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw std::invalid_argument("phase_invariant_distance: shape mismatch");
  }
  Eigen::Index r = 0;
  Eigen::Index c = 0;
  a.cwiseAbs().maxCoeff(&r, &c);
  Complex phase{1.0, 0.0};
  if (std::abs(b(r, c)) > 0.0 && std::abs(a(r, c)) > 0.0) {
    phase = a(r, c) / b(r, c);
    phase /= std::abs(phase);
  }
  return (a - phase * b).cwiseAbs().maxCoeff();
}

PureState::PureState(CVector amplitudes)
    : num_qubits_(qubits_of(amplitudes.size())), amplitudes_(std::move(amplitudes)) {
  if (!amplitudes_.allFinite()) throw std::invalid_argument("PureState: non-finite amplitude");
  if (std::abs(amplitudes_.norm() - 1.0) > kStructTol) {
    throw std::invalid_argument("PureState: amplitudes are not normalized");
  }
}

PureState PureState::basis(int num_qubits, std::size_t index) {
  const auto d = dim_of(num_qubits);
  if (index >= d) throw std::invalid_argument("PureState::basis: index out of range");
  CVector v = CVector::Zero(static_cast<Eigen::Index>(d));
  v(static_cast<Eigen::Index>(index)) = 1.0;
  return PureState(std::move(v));
}

DensityMatrix::DensityMatrix(CMatrix matrix, NoCheck)
    : num_qubits_(qubits_of(matrix.rows())), matrix_(std::move(matrix)) {
  if (matrix_.rows() != matrix_.cols()) {
    throw std::invalid_argument("DensityMatrix: matrix is not square");
  }
}

DensityMatrix::DensityMatrix(CMatrix matrix) : DensityMatrix(std::move(matrix), NoCheck{}) {
  validate();
}

DensityMatrix DensityMatrix::unchecked(CMatrix matrix) {
  return DensityMatrix(std::move(matrix), NoCheck{});
}

DensityMatrix DensityMatrix::zero_state(int num_qubits) {
  const auto d = static_cast<Eigen::Index>(dim_of(num_qubits));
  CMatrix m = CMatrix::Zero(d, d);
  m(0, 0) = 1.0;
  return DensityMatrix(std::move(m), NoCheck{});
}

DensityMatrix DensityMatrix::from_pure(const PureState& psi) {
  const auto& v = psi.amplitudes();
  return DensityMatrix(v * v.adjoint(), NoCheck{});
}

DensityMatrix DensityMatrix::maximally_mixed(int num_qubits) {
  const auto d = static_cast<Eigen::Index>(dim_of(num_qubits));
  return DensityMatrix(CMatrix::Identity(d, d) / static_cast<double>(d), NoCheck{});
}

double DensityMatrix::min_eigenvalue() const {
  Eigen::SelfAdjointEigenSolver<CMatrix> es(matrix_, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

double DensityMatrix::max_eigenvalue() const {
  Eigen::SelfAdjointEigenSolver<CMatrix> es(matrix_, Eigen::EigenvaluesOnly);
  return es.eigenvalues().maxCoeff();
}

void DensityMatrix::validate(double struct_tol, double psd_tol) const {
  if (!matrix_.allFinite()) throw std::domain_error("DensityMatrix: non-finite entry");
  if (!is_hermitian(matrix_, struct_tol)) throw std::domain_error("DensityMatrix: not Hermitian");
  if (std::abs(matrix_.trace() - Complex{1.0, 0.0}) >= struct_tol) {
    throw std::domain_error("DensityMatrix: trace differs from 1");
  }
  if (min_eigenvalue() < psd_tol) {
    throw std::domain_error("DensityMatrix: not positive semidefinite");
  }
}

bool DensityMatrix::is_valid(double struct_tol, double psd_tol) const {
  try {
    validate(struct_tol, psd_tol);
    return true;
  } catch (const std::domain_error&) {
    return false;
  }
}

DensityMatrix partial_trace(const DensityMatrix& rho, std::span<const int> keep) {
  const int n = rho.num_qubits();
  if (keep.empty()) throw std::invalid_argument("partial_trace: keep set is empty");
  check_targets(keep, n, "partial_trace");

  const int k = static_cast<int>(keep.size());
  std::vector<int> traced;
  for (int q = 0; q < n; ++q) {
    if (std::find(keep.begin(), keep.end(), q) == keep.end()) traced.push_back(q);
  }
  const int t = static_cast<int>(traced.size());

  auto full_index = [&](std::size_t kept_bits, std::size_t traced_bits) {
    std::size_t idx = 0;
    for (int i = 0; i < k; ++i) {
      if ((kept_bits >> (k - 1 - i)) & 1U) idx |= std::size_t{1} << bit_of(keep[i], n);
    }
    for (int i = 0; i < t; ++i) {
      if ((traced_bits >> (t - 1 - i)) & 1U) idx |= std::size_t{1} << bit_of(traced[i], n);
    }
    return static_cast<Eigen::Index>(idx);
  };

  const auto dk = static_cast<Eigen::Index>(dim_of(k));
  const std::size_t dt = dim_of(t);
  CMatrix out = CMatrix::Zero(dk, dk);
  const CMatrix& m = rho.matrix();
  for (Eigen::Index i = 0; i < dk; ++i) {
    for (Eigen::Index j = 0; j < dk; ++j) {
      Complex acc{0.0, 0.0};
      for (std::size_t e = 0; e < dt; ++e) {
        acc += m(full_index(static_cast<std::size_t>(i), e), full_index(static_cast<std::size_t>(j), e));
      }
      out(i, j) = acc;
    }
  }
  return DensityMatrix::unchecked(std::move(out));
}

CMatrix embed_operator(const CMatrix& op, std::span<const int> targets, int num_qubits) {
  const int k = static_cast<int>(targets.size());
  if (op.rows() != op.cols() || op.rows() != static_cast<Eigen::Index>(dim_of(k))) {
    throw std::invalid_argument("embed: operator dimension does not match target count");
  }
  check_targets(targets, num_qubits, "embed");

  std::size_t target_mask = 0;
  for (int q : targets) target_mask |= std::size_t{1} << bit_of(q, num_qubits);

  // local index -> bits scattered onto the target positions
  std::vector<std::size_t> scatter(dim_of(k), 0);
  for (std::size_t a = 0; a < scatter.size(); ++a) {
    for (int i = 0; i < k; ++i) {
      if ((a >> (k - 1 - i)) & 1U) scatter[a] |= std::size_t{1} << bit_of(targets[i], num_qubits);
    }
  }

  const std::size_t d = dim_of(num_qubits);
  CMatrix out = CMatrix::Zero(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
  for (std::size_t rest = 0; rest < d; ++rest) {
    if (rest & target_mask) continue;
    for (std::size_t a = 0; a < scatter.size(); ++a) {
      for (std::size_t b = 0; b < scatter.size(); ++b) {
        out(static_cast<Eigen::Index>(rest | scatter[a]), static_cast<Eigen::Index>(rest | scatter[b])) =
            op(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b));
      }
    }
  }
  return out;
}

CMatrix embed_gate(const CMatrix& u, std::span<const int> targets, int num_qubits) {
  if (!is_unitary(u)) throw std::invalid_argument("embed_gate: matrix is not unitary");
  return embed_operator(u, targets, num_qubits);
}

}  // namespace qnoise
