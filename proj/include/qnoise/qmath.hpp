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

#include <Eigen/Dense>

#include <complex>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

namespace qnoise {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

/// Structural tolerance for Hermitian / unitary / trace checks.
inline constexpr double kStructTol = 1e-10;
/// Smallest eigenvalue accepted for a positive semidefinite state.
inline constexpr double kPsdTol = -1e-9;

inline constexpr std::size_t dim_of(int num_qubits) { return std::size_t{1} << num_qubits; }

/// Number of qubits for a 2^n dimension; throws if `dim` is not a power of two.
int qubits_of(Eigen::Index dim);

/// Kronecker product with the left factor as the most significant block index.
template <typename DerivedA, typename DerivedB>
Eigen::Matrix<typename DerivedA::Scalar, Eigen::Dynamic, Eigen::Dynamic>
tensor_product(const Eigen::MatrixBase<DerivedA>& a, const Eigen::MatrixBase<DerivedB>& b) {
  using Result = Eigen::Matrix<typename DerivedA::Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  Result out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

template <typename Derived>
bool is_unitary(const Eigen::MatrixBase<Derived>& u, double tol = kStructTol) {
  if (u.rows() != u.cols()) return false;
  const auto id = Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, Eigen::Dynamic>::Identity(
      u.rows(), u.cols());
  return ((u * u.adjoint()) - id).cwiseAbs().maxCoeff() <= tol;
}

template <typename Derived>
bool is_hermitian(const Eigen::MatrixBase<Derived>& m, double tol = kStructTol) {
  if (m.rows() != m.cols()) return false;
  return (m - m.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

template <typename Derived>
bool all_finite(const Eigen::MatrixBase<Derived>& m) {
  return m.allFinite();
}

/// Largest entrywise distance between two matrices modulo a global phase.
double phase_invariant_distance(const CMatrix& a, const CMatrix& b);

/// A normalized statevector over `num_qubits` qubits, qubit 0 as the most significant bit.
class PureState {
 public:
  explicit PureState(CVector amplitudes);
  static PureState basis(int num_qubits, std::size_t index);

  int num_qubits() const { return num_qubits_; }
  const CVector& amplitudes() const { return amplitudes_; }

 private:
  int num_qubits_;
  CVector amplitudes_;
};

/// Hermitian, unit-trace, positive semidefinite 2^n x 2^n operator.
///
/// The checked constructor enforces all three invariants; `unchecked` is for
/// hot paths in the simulator whose outputs are validated separately.
class DensityMatrix {
 public:
  explicit DensityMatrix(CMatrix matrix);
  static DensityMatrix unchecked(CMatrix matrix);
  static DensityMatrix zero_state(int num_qubits);
  static DensityMatrix from_pure(const PureState& psi);
  static DensityMatrix maximally_mixed(int num_qubits);

  int num_qubits() const { return num_qubits_; }
  Eigen::Index dim() const { return matrix_.rows(); }
  const CMatrix& matrix() const { return matrix_; }
  CMatrix& mutable_matrix() { return matrix_; }

  /// Throws std::domain_error naming the first violated invariant.
  void validate(double struct_tol = kStructTol, double psd_tol = kPsdTol) const;
  bool is_valid(double struct_tol = kStructTol, double psd_tol = kPsdTol) const;
  double min_eigenvalue() const;
  double max_eigenvalue() const;

 private:
  struct NoCheck {};
  DensityMatrix(CMatrix matrix, NoCheck);

  int num_qubits_;
  CMatrix matrix_;
};

/// Reduced state on the qubits in `keep`, in the order given.
DensityMatrix partial_trace(const DensityMatrix& rho, std::span<const int> keep);

/// Lift a k-qubit unitary acting on `targets` (targets[0] most significant) to 2^n.
CMatrix embed_gate(const CMatrix& u, std::span<const int> targets, int num_qubits);

/// Same as embed_gate without the unitarity check; used for Kraus operators.
CMatrix embed_operator(const CMatrix& op, std::span<const int> targets, int num_qubits);

}  // namespace qnoise
