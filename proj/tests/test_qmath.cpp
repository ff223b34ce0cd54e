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

#include "qnoise/gates.hpp"
#include "qnoise/qmath.hpp"
#include "test_support.hpp"

#include <catch_amalgamated.hpp>

#include <array>
#include <random>

using namespace qnoise;
using Catch::Matchers::WithinAbs;

namespace {

CMatrix ket_bra(int n, std::size_t i, std::size_t j) {
  const auto d = static_cast<Eigen::Index>(dim_of(n));
  CMatrix m = CMatrix::Zero(d, d);
  m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = 1.0;
  return m;
}

DensityMatrix bell_state() {
  CVector v = CVector::Zero(4);
  v(0) = v(3) = 1.0 / std::sqrt(2.0);
  return DensityMatrix::from_pure(PureState(v));
}

}  // namespace

TEST_CASE("tensor product layout and shape", "[qmath]") {
  const CMatrix i2 = CMatrix::Identity(2, 2);
  CHECK(tensor_product(i2, i2) == CMatrix::Identity(4, 4));

  const CMatrix p0 = ket_bra(1, 0, 0);
  const CMatrix p1 = ket_bra(1, 1, 1);
  const CMatrix proj = tensor_product(p0, p1);
  CHECK(proj == ket_bra(2, 1, 1));  // |01><01|

  const CMatrix xx = tensor_product(mat::x(), mat::x());
  CHECK(xx.rows() == 4);
  CHECK(xx.cols() == 4);

  SECTION("entry formula on rectangular factors") {
    Eigen::MatrixXd a(2, 3);
    a << 1, 2, 3, 4, 5, 6;
    Eigen::MatrixXd b(3, 2);
    b << 7, 8, 9, 10, 11, 12;
    const Eigen::MatrixXd t = tensor_product(a, b);
    REQUIRE(t.rows() == 6);
    REQUIRE(t.cols() == 6);
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 3; ++j)
        for (int k = 0; k < 3; ++k)
          for (int l = 0; l < 2; ++l) CHECK(t(i * 3 + k, j * 2 + l) == a(i, j) * b(k, l));
  }
}

TEST_CASE("tensor product is associative on integer matrices", "[qmath][property]") {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<int> v(-5, 5);
  for (int trial = 0; trial < 20; ++trial) {
    auto make = [&](int r, int c) {
      Eigen::MatrixXd m(r, c);
      for (int i = 0; i < r; ++i)
        for (int j = 0; j < c; ++j) m(i, j) = v(rng);
      return m;
    };
    const auto a = make(2, 3);
    const auto b = make(3, 2);
    const auto c = make(2, 2);
    CHECK(tensor_product(tensor_product(a, b), c) == tensor_product(a, tensor_product(b, c)));
  }
}

TEST_CASE("partial trace", "[qmath]") {
  const std::array<int, 1> q0{0};
  const std::array<int, 1> q1{1};

  SECTION("Bell state reduces to the maximally mixed qubit") {
    const auto rho = bell_state();
    CHECK(testing::max_abs(partial_trace(rho, q0).matrix() - CMatrix::Identity(2, 2) / 2.0) < 1e-15);
    CHECK(testing::max_abs(partial_trace(rho, q1).matrix() - CMatrix::Identity(2, 2) / 2.0) < 1e-15);
  }

  SECTION("product state keeps its factor") {
    std::mt19937_64 rng(3);
    const auto a = testing::random_density(1, rng);
    const auto b = testing::random_density(2, rng);
    const DensityMatrix ab(tensor_product(a.matrix(), b.matrix()));
    CHECK(testing::max_abs(partial_trace(ab, q0).matrix() - a.matrix()) < 1e-14);
    const std::array<int, 2> last{1, 2};
    CHECK(testing::max_abs(partial_trace(ab, last).matrix() - b.matrix()) < 1e-14);
  }

  SECTION("GHZ keeps a classical mixture") {
    CVector v = CVector::Zero(8);
    v(0) = v(7) = 1.0 / std::sqrt(2.0);
    const auto ghz = DensityMatrix::from_pure(PureState(v));
    CMatrix expected = CMatrix::Zero(2, 2);
    expected(0, 0) = expected(1, 1) = 0.5;
    CHECK(testing::max_abs(partial_trace(ghz, q0).matrix() - expected) < 1e-15);
  }

  SECTION("keeping everything is the identity map") {
    std::mt19937_64 rng(5);
    const auto rho = testing::random_density(3, rng);
    const std::array<int, 3> all{0, 1, 2};
    CHECK(testing::max_abs(partial_trace(rho, all).matrix() - rho.matrix()) < 1e-15);
  }

  SECTION("keep order reorders the reduced qubits") {
    std::mt19937_64 rng(9);
    const auto a = testing::random_density(1, rng);
    const auto b = testing::random_density(1, rng);
    const DensityMatrix ab(tensor_product(a.matrix(), b.matrix()));
    const std::array<int, 2> swapped{1, 0};
    CHECK(testing::max_abs(partial_trace(ab, swapped).matrix() - tensor_product(b.matrix(), a.matrix())) < 1e-15);
  }

  SECTION("empty or invalid keep sets throw") {
    const auto rho = bell_state();
    CHECK_THROWS_AS(partial_trace(rho, std::span<const int>{}), std::invalid_argument);
    const std::array<int, 1> bad{2};
    CHECK_THROWS_AS(partial_trace(rho, bad), std::invalid_argument);
    const std::array<int, 2> dup{0, 0};
    CHECK_THROWS_AS(partial_trace(rho, dup), std::invalid_argument);
  }
}

TEST_CASE("partial trace satisfies its defining duality", "[qmath][property]") {
  // Tr(rho_A X) = Tr(rho (X on kept qubits)) for every matrix unit X.
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 10; ++trial) {
    const auto rho = testing::random_density(3, rng);
    const std::vector<std::vector<int>> keeps{{0}, {2}, {0, 2}, {2, 1}, {1, 0, 2}};
    for (const auto& keep : keeps) {
      const auto reduced = partial_trace(rho, keep);
      REQUIRE(reduced.num_qubits() == static_cast<int>(keep.size()));
      CHECK_THAT(reduced.matrix().trace().real(), WithinAbs(1.0, 1e-12));
      const auto dk = dim_of(static_cast<int>(keep.size()));
      for (std::size_t i = 0; i < dk; ++i) {
        for (std::size_t j = 0; j < dk; ++j) {
          const CMatrix x = ket_bra(static_cast<int>(keep.size()), i, j);
          const Complex lhs = (reduced.matrix() * x).trace();
          const Complex rhs = (rho.matrix() * embed_operator(x, keep, 3)).trace();
          CHECK(std::abs(lhs - rhs) < 1e-13);
        }
      }
    }
  }
}

TEST_CASE("local unitaries commute with tracing out other qubits", "[qmath][property]") {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 10; ++trial) {
    const auto a = testing::random_density(1, rng);
    const auto b = testing::random_density(2, rng);
    const DensityMatrix rho(tensor_product(a.matrix(), b.matrix()));
    const CMatrix u = testing::random_unitary(2, rng);
    const std::array<int, 1> target{0};
    const CMatrix big = embed_gate(u, target, 3);
    const DensityMatrix evolved = DensityMatrix::unchecked(big * rho.matrix() * big.adjoint());
    const CMatrix lhs = partial_trace(evolved, target).matrix();
    const CMatrix rhs = u * partial_trace(rho, target).matrix() * u.adjoint();
    CHECK(testing::max_abs(lhs - rhs) < 1e-13);
  }
}

TEST_CASE("embed_gate", "[qmath]") {
  const std::array<int, 1> q0{0};
  const std::array<int, 1> q1{1};
  CHECK(embed_gate(mat::x(), q0, 1) == mat::x());
  CHECK(embed_gate(mat::x(), q1, 2) == tensor_product(CMatrix::Identity(2, 2), mat::x()));

  const std::array<int, 2> reversed{1, 0};
  const CMatrix expected = mat::swap() * mat::cx() * mat::swap();
  CHECK(testing::max_abs(embed_gate(mat::cx(), reversed, 2) - expected) < 1e-15);

  CMatrix not_unitary = CMatrix::Identity(2, 2);
  not_unitary(0, 0) = 2.0;
  CHECK_THROWS_AS(embed_gate(not_unitary, q0, 1), std::invalid_argument);
  const std::array<int, 2> dup{1, 1};
  CHECK_THROWS_AS(embed_gate(mat::cx(), dup, 2), std::invalid_argument);
  const std::array<int, 1> out_of_range{3};
  CHECK_THROWS_AS(embed_gate(mat::x(), out_of_range, 2), std::invalid_argument);
  CHECK_THROWS_AS(embed_gate(mat::cx(), q0, 2), std::invalid_argument);

  SECTION("embedded random unitaries stay unitary") {
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 20; ++trial) {
      const CMatrix u = testing::random_unitary(4, rng);
      const std::array<int, 2> targets{trial % 4, (trial + 2) % 4};
      CHECK(is_unitary(embed_gate(u, targets, 4), 1e-10));
    }
  }
}

TEST_CASE("density matrix invariants", "[qmath]") {
  CHECK(DensityMatrix::zero_state(2).is_valid());
  CHECK(DensityMatrix::maximally_mixed(3).is_valid());
  CHECK_THAT(DensityMatrix::maximally_mixed(2).max_eigenvalue(), WithinAbs(0.25, 1e-15));

  CMatrix not_hermitian = CMatrix::Zero(2, 2);
  not_hermitian(0, 0) = 1.0;
  not_hermitian(0, 1) = 0.1;
  CHECK_THROWS_AS(DensityMatrix(not_hermitian), std::domain_error);

  CMatrix bad_trace = CMatrix::Identity(2, 2);
  CHECK_THROWS_AS(DensityMatrix(bad_trace), std::domain_error);

  CMatrix negative = CMatrix::Zero(2, 2);
  negative(0, 0) = 1.5;
  negative(1, 1) = -0.5;
  CHECK_THROWS_AS(DensityMatrix(negative), std::domain_error);

  CMatrix nan = CMatrix::Identity(2, 2) / 2.0;
  nan(0, 1) = Complex(std::nan(""), 0.0);
  CHECK_THROWS_AS(DensityMatrix(nan), std::domain_error);

  CHECK_THROWS_AS(DensityMatrix(CMatrix::Identity(3, 3) / 3.0), std::invalid_argument);

  // A tiny negative eigenvalue inside the tolerance is accepted.
  CMatrix near_psd = CMatrix::Zero(2, 2);
  near_psd(0, 0) = 1.0 + 1e-10;
  near_psd(1, 1) = -1e-10;
  CHECK(DensityMatrix::unchecked(near_psd).is_valid());
}

TEST_CASE("pure states", "[qmath]") {
  const auto b = PureState::basis(3, 5);
  CHECK(b.amplitudes()(5) == Complex(1.0, 0.0));
  CHECK_THROWS_AS(PureState::basis(2, 4), std::invalid_argument);
  CHECK_THROWS_AS(PureState(CVector::Ones(4)), std::invalid_argument);
  CHECK_THROWS_AS(PureState(CVector::Ones(3) / std::sqrt(3.0)), std::invalid_argument);
}

TEST_CASE("phase-invariant distance ignores a global phase", "[qmath]") {
  std::mt19937_64 rng(23);
  const CMatrix u = testing::random_unitary(4, rng);
  CHECK(phase_invariant_distance(u, std::polar(1.0, 0.7) * u) < 1e-14);
  CHECK(phase_invariant_distance(u, testing::random_unitary(4, rng)) > 1e-3);
}
