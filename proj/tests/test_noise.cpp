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

#include "qnoise/errors.hpp"
#include "qnoise/hardware.hpp"
#include "qnoise/noise.hpp"
#include "test_support.hpp"

#include <catch_amalgamated.hpp>

#include <numbers>
#include <random>

using namespace qnoise;
using namespace std::chrono_literals;
using Catch::Matchers::WithinAbs;

namespace {

DensityMatrix ket(int n, std::size_t i) { return DensityMatrix::from_pure(PureState::basis(n, i)); }

DensityMatrix plus_state() {
  CVector v(2);
  v << 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0);
  return DensityMatrix::from_pure(PureState(v));
}

DensityMatrix minus_state() {
  CVector v(2);
  v << 1.0 / std::sqrt(2.0), -1.0 / std::sqrt(2.0);
  return DensityMatrix::from_pure(PureState(v));
}

// Random CPTP map: blocks of a random isometry C^d -> C^(d K).
KrausChannel random_channel(int n, int k, std::mt19937_64& rng) {
  const auto d = static_cast<Eigen::Index>(dim_of(n));
  const CMatrix v = testing::random_unitary(d * k, rng).leftCols(d);
  std::vector<CMatrix> ops;
  for (int i = 0; i < k; ++i) ops.push_back(v.middleRows(i * d, d));
  return KrausChannel(std::move(ops));
}

double haar_average_fidelity(const KrausChannel& ch, int samples, std::mt19937_64& rng) {
  double acc = 0.0;
  for (int s = 0; s < samples; ++s) {
    const auto psi = testing::random_pure(ch.num_qubits(), rng);
    const auto out = ch.apply(DensityMatrix::from_pure(psi));
    acc += (psi.amplitudes().adjoint() * out.matrix() * psi.amplitudes())(0, 0).real();
  }
  return acc / samples;
}

}  // namespace

TEST_CASE("Kraus channel construction", "[noise]") {
  CHECK_THROWS_AS(KrausChannel({}), std::invalid_argument);
  CHECK_THROWS_AS(KrausChannel({0.5 * CMatrix::Identity(2, 2)}), std::invalid_argument);
  CHECK_THROWS_AS(KrausChannel({CMatrix::Identity(3, 3)}), std::invalid_argument);
  CHECK_THROWS_AS(KrausChannel({CMatrix::Identity(2, 2), CMatrix::Identity(4, 4)}), std::invalid_argument);
  CHECK(KrausChannel::identity(2).is_identity());
  CHECK_FALSE(bit_flip(0.1).is_identity());
}

TEST_CASE("Pauli flip channels", "[noise]") {
  std::mt19937_64 rng(51);
  const auto rho = testing::random_density(1, rng);
  CHECK(bit_flip(0.0).is_identity());
  CHECK(testing::max_abs(bit_flip(0.0).apply(rho).matrix() - rho.matrix()) == 0.0);
  CHECK(testing::max_abs(bit_flip(0.5).apply(ket(1, 0)).matrix() - CMatrix::Identity(2, 2) / 2.0) < 1e-15);
  CHECK(testing::max_abs(bit_flip(1.0).apply(ket(1, 0)).matrix() - ket(1, 1).matrix()) < 1e-15);

  CHECK(testing::max_abs(phase_flip(1.0).apply(plus_state()).matrix() - minus_state().matrix()) < 1e-15);
  for (double p : {0.0, 0.2, 0.7, 1.0}) {
    CHECK(testing::max_abs(phase_flip(p).apply(ket(1, 0)).matrix() - ket(1, 0).matrix()) < 1e-15);
  }
  CHECK(testing::max_abs(bit_phase_flip(1.0).apply(ket(1, 0)).matrix() - ket(1, 1).matrix()) < 1e-15);

  for (double bad : {-0.1, 1.1, std::nan("")}) {
    CHECK_THROWS_AS(bit_flip(bad), std::invalid_argument);
    CHECK_THROWS_AS(phase_flip(bad), std::invalid_argument);
    CHECK_THROWS_AS(bit_phase_flip(bad), std::invalid_argument);
    CHECK_THROWS_AS(depolarizing(bad, 1), std::invalid_argument);
  }
}

TEST_CASE("depolarizing channel", "[noise]") {
  std::mt19937_64 rng(53);
  const auto rho = testing::random_density(1, rng);
  CHECK(testing::max_abs(depolarizing(1.0, 1).apply(rho).matrix() - CMatrix::Identity(2, 2) / 2.0) < 1e-15);
  CHECK(depolarizing(0.0, 2).is_identity());

  const auto out = depolarizing(0.4, 2).apply(ket(2, 0)).matrix();
  CMatrix expected = CMatrix::Zero(4, 4);
  expected.diagonal() << 0.7, 0.1, 0.1, 0.1;
  CHECK(testing::max_abs(out - expected) < 1e-15);

  CHECK_THROWS_AS(depolarizing(0.1, 0), std::invalid_argument);
  CHECK_THROWS_AS(depolarizing(0.1, 5), std::invalid_argument);

  SECTION("closed form equals the Kraus realization") {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int n = 1; n <= 3; ++n) {
      for (int trial = 0; trial < 20; ++trial) {
        const double p = u(rng);
        const auto r = testing::random_density(n, rng);
        const auto d = static_cast<double>(dim_of(n));
        const CMatrix closed = (1.0 - p) * r.matrix() + p / d * CMatrix::Identity(r.dim(), r.dim());
        CHECK(testing::max_abs(depolarizing(p, n).apply(r).matrix() - closed) < 1e-12);
      }
    }
  }
}

TEST_CASE("thermal relaxation", "[noise]") {
  CHECK(thermal_relaxation(100us, 80us, 0s).is_identity());
  CHECK_THROWS_AS(thermal_relaxation(10us, 25us, 1us), std::invalid_argument);
  CHECK_THROWS_AS(thermal_relaxation(0us, 1us, 1us), std::invalid_argument);
  CHECK_THROWS_AS(thermal_relaxation(10us, 10us, -1us), std::invalid_argument);

  SECTION("coherence after one T2") {
    const auto out = thermal_relaxation(100us, 80us, 80us).apply(plus_state()).matrix();
    CHECK_THAT(std::abs(out(0, 1)), WithinAbs(0.5 * std::exp(-1.0), 1e-12));
    CHECK_THAT(std::abs(out(0, 1)), WithinAbs(0.1839, 1e-4));
    const double pop = std::exp(-0.8);
    CHECK_THAT(out(1, 1).real(), WithinAbs(0.5 * pop, 1e-12));
    CHECK_THAT(out(0, 0).real(), WithinAbs(0.5 + 0.5 * (1 - pop), 1e-12));
  }

  SECTION("long times relax to the ground state") {
    std::mt19937_64 rng(57);
    const auto out = thermal_relaxation(1us, 1.5us, 1s).apply(testing::random_density(1, rng));
    CHECK(testing::max_abs(out.matrix() - ket(1, 0).matrix()) < 1e-12);
  }

  SECTION("decay laws on random states, including T2 > T1") {
    std::mt19937_64 rng(59);
    std::uniform_real_distribution<double> u(0.05, 1.0);
    for (int trial = 0; trial < 100; ++trial) {
      const double t1 = u(rng) * 100;
      const double t2 = (trial % 2 == 0 ? u(rng) : 1.0 + u(rng)) * t1;  // up to 2 T1
      const double tg = u(rng) * 50;
      const auto ch = thermal_relaxation(Seconds(t1), Seconds(t2), Seconds(tg));
      const auto rho = testing::random_density(1, rng);
      const auto out = ch.apply(rho).matrix();
      const double pop = std::exp(-tg / t1);
      const double coh = std::exp(-tg / t2);
      CHECK(std::abs(out(1, 1) - pop * rho.matrix()(1, 1)) < 1e-10);
      CHECK(std::abs(out(0, 0) - (rho.matrix()(0, 0) + (1 - pop) * rho.matrix()(1, 1))) < 1e-10);
      CHECK(std::abs(out(0, 1) - coh * rho.matrix()(0, 1)) < 1e-10);
      CHECK(ch.completeness_error() < 1e-12);
    }
  }
}

TEST_CASE("random channels preserve density-matrix invariants", "[noise][property]") {
  std::mt19937_64 rng(61);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 1 + trial % 2;
    const auto ch = random_channel(n, 1 + trial % 5, rng);
    CHECK(ch.completeness_error() < 1e-9);
    const auto out = ch.apply(testing::random_density(n, rng));
    CHECK(out.is_valid());
  }
}

TEST_CASE("superoperator, Choi matrix and canonical form agree", "[noise][property]") {
  std::mt19937_64 rng(67);
  for (int trial = 0; trial < 30; ++trial) {
    const int n = 1 + trial % 2;
    const auto ch = random_channel(n, 2 + trial % 6, rng);
    const auto rho = testing::random_density(n, rng);
    const CMatrix expected = ch.apply(rho).matrix();

    // Row-major vectorization.
    const auto d = rho.dim();
    CVector vec(d * d);
    for (Eigen::Index i = 0; i < d; ++i)
      for (Eigen::Index j = 0; j < d; ++j) vec(i * d + j) = rho.matrix()(i, j);
    const CVector mapped = ch.superoperator() * vec;
    CMatrix back(d, d);
    for (Eigen::Index i = 0; i < d; ++i)
      for (Eigen::Index j = 0; j < d; ++j) back(i, j) = mapped(i * d + j);
    CHECK(testing::max_abs(back - expected) < 1e-12);

    const auto canon = ch.canonical();
    CHECK(canon.operators().size() <= static_cast<std::size_t>(d * d));
    CHECK(testing::max_abs(canon.apply(rho).matrix() - expected) < 1e-12);
    CHECK(testing::max_abs(KrausChannel::from_choi(ch.choi(), n).apply(rho).matrix() - expected) < 1e-12);
  }
}

TEST_CASE("composition order and tensor products", "[noise]") {
  std::mt19937_64 rng(71);
  const auto a = random_channel(1, 3, rng);
  const auto b = random_channel(1, 2, rng);
  const auto rho = testing::random_density(1, rng);
  CHECK(testing::max_abs(compose(b, a).apply(rho).matrix() - b.apply(a.apply(rho)).matrix()) < 1e-12);
  CHECK_THROWS_AS(compose(a, depolarizing(0.1, 2)), std::invalid_argument);

  const auto ra = testing::random_density(1, rng);
  const auto rb = testing::random_density(1, rng);
  const DensityMatrix product(tensor_product(ra.matrix(), rb.matrix()));
  const CMatrix expected = tensor_product(a.apply(ra).matrix(), b.apply(rb).matrix());
  CHECK(testing::max_abs(tensor(a, b).apply(product).matrix() - expected) < 1e-12);
}

TEST_CASE("fidelity measures", "[noise]") {
  CHECK(depolarizing_fidelity(0.0, 1) == 1.0);
  CHECK_THAT(depolarizing_fidelity(1.0, 2), WithinAbs(0.25, 1e-15));
  CHECK_THAT(depolarizing_fidelity(0.1, 1), WithinAbs(0.95, 1e-15));
  CHECK(average_gate_fidelity(KrausChannel::identity(2)) == 1.0);

  for (int n = 1; n <= 3; ++n) {
    for (double p : {0.0, 0.01, 0.3, 1.0}) {
      CHECK_THAT(average_gate_fidelity(depolarizing(p, n)), WithinAbs(depolarizing_fidelity(p, n), 1e-10));
    }
  }

  SECTION("closed form matches a Haar Monte-Carlo average") {
    std::mt19937_64 rng(73);
    const auto one = random_channel(1, 3, rng);
    CHECK_THAT(haar_average_fidelity(one, 100000, rng), WithinAbs(average_gate_fidelity(one), 2e-3));
    const auto thermal = thermal_relaxation(30us, 40us, 10us);
    CHECK_THAT(haar_average_fidelity(thermal, 100000, rng), WithinAbs(average_gate_fidelity(thermal), 2e-3));
    const auto two = compose(depolarizing(0.05, 2), tensor(thermal, thermal));
    CHECK_THAT(haar_average_fidelity(two, 100000, rng), WithinAbs(average_gate_fidelity(two), 2e-3));
  }
}

TEST_CASE("composite calibration", "[noise]") {
  const Seconds t1 = 109.90us;
  const Seconds t2 = 96.80us;

  SECTION("Kolkata two-qubit round trip") {
    const auto cal = calibrate_composite(0.98909, t1, t2, 415.37ns, 2);
    CHECK(cal.depolarizing_p > 0.0);
    CHECK_THAT(average_gate_fidelity(cal.channel), WithinAbs(0.98909, 1e-6));
    // F = (1 - p) F_R + p 2^-n
    CHECK_THAT((1 - cal.depolarizing_p) * cal.thermal_fidelity + cal.depolarizing_p / 4.0, WithinAbs(0.98909, 1e-6));
    CHECK(cal.channel.completeness_error() < 1e-9);
  }

  SECTION("target equal to the thermal fidelity needs no depolarizing part") {
    const double fr = average_gate_fidelity(thermal_relaxation(t1, t2, 35.56ns));
    const auto cal = calibrate_composite(fr, t1, t2, 35.56ns, 1);
    CHECK(cal.depolarizing_p == 0.0);
    CHECK_THAT(average_gate_fidelity(cal.channel), WithinAbs(fr, 1e-12));
  }

  SECTION("zero duration is pure depolarizing") {
    for (int n : {1, 2}) {
      const double f = 0.97;
      const auto cal = calibrate_composite(f, t1, t2, 0s, n);
      CHECK_THAT(cal.depolarizing_p, WithinAbs((1 - f) / (1 - std::ldexp(1.0, -n)), 1e-12));
      CHECK_THAT(average_gate_fidelity(cal.channel), WithinAbs(f, 1e-12));
    }
  }

  SECTION("error paths") {
    CHECK_THROWS_AS(calibrate_composite(0.999999, t1, t2, 10us, 1), InfeasibleError);
    try {
      calibrate_composite(0.999999, t1, t2, 10us, 1);
    } catch (const InfeasibleError& e) {
      const std::string what = e.what();
      CHECK(what.find("F_R") != std::string::npos);
      CHECK(what.find("F_targ") != std::string::npos);
    }
    CHECK_THROWS_AS(calibrate_composite(0.5, t1, t2, 10ns, 1), std::invalid_argument);
    CHECK_THROWS_AS(calibrate_composite(0.25, t1, t2, 10ns, 2), std::invalid_argument);
    CHECK_THROWS_AS(calibrate_composite(0.9, t1, t2, 10ns, 3), std::invalid_argument);
  }
}

TEST_CASE("native noise models reproduce the vendor fidelities", "[noise]") {
  for (auto name : kBuiltinBackends) {
    const auto b = builtin(name);
    const auto m = build_native_model(b);
    INFO(b.name);
    CHECK_THAT(average_gate_fidelity(m.one_qubit), WithinAbs(b.f1, 1e-6));
    CHECK_THAT(average_gate_fidelity(m.two_qubit), WithinAbs(b.f2, 1e-6));
    CHECK(m.one_qubit.num_qubits() == 1);
    CHECK(m.two_qubit.num_qubits() == 2);
  }

  BackendSpec perfect = builtin("ibmq_kolkata");
  perfect.f1 = perfect.f2 = 1.0;
  perfect.tg1 = perfect.tg2 = Nanoseconds(0.0);
  CHECK(build_native_model(perfect).is_identity());
}

TEST_CASE("noise specs and models", "[noise]") {
  CHECK(noise_kind_from_name("bitflip") == NoiseKind::BitFlip);
  CHECK(noise_kind_from_name("bit_phase_flip") == NoiseKind::BitPhaseFlip);
  CHECK_THROWS_AS(noise_kind_from_name("amplitude"), std::invalid_argument);
  for (auto k : {NoiseKind::None, NoiseKind::BitFlip, NoiseKind::PhaseFlip, NoiseKind::BitPhaseFlip,
                 NoiseKind::Depolarizing, NoiseKind::Thermal, NoiseKind::Native}) {
    CHECK(noise_kind_from_name(noise_kind_name(k)) == k);
  }
  CHECK_THROWS_AS(NoiseSpec({NoiseKind::BitFlip, 1.5}).validate(), std::invalid_argument);

  CHECK_FALSE(make_noise_model({NoiseKind::None, 0.0}, nullptr).has_value());
  CHECK_THROWS_AS(make_noise_model({NoiseKind::Thermal, 0.0}, nullptr), std::invalid_argument);
  CHECK_THROWS_AS(make_noise_model({NoiseKind::Native, 0.0}, nullptr), std::invalid_argument);

  std::mt19937_64 rng(79);
  const auto rho2 = testing::random_density(2, rng);
  const auto bf = make_noise_model({NoiseKind::BitFlip, 0.2}, nullptr);
  REQUIRE(bf.has_value());
  CHECK(testing::max_abs(bf->two_qubit.apply(rho2).matrix() - tensor(bit_flip(0.2), bit_flip(0.2)).apply(rho2).matrix()) <
        1e-14);

  const auto dep = make_noise_model({NoiseKind::Depolarizing, 0.2}, nullptr);
  REQUIRE(dep.has_value());
  const auto rho3 = testing::random_density(3, rng);
  CHECK(testing::max_abs(dep->channel_for(3).apply(rho3).matrix() - depolarizing(0.2, 3).apply(rho3).matrix()) < 1e-14);
  CHECK(testing::max_abs(bf->channel_for(3).apply(rho3).matrix() -
                         tensor(bit_flip(0.2), tensor(bit_flip(0.2), bit_flip(0.2))).apply(rho3).matrix()) < 1e-12);

  const auto kolkata = builtin("ibmq_kolkata");
  const auto th = make_noise_model({NoiseKind::Thermal, 0.0}, &kolkata);
  REQUIRE(th.has_value());
  CHECK(th->channel_for(3).num_qubits() == 3);
  const auto native = make_noise_model({NoiseKind::Native, 0.0}, &kolkata);
  REQUIRE(native.has_value());
  CHECK_THROWS_AS(native->channel_for(3), std::invalid_argument);
}
