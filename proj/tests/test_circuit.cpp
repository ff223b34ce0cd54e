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

#include "qnoise/circuit.hpp"
#include "qnoise/engine.hpp"
#include "qnoise/errors.hpp"
#include "test_support.hpp"

#include <catch_amalgamated.hpp>

#include <numbers>
#include <random>
#include <set>
#include <sstream>

using namespace qnoise;
using Catch::Matchers::WithinAbs;
using std::numbers::pi;

namespace {

// Layer-by-layer scheduling: an instruction joins the first layer after every
// earlier instruction it shares a qubit with. Virtual gates are dropped first.
int layered_depth(const Circuit& c) {
  std::vector<GateInstance> gates;
  for (const auto& g : c.instructions()) {
    if (!is_virtual(g.kind)) gates.push_back(g);
  }
  std::vector<bool> placed(gates.size(), false);
  std::size_t remaining = gates.size();
  int layers = 0;
  while (remaining > 0) {
    std::vector<std::size_t> layer;
    for (std::size_t i = 0; i < gates.size(); ++i) {
      if (placed[i]) continue;
      bool ready = true;
      for (std::size_t j = 0; j < i && ready; ++j) {
        if (placed[j]) continue;
        for (int q : gates[i].qubits) {
          for (int r : gates[j].qubits) ready = ready && q != r;
        }
      }
      if (ready) layer.push_back(i);
    }
    for (auto i : layer) placed[i] = true;
    remaining -= layer.size();
    ++layers;
  }
  return layers;
}

double analytic_grover(int n) {
  const double k = grover_iterations(n);
  return std::pow(std::sin((2 * k + 1) * std::asin(std::pow(2.0, -n / 2.0))), 2);
}

}  // namespace

TEST_CASE("circuit construction checks qubit ranges", "[circuit]") {
  Circuit c(2);
  CHECK_NOTHROW(c.add(Gate::CX, {0, 1}));
  CHECK_THROWS_AS(c.add(Gate::X, {2}), std::invalid_argument);
  CHECK_THROWS_AS(c.add(Gate::CX, {1, 1}), std::invalid_argument);
  CHECK(c.size() == 1);
  Circuit other(3);
  CHECK_THROWS_AS(c.append(other), std::invalid_argument);
  CHECK_THROWS_AS(Circuit(-1), std::invalid_argument);
}

TEST_CASE("depth skips virtual gates", "[circuit]") {
  CHECK(depth(Circuit(3)) == 0);

  Circuit c(1);
  c.add(Gate::H, {0}).add(Gate::Rz, {0}, {0.3}).add(Gate::X, {0});
  CHECK(depth(c) == 2);

  CHECK(depth(build_qft(3)) == 6);
  CHECK(layered_depth(build_qft(3)) == 6);

  Circuit parallel(4);
  parallel.add(Gate::CX, {0, 1}).add(Gate::CX, {2, 3}).add(Gate::CX, {1, 2});
  CHECK(depth(parallel) == 2);
}

TEST_CASE("depth agrees with a layering oracle and is monotone", "[circuit][property]") {
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 2 + trial % 4;
    const Circuit c = testing::random_circuit(n, 1 + trial % 25, rng);
    CHECK(depth(c) == layered_depth(c));
    Circuit longer = c;
    longer.add(Gate::H, {trial % n});
    CHECK(depth(longer) >= depth(c));
  }
}

TEST_CASE("Grover builder", "[circuit]") {
  CHECK(grover_iterations(2) == 1);
  CHECK(grover_iterations(3) == 2);
  CHECK(grover_iterations(7) == 8);
  CHECK_THROWS_AS(build_grover(1, "1"), std::invalid_argument);
  CHECK_THROWS_AS(build_grover(13, std::string(13, '0')), std::invalid_argument);
  CHECK_THROWS_AS(build_grover(3, "01"), std::invalid_argument);
  CHECK_THROWS_AS(build_grover(3, "012"), std::invalid_argument);

  for (const char* marked : {"00", "01", "10", "11"}) {
    CHECK_THAT(success_probability(simulate(build_grover(2, marked)), marked), WithinAbs(1.0, 1e-12));
  }
  CHECK_THAT(success_probability(simulate(build_grover(3, "101")), "101"), WithinAbs(0.9453125, 1e-12));
}

TEST_CASE("Grover success matches the analytic formula", "[circuit][property]") {
  std::mt19937_64 rng(43);
  for (int n = 2; n <= 6; ++n) {
    for (int trial = 0; trial < 3; ++trial) {
      const std::string marked = basis_label(rng() % dim_of(n), n);
      const auto r = simulate(build_grover(n, marked));
      INFO("n=" << n << " marked=" << marked);
      CHECK_THAT(success_probability(r, marked), WithinAbs(analytic_grover(n), 1e-9));
      // Every unmarked outcome shares the remaining probability evenly.
      const double rest = (1.0 - analytic_grover(n)) / static_cast<double>(dim_of(n) - 1);
      for (std::size_t i = 0; i < dim_of(n); ++i) {
        if (basis_label(i, n) != marked) CHECK_THAT(r.probabilities[i], WithinAbs(rest, 1e-9));
      }
    }
  }
}

TEST_CASE("QFT builder", "[circuit]") {
  const Circuit one = build_qft(1);
  REQUIRE(one.size() == 1);
  CHECK(one.instructions()[0].kind == Gate::H);

  for (int n = 1; n <= 6; ++n) {
    CHECK(build_qft(n).size() == static_cast<std::size_t>(n + n * (n - 1) / 2 + n / 2));
  }
  CHECK(build_qft(3).size() == 7);
  CHECK_THROWS_AS(build_qft(0), std::invalid_argument);
  CHECK_THROWS_AS(build_qft(13), std::invalid_argument);

  const auto r = simulate(build_qft(2));
  for (double p : r.probabilities) CHECK_THAT(p, WithinAbs(0.25, 1e-12));
}

TEST_CASE("QFT equals the DFT matrix", "[circuit][property]") {
  for (int n = 1; n <= 4; ++n) {
    const auto d = static_cast<Eigen::Index>(dim_of(n));
    CMatrix dft(d, d);
    for (Eigen::Index j = 0; j < d; ++j) {
      for (Eigen::Index k = 0; k < d; ++k) {
        dft(j, k) = std::polar(1.0 / std::sqrt(static_cast<double>(d)), 2 * pi * static_cast<double>(j * k) / d);
      }
    }
    CHECK(testing::max_abs(circuit_unitary(build_qft(n)) - dft) < 1e-9);
  }
}

TEST_CASE("QFT of a basis state is uniform", "[circuit][property]") {
  for (int n = 2; n <= 5; ++n) {
    for (std::size_t j = 0; j < dim_of(n); j += 3) {
      Circuit c(n);
      const std::string bits = basis_label(j, n);
      for (int q = 0; q < n; ++q) {
        if (bits[static_cast<std::size_t>(q)] == '1') c.add(Gate::X, {q});
      }
      c.append(build_qft(n));
      for (double p : simulate(c).probabilities) CHECK_THAT(p, WithinAbs(std::ldexp(1.0, -n), 1e-10));
    }
  }
}

TEST_CASE("QFT input preparation lands on the chosen basis state", "[circuit]") {
  for (int n = 1; n <= 6; ++n) {
    for (std::size_t t = 0; t < dim_of(n); t += 5) {
      Circuit c = build_qft_input(n, t);
      c.append(build_qft(n));
      CHECK_THAT(success_probability(simulate(c), basis_label(t, n)), WithinAbs(1.0, 1e-10));
    }
  }
  CHECK_THROWS_AS(build_qft_input(3, 8), std::invalid_argument);
}

TEST_CASE("variational circuit layout", "[circuit]") {
  VqcParameters theta;
  for (int i = 0; i < kVqcParams; ++i) theta[static_cast<std::size_t>(i)] = 0.1 * (i + 1);
  const Circuit c = build_vqc(0.5, theta);
  REQUIRE(c.num_qubits() == 4);
  const auto& ins = c.instructions();
  REQUIRE(ins.size() == 19);
  for (int q = 0; q < 4; ++q) {
    CHECK(ins[static_cast<std::size_t>(q)] == make_gate(Gate::Ry, {q}, {std::asin(0.5)}));
  }
  std::set<std::pair<int, int>> cx;
  std::vector<std::pair<int, double>> ry_trainable;
  for (std::size_t i = 4; i < ins.size(); ++i) {
    if (ins[i].kind == Gate::CX) cx.insert({ins[i].qubits[0], ins[i].qubits[1]});
  }
  CHECK(cx == std::set<std::pair<int, int>>{{1, 0}, {3, 2}, {2, 1}});
  CHECK(ins.back() == make_gate(Gate::CX, {2, 1}));

  // Each parameter appears exactly once with the expected axis.
  std::vector<int> seen(kVqcParams, 0);
  for (std::size_t i = 4; i < ins.size(); ++i) {
    if (ins[i].params.empty()) continue;
    const int idx = static_cast<int>(std::lround(ins[i].params[0] / 0.1)) - 1;
    REQUIRE(idx >= 0);
    REQUIRE(idx < kVqcParams);
    ++seen[static_cast<std::size_t>(idx)];
    const bool ry = idx < 4 || idx == 8 || idx == 9;
    CHECK(ins[i].kind == (ry ? Gate::Ry : Gate::Rz));
  }
  for (int s : seen) CHECK(s == 1);

  CHECK_THROWS_AS(build_vqc(1.01, theta), std::invalid_argument);
  CHECK(build_vqc(1.0, theta).instructions()[0].params[0] == std::asin(1.0));
  CHECK_THAT(expectation_z(simulate(build_vqc(0.0, VqcParameters{})), kVqcReadoutQubit), WithinAbs(1.0, 1e-15));
}

TEST_CASE("text IR round-trips and reports line numbers", "[circuit][io]") {
  std::mt19937_64 rng(47);
  for (int trial = 0; trial < 30; ++trial) {
    Circuit c = testing::random_circuit(3, 15, rng);
    c.add(Gate::MCZ, {2, 0, 1});
    CHECK(parse_circuit(to_text(c)) == c);
  }

  const Circuit parsed = parse_circuit("# a comment\nqubits 2\n\nH 0\nCP 0,1 @ 0.5  # trailing\nRz 1 @ -1e-3\n");
  Circuit expected(2);
  expected.add(Gate::H, {0}).add(Gate::CP, {0, 1}, {0.5}).add(Gate::Rz, {1}, {-1e-3});
  CHECK(parsed == expected);

  auto line_of = [](const std::string& text) {
    try {
      parse_circuit(text);
    } catch (const ParseError& e) {
      return e.line();
    }
    return -1;
  };
  CHECK(line_of("H 0\n") == 1);
  CHECK(line_of("qubits 2\nH 0\nFOO 1\n") == 3);
  CHECK(line_of("qubits 2\nH 5\n") == 2);
  CHECK(line_of("qubits 2\nRx 0\n") == 2);
  CHECK(line_of("qubits 2\nRx 0 @ abc\n") == 2);
  CHECK(line_of("qubits x\n") == 1);
  CHECK(line_of("") == 1);
}
