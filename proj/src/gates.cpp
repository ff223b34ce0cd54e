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

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace qnoise {

namespace {

constexpr Complex kI{0.0, 1.0};

struct GateInfo {
  Gate kind;
  std::string_view name;
  int arity;
  int params;
};

constexpr GateInfo kCatalog[] = {
    {Gate::X, "X", 1, 0},      {Gate::SX, "SX", 1, 0},     {Gate::H, "H", 1, 0},
    {Gate::Y, "Y", 1, 0},      {Gate::Z, "Z", 1, 0},       {Gate::Rx, "Rx", 1, 1},
    {Gate::Ry, "Ry", 1, 1},    {Gate::Rz, "Rz", 1, 1},     {Gate::P, "P", 1, 1},
    {Gate::CX, "CX", 2, 0},    {Gate::CZ, "CZ", 2, 0},     {Gate::CP, "CP", 2, 1},
    {Gate::XY, "XY", 2, 1},    {Gate::SWAP, "SWAP", 2, 0}, {Gate::MS, "MS", 2, 0},
    {Gate::GPi, "GPi", 1, 1},  {Gate::GPi2, "GPi2", 1, 1}, {Gate::MCZ, "MCZ", 0, 0},
};

const GateInfo& info(Gate g) {
  for (const auto& entry : kCatalog) {
    if (entry.kind == g) return entry;
  }
  throw std::invalid_argument("unknown gate kind");
}

CMatrix m2(Complex a, Complex b, Complex c, Complex d) {
  CMatrix m(2, 2);
  m << a, b, c, d;
  return m;
}

}  // namespace

std::string_view gate_name(Gate g) { return info(g).name; }

std::optional<Gate> try_gate_from_name(std::string_view name) {
  for (const auto& entry : kCatalog) {
    if (entry.name == name) return entry.kind;
  }
  return std::nullopt;
}

Gate gate_from_name(std::string_view name) {
  if (auto g = try_gate_from_name(name)) return *g;
  throw std::invalid_argument("unknown gate '" + std::string(name) + "'");
}

int gate_arity(Gate g) { return info(g).arity; }
int gate_param_count(Gate g) { return info(g).params; }

bool is_virtual(Gate g) { return g == Gate::Z || g == Gate::Rz || g == Gate::P; }

void GateInstance::validate() const {
  const int want = gate_arity(kind);
  const int have = static_cast<int>(qubits.size());
  if (want == 0 ? have < 2 : have != want) {
    throw std::invalid_argument(std::string(gate_name(kind)) + ": wrong number of qubits (" +
                                std::to_string(have) + ")");
  }
  if (static_cast<int>(params.size()) != gate_param_count(kind)) {
    throw std::invalid_argument(std::string(gate_name(kind)) + ": expected " +
                                std::to_string(gate_param_count(kind)) + " parameter(s), got " +
                                std::to_string(params.size()));
  }
  for (std::size_t i = 0; i < qubits.size(); ++i) {
    if (qubits[i] < 0) throw std::invalid_argument("negative qubit index");
    for (std::size_t j = 0; j < i; ++j) {
      if (qubits[i] == qubits[j]) {
        throw std::invalid_argument(std::string(gate_name(kind)) + ": repeated qubit " +
                                    std::to_string(qubits[i]));
      }
    }
  }
  for (double p : params) {
    if (!std::isfinite(p)) throw std::invalid_argument("non-finite gate parameter");
  }
}

GateInstance make_gate(Gate kind, std::vector<int> qubits, std::vector<double> params) {
  GateInstance g{kind, std::move(qubits), std::move(params)};
  g.validate();
  return g;
}

namespace mat {

CMatrix identity(int num_qubits) {
  const auto d = static_cast<Eigen::Index>(dim_of(num_qubits));
  return CMatrix::Identity(d, d);
}
CMatrix x() { return m2(0, 1, 1, 0); }
CMatrix y() { return m2(0, -kI, kI, 0); }
CMatrix z() { return m2(1, 0, 0, -1); }
CMatrix h() { return m2(1, 1, 1, -1) / std::numbers::sqrt2; }
CMatrix sx() { return m2(1.0 + kI, 1.0 - kI, 1.0 - kI, 1.0 + kI) / 2.0; }
CMatrix rx(double t) {
  return m2(std::cos(t / 2), -kI * std::sin(t / 2), -kI * std::sin(t / 2), std::cos(t / 2));
}
CMatrix ry(double t) { return m2(std::cos(t / 2), -std::sin(t / 2), std::sin(t / 2), std::cos(t / 2)); }
CMatrix rz(double t) { return m2(std::exp(-kI * (t / 2)), 0, 0, std::exp(kI * (t / 2))); }
CMatrix phase(double l) { return m2(1, 0, 0, std::exp(kI * l)); }
CMatrix gpi(double phi) { return m2(0, std::exp(-kI * phi), std::exp(kI * phi), 0); }
CMatrix gpi2(double phi) {
  return m2(1, -kI * std::exp(-kI * phi), -kI * std::exp(kI * phi), 1) / std::numbers::sqrt2;
}

CMatrix cx() {
  CMatrix m = CMatrix::Zero(4, 4);
  m(0, 0) = m(1, 1) = m(2, 3) = m(3, 2) = 1.0;
  return m;
}
CMatrix cz() { return mcz(2); }
CMatrix cp(double l) {
  CMatrix m = identity(2);
  m(3, 3) = std::exp(kI * l);
  return m;
}
CMatrix xy(double t) {
  CMatrix m = identity(2);
  m(1, 1) = m(2, 2) = std::cos(t / 2);
  m(1, 2) = m(2, 1) = kI * std::sin(t / 2);
  return m;
}
CMatrix swap() {
  CMatrix m = CMatrix::Zero(4, 4);
  m(0, 0) = m(1, 2) = m(2, 1) = m(3, 3) = 1.0;
  return m;
}
CMatrix ms() {
  // exp(-i pi/4 X⊗X)
  CMatrix m = identity(2);
  m(0, 3) = m(1, 2) = m(2, 1) = m(3, 0) = -kI;
  return m / std::numbers::sqrt2;
}
CMatrix mcz(int n) {
  CMatrix m = identity(n);
  m(m.rows() - 1, m.cols() - 1) = -1.0;
  return m;
}

}  // namespace mat

CMatrix unitary_of(const GateInstance& g) {
  g.validate();
  const auto& p = g.params;
  switch (g.kind) {
    case Gate::X: return mat::x();
    case Gate::SX: return mat::sx();
    case Gate::H: return mat::h();
    case Gate::Y: return mat::y();
    case Gate::Z: return mat::z();
    case Gate::Rx: return mat::rx(p[0]);
    case Gate::Ry: return mat::ry(p[0]);
    case Gate::Rz: return mat::rz(p[0]);
    case Gate::P: return mat::phase(p[0]);
    case Gate::CX: return mat::cx();
    case Gate::CZ: return mat::cz();
    case Gate::CP: return mat::cp(p[0]);
    case Gate::XY: return mat::xy(p[0]);
    case Gate::SWAP: return mat::swap();
    case Gate::MS: return mat::ms();
    case Gate::GPi: return mat::gpi(p[0]);
    case Gate::GPi2: return mat::gpi2(p[0]);
    case Gate::MCZ: return mat::mcz(g.arity());
  }
  throw std::invalid_argument("unknown gate kind");
}

}  // namespace qnoise
