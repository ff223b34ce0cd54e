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

#include "qnoise/engine.hpp"

#include "qnoise/errors.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <stdexcept>
#include <string>

namespace qnoise {

namespace {

// Index helpers for a k-qubit operator inside an n-qubit register.
struct LocalIndex {
  std::vector<std::size_t> offsets;  // local basis index -> full-index bit pattern
  std::vector<int> zero_bits;        // target bit positions, ascending
  std::size_t bases = 0;             // number of full indices with all target bits clear

  LocalIndex(std::span<const int> targets, int n) {
    const int k = static_cast<int>(targets.size());
    offsets.assign(dim_of(k), 0);
    for (std::size_t a = 0; a < offsets.size(); ++a) {
      for (int i = 0; i < k; ++i) {
        if ((a >> (k - 1 - i)) & 1U) offsets[a] |= std::size_t{1} << (n - 1 - targets[static_cast<std::size_t>(i)]);
      }
    }
    for (int q : targets) zero_bits.push_back(n - 1 - q);
    std::sort(zero_bits.begin(), zero_bits.end());
    bases = dim_of(n - k);
  }

  // i-th full index with every target bit cleared.
  std::size_t base(std::size_t i) const {
    for (int b : zero_bits) {
      const std::size_t low = i & ((std::size_t{1} << b) - 1);
      i = ((i >> b) << (b + 1)) | low;
    }
    return i;
  }
};

int register_qubits(const CMatrix& rho) { return qubits_of(rho.rows()); }

void check_targets(std::span<const int> targets, int n) {
  for (std::size_t i = 0; i < targets.size(); ++i) {
    if (targets[i] < 0 || targets[i] >= n) throw std::invalid_argument("kernel: target out of range");
    for (std::size_t j = 0; j < i; ++j) {
      if (targets[i] == targets[j]) throw std::invalid_argument("kernel: duplicate target");
    }
  }
}

bool is_diagonal(const CMatrix& u) {
  for (Eigen::Index i = 0; i < u.rows(); ++i) {
    for (Eigen::Index j = 0; j < u.cols(); ++j) {
      if (i != j && u(i, j) != Complex{0.0, 0.0}) return false;
    }
  }
  return true;
}

void apply_diagonal(CMatrix& rho, const CMatrix& u, std::span<const int> targets) {
  const int n = register_qubits(rho);
  const std::size_t d = dim_of(n);
  const int k = static_cast<int>(targets.size());
  std::vector<Complex> phase(d);
  for (std::size_t i = 0; i < d; ++i) {
    std::size_t local = 0;
    for (int t = 0; t < k; ++t) local = (local << 1) | ((i >> (n - 1 - targets[static_cast<std::size_t>(t)])) & 1U);
    phase[i] = u(static_cast<Eigen::Index>(local), static_cast<Eigen::Index>(local));
  }
  Complex* data = rho.data();
  for (std::size_t c = 0; c < d; ++c) {
    const Complex pc = std::conj(phase[c]);
    if (pc == Complex{1.0, 0.0}) {
      for (std::size_t r = 0; r < d; ++r) {
        if (phase[r] != Complex{1.0, 0.0}) data[c * d + r] *= phase[r];
      }
    } else {
      for (std::size_t r = 0; r < d; ++r) data[c * d + r] *= phase[r] * pc;
    }
  }
}

}  // namespace

void apply_unitary(CMatrix& rho, const CMatrix& u, std::span<const int> targets) {
  const int n = register_qubits(rho);
  check_targets(targets, n);
  if (u.rows() != static_cast<Eigen::Index>(dim_of(static_cast<int>(targets.size())))) {
    throw std::invalid_argument("apply_unitary: operator size does not match targets");
  }
  if (is_diagonal(u)) {
    apply_diagonal(rho, u, targets);
    return;
  }
  const LocalIndex idx(targets, n);
  const std::size_t d = dim_of(n);
  const std::size_t kd = idx.offsets.size();
  std::vector<Complex> in(kd);
  Complex* data = rho.data();

  // rho <- U rho : mix rows within each column.
  for (std::size_t c = 0; c < d; ++c) {
    Complex* col = data + c * d;
    for (std::size_t b = 0; b < idx.bases; ++b) {
      const std::size_t r0 = idx.base(b);
      for (std::size_t m = 0; m < kd; ++m) in[m] = col[r0 + idx.offsets[m]];
      for (std::size_t a = 0; a < kd; ++a) {
        Complex acc{0.0, 0.0};
        for (std::size_t m = 0; m < kd; ++m) acc += u(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(m)) * in[m];
        col[r0 + idx.offsets[a]] = acc;
      }
    }
  }
  // rho <- rho U^dagger : mix columns within each row.
  const CMatrix uc = u.conjugate();
  std::vector<Complex*> cols(kd);
  for (std::size_t b = 0; b < idx.bases; ++b) {
    const std::size_t c0 = idx.base(b);
    for (std::size_t m = 0; m < kd; ++m) cols[m] = data + (c0 + idx.offsets[m]) * d;
    for (std::size_t r = 0; r < d; ++r) {
      for (std::size_t m = 0; m < kd; ++m) in[m] = cols[m][r];
      for (std::size_t a = 0; a < kd; ++a) {
        Complex acc{0.0, 0.0};
        for (std::size_t m = 0; m < kd; ++m) acc += uc(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(m)) * in[m];
        cols[a][r] = acc;
      }
    }
  }
}

void apply_superoperator(CMatrix& rho, const CMatrix& s, std::span<const int> targets) {
  const int n = register_qubits(rho);
  check_targets(targets, n);
  const LocalIndex idx(targets, n);
  const std::size_t kd = idx.offsets.size();
  if (s.rows() != static_cast<Eigen::Index>(kd * kd)) {
    throw std::invalid_argument("apply_superoperator: operator size does not match targets");
  }
  const std::size_t d = dim_of(n);
  const std::size_t kk = kd * kd;
  // Row-major copy of S for a contiguous inner loop.
  std::vector<Complex> sm(kk * kk);
  for (std::size_t i = 0; i < kk; ++i) {
    for (std::size_t j = 0; j < kk; ++j) sm[i * kk + j] = s(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
  }
  std::vector<Complex> in(kk);
  std::vector<std::size_t> pos(kk);
  Complex* data = rho.data();
  for (std::size_t bc = 0; bc < idx.bases; ++bc) {
    const std::size_t c0 = idx.base(bc);
    for (std::size_t br = 0; br < idx.bases; ++br) {
      const std::size_t r0 = idx.base(br);
      for (std::size_t a = 0; a < kd; ++a) {
        for (std::size_t b = 0; b < kd; ++b) pos[a * kd + b] = (c0 + idx.offsets[b]) * d + r0 + idx.offsets[a];
      }
      for (std::size_t m = 0; m < kk; ++m) in[m] = data[pos[m]];
      for (std::size_t i = 0; i < kk; ++i) {
        const Complex* row = &sm[i * kk];
        Complex acc{0.0, 0.0};
        for (std::size_t j = 0; j < kk; ++j) acc += row[j] * in[j];
        data[pos[i]] = acc;
      }
    }
  }
}

SimulationResult simulate(const Circuit& c, const NoiseModel* noise, const SimulationOptions& options) {
  const int n = c.num_qubits();
  if (n > kMaxSimQubits) {
    throw ResourceError("simulate: " + std::to_string(n) + " qubits exceed the dense limit of " +
                        std::to_string(kMaxSimQubits));
  }
  if (n < 1) throw std::invalid_argument("simulate: empty register");

  DensityMatrix state = DensityMatrix::zero_state(n);
  CMatrix& rho = state.mutable_matrix();

  // Liouville matrices of the noise channels, by arity.
  std::map<int, CMatrix> channel_superop;
  auto noise_superop = [&](int arity) -> const CMatrix* {
    if (noise == nullptr) return nullptr;
    auto it = channel_superop.find(arity);
    if (it == channel_superop.end()) {
      const KrausChannel ch = noise->channel_for(arity);
      it = channel_superop.emplace(arity, ch.is_identity() ? CMatrix{} : ch.superoperator()).first;
    }
    return it->second.size() == 0 ? nullptr : &it->second;
  };

  for (const auto& g : c.instructions()) {
    const CMatrix u = unitary_of(g);
    const CMatrix* channel = is_virtual(g.kind) ? nullptr : noise_superop(g.arity());
    if (channel == nullptr) {
      apply_unitary(rho, u, g.qubits);
    } else {
      const CMatrix fused = (*channel) * tensor_product(u, u.conjugate());
      apply_superoperator(rho, fused, g.qubits);
    }
    if (options.check_each_step) state.validate();
  }

  SimulationResult result{std::move(state), {}, depth(c)};
  const auto& m = result.final_state.matrix();
  result.probabilities.resize(static_cast<std::size_t>(m.rows()));
  for (Eigen::Index i = 0; i < m.rows(); ++i) result.probabilities[static_cast<std::size_t>(i)] = m(i, i).real();
  return result;
}

SimulationResult simulate(const Circuit& c, const NoiseModel& noise, const SimulationOptions& options) {
  return simulate(c, &noise, options);
}

std::size_t basis_index(std::string_view bits) {
  if (bits.empty() || bits.find_first_not_of("01") != std::string_view::npos) {
    throw std::invalid_argument("basis_index: '" + std::string(bits) + "' is not a bitstring");
  }
  std::size_t idx = 0;
  for (char ch : bits) idx = (idx << 1) | static_cast<std::size_t>(ch == '1');
  return idx;
}

std::string basis_label(std::size_t index, int num_qubits) {
  std::string s(static_cast<std::size_t>(num_qubits), '0');
  for (int q = 0; q < num_qubits; ++q) {
    if ((index >> (num_qubits - 1 - q)) & 1U) s[static_cast<std::size_t>(q)] = '1';
  }
  return s;
}

double success_probability(const SimulationResult& r, std::string_view target) {
  if (target.size() != static_cast<std::size_t>(r.final_state.num_qubits())) {
    throw std::invalid_argument("success_probability: target length does not match register width");
  }
  return r.probabilities[basis_index(target)];
}

double state_fidelity(const SimulationResult& r, const PureState& ideal) {
  if (ideal.num_qubits() != r.final_state.num_qubits()) {
    throw std::invalid_argument("state_fidelity: dimension mismatch");
  }
  const auto& psi = ideal.amplitudes();
  return (psi.adjoint() * r.final_state.matrix() * psi)(0, 0).real();
}

double expectation_z(const DensityMatrix& rho, int qubit) {
  const int n = rho.num_qubits();
  if (qubit < 0 || qubit >= n) throw std::invalid_argument("expectation_z: qubit out of range");
  const auto& m = rho.matrix();
  double acc = 0.0;
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    const bool one = (static_cast<std::size_t>(i) >> (n - 1 - qubit)) & 1U;
    acc += one ? -m(i, i).real() : m(i, i).real();
  }
  return acc;
}

double expectation_z(const SimulationResult& r, int qubit) { return expectation_z(r.final_state, qubit); }

std::uint64_t hoeffding_samples(double epsilon, double delta) {
  if (!(epsilon > 0.0 && epsilon < 1.0)) throw std::invalid_argument("hoeffding_samples: epsilon outside (0, 1)");
  if (!(delta > 0.0 && delta < 1.0)) throw std::invalid_argument("hoeffding_samples: delta outside (0, 1)");
  return static_cast<std::uint64_t>(std::ceil(std::log(2.0 / delta) / (2.0 * epsilon * epsilon)));
}

CMatrix circuit_unitary(const Circuit& c) {
  if (c.num_qubits() > kMaxSimQubits) throw ResourceError("circuit_unitary: register too wide");
  CMatrix u = mat::identity(c.num_qubits());
  for (const auto& g : c.instructions()) u = embed_operator(unitary_of(g), g.qubits, c.num_qubits()) * u;
  return u;
}

PureState ideal_output(const Circuit& c) {
  if (c.num_qubits() > kMaxSimQubits) throw ResourceError("ideal_output: register too wide");
  CVector psi = CVector::Zero(static_cast<Eigen::Index>(dim_of(c.num_qubits())));
  psi(0) = 1.0;
  for (const auto& g : c.instructions()) {
    const CMatrix u = unitary_of(g);
    const LocalIndex idx(g.qubits, c.num_qubits());
    std::vector<Complex> in(idx.offsets.size());
    for (std::size_t b = 0; b < idx.bases; ++b) {
      const std::size_t r0 = idx.base(b);
      for (std::size_t m = 0; m < in.size(); ++m) in[m] = psi(static_cast<Eigen::Index>(r0 + idx.offsets[m]));
      for (std::size_t a = 0; a < in.size(); ++a) {
        Complex acc{0.0, 0.0};
        for (std::size_t m = 0; m < in.size(); ++m) acc += u(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(m)) * in[m];
        psi(static_cast<Eigen::Index>(r0 + idx.offsets[a])) = acc;
      }
    }
  }
  psi /= psi.norm();
  return PureState(std::move(psi));
}

}  // namespace qnoise
