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

#include "qnoise/transpiler.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <optional>
#include <random>
#include <stdexcept>
#include <variant>

namespace qnoise {

namespace {

using std::numbers::pi;

bool contains(std::span<const Gate> set, Gate g) {
  return std::find(set.begin(), set.end(), g) != set.end();
}

double wrap_angle(double a) {
  a = std::remainder(a, 2.0 * pi);
  if (a <= -pi) a += 2.0 * pi;
  return a;
}

bool near(double a, double b) { return std::abs(a - b) < kAngleTol; }

struct OneQ {
  int qubit;
  CMatrix u;
};

using Step = std::variant<OneQ, GateInstance>;

// Accumulates the expansion of one source instruction.
class Expansion {
 public:
  void one(int q, CMatrix u) { steps_.emplace_back(OneQ{q, std::move(u)}); }
  void gate(Gate g, std::vector<int> qs, std::vector<double> ps = {}) {
    steps_.emplace_back(GateInstance{g, std::move(qs), std::move(ps)});
  }
  void h(int q) { one(q, mat::h()); }
  void p(int q, double l) { one(q, mat::phase(l)); }
  void rz(int q, double t) { one(q, mat::rz(t)); }

  std::vector<Step>& steps() { return steps_; }

 private:
  std::vector<Step> steps_;
};

// Time-ordered CX-level templates ------------------------------------------

void cx_level_zz(Expansion& e, int a, int b, double phi) {
  // exp(-i phi/2 Z⊗Z)
  e.gate(Gate::CX, {a, b});
  e.rz(b, phi);
  e.gate(Gate::CX, {a, b});
}

void cx_level_mcz(Expansion& e, const std::vector<int>& qs) {
  const int k = static_cast<int>(qs.size());
  if (k == 2) {
    e.h(qs[1]);
    e.gate(Gate::CX, {qs[0], qs[1]});
    e.h(qs[1]);
    return;
  }
  // x_0 x_1 ... x_{k-1} = 2^(1-k) sum_{T != {}} (-1)^(|T|-1) parity_T(x).
  // Subsets are grouped by their largest member m; the parity of {m} ∪ S is
  // accumulated on qs[m] while S walks a Gray code over {0..m-1}.
  const double unit = pi / std::ldexp(1.0, k - 1);
  for (int m = 0; m < k; ++m) {
    const int target = qs[static_cast<std::size_t>(m)];
    e.p(target, unit);
    const unsigned count = 1U << m;
    unsigned prev = 0;
    for (unsigned i = 1; i < count; ++i) {
      const unsigned code = i ^ (i >> 1);
      const int flipped = std::countr_zero(code ^ prev);
      e.gate(Gate::CX, {qs[static_cast<std::size_t>(flipped)], target});
      const double sign = (std::popcount(code) % 2 == 0) ? 1.0 : -1.0;
      e.p(target, sign * unit);
      prev = code;
    }
    if (m > 0) {
      const int last = std::countr_zero(prev);
      e.gate(Gate::CX, {qs[static_cast<std::size_t>(last)], target});
    }
  }
}

void cx_level(Expansion& e, const GateInstance& g) {
  const auto& q = g.qubits;
  switch (g.kind) {
    case Gate::CX:
      e.gate(Gate::CX, q);
      return;
    case Gate::CZ:
      cx_level_mcz(e, q);
      return;
    case Gate::MCZ:
      cx_level_mcz(e, q);
      return;
    case Gate::CP: {
      const double l = g.params[0];
      e.p(q[0], l / 2);
      e.gate(Gate::CX, {q[0], q[1]});
      e.p(q[1], -l / 2);
      e.gate(Gate::CX, {q[0], q[1]});
      e.p(q[1], l / 2);
      return;
    }
    case Gate::SWAP:
      e.gate(Gate::CX, {q[0], q[1]});
      e.gate(Gate::CX, {q[1], q[0]});
      e.gate(Gate::CX, {q[0], q[1]});
      return;
    case Gate::MS:
      // exp(-i pi/4 X⊗X)
      e.h(q[0]);
      e.h(q[1]);
      cx_level_zz(e, q[0], q[1], pi / 2);
      e.h(q[0]);
      e.h(q[1]);
      return;
    case Gate::XY: {
      // exp(i theta/4 (X⊗X + Y⊗Y)); the two terms commute.
      const double phi = -g.params[0] / 2;
      e.h(q[0]);
      e.h(q[1]);
      cx_level_zz(e, q[0], q[1], phi);
      e.h(q[0]);
      e.h(q[1]);
      const CMatrix s = mat::phase(pi / 2);
      e.one(q[0], s.adjoint());
      e.one(q[1], s.adjoint());
      e.h(q[0]);
      e.h(q[1]);
      cx_level_zz(e, q[0], q[1], phi);
      e.h(q[0]);
      e.h(q[1]);
      e.one(q[0], s);
      e.one(q[1], s);
      return;
    }
    default:
      break;
  }
  if (g.arity() == 1) {
    e.one(q[0], unitary_of(g));
    return;
  }
  throw std::invalid_argument("decompose: no lowering for " + std::string(gate_name(g.kind)));
}

// Map a CX onto whatever entangler the target offers.
void native_cx(Expansion& e, int c, int t, std::span<const Gate> target) {
  if (contains(target, Gate::CX)) {
    e.gate(Gate::CX, {c, t});
  } else if (contains(target, Gate::CZ)) {
    e.h(t);
    e.gate(Gate::CZ, {c, t});
    e.h(t);
  } else if (contains(target, Gate::CP)) {
    e.h(t);
    e.gate(Gate::CP, {c, t}, {pi});
    e.h(t);
  } else if (contains(target, Gate::MS)) {
    // CX = e^{i pi/4} (Rz(-pi/2) H ⊗ H Rz(-pi/2) H) MS (H ⊗ I)
    e.h(c);
    e.gate(Gate::MS, {c, t});
    e.h(c);
    e.rz(c, -pi / 2);
    e.h(t);
    e.rz(t, -pi / 2);
    e.h(t);
  } else {
    throw std::invalid_argument("decompose: target has no supported entangling gate");
  }
}

// SWAP = XY(pi) CZ (S^dagger ⊗ S^dagger), for targets that offer XY and a controlled phase.
bool xy_swap(Expansion& e, const GateInstance& g, std::span<const Gate> target) {
  if (g.kind != Gate::SWAP || !contains(target, Gate::XY)) return false;
  const int a = g.qubits[0];
  const int b = g.qubits[1];
  if (contains(target, Gate::CZ)) {
    e.gate(Gate::CZ, {a, b});
  } else if (contains(target, Gate::CP)) {
    e.gate(Gate::CP, {a, b}, {pi});
  } else {
    return false;
  }
  const CMatrix sdg = mat::phase(-pi / 2);
  e.one(a, sdg);
  e.one(b, sdg);
  e.gate(Gate::XY, {a, b}, {pi});
  return true;
}

struct ZyzAngles {
  double phi;
  double theta;
  double lambda;
};

// u ∝ Rz(phi) Ry(theta) Rz(lambda)
ZyzAngles zyz(const CMatrix& u) {
  const Complex det = u(0, 0) * u(1, 1) - u(0, 1) * u(1, 0);
  const CMatrix v = u / std::sqrt(det);
  const Complex a = v(0, 0);
  const Complex b = v(1, 0);
  const double theta = 2.0 * std::atan2(std::abs(b), std::abs(a));
  constexpr double kTiny = 1e-14;
  if (std::abs(b) < kTiny) return {0.0, 0.0, -2.0 * std::arg(a)};
  if (std::abs(a) < kTiny) return {2.0 * std::arg(b), theta, 0.0};
  return {std::arg(b) - std::arg(a), theta, -std::arg(a) - std::arg(b)};
}

void push_rz(std::vector<GateInstance>& out, int q, double angle) {
  angle = wrap_angle(angle);
  if (std::abs(angle) < kAngleTol) return;
  out.push_back(GateInstance{Gate::Rz, {q}, {angle}});
}

}  // namespace

std::vector<GateInstance> synthesize_1q(const CMatrix& u, int qubit, std::span<const Gate> target) {
  if (!contains(target, Gate::Rz)) throw std::invalid_argument("decompose: target lacks Rz");
  const auto [phi, theta, lambda] = zyz(u);
  std::vector<GateInstance> out;
  if (std::abs(theta) < kAngleTol) {
    push_rz(out, qubit, phi + lambda);
    return out;
  }
  if (contains(target, Gate::Rx)) {
    push_rz(out, qubit, lambda - pi / 2);
    out.push_back(GateInstance{Gate::Rx, {qubit}, {theta}});
    push_rz(out, qubit, phi + pi / 2);
    return out;
  }
  const bool sx = contains(target, Gate::SX);
  const bool gpi2 = contains(target, Gate::GPi2);
  if (sx || gpi2) {
    const GateInstance half = sx ? GateInstance{Gate::SX, {qubit}, {}} : GateInstance{Gate::GPi2, {qubit}, {0.0}};
    const bool has_full = sx ? contains(target, Gate::X) : contains(target, Gate::GPi);
    if (near(theta, pi / 2)) {
      push_rz(out, qubit, lambda - pi / 2);
      out.push_back(half);
      push_rz(out, qubit, phi + pi / 2);
    } else if (near(theta, pi) && has_full) {
      // Rz(phi) X Rz(lambda + pi) = X Rz(lambda + pi - phi)
      push_rz(out, qubit, lambda + pi - phi);
      out.push_back(sx ? GateInstance{Gate::X, {qubit}, {}} : GateInstance{Gate::GPi, {qubit}, {0.0}});
    } else {
      push_rz(out, qubit, lambda);
      out.push_back(half);
      push_rz(out, qubit, theta + pi);
      out.push_back(half);
      push_rz(out, qubit, phi + pi);
    }
    return out;
  }
  if (contains(target, Gate::Ry)) {
    push_rz(out, qubit, lambda);
    out.push_back(GateInstance{Gate::Ry, {qubit}, {theta}});
    push_rz(out, qubit, phi);
    return out;
  }
  throw std::invalid_argument("decompose: target has no single-qubit rotation basis");
}

Circuit decompose(const Circuit& c, std::span<const Gate> target) {
  if (!is_universal(target)) throw std::invalid_argument("decompose: target gate set is not universal");
  Circuit out(c.num_qubits());
  for (const auto& g : c.instructions()) {
    if (contains(target, g.kind)) {
      out.add(g);
      continue;
    }
    Expansion cx;
    Expansion native;
    if (!xy_swap(native, g, target)) cx_level(cx, g);

    // Entangler mapping; gates the target already has stay as they are.
    for (auto& step : cx.steps()) {
      if (auto* one = std::get_if<OneQ>(&step)) {
        native.one(one->qubit, std::move(one->u));
        continue;
      }
      auto& gi = std::get<GateInstance>(step);
      if (contains(target, gi.kind)) {
        native.gate(gi.kind, gi.qubits, gi.params);
      } else {
        native_cx(native, gi.qubits[0], gi.qubits[1], target);
      }
    }

    // Fuse single-qubit runs within this expansion, then synthesize.
    std::vector<std::optional<CMatrix>> pending(static_cast<std::size_t>(c.num_qubits()));
    auto flush = [&](int q) {
      auto& slot = pending[static_cast<std::size_t>(q)];
      if (!slot) return;
      for (auto& gi : synthesize_1q(*slot, q, target)) out.add(std::move(gi));
      slot.reset();
    };
    for (auto& step : native.steps()) {
      if (auto* one = std::get_if<OneQ>(&step)) {
        auto& slot = pending[static_cast<std::size_t>(one->qubit)];
        slot = slot ? CMatrix(one->u * *slot) : one->u;
        continue;
      }
      auto& gi = std::get<GateInstance>(step);
      for (int q : gi.qubits) flush(q);
      out.add(std::move(gi));
    }
    for (int q = 0; q < c.num_qubits(); ++q) flush(q);
  }
  return out;
}

std::vector<int> select_region(const CouplingGraph& graph, int n) {
  if (n > graph.num_qubits()) {
    throw std::invalid_argument("circuit needs " + std::to_string(n) + " qubits, device has " +
                                std::to_string(graph.num_qubits()));
  }
  std::vector<int> order;
  std::vector<bool> seen(static_cast<std::size_t>(graph.num_qubits()), false);
  std::vector<int> frontier{0};
  seen[0] = true;
  for (std::size_t head = 0; head < frontier.size() && static_cast<int>(order.size()) < n; ++head) {
    const int q = frontier[head];
    order.push_back(q);
    for (int nb : graph.neighbors(q)) {
      if (!seen[static_cast<std::size_t>(nb)]) {
        seen[static_cast<std::size_t>(nb)] = true;
        frontier.push_back(nb);
      }
    }
  }
  return order;
}

int TranspileReport::final_slot(int logical) const {
  const int phys = final_layout[static_cast<std::size_t>(logical)];
  const auto it = std::find(region.begin(), region.end(), phys);
  return static_cast<int>(it - region.begin());
}

TranspileReport route(const Circuit& c, const CouplingGraph& graph, std::uint64_t seed) {
  const int n = c.num_qubits();
  TranspileReport report;
  report.seed = seed;
  report.depth_before = depth(c);
  report.region = select_region(graph, n);

  // Slot-level adjacency and all-pairs hop counts inside the region.
  std::vector<int> slot_of(static_cast<std::size_t>(graph.num_qubits()), -1);
  for (int s = 0; s < n; ++s) slot_of[static_cast<std::size_t>(report.region[static_cast<std::size_t>(s)])] = s;
  std::vector<std::vector<int>> adj(static_cast<std::size_t>(n));
  for (int s = 0; s < n; ++s) {
    for (int nb : graph.neighbors(report.region[static_cast<std::size_t>(s)])) {
      if (const int t = slot_of[static_cast<std::size_t>(nb)]; t >= 0) adj[static_cast<std::size_t>(s)].push_back(t);
    }
  }
  std::vector<std::vector<int>> dist(static_cast<std::size_t>(n), std::vector<int>(static_cast<std::size_t>(n), -1));
  for (int s = 0; s < n; ++s) {
    auto& d = dist[static_cast<std::size_t>(s)];
    std::vector<int> queue{s};
    d[static_cast<std::size_t>(s)] = 0;
    for (std::size_t h = 0; h < queue.size(); ++h) {
      for (int nb : adj[static_cast<std::size_t>(queue[h])]) {
        if (d[static_cast<std::size_t>(nb)] < 0) {
          d[static_cast<std::size_t>(nb)] = d[static_cast<std::size_t>(queue[h])] + 1;
          queue.push_back(nb);
        }
      }
    }
  }

  std::vector<int> pos(static_cast<std::size_t>(n));  // logical -> slot
  std::vector<int> who(static_cast<std::size_t>(n));  // slot -> logical
  for (int i = 0; i < n; ++i) pos[static_cast<std::size_t>(i)] = who[static_cast<std::size_t>(i)] = i;
  report.initial_layout.mapping = report.region;

  std::mt19937_64 rng(seed);
  Circuit out(n);
  for (const auto& g : c.instructions()) {
    if (g.arity() > 2) {
      throw std::invalid_argument("route: " + std::string(gate_name(g.kind)) +
                                  " acts on more than two qubits; decompose first");
    }
    if (g.arity() == 2) {
      int a = pos[static_cast<std::size_t>(g.qubits[0])];
      const int b = pos[static_cast<std::size_t>(g.qubits[1])];
      const auto& to_b = dist[static_cast<std::size_t>(b)];
      while (to_b[static_cast<std::size_t>(a)] > 1) {
        std::vector<int> steps;
        for (int nb : adj[static_cast<std::size_t>(a)]) {
          if (to_b[static_cast<std::size_t>(nb)] == to_b[static_cast<std::size_t>(a)] - 1) steps.push_back(nb);
        }
        const int next =
            steps.size() == 1 ? steps.front()
                              : steps[std::uniform_int_distribution<std::size_t>(0, steps.size() - 1)(rng)];
        out.add(Gate::SWAP, {a, next});
        ++report.swaps_inserted;
        const int la = who[static_cast<std::size_t>(a)];
        const int ln = who[static_cast<std::size_t>(next)];
        std::swap(who[static_cast<std::size_t>(a)], who[static_cast<std::size_t>(next)]);
        pos[static_cast<std::size_t>(la)] = next;
        pos[static_cast<std::size_t>(ln)] = a;
        a = next;
      }
    }
    GateInstance mapped = g;
    for (int& q : mapped.qubits) q = pos[static_cast<std::size_t>(q)];
    out.add(std::move(mapped));
  }

  report.final_layout.mapping.resize(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    report.final_layout.mapping[static_cast<std::size_t>(i)] =
        report.region[static_cast<std::size_t>(pos[static_cast<std::size_t>(i)])];
  }
  report.output = std::move(out);
  report.depth_after = depth(report.output);
  return report;
}

TranspileReport transpile(const Circuit& c, const BackendSpec& backend, std::uint64_t seed) {
  const Circuit lowered = decompose(c, backend.native_gates);
  TranspileReport report = route(lowered, backend.graph, seed);
  report.output = decompose(report.output, backend.native_gates);
  report.depth_before = depth(c);
  report.depth_after = depth(report.output);
  return report;
}

Circuit to_device(const TranspileReport& report, int device_qubits) {
  Circuit out(device_qubits);
  for (auto g : report.output.instructions()) {
    for (int& q : g.qubits) q = report.region[static_cast<std::size_t>(q)];
    out.add(std::move(g));
  }
  return out;
}

}  // namespace qnoise
