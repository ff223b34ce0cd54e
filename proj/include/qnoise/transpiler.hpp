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

#include "qnoise/circuit.hpp"
#include "qnoise/hardware.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace qnoise {

/// Euler angles below this magnitude are dropped.
inline constexpr double kAngleTol = 1e-12;

/// Logical qubit -> device qubit.
struct Layout {
  std::vector<int> mapping;

  int operator[](std::size_t logical) const { return mapping[logical]; }
  friend bool operator==(const Layout&, const Layout&) = default;
};

struct TranspileReport {
  /// Routed circuit over slot indices 0..n-1; slot s is device qubit region[s].
  Circuit output;
  std::vector<int> region;
  Layout initial_layout;
  Layout final_layout;
  int swaps_inserted = 0;
  int depth_before = 0;
  int depth_after = 0;
  std::uint64_t seed = 0;

  /// Slot holding `logical` after the circuit has run.
  int final_slot(int logical) const;
  friend bool operator==(const TranspileReport&, const TranspileReport&) = default;
};

/// Lower every instruction into `target`. Native instructions pass through
/// untouched; everything else is expanded into CX-level templates, mapped onto
/// the target entangler, and single-qubit runs inside one expansion are
/// re-synthesized as Euler sequences in the target rotation basis.
/// Throws std::invalid_argument when `target` is not universal.
Circuit decompose(const Circuit& c, std::span<const Gate> target);

/// Single-qubit unitary as a sequence of target gates on `qubit` (up to global phase).
std::vector<GateInstance> synthesize_1q(const CMatrix& u, int qubit, std::span<const Gate> target);

/// The n device qubits a circuit is placed on: breadth-first order from
/// qubit 0 with ascending neighbor order. The prefix is always connected.
std::vector<int> select_region(const CouplingGraph& graph, int n);

/// Place logical qubit i on region slot i, then walk every non-adjacent
/// two-qubit gate's first operand along a shortest path toward the second,
/// inserting SWAPs. Ties between shortest paths are broken by a generator
/// seeded with `seed`. Requires instructions of at most two qubits.
TranspileReport route(const Circuit& c, const CouplingGraph& graph, std::uint64_t seed);

/// decompose -> route -> decompose inserted SWAPs.
TranspileReport transpile(const Circuit& c, const BackendSpec& backend, std::uint64_t seed);

/// The routed output rewritten onto device qubit indices.
Circuit to_device(const TranspileReport& report, int device_qubits);

}  // namespace qnoise
