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

#include "qnoise/gates.hpp"

#include <chrono>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace qnoise {

using Microseconds = std::chrono::duration<double, std::micro>;
using Nanoseconds = std::chrono::duration<double, std::nano>;

using Edge = std::pair<int, int>;

/// Undirected, connected device connectivity. Edges are stored normalized
/// (first < second) and sorted.
class CouplingGraph {
 public:
  CouplingGraph() = default;
  /// Throws InvariantError("edges", ...) on self-loops, out-of-range endpoints
  /// or a disconnected graph.
  CouplingGraph(int num_qubits, std::vector<Edge> edges);
  static CouplingGraph complete(int num_qubits);

  int num_qubits() const { return num_qubits_; }
  const std::vector<Edge>& edges() const { return edges_; }
  bool has_edge(int a, int b) const;
  const std::vector<int>& neighbors(int q) const { return adjacency_[static_cast<std::size_t>(q)]; }
  /// Breadth-first hop counts from `source`.
  std::vector<int> distances_from(int source) const;

  friend bool operator==(const CouplingGraph& a, const CouplingGraph& b) {
    return a.num_qubits_ == b.num_qubits_ && a.edges_ == b.edges_;
  }

 private:
  int num_qubits_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::vector<int>> adjacency_;
};

/// |edges| / (n (n-1) / 2) in percent.
double coupling_density(const CouplingGraph& g);

/// True when the set contains Rz, a non-diagonal single-qubit basis gate
/// (Rx, SX, GPi2 or Ry) and an entangler the transpiler can target (CX, CZ, CP or MS).
bool is_universal(std::span<const Gate> gates);

struct BackendSpec {
  std::string name;
  CouplingGraph graph;
  std::vector<Gate> native_gates;  ///< catalog order, unique
  Microseconds t1{};
  Microseconds t2{};
  double f1 = 1.0;
  double f2 = 1.0;
  Nanoseconds tg1{};
  Nanoseconds tg2{};

  int num_qubits() const { return graph.num_qubits(); }
  bool supports(Gate g) const;
  /// Throws InvariantError naming the offending field.
  void validate() const;

  friend bool operator==(const BackendSpec&, const BackendSpec&) = default;
};

inline constexpr std::string_view kBuiltinBackends[] = {"ibmq_kolkata", "ionq_aria",
                                                        "rigetti_aspen_m3"};

/// One of kBuiltinBackends; throws std::invalid_argument for anything else.
BackendSpec builtin(std::string_view name);

/// Same device with all-to-all connectivity; every other field unchanged.
BackendSpec full_mesh(const BackendSpec& base);

// Backend file format:
//
//   [metrics]
//   name = ...
//   t1_us = ...   t2_us = ...   f1 = ...   f2 = ...   tg1_ns = ...   tg2_ns = ...
//   [gates]
//   <gate name per line>
//   [edges]
//   a-b
//
// The qubit count is one more than the largest edge endpoint.

void save_backend(std::ostream& os, const BackendSpec& spec);
std::string backend_to_text(const BackendSpec& spec);
/// Throws ParseError (with line) for syntax problems, InvariantError (with
/// field) for values that violate BackendSpec invariants.
BackendSpec read_backend(std::istream& is);
BackendSpec load_backend(const std::filesystem::path& path);

}  // namespace qnoise
