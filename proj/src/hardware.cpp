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

#include "qnoise/hardware.hpp"

#include "qnoise/errors.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <queue>
#include <sstream>

namespace qnoise {

CouplingGraph::CouplingGraph(int num_qubits, std::vector<Edge> edges) : num_qubits_(num_qubits) {
  if (num_qubits < 1) throw InvariantError("edges", "graph needs at least one qubit");
  for (auto& [a, b] : edges) {
    if (a == b) throw InvariantError("edges", "self-loop on qubit " + std::to_string(a));
    if (a < 0 || b < 0 || a >= num_qubits || b >= num_qubits) {
      throw InvariantError("edges", "endpoint out of range in " + std::to_string(a) + "-" +
                                        std::to_string(b));
    }
    if (a > b) std::swap(a, b);
  }
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  edges_ = std::move(edges);

  adjacency_.assign(static_cast<std::size_t>(num_qubits), {});
  for (const auto& [a, b] : edges_) {
    adjacency_[static_cast<std::size_t>(a)].push_back(b);
    adjacency_[static_cast<std::size_t>(b)].push_back(a);
  }
  for (auto& nbrs : adjacency_) std::sort(nbrs.begin(), nbrs.end());

  const auto dist = distances_from(0);
  if (std::any_of(dist.begin(), dist.end(), [](int d) { return d < 0; })) {
    throw InvariantError("edges", "coupling graph is disconnected");
  }
}

CouplingGraph CouplingGraph::complete(int n) {
  std::vector<Edge> edges;
  for (int a = 0; a < n; ++a) {
    for (int b = a + 1; b < n; ++b) edges.emplace_back(a, b);
  }
  return CouplingGraph(n, std::move(edges));
}

bool CouplingGraph::has_edge(int a, int b) const {
  if (a > b) std::swap(a, b);
  return std::binary_search(edges_.begin(), edges_.end(), Edge{a, b});
}

std::vector<int> CouplingGraph::distances_from(int source) const {
  std::vector<int> dist(static_cast<std::size_t>(num_qubits_), -1);
  std::queue<int> frontier;
  dist[static_cast<std::size_t>(source)] = 0;
  frontier.push(source);
  while (!frontier.empty()) {
    const int q = frontier.front();
    frontier.pop();
    for (int nb : neighbors(q)) {
      if (dist[static_cast<std::size_t>(nb)] < 0) {
        dist[static_cast<std::size_t>(nb)] = dist[static_cast<std::size_t>(q)] + 1;
        frontier.push(nb);
      }
    }
  }
  return dist;
}

double coupling_density(const CouplingGraph& g) {
  const double n = g.num_qubits();
  if (n < 2) throw std::invalid_argument("coupling_density: needs at least two qubits");
  return 100.0 * static_cast<double>(g.edges().size()) / (n * (n - 1) / 2.0);
}

bool is_universal(std::span<const Gate> gates) {
  auto has = [&](Gate g) { return std::find(gates.begin(), gates.end(), g) != gates.end(); };
  const bool rotation = has(Gate::Rz) && (has(Gate::Rx) || has(Gate::SX) || has(Gate::GPi2) || has(Gate::Ry));
  const bool entangler = has(Gate::CX) || has(Gate::CZ) || has(Gate::CP) || has(Gate::MS);
  return rotation && entangler;
}

bool BackendSpec::supports(Gate g) const {
  return std::find(native_gates.begin(), native_gates.end(), g) != native_gates.end();
}

void BackendSpec::validate() const {
  if (name.empty()) throw InvariantError("name", "must not be empty");
  if (!(f1 > 0.0 && f1 <= 1.0)) throw InvariantError("f1", "must lie in (0, 1]");
  if (!(f2 > 0.0 && f2 <= 1.0)) throw InvariantError("f2", "must lie in (0, 1]");
  if (!(t1.count() > 0.0)) throw InvariantError("t1_us", "must be positive");
  if (!(t2.count() > 0.0)) throw InvariantError("t2_us", "must be positive");
  if (t2 > 2.0 * t1) throw InvariantError("t2_us", "must not exceed 2 T1");
  if (!(tg1.count() >= 0.0)) throw InvariantError("tg1_ns", "must not be negative");
  if (!(tg2.count() >= 0.0)) throw InvariantError("tg2_ns", "must not be negative");
  if (native_gates.empty()) throw InvariantError("gates", "native gate set is empty");
  if (!is_universal(native_gates)) {
    throw InvariantError("gates", "native gate set is not universal for this transpiler");
  }
  if (graph.num_qubits() < 1) throw InvariantError("edges", "empty coupling graph");
}

namespace {

CouplingGraph kolkata_graph() {
  // 27-qubit heavy-hex (Falcon r5.11) lattice.
  return CouplingGraph(27, {{0, 1},   {1, 2},   {1, 4},   {2, 3},   {3, 5},   {4, 7},   {5, 8},
                            {6, 7},   {7, 10},  {8, 9},   {8, 11},  {10, 12}, {11, 14}, {12, 13},
                            {12, 15}, {13, 14}, {14, 16}, {15, 18}, {16, 19}, {17, 18}, {18, 21},
                            {19, 20}, {19, 22}, {21, 23}, {22, 25}, {23, 24}, {24, 25}, {25, 26}});
}

CouplingGraph aspen_m3_graph() {
  // Two rows of five octagons. Ring positions run counterclockwise from the
  // lower right: 0,1 face east, 2,3 north, 4,5 west, 6,7 south.
  constexpr int kRows = 2;
  constexpr int kCols = 5;
  auto q = [](int row, int col, int pos) { return 8 * (row * kCols + col) + pos; };
  std::vector<Edge> edges;
  for (int r = 0; r < kRows; ++r) {
    for (int c = 0; c < kCols; ++c) {
      for (int p = 0; p < 8; ++p) edges.emplace_back(q(r, c, p), q(r, c, (p + 1) % 8));
      if (c + 1 < kCols) {
        edges.emplace_back(q(r, c, 0), q(r, c + 1, 5));
        edges.emplace_back(q(r, c, 1), q(r, c + 1, 4));
      }
      if (r + 1 < kRows) {
        edges.emplace_back(q(r, c, 7), q(r + 1, c, 2));
        edges.emplace_back(q(r, c, 6), q(r + 1, c, 3));
      }
    }
  }
  return CouplingGraph(kRows * kCols * 8, std::move(edges));
}

}  // namespace

BackendSpec builtin(std::string_view name) {
  if (name == "ibmq_kolkata") {
    return BackendSpec{"ibmq_kolkata", kolkata_graph(), {Gate::X, Gate::SX, Gate::Rz, Gate::CX},
                       Microseconds{109.90}, Microseconds{96.80}, 0.99968, 0.98909,
                       Nanoseconds{35.56}, Nanoseconds{415.37}};
  }
  if (name == "ionq_aria") {
    // T1 is quoted as 10-100 s; 50 s is used.
    return BackendSpec{"ionq_aria", CouplingGraph::complete(21), {Gate::Rz, Gate::MS, Gate::GPi, Gate::GPi2},
                       Microseconds{50e6}, Microseconds{1e6}, 0.9995, 0.996,
                       Nanoseconds{135e3}, Nanoseconds{600e3}};
  }
  if (name == "rigetti_aspen_m3") {
    return BackendSpec{"rigetti_aspen_m3",
                       aspen_m3_graph(),
                       {Gate::X, Gate::SX, Gate::Rx, Gate::Rz, Gate::CZ, Gate::CP, Gate::XY},
                       Microseconds{24.98},
                       Microseconds{28.04},
                       0.99614,
                       0.90588,
                       Nanoseconds{40.0},
                       Nanoseconds{240.0}};
  }
  throw std::invalid_argument("unknown backend '" + std::string(name) + "'");
}

BackendSpec full_mesh(const BackendSpec& base) {
  BackendSpec out = base;
  out.graph = CouplingGraph::complete(base.num_qubits());
  return out;
}

// File format ----------------------------------------------------------------

namespace {

std::string fmt(double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double parse_number(const std::string& text, int line, const std::string& key) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    throw ParseError(line, "value of '" + key + "' is not a number");
  }
  if (used != text.size()) throw ParseError(line, "value of '" + key + "' is not a number");
  return v;
}

int parse_index(const std::string& text, int line) {
  if (text.empty() || text.find_first_not_of("0123456789") != std::string::npos) {
    throw ParseError(line, "invalid qubit index '" + text + "'");
  }
  return std::stoi(text);
}

// Canonical sort for native gate sets.
void sort_gates(std::vector<Gate>& gates) {
  std::sort(gates.begin(), gates.end());
  gates.erase(std::unique(gates.begin(), gates.end()), gates.end());
}

}  // namespace

void save_backend(std::ostream& os, const BackendSpec& spec) {
  os << "[metrics]\n";
  os << "name = " << spec.name << '\n';
  os << "t1_us = " << fmt(spec.t1.count()) << '\n';
  os << "t2_us = " << fmt(spec.t2.count()) << '\n';
  os << "f1 = " << fmt(spec.f1) << '\n';
  os << "f2 = " << fmt(spec.f2) << '\n';
  os << "tg1_ns = " << fmt(spec.tg1.count()) << '\n';
  os << "tg2_ns = " << fmt(spec.tg2.count()) << '\n';
  os << "[gates]\n";
  for (Gate g : spec.native_gates) os << gate_name(g) << '\n';
  os << "[edges]\n";
  for (const auto& [a, b] : spec.graph.edges()) os << a << '-' << b << '\n';
}

std::string backend_to_text(const BackendSpec& spec) {
  std::ostringstream os;
  save_backend(os, spec);
  return os.str();
}

BackendSpec read_backend(std::istream& is) {
  enum class Section { None, Metrics, Gates, Edges };
  Section section = Section::None;
  std::map<std::string, std::pair<std::string, int>> metrics;
  std::vector<Gate> gates;
  std::vector<Edge> edges;
  bool saw_gates = false;
  bool saw_edges = false;

  std::string raw;
  int line = 0;
  while (std::getline(is, raw)) {
    ++line;
    if (const auto hash = raw.find('#'); hash != std::string::npos) raw.resize(hash);
    const std::string text = trim(raw);
    if (text.empty()) continue;
    if (text.front() == '[') {
      if (text == "[metrics]") {
        section = Section::Metrics;
      } else if (text == "[gates]") {
        section = Section::Gates;
        saw_gates = true;
      } else if (text == "[edges]") {
        section = Section::Edges;
        saw_edges = true;
      } else {
        throw ParseError(line, "unknown section " + text);
      }
      continue;
    }
    switch (section) {
      case Section::None: throw ParseError(line, "content before the first section");
      case Section::Metrics: {
        const auto eq = text.find('=');
        if (eq == std::string::npos) throw ParseError(line, "expected 'key = value'");
        const std::string key = trim(text.substr(0, eq));
        const std::string value = trim(text.substr(eq + 1));
        static const char* kKeys[] = {"name", "t1_us", "t2_us", "f1", "f2", "tg1_ns", "tg2_ns"};
        if (std::find_if(std::begin(kKeys), std::end(kKeys), [&](const char* k) { return key == k; }) ==
            std::end(kKeys)) {
          throw ParseError(line, "unknown metrics key '" + key + "'");
        }
        if (metrics.count(key)) throw ParseError(line, "duplicate key '" + key + "'");
        if (value.empty()) throw ParseError(line, "empty value for '" + key + "'");
        metrics[key] = {value, line};
        break;
      }
      case Section::Gates: {
        const auto g = try_gate_from_name(text);
        if (!g) throw ParseError(line, "unknown gate '" + text + "'");
        gates.push_back(*g);
        break;
      }
      case Section::Edges: {
        const auto dash = text.find('-');
        if (dash == std::string::npos) throw ParseError(line, "expected edge 'a-b'");
        edges.emplace_back(parse_index(trim(text.substr(0, dash)), line),
                           parse_index(trim(text.substr(dash + 1)), line));
        break;
      }
    }
  }

  for (const char* key : {"name", "t1_us", "t2_us", "f1", "f2", "tg1_ns", "tg2_ns"}) {
    if (!metrics.count(key)) throw InvariantError(key, "missing from [metrics]");
  }
  if (!saw_gates) throw InvariantError("gates", "missing [gates] section");
  if (!saw_edges || edges.empty()) throw InvariantError("edges", "missing or empty [edges] section");

  auto number = [&](const char* key) {
    const auto& [text, at] = metrics.at(key);
    return parse_number(text, at, key);
  };

  int num_qubits = 0;
  for (const auto& [a, b] : edges) num_qubits = std::max({num_qubits, a + 1, b + 1});

  sort_gates(gates);
  BackendSpec spec{metrics.at("name").first,
                   CouplingGraph(num_qubits, std::move(edges)),
                   std::move(gates),
                   Microseconds{number("t1_us")},
                   Microseconds{number("t2_us")},
                   number("f1"),
                   number("f2"),
                   Nanoseconds{number("tg1_ns")},
                   Nanoseconds{number("tg2_ns")}};
  spec.validate();
  return spec;
}

BackendSpec load_backend(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open backend file " + path.string());
  return read_backend(in);
}

}  // namespace qnoise
