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

#include "qnoise/errors.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <istream>
#include <numbers>
#include <ostream>
#include <sstream>

namespace qnoise {

Circuit::Circuit(int num_qubits) : num_qubits_(num_qubits) {
  if (num_qubits < 0) throw std::invalid_argument("Circuit: negative qubit count");
}

Circuit& Circuit::add(GateInstance g) {
  g.validate();
  for (int q : g.qubits) {
    if (q >= num_qubits_) {
      throw std::invalid_argument("Circuit: qubit " + std::to_string(q) + " out of range for " +
                                  std::to_string(num_qubits_) + "-qubit circuit");
    }
  }
  instructions_.push_back(std::move(g));
  return *this;
}

Circuit& Circuit::add(Gate kind, std::vector<int> qubits, std::vector<double> params) {
  return add(GateInstance{kind, std::move(qubits), std::move(params)});
}

Circuit& Circuit::append(const Circuit& other) {
  if (other.num_qubits_ > num_qubits_) throw std::invalid_argument("Circuit::append: too wide");
  for (const auto& g : other.instructions_) instructions_.push_back(g);
  return *this;
}

int depth(const Circuit& c) {
  std::vector<int> level(static_cast<std::size_t>(c.num_qubits()), 0);
  int best = 0;
  for (const auto& g : c.instructions()) {
    if (is_virtual(g.kind)) continue;
    int l = 0;
    for (int q : g.qubits) l = std::max(l, level[static_cast<std::size_t>(q)]);
    ++l;
    for (int q : g.qubits) level[static_cast<std::size_t>(q)] = l;
    best = std::max(best, l);
  }
  return best;
}

namespace {

void check_algorithm_width(int n, int lo, const char* what) {
  if (n < lo || n > kMaxAlgorithmQubits) {
    throw std::invalid_argument(std::string(what) + ": qubit count " + std::to_string(n) +
                                " outside [" + std::to_string(lo) + ", " +
                                std::to_string(kMaxAlgorithmQubits) + "]");
  }
}

std::vector<int> all_qubits(int n) {
  std::vector<int> qs(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) qs[static_cast<std::size_t>(i)] = i;
  return qs;
}

void layer(Circuit& c, Gate g) {
  for (int q = 0; q < c.num_qubits(); ++q) c.add(g, {q});
}

}  // namespace

int grover_iterations(int n) {
  return static_cast<int>(std::floor(std::numbers::pi / 4.0 * std::sqrt(std::ldexp(1.0, n))));
}

Circuit build_grover(int n, std::string_view marked) {
  check_algorithm_width(n, 2, "build_grover");
  if (marked.size() != static_cast<std::size_t>(n) ||
      marked.find_first_not_of("01") != std::string_view::npos) {
    throw std::invalid_argument("build_grover: marked must be a " + std::to_string(n) +
                                "-character bitstring");
  }
  Circuit c(n);
  layer(c, Gate::H);
  const int rounds = grover_iterations(n);
  for (int r = 0; r < rounds; ++r) {
    for (int q = 0; q < n; ++q) {
      if (marked[static_cast<std::size_t>(q)] == '0') c.add(Gate::X, {q});
    }
    c.add(Gate::MCZ, all_qubits(n));
    for (int q = 0; q < n; ++q) {
      if (marked[static_cast<std::size_t>(q)] == '0') c.add(Gate::X, {q});
    }

    layer(c, Gate::H);
    layer(c, Gate::X);
    c.add(Gate::MCZ, all_qubits(n));
    layer(c, Gate::X);
    layer(c, Gate::H);
  }
  return c;
}

Circuit build_qft(int n) {
  check_algorithm_width(n, 1, "build_qft");
  Circuit c(n);
  for (int j = 0; j < n; ++j) {
    c.add(Gate::H, {j});
    for (int k = j + 1; k < n; ++k) {
      c.add(Gate::CP, {k, j}, {std::numbers::pi / std::ldexp(1.0, k - j)});
    }
  }
  for (int i = 0; i < n / 2; ++i) c.add(Gate::SWAP, {i, n - 1 - i});
  return c;
}

Circuit build_qft_input(int n, std::size_t target) {
  check_algorithm_width(n, 1, "build_qft_input");
  if (target >= dim_of(n)) throw std::invalid_argument("build_qft_input: target out of range");
  // QFT^-1 |t> is a product state: qubit q carries phase -2*pi*t*2^(n-1-q)/2^n.
  Circuit c(n);
  const double t = static_cast<double>(target);
  for (int q = 0; q < n; ++q) {
    c.add(Gate::H, {q});
    const double angle = std::remainder(-2.0 * std::numbers::pi * t * std::ldexp(1.0, -1 - q),
                                        2.0 * std::numbers::pi);
    if (angle != 0.0) c.add(Gate::P, {q}, {angle});
  }
  return c;
}

Circuit build_vqc(double x, const VqcParameters& theta) {
  if (!(std::abs(x) <= 1.0)) throw std::invalid_argument("build_vqc: |x| must be <= 1");
  const double xi = std::asin(x);
  Circuit c(kVqcQubits);
  for (int q = 0; q < 4; ++q) c.add(Gate::Ry, {q}, {xi});
  for (int q = 0; q < 4; ++q) c.add(Gate::Ry, {q}, {theta[static_cast<std::size_t>(q)]});
  for (int q = 0; q < 4; ++q) c.add(Gate::Rz, {q}, {theta[static_cast<std::size_t>(4 + q)]});
  c.add(Gate::CX, {1, 0});
  c.add(Gate::CX, {3, 2});
  c.add(Gate::Ry, {1}, {theta[8]});
  c.add(Gate::Ry, {2}, {theta[9]});
  c.add(Gate::Rz, {1}, {theta[10]});
  c.add(Gate::Rz, {2}, {theta[11]});
  c.add(Gate::CX, {2, 1});
  return c;
}

// IR ------------------------------------------------------------------------

void write_circuit(std::ostream& os, const Circuit& c) {
  os << "qubits " << c.num_qubits() << '\n';
  char buf[32];
  for (const auto& g : c.instructions()) {
    os << gate_name(g.kind) << ' ';
    for (std::size_t i = 0; i < g.qubits.size(); ++i) os << (i ? "," : "") << g.qubits[i];
    if (!g.params.empty()) {
      os << " @ ";
      for (std::size_t i = 0; i < g.params.size(); ++i) {
        std::snprintf(buf, sizeof buf, "%.17g", g.params[i]);
        os << (i ? "," : "") << buf;
      }
    }
    os << '\n';
  }
}

std::string to_text(const Circuit& c) {
  std::ostringstream os;
  write_circuit(os, c);
  return os.str();
}

namespace {

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    out.push_back(trim(s.substr(start, pos == std::string_view::npos ? pos : pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

int parse_int(std::string_view s, int line, const char* what) {
  int v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size()) {
    throw ParseError(line, std::string("invalid ") + what + " '" + std::string(s) + "'");
  }
  return v;
}

double parse_double(std::string_view s, int line) {
  std::string tmp(s);
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(tmp, &used);
  } catch (const std::exception&) {
    throw ParseError(line, "invalid parameter '" + tmp + "'");
  }
  if (used != tmp.size() || !std::isfinite(v)) throw ParseError(line, "invalid parameter '" + tmp + "'");
  return v;
}

}  // namespace

Circuit read_circuit(std::istream& is) {
  std::string raw;
  int line = 0;
  std::optional<Circuit> circuit;
  while (std::getline(is, raw)) {
    ++line;
    std::string_view text = raw;
    if (const auto hash = text.find('#'); hash != std::string_view::npos) text = text.substr(0, hash);
    text = trim(text);
    if (text.empty()) continue;

    if (!circuit) {
      constexpr std::string_view kHeader = "qubits";
      if (text.substr(0, kHeader.size()) != kHeader) {
        throw ParseError(line, "expected header 'qubits N'");
      }
      const int n = parse_int(trim(text.substr(kHeader.size())), line, "qubit count");
      if (n < 0) throw ParseError(line, "negative qubit count");
      circuit.emplace(n);
      continue;
    }

    std::string_view body = text;
    std::string_view params_text;
    if (const auto at = text.find('@'); at != std::string_view::npos) {
      body = trim(text.substr(0, at));
      params_text = trim(text.substr(at + 1));
      if (params_text.empty()) throw ParseError(line, "empty parameter list after '@'");
    }
    const auto space = body.find_first_of(" \t");
    if (space == std::string_view::npos) throw ParseError(line, "missing qubit list");
    const auto name = body.substr(0, space);
    const auto kind = try_gate_from_name(name);
    if (!kind) throw ParseError(line, "unknown gate '" + std::string(name) + "'");

    GateInstance g{*kind, {}, {}};
    for (auto q : split(trim(body.substr(space)), ',')) g.qubits.push_back(parse_int(q, line, "qubit"));
    if (!params_text.empty()) {
      for (auto p : split(params_text, ',')) g.params.push_back(parse_double(p, line));
    }
    try {
      circuit->add(std::move(g));
    } catch (const std::invalid_argument& e) {
      throw ParseError(line, e.what());
    }
  }
  if (!circuit) throw ParseError(std::max(line, 1), "missing header 'qubits N'");
  return *circuit;
}

Circuit parse_circuit(std::string_view text) {
  std::istringstream is{std::string(text)};
  return read_circuit(is);
}

}  // namespace qnoise
