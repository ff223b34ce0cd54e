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

#include "qnoise/cli.hpp"

#include "qnoise/circuit.hpp"
#include "qnoise/engine.hpp"
#include "qnoise/errors.hpp"
#include "qnoise/transpiler.hpp"
#include "qnoise/vqc.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <atomic>
#include <charconv>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <thread>

namespace qnoise {

namespace {

using ordered_json = nlohmann::ordered_json;

std::string fmt(double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

std::string short_fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

std::uint64_t point_stream(std::uint64_t seed, int num_qubits) {
  std::mt19937_64 rng(seed ^ (0x9E3779B97F4A7C15ULL * static_cast<std::uint64_t>(num_qubits)));
  return rng();
}

std::string join_layout(const Layout& l) {
  std::string s;
  for (std::size_t i = 0; i < l.mapping.size(); ++i) {
    if (i) s += ' ';
    s += std::to_string(l.mapping[i]);
  }
  return s;
}

// Writes to --output when given, otherwise to the command's stdout.
class Sink {
 public:
  Sink(const std::string& path, std::ostream& fallback) : os_(&fallback) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_) throw std::runtime_error("cannot open output file " + path);
      os_ = &file_;
    }
  }
  std::ostream& operator*() { return *os_; }

 private:
  std::ofstream file_;
  std::ostream* os_;
};

struct CommonOptions {
  std::string backend = "all";
  std::string noise = "native";
  double noise_strength = 0.0;
  std::string qubits;
  bool full_connectivity = false;
  std::uint64_t seed = 0;
  int jobs = 1;
  std::string output;
  std::string format = "csv";
  bool timing = false;
};

void add_common(CLI::App* cmd, CommonOptions& o, bool with_noise) {
  cmd->add_option("--backend", o.backend, "Builtin backend name, backend file path, or 'all'");
  if (with_noise) {
    cmd->add_option("--noise", o.noise, "none|native|bitflip|phaseflip|bitphaseflip|depolarizing|thermal");
    cmd->add_option("--noise-strength", o.noise_strength, "Strength p of elementary noise")
        ->check(CLI::Range(0.0, 1.0));
  }
  cmd->add_option("--qubits", o.qubits, "Qubit count or inclusive range a..b");
  cmd->add_flag("--full-connectivity", o.full_connectivity, "Replace the coupling graph by a full mesh");
  cmd->add_option("--seed", o.seed, "Seed for routing and experiment choices");
  cmd->add_option("--jobs", o.jobs, "Worker threads")->check(CLI::PositiveNumber);
  cmd->add_option("--output", o.output, "Output file (default: stdout)");
  cmd->add_option("--format", o.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  cmd->add_flag("--timing", o.timing, "Record wall-clock time per point");
}

NoiseSpec noise_from(const CommonOptions& o) {
  NoiseSpec spec{noise_kind_from_name(o.noise), o.noise_strength};
  spec.validate();
  return spec;
}

int run_sweep(const std::string& algorithm, const CommonOptions& o, int default_lo, int default_hi,
              std::ostream& out, std::ostream& err) {
  const NoiseSpec noise = noise_from(o);
  const auto [lo, hi] = o.qubits.empty() ? std::pair{default_lo, default_hi} : parse_qubit_range(o.qubits);
  const auto backends = resolve_backends(o.backend);

  std::vector<ExperimentPoint> points;
  for (const auto& b : backends) {
    for (int n = lo; n <= hi; ++n) points.push_back({algorithm, b, o.full_connectivity, noise, n, o.seed});
  }
  std::vector<std::optional<ExperimentRecord>> results(points.size());
  std::vector<std::string> failures(points.size());
  parallel_for(points.size(), o.jobs, [&](std::size_t i) {
    try {
      results[i] = run_experiment(points[i], o.timing);
    } catch (const std::exception& e) {
      failures[i] = e.what();
    }
  });

  std::vector<ExperimentRecord> records;
  int failed = 0;
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (results[i]) {
      records.push_back(*results[i]);
      continue;
    }
    ++failed;
    err << "failed: " << algorithm << " backend=" << points[i].backend.name << " qubits=" << points[i].qubits
        << " noise=" << noise_kind_name(noise.kind) << ": " << failures[i] << '\n';
  }
  Sink sink(o.output, out);
  if (o.format == "json") {
    write_records_json(*sink, records);
  } else {
    write_records_csv(*sink, records);
  }
  return failed == 0 ? 0 : 1;
}

struct TranspileOptions {
  CommonOptions common;
  std::string algorithm = "qft";
  std::string input;
  std::string emit;
};

int run_transpile(const TranspileOptions& t, std::ostream& out, std::ostream& err) {
  const CommonOptions& o = t.common;
  struct Job {
    std::string name;
    Circuit circuit;
    BackendSpec backend;
  };
  std::vector<Job> jobs;
  const auto backends = resolve_backends(o.backend);
  if (!t.input.empty()) {
    std::ifstream in(t.input);
    if (!in) throw std::runtime_error("cannot open circuit file " + t.input);
    const Circuit c = read_circuit(in);
    for (const auto& b : backends) jobs.push_back({std::filesystem::path(t.input).filename().string(), c, b});
  } else {
    if (t.algorithm != "grover" && t.algorithm != "qft") {
      throw std::invalid_argument("unknown algorithm '" + t.algorithm + "'");
    }
    const auto [lo, hi] = o.qubits.empty() ? (t.algorithm == "qft" ? std::pair{2, 11} : std::pair{2, 8})
                                           : parse_qubit_range(o.qubits);
    for (const auto& b : backends) {
      for (int n = lo; n <= hi; ++n) jobs.push_back({t.algorithm, experiment_circuit(t.algorithm, n, o.seed).first, b});
    }
  }
  if (!t.emit.empty() && jobs.size() != 1) {
    throw std::invalid_argument("--emit needs exactly one backend and one circuit");
  }

  std::vector<std::optional<TranspileReport>> reports(jobs.size());
  std::vector<std::string> failures(jobs.size());
  parallel_for(jobs.size(), o.jobs, [&](std::size_t i) {
    try {
      const BackendSpec b = o.full_connectivity ? full_mesh(jobs[i].backend) : jobs[i].backend;
      reports[i] = transpile(jobs[i].circuit, b, o.seed);
    } catch (const std::exception& e) {
      failures[i] = e.what();
    }
  });

  Sink sink(o.output, out);
  const char* connectivity = o.full_connectivity ? "full" : "native";
  ordered_json rows = ordered_json::array();
  if (o.format == "csv") {
    *sink << "algorithm,backend,connectivity,qubits,seed,depth_logical,depth_transpiled,swaps,initial_layout,"
             "final_layout\n";
  }
  int failed = 0;
  for (std::size_t i = 0; i < jobs.size(); ++i) {
    if (!reports[i]) {
      ++failed;
      err << "failed: " << jobs[i].name << " backend=" << jobs[i].backend.name
          << " qubits=" << jobs[i].circuit.num_qubits() << ": " << failures[i] << '\n';
      continue;
    }
    const auto& r = *reports[i];
    if (o.format == "json") {
      rows.push_back({{"algorithm", jobs[i].name},
                      {"backend", jobs[i].backend.name},
                      {"connectivity", connectivity},
                      {"qubits", jobs[i].circuit.num_qubits()},
                      {"seed", o.seed},
                      {"depth_logical", r.depth_before},
                      {"depth_transpiled", r.depth_after},
                      {"swaps", r.swaps_inserted},
                      {"initial_layout", r.initial_layout.mapping},
                      {"final_layout", r.final_layout.mapping},
                      {"region", r.region}});
    } else {
      *sink << jobs[i].name << ',' << jobs[i].backend.name << ',' << connectivity << ','
            << jobs[i].circuit.num_qubits() << ',' << o.seed << ',' << r.depth_before << ',' << r.depth_after << ','
            << r.swaps_inserted << ',' << join_layout(r.initial_layout) << ',' << join_layout(r.final_layout) << '\n';
    }
    if (!t.emit.empty()) {
      std::ofstream ir(t.emit);
      if (!ir) throw std::runtime_error("cannot open " + t.emit);
      ir << "# device qubits:";
      for (int q : r.region) ir << ' ' << q;
      ir << '\n';
      write_circuit(ir, r.output);
    }
  }
  if (o.format == "json") *sink << rows.dump(2) << '\n';
  return failed == 0 ? 0 : 1;
}

int run_calibrate(const CommonOptions& o, std::ostream& out, std::ostream& err) {
  Sink sink(o.output, out);
  ordered_json rows = ordered_json::array();
  if (o.format == "csv") {
    *sink << "backend,qubits,target_fidelity,thermal_fidelity,depolarizing_p,round_trip_fidelity\n";
  }
  int failed = 0;
  for (const auto& b : resolve_backends(o.backend)) {
    for (int n : {1, 2}) {
      const double f = n == 1 ? b.f1 : b.f2;
      const Seconds tg = n == 1 ? Seconds(b.tg1) : Seconds(b.tg2);
      try {
        const auto cal = calibrate_composite(f, Seconds(b.t1), Seconds(b.t2), tg, n);
        const double round_trip = average_gate_fidelity(cal.channel);
        if (o.format == "json") {
          rows.push_back({{"backend", b.name},
                          {"qubits", n},
                          {"target_fidelity", f},
                          {"thermal_fidelity", cal.thermal_fidelity},
                          {"depolarizing_p", cal.depolarizing_p},
                          {"round_trip_fidelity", round_trip}});
        } else {
          *sink << b.name << ',' << n << ',' << fmt(f) << ',' << fmt(cal.thermal_fidelity) << ','
                << fmt(cal.depolarizing_p) << ',' << fmt(round_trip) << '\n';
        }
      } catch (const std::exception& e) {
        ++failed;
        err << "failed: " << b.name << ' ' << n << "-qubit calibration: " << e.what() << '\n';
      }
    }
  }
  if (o.format == "json") *sink << rows.dump(2) << '\n';
  return failed == 0 ? 0 : 1;
}

struct VqcOptions {
  std::vector<std::string> kinds = {"bitflip", "phaseflip", "bitphaseflip", "depolarizing"};
  std::vector<double> strengths{kDefaultNoiseStrengths.begin(), kDefaultNoiseStrengths.end()};
  int iterations = 100;
  double learning_rate = 0.5;
  int samples = 20;
  int grid = 21;
  std::uint64_t seed = 0;
  int jobs = 1;
  std::string backend;
  std::string output = "vqc_results";
  std::string format = "csv";
};

int run_vqc(const VqcOptions& v, std::ostream& out, std::ostream& err) {
  std::optional<BackendSpec> backend;
  if (!v.backend.empty()) {
    const auto list = resolve_backends(v.backend);
    if (list.size() != 1) throw std::invalid_argument("vqc takes a single backend");
    backend = list.front();
  }
  std::vector<TrainingConfig> configs;
  for (const auto& kind : v.kinds) {
    for (double p : v.strengths) {
      TrainingConfig c;
      c.iterations = v.iterations;
      c.learning_rate = v.learning_rate;
      c.seed = v.seed;
      c.noise = {noise_kind_from_name(kind), p};
      c.backend = backend;
      c.sample_count = v.samples;
      c.validate();
      configs.push_back(std::move(c));
    }
  }
  const auto grid = linspace_inputs(v.grid);
  struct Outcome {
    TrainingTrace trace;
    std::vector<double> predictions;
  };
  std::vector<std::optional<Outcome>> outcomes(configs.size());
  std::vector<std::string> failures(configs.size());
  parallel_for(configs.size(), v.jobs, [&](std::size_t i) {
    try {
      Outcome o{train(configs[i]), {}};
      const auto model = make_noise_model(configs[i].noise, backend ? &*backend : nullptr);
      for (double x : grid) o.predictions.push_back(predict(x, o.trace.final_theta, model ? &*model : nullptr));
      outcomes[i] = std::move(o);
    } catch (const std::exception& e) {
      failures[i] = e.what();
    }
  });

  std::filesystem::create_directories(v.output);
  const std::filesystem::path dir(v.output);
  std::ofstream pred(dir / (v.format == "json" ? "predictions.json" : "predictions.csv"));
  ordered_json pred_rows = ordered_json::array();
  if (v.format == "csv") pred << "noise,noise_strength,x,target,prediction\n";
  out << "noise,noise_strength,initial_mean_loss,final_mean_loss,trace_file\n";
  int failed = 0;
  for (std::size_t i = 0; i < configs.size(); ++i) {
    const std::string kind(noise_kind_name(configs[i].noise.kind));
    const double p = configs[i].noise.strength;
    if (!outcomes[i]) {
      ++failed;
      err << "failed: vqc noise=" << kind << " strength=" << short_fmt(p) << ": " << failures[i] << '\n';
      continue;
    }
    const auto& o = *outcomes[i];
    const std::string file = "trace_" + kind + "_" + short_fmt(p) + (v.format == "json" ? ".json" : ".csv");
    std::ofstream trace_out(dir / file);
    if (v.format == "json") {
      ordered_json records = ordered_json::array();
      for (const auto& r : o.trace.records) {
        records.push_back({{"iteration", r.iteration}, {"x", r.x}, {"loss", r.loss}, {"theta", r.theta.theta}});
      }
      trace_out << ordered_json{{"noise", kind},
                                {"noise_strength", p},
                                {"learning_rate", o.trace.learning_rate},
                                {"seed", configs[i].seed},
                                {"records", records},
                                {"final_theta", o.trace.final_theta.theta}}
                       .dump(2)
                << '\n';
    } else {
      write_trace_csv(trace_out, o.trace);
    }
    for (std::size_t g = 0; g < grid.size(); ++g) {
      if (v.format == "json") {
        pred_rows.push_back({{"noise", kind},
                             {"noise_strength", p},
                             {"x", grid[g]},
                             {"target", vqc_target(grid[g])},
                             {"prediction", o.predictions[g]}});
      } else {
        pred << kind << ',' << fmt(p) << ',' << fmt(grid[g]) << ',' << fmt(vqc_target(grid[g])) << ','
             << fmt(o.predictions[g]) << '\n';
      }
    }
    out << kind << ',' << fmt(p) << ',' << fmt(o.trace.initial_mean_loss()) << ','
        << fmt(o.trace.final_mean_loss()) << ',' << file << '\n';
  }
  if (v.format == "json") pred << pred_rows.dump(2) << '\n';
  return failed == 0 ? 0 : 1;
}

void describe_backend(std::ostream& os, const BackendSpec& b) {
  os << b.name << ": " << b.num_qubits() << " qubits, " << b.graph.edges().size() << " edges, coupling density "
     << fmt(coupling_density(b.graph)) << "%\n";
  save_backend(os, b);
}

}  // namespace

std::string grover_marked(int num_qubits, std::uint64_t seed) {
  if (num_qubits < 1 || num_qubits > 63) throw std::invalid_argument("grover_marked: unsupported width");
  const std::uint64_t index = point_stream(seed, num_qubits) >> (64 - num_qubits);
  return basis_label(static_cast<std::size_t>(index), num_qubits);
}

std::size_t qft_target(int num_qubits, std::uint64_t seed) {
  if (num_qubits < 1 || num_qubits > 63) throw std::invalid_argument("qft_target: unsupported width");
  return static_cast<std::size_t>(point_stream(seed + 1, num_qubits) >> (64 - num_qubits));
}

std::pair<Circuit, std::string> experiment_circuit(std::string_view algorithm, int num_qubits, std::uint64_t seed) {
  if (algorithm == "grover") {
    std::string marked = grover_marked(num_qubits, seed);
    return {build_grover(num_qubits, marked), marked};
  }
  if (algorithm == "qft") {
    const std::size_t t = qft_target(num_qubits, seed);
    Circuit c = build_qft_input(num_qubits, t);
    c.append(build_qft(num_qubits));
    return {std::move(c), basis_label(t, num_qubits)};
  }
  throw std::invalid_argument("unknown algorithm '" + std::string(algorithm) + "'");
}

ExperimentRecord run_experiment(const ExperimentPoint& point, bool timing) {
  const auto start = std::chrono::steady_clock::now();
  const auto [logical, ideal] = experiment_circuit(point.algorithm, point.qubits, point.seed);
  const BackendSpec backend = point.full_connectivity ? full_mesh(point.backend) : point.backend;
  const TranspileReport rep = transpile(logical, backend, point.seed);
  const auto model = make_noise_model(point.noise, &backend);
  const SimulationResult res = simulate(rep.output, model ? &*model : nullptr);

  // The routed circuit leaves logical qubit l on slot final_slot(l).
  std::string target(ideal.size(), '0');
  for (int l = 0; l < point.qubits; ++l) target[static_cast<std::size_t>(rep.final_slot(l))] = ideal[static_cast<std::size_t>(l)];

  ExperimentRecord r;
  r.algorithm = point.algorithm;
  r.backend = point.backend.name;
  r.connectivity = point.full_connectivity ? "full" : "native";
  r.noise = std::string(noise_kind_name(point.noise.kind));
  r.noise_strength = point.noise.strength;
  r.qubits = point.qubits;
  r.seed = point.seed;
  r.depth_logical = rep.depth_before;
  r.depth_transpiled = rep.depth_after;
  r.swaps = rep.swaps_inserted;
  r.success_probability = success_probability(res, target);
  r.fidelity = state_fidelity(res, PureState::basis(point.qubits, basis_index(target)));
  if (timing) r.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

void parallel_for(std::size_t count, int jobs, const std::function<void(std::size_t)>& task) {
  const std::size_t workers = std::min<std::size_t>(count, static_cast<std::size_t>(std::max(jobs, 1)));
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) task(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::jthread> pool;
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < count; i = next++) task(i);
    });
  }
}

void write_records_csv(std::ostream& os, std::span<const ExperimentRecord> records) {
  for (std::size_t i = 0; i < std::size(kRecordColumns); ++i) os << (i ? "," : "") << kRecordColumns[i];
  os << '\n';
  for (const auto& r : records) {
    os << r.algorithm << ',' << r.backend << ',' << r.connectivity << ',' << r.noise << ',' << fmt(r.noise_strength)
       << ',' << r.qubits << ',' << r.seed << ',' << r.depth_logical << ',' << r.depth_transpiled << ',' << r.swaps
       << ',' << fmt(r.success_probability) << ',' << fmt(r.fidelity) << ','
       << (r.wall_time ? fmt(*r.wall_time) : std::string()) << '\n';
  }
}

void write_records_json(std::ostream& os, std::span<const ExperimentRecord> records) {
  ordered_json rows = ordered_json::array();
  for (const auto& r : records) {
    ordered_json row{{"algorithm", r.algorithm},
                     {"backend", r.backend},
                     {"connectivity", r.connectivity},
                     {"noise", r.noise},
                     {"noise_strength", r.noise_strength},
                     {"qubits", r.qubits},
                     {"seed", r.seed},
                     {"depth_logical", r.depth_logical},
                     {"depth_transpiled", r.depth_transpiled},
                     {"swaps", r.swaps},
                     {"success_probability", r.success_probability},
                     {"fidelity", r.fidelity}};
    row["wall_time"] = r.wall_time ? ordered_json(*r.wall_time) : ordered_json(nullptr);
    rows.push_back(std::move(row));
  }
  os << rows.dump(2) << '\n';
}

std::pair<int, int> parse_qubit_range(std::string_view text) {
  auto parse_int = [&](std::string_view s) {
    int v = 0;
    const auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || end != s.data() + s.size() || s.empty()) {
      throw std::invalid_argument("bad qubit range '" + std::string(text) + "'");
    }
    return v;
  };
  const auto dots = text.find("..");
  const int lo = parse_int(dots == std::string_view::npos ? text : text.substr(0, dots));
  const int hi = dots == std::string_view::npos ? lo : parse_int(text.substr(dots + 2));
  if (lo < 1 || hi < lo) throw std::invalid_argument("bad qubit range '" + std::string(text) + "'");
  return {lo, hi};
}

std::vector<BackendSpec> resolve_backends(std::string_view selector) {
  std::vector<BackendSpec> out;
  if (selector == "all") {
    for (auto name : kBuiltinBackends) out.push_back(builtin(name));
    return out;
  }
  for (auto name : kBuiltinBackends) {
    if (selector == name) {
      out.push_back(builtin(name));
      return out;
    }
  }
  const std::filesystem::path path(selector);
  if (!std::filesystem::exists(path)) {
    throw std::invalid_argument("unknown backend '" + std::string(selector) + "' (not a builtin name or a file)");
  }
  out.push_back(load_backend(path));
  return out;
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Noisy quantum circuit simulation across hardware backends", "qnoise"};
  app.require_subcommand(1);

  CommonOptions grover_opts;
  auto* grover = app.add_subcommand("grover", "Grover search sweep under backend noise");
  add_common(grover, grover_opts, true);

  CommonOptions qft_opts;
  auto* qft = app.add_subcommand("qft", "Quantum Fourier transform sweep under backend noise");
  add_common(qft, qft_opts, true);

  TranspileOptions tr_opts;
  auto* tr = app.add_subcommand("transpile", "Transpile a circuit and report depth and routing");
  add_common(tr, tr_opts.common, false);
  tr->add_option("--algorithm", tr_opts.algorithm, "grover or qft");
  tr->add_option("--input", tr_opts.input, "Circuit IR file")->check(CLI::ExistingFile);
  tr->add_option("--emit", tr_opts.emit, "Write the transpiled circuit IR here");

  CommonOptions cal_opts;
  auto* cal = app.add_subcommand("calibrate", "Solve composite noise parameters for a backend");
  cal->add_option("--backend", cal_opts.backend, "Builtin backend name, backend file path, or 'all'");
  cal->add_option("--output", cal_opts.output, "Output file (default: stdout)");
  cal->add_option("--format", cal_opts.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));

  VqcOptions vqc_opts;
  auto* vqc = app.add_subcommand("vqc", "Train the regression circuit across a noise sweep");
  vqc->add_option("--noise", vqc_opts.kinds, "Noise kinds to sweep")->delimiter(',');
  vqc->add_option("--noise-strength", vqc_opts.strengths, "Noise strengths to sweep")
      ->delimiter(',')
      ->check(CLI::Range(0.0, 1.0));
  vqc->add_option("--iterations", vqc_opts.iterations, "Gradient-descent iterations")->check(CLI::PositiveNumber);
  vqc->add_option("--learning-rate", vqc_opts.learning_rate, "Step size")->check(CLI::NonNegativeNumber);
  vqc->add_option("--samples", vqc_opts.samples, "Training inputs on [-1, 1]")->check(CLI::Range(2, 1 << 20));
  vqc->add_option("--grid", vqc_opts.grid, "Prediction grid size")->check(CLI::Range(2, 1 << 20));
  vqc->add_option("--seed", vqc_opts.seed, "Dataset permutation seed");
  vqc->add_option("--jobs", vqc_opts.jobs, "Worker threads")->check(CLI::PositiveNumber);
  vqc->add_option("--backend", vqc_opts.backend, "Backend for thermal or native noise");
  vqc->add_option("--output", vqc_opts.output, "Directory for trace and prediction files");
  vqc->add_option("--format", vqc_opts.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));

  auto* backends = app.add_subcommand("backends", "List, inspect or export backend descriptions");
  backends->require_subcommand(1);
  auto* list = backends->add_subcommand("list", "List builtin backends");
  std::string inspect_name;
  auto* inspect = backends->add_subcommand("inspect", "Print a backend description");
  inspect->add_option("backend", inspect_name, "Builtin name or backend file")->required();
  std::string export_name;
  std::string export_path;
  auto* exp = backends->add_subcommand("export", "Write a builtin backend to a file");
  exp->add_option("backend", export_name, "Builtin name")->required();
  exp->add_option("--output", export_path, "Destination file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? 0 : 2;
  }

  try {
    if (*grover) return run_sweep("grover", grover_opts, 2, 8, out, err);
    if (*qft) return run_sweep("qft", qft_opts, 2, 11, out, err);
    if (*tr) return run_transpile(tr_opts, out, err);
    if (*cal) return run_calibrate(cal_opts, out, err);
    if (*vqc) return run_vqc(vqc_opts, out, err);
    if (*list) {
      out << "name,qubits,edges,coupling_density,native_gates\n";
      for (auto name : kBuiltinBackends) {
        const auto b = builtin(name);
        out << b.name << ',' << b.num_qubits() << ',' << b.graph.edges().size() << ','
            << fmt(coupling_density(b.graph)) << ',';
        for (std::size_t i = 0; i < b.native_gates.size(); ++i) out << (i ? " " : "") << gate_name(b.native_gates[i]);
        out << '\n';
      }
      return 0;
    }
    if (*inspect) {
      for (const auto& b : resolve_backends(inspect_name)) describe_backend(out, b);
      return 0;
    }
    if (*exp) {
      std::ofstream f(export_path);
      if (!f) throw std::runtime_error("cannot open " + export_path);
      save_backend(f, builtin(export_name));
      return 0;
    }
  } catch (const ParseError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
  return 2;
}

}  // namespace qnoise
