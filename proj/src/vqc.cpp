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

#include "qnoise/vqc.hpp"

#include "qnoise/engine.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <ostream>
#include <random>
#include <stdexcept>
#include <string>

namespace qnoise {

namespace {

void check_input(double x) {
  if (!(std::abs(x) <= 1.0)) throw std::invalid_argument("vqc: input " + std::to_string(x) + " outside [-1, 1]");
}

std::optional<NoiseModel> model_for(const NoiseSpec& noise, const BackendSpec* backend) {
  noise.validate();
  return make_noise_model(noise, backend);
}

const NoiseModel* ptr(const std::optional<NoiseModel>& m) { return m ? &*m : nullptr; }

double mean_of(const std::vector<TrainingRecord>& r, std::size_t begin, std::size_t end) {
  if (begin >= end) return 0.0;
  double acc = 0.0;
  for (std::size_t i = begin; i < end; ++i) acc += r[i].loss;
  return acc / static_cast<double>(end - begin);
}

}  // namespace

void TrainingConfig::validate() const {
  if (iterations < 1) throw std::invalid_argument("TrainingConfig: iterations must be at least 1");
  if (sample_count < 2) throw std::invalid_argument("TrainingConfig: sample_count must be at least 2");
  if (!std::isfinite(learning_rate) || learning_rate < 0.0) {
    throw std::invalid_argument("TrainingConfig: learning rate must be finite and non-negative");
  }
  noise.validate();
  if ((noise.kind == NoiseKind::Thermal || noise.kind == NoiseKind::Native) && !backend) {
    throw std::invalid_argument("TrainingConfig: " + std::string(noise_kind_name(noise.kind)) +
                                " noise needs a backend");
  }
}

double TrainingTrace::final_mean_loss(std::size_t window) const {
  const std::size_t n = records.size();
  return mean_of(records, n > window ? n - window : 0, n);
}

double TrainingTrace::initial_mean_loss(std::size_t window) const {
  return mean_of(records, 0, std::min(window, records.size()));
}

std::vector<double> linspace_inputs(int count) {
  if (count < 2) throw std::invalid_argument("linspace_inputs: count must be at least 2");
  std::vector<double> xs(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) xs[static_cast<std::size_t>(i)] = -1.0 + 2.0 * i / (count - 1);
  return xs;
}

std::vector<double> make_dataset(int count, std::uint64_t seed) {
  auto xs = linspace_inputs(count);
  std::mt19937_64 rng(seed);
  std::shuffle(xs.begin(), xs.end(), rng);
  return xs;
}

double predict(double x, const VqcParameters& theta, const NoiseModel* noise) {
  check_input(x);
  return expectation_z(simulate(build_vqc(x, theta), noise), kVqcReadoutQubit);
}

double predict(double x, const VqcParameters& theta, const NoiseSpec& noise, const BackendSpec* backend) {
  return predict(x, theta, ptr(model_for(noise, backend)));
}

double loss(double x, const VqcParameters& theta, const NoiseModel* noise) {
  const double r = predict(x, theta, noise) - vqc_target(x);
  return 0.5 * r * r;
}

double loss(double x, const VqcParameters& theta, const NoiseSpec& noise, const BackendSpec* backend) {
  return loss(x, theta, ptr(model_for(noise, backend)));
}

VqcGradient gradient(double x, const VqcParameters& theta, const NoiseModel* noise) {
  const double residual = predict(x, theta, noise) - vqc_target(x);
  VqcGradient g{};
  for (std::size_t i = 0; i < g.size(); ++i) {
    VqcParameters plus = theta;
    VqcParameters minus = theta;
    plus[i] += std::numbers::pi / 2;
    minus[i] -= std::numbers::pi / 2;
    g[i] = 0.5 * residual * (predict(x, plus, noise) - predict(x, minus, noise));
  }
  return g;
}

VqcGradient gradient(double x, const VqcParameters& theta, const NoiseSpec& noise, const BackendSpec* backend) {
  return gradient(x, theta, ptr(model_for(noise, backend)));
}

TrainingTrace train(const TrainingConfig& config) {
  config.validate();
  const auto model = make_noise_model(config.noise, config.backend ? &*config.backend : nullptr);
  const NoiseModel* nm = ptr(model);
  const auto data = make_dataset(config.sample_count, config.seed);

  TrainingTrace trace;
  trace.learning_rate = config.learning_rate;
  trace.records.reserve(static_cast<std::size_t>(config.iterations));
  VqcParameters theta;
  for (int k = 0; k < config.iterations; ++k) {
    const double x = data[static_cast<std::size_t>(k) % data.size()];
    const double residual = predict(x, theta, nm) - vqc_target(x);
    trace.records.push_back({k, x, 0.5 * residual * residual, theta});
    const VqcGradient g = gradient(x, theta, nm);
    for (std::size_t i = 0; i < g.size(); ++i) theta[i] -= config.learning_rate * g[i];
  }
  trace.final_theta = theta;
  return trace;
}

void write_trace_csv(std::ostream& os, const TrainingTrace& trace) {
  os << "iteration,x,loss";
  for (int i = 0; i < kVqcParams; ++i) os << ",theta_" << i;
  os << '\n';
  char buf[32];
  auto num = [&](double v) {
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
  };
  for (const auto& r : trace.records) {
    os << r.iteration << ',' << num(r.x) << ',' << num(r.loss);
    for (double t : r.theta.theta) os << ',' << num(t);
    os << '\n';
  }
}

}  // namespace qnoise
