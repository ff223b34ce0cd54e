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
#include "qnoise/noise.hpp"

#include <array>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <vector>

namespace qnoise {

using VqcGradient = std::array<double, kVqcParams>;

/// Target function learned by the regression circuit.
inline double vqc_target(double x) { return x * x; }

/// Noise strengths swept by default when comparing training under noise.
inline constexpr std::array<double, 5> kDefaultNoiseStrengths = {0.0, 0.001, 0.005, 0.01, 0.05};

struct TrainingConfig {
  int iterations = 100;
  double learning_rate = 0.5;
  std::uint64_t seed = 0;
  NoiseSpec noise;
  /// Needed for thermal and native noise.
  std::optional<BackendSpec> backend;
  int sample_count = 20;

  /// Throws std::invalid_argument on a non-positive iteration or sample count,
  /// a negative or non-finite learning rate, or an invalid noise spec.
  void validate() const;
};

struct TrainingRecord {
  int iteration = 0;
  double x = 0.0;
  double loss = 0.0;
  VqcParameters theta;  ///< parameters the loss was evaluated at

  friend bool operator==(const TrainingRecord&, const TrainingRecord&) = default;
};

struct TrainingTrace {
  std::vector<TrainingRecord> records;
  VqcParameters final_theta;
  double learning_rate = 0.0;

  /// Mean loss over the last `window` records (all of them if fewer).
  double final_mean_loss(std::size_t window = 10) const;
  /// Mean loss over the first `window` records.
  double initial_mean_loss(std::size_t window = 10) const;

  friend bool operator==(const TrainingTrace&, const TrainingTrace&) = default;
};

/// `count` evenly spaced points on [-1, 1] (endpoints included), shuffled with
/// a generator seeded by `seed`. Throws std::invalid_argument when count < 2.
std::vector<double> make_dataset(int count, std::uint64_t seed);

/// Evenly spaced points on [-1, 1] without shuffling.
std::vector<double> linspace_inputs(int count);

/// <Z> on the readout qubit after the regression circuit, simulated under `noise`.
double predict(double x, const VqcParameters& theta, const NoiseModel* noise = nullptr);
double predict(double x, const VqcParameters& theta, const NoiseSpec& noise, const BackendSpec* backend = nullptr);

/// (1/2) (predict(x) - x^2)^2.
double loss(double x, const VqcParameters& theta, const NoiseModel* noise = nullptr);
double loss(double x, const VqcParameters& theta, const NoiseSpec& noise, const BackendSpec* backend = nullptr);

/// Parameter-shift gradient of the loss: component i is
/// (1/2) (M - x^2) (M(theta + pi/2 e_i) - M(theta - pi/2 e_i)).
VqcGradient gradient(double x, const VqcParameters& theta, const NoiseModel* noise = nullptr);
VqcGradient gradient(double x, const VqcParameters& theta, const NoiseSpec& noise,
                     const BackendSpec* backend = nullptr);

/// Plain gradient descent from theta = 0, one input per iteration, cycling
/// through make_dataset(sample_count, seed).
TrainingTrace train(const TrainingConfig& config);

/// CSV with header iteration,x,loss,theta_0..theta_11.
void write_trace_csv(std::ostream& os, const TrainingTrace& trace);

}  // namespace qnoise
