// Copyright 2026 The dcgpulse Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     https://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef DCG_PULSE_HPP_
#define DCG_PULSE_HPP_

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "dcg/error.hpp"
#include "dcg/numerics.hpp"

namespace dcg {

// One constant-amplitude piece of a composite square pulse.
struct Step {
  double duration = 0.0;
  double amplitude = 0.0;

  friend bool operator==(const Step&, const Step&) = default;
};

struct PiecewiseConstant {
  std::vector<Step> steps;

  friend bool operator==(const PiecewiseConstant&, const PiecewiseConstant&) = default;
};

// Samples of Omega(t) on an ascending grid starting at t = 0. Between samples
// the waveform is the linear interpolant.
struct Sampled {
  std::vector<double> t;
  std::vector<double> omega;

  friend bool operator==(const Sampled&, const Sampled&) = default;
};

// Driving field Omega(t), in units of the maximal amplitude (time in 1/Omega_max).
class PulseWaveform {
 public:
  PulseWaveform() : form_(PiecewiseConstant{}) {}

  explicit PulseWaveform(PiecewiseConstant pc) : form_(std::move(pc)) {
    const auto& steps = std::get<PiecewiseConstant>(form_).steps;
    if (steps.empty()) throw InvalidInputError("piecewise pulse needs at least one step");
    for (const Step& s : steps) {
      if (!(s.duration > 0.0) || !std::isfinite(s.duration)) {
        throw InvalidInputError("step durations must be positive and finite");
      }
      if (!std::isfinite(s.amplitude)) throw InvalidInputError("step amplitude must be finite");
    }
  }

  explicit PulseWaveform(Sampled s) : form_(std::move(s)) {
    const auto& smp = std::get<Sampled>(form_);
    if (smp.t.size() < 2 || smp.t.size() != smp.omega.size()) {
      throw InvalidInputError("sampled pulse needs >= 2 matching samples");
    }
    if (smp.t.front() != 0.0) throw InvalidInputError("sampled pulse grid must start at t = 0");
    if (!StrictlyIncreasing(smp.t)) throw InvalidInputError("sampled pulse grid must be strictly increasing");
    for (std::size_t i = 0; i < smp.t.size(); ++i) {
      if (!std::isfinite(smp.t[i]) || !std::isfinite(smp.omega[i])) {
        throw InvalidInputError("sampled pulse has non-finite samples");
      }
    }
  }

  static PulseWaveform Square(std::vector<Step> steps) { return PulseWaveform(PiecewiseConstant{std::move(steps)}); }
  static PulseWaveform FromSamples(std::vector<double> t, std::vector<double> omega) {
    return PulseWaveform(Sampled{std::move(t), std::move(omega)});
  }

  bool is_piecewise() const { return std::holds_alternative<PiecewiseConstant>(form_); }
  bool is_sampled() const { return std::holds_alternative<Sampled>(form_); }
  const std::vector<Step>& steps() const { return std::get<PiecewiseConstant>(form_).steps; }
  const Sampled& samples() const { return std::get<Sampled>(form_); }

  double total_time() const {
    if (is_sampled()) return samples().t.back();
    double total = 0.0;
    for (const Step& s : steps()) total += s.duration;
    return total;
  }

  // Times where Omega or its slope may be discontinuous, including 0 and T.
  std::vector<double> breakpoints() const {
    if (is_sampled()) return samples().t;
    std::vector<double> out{0.0};
    for (const Step& s : steps()) out.push_back(out.back() + s.duration);
    return out;
  }

  // Omega(t); right-continuous at step boundaries.
  double operator()(double t) const {
    if (is_sampled()) return InterpolateLinear(samples().t, samples().omega, t);
    double acc = 0.0;
    for (const Step& s : steps()) {
      acc += s.duration;
      if (t < acc) return s.amplitude;
    }
    return steps().back().amplitude;
  }

  // Net rotation angle, the integral of Omega over the pulse.
  double rotation_angle() const {
    double total = 0.0;
    if (is_sampled()) {
      const auto& s = samples();
      for (std::size_t i = 1; i < s.t.size(); ++i) {
        total += 0.5 * (s.t[i] - s.t[i - 1]) * (s.omega[i] + s.omega[i - 1]);
      }
      return total;
    }
    for (const Step& s : steps()) total += s.duration * s.amplitude;
    return total;
  }

  double max_amplitude() const {
    double m = 0.0;
    if (is_sampled()) {
      for (double w : samples().omega) m = std::max(m, std::abs(w));
    } else {
      for (const Step& s : steps()) m = std::max(m, std::abs(s.amplitude));
    }
    return m;
  }

  friend bool operator==(const PulseWaveform&, const PulseWaveform&) = default;

 private:
  std::variant<PiecewiseConstant, Sampled> form_;
};

// A result plus non-fatal diagnostics (constraint violations, overlaps, ...).
template <typename T>
struct Annotated {
  T value;
  std::vector<std::string> warnings;
};

}  // namespace dcg

#endif  // DCG_PULSE_HPP_
