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

#ifndef DCG_SMOOTHING_HPP_
#define DCG_SMOOTHING_HPP_

// Smoothing of composite square pulses.
//
// Curve smoothing blends the analytic arc pieces of the error-plane curve,
//
//   x(l) = f1(lf - l) f2(l) l x1'(0) + f1(l) f1(lf - l) xt(l) + f1(l) f2(lf - l) (l - lf) xn'(lf),
//   xt(l) = sum_i f3(l - l_{i-1}) f4(l - l_i) x_i(l),
//
// (same for y) and re-extracts the pulse from the smoothed curve. Direct
// smoothing replaces every amplitude jump of the square pulse by a tanh ramp.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "dcg/curve_ops.hpp"
#include "dcg/error.hpp"
#include "dcg/geometry.hpp"
#include "dcg/numerics.hpp"
#include "dcg/pulse.hpp"
#include "dcg/synthesis.hpp"

namespace dcg {

inline constexpr std::size_t kMinSmoothingGridPoints = 1024;
inline constexpr std::size_t kDefaultSmoothingGridPoints = 1 << 15;
// Junction windows span +-kClusterHalfWidth/sharpness with spacing
// kClusterSpacing/sharpness.
inline constexpr double kClusterHalfWidth = 24.0;
inline constexpr double kClusterSpacing = 0.0025;

// f1 = tanh(s x), f2 = 1 - f1, f3 = 1 / (1 + exp(-s x)), f4 = 1 - f3.
inline double BlendF(int which, double sharpness, double x) {
  if (!(sharpness > 0.0)) throw InvalidInputError("blend sharpness must be positive");
  switch (which) {
    case 1: return std::tanh(sharpness * x);
    case 2: return 1.0 - std::tanh(sharpness * x);
    case 3: return Logistic(sharpness * x);
    case 4: return Logistic(-sharpness * x);
    default: throw InvalidInputError("blend function index must be 1..4");
  }
}

struct SmoothingParams {
  double p = 1.0;  // envelope sharpness (f1, f2)
  double q = 4.0;  // junction sharpness (f3, f4)
  std::size_t grid_points = kDefaultSmoothingGridPoints;
  std::optional<double> slope_budget;

  void Validate() const {
    if (!(p > 0.0) || !std::isfinite(p)) throw InvalidInputError("smoothing p must be positive");
    if (!(q > 0.0) || !std::isfinite(q)) throw InvalidInputError("smoothing q must be positive");
    if (grid_points < kMinSmoothingGridPoints) throw InvalidInputError("smoothing grid_points must be >= 1024");
    if (slope_budget && !(*slope_budget > 0.0)) throw InvalidInputError("slope budget must be positive");
  }

  // q tied to the junction scale, p = q / 4.
  static SmoothingParams WithQ(double q, std::size_t grid_points = DefaultGridPoints(kDefaultSmoothingGridPoints)) {
    SmoothingParams out;
    out.q = q;
    out.p = 0.25 * q;
    out.grid_points = std::max(grid_points, kMinSmoothingGridPoints);
    return out;
  }

  // q = 20 / (shortest segment), so neighbouring junctions barely interact.
  static SmoothingParams DefaultFor(const PiecewiseCurve& curve) {
    double shortest = std::numeric_limits<double>::infinity();
    for (const Segment& s : curve.segments()) shortest = std::min(shortest, Length(s));
    return WithQ(20.0 / shortest);
  }

  friend bool operator==(const SmoothingParams&, const SmoothingParams&) = default;
};

enum class SmoothingMethod { kCurveSmoothing, kDirectSmoothing };

inline std::string MethodName(SmoothingMethod m) {
  return m == SmoothingMethod::kCurveSmoothing ? "cs" : "ds";
}

struct SmoothedPulseReport {
  SmoothingMethod method = SmoothingMethod::kCurveSmoothing;
  PulseWaveform pulse;
  double sharpness = 0.0;  // q for curve smoothing, rate for direct smoothing
  double max_slope = 0.0;
  double rotation_angle = 0.0;
  double residual_area = 0.0;
  double residual_closure = 0.0;
  double time_overhead = 0.0;
  std::vector<std::string> warnings;
};

// Blended curve sampled on a uniform grid refined around every junction. The
// derivative arrays are exact (propagated with jets), not finite differences.
inline SampledCurve SmoothCurve(const PiecewiseCurve& curve, const SmoothingParams& params) {
  params.Validate();
  const auto& segs = curve.segments();
  const auto& bp = curve.breakpoints();
  const std::size_t n = segs.size();
  const double lf = curve.length();
  const double p = params.p, q = params.q;

  std::vector<Cluster> clusters;
  for (std::size_t i = 0; i <= n; ++i) {
    const double s = (i == 0 || i == n) ? std::min(p, q) : q;
    clusters.push_back({bp[i], kClusterHalfWidth / s, kClusterSpacing / s});
  }
  const std::vector<double> grid = RefinedGrid(0.0, lf, params.grid_points, clusters);

  const Point2 d_start = UnitVector(TangentAngle(segs.front(), 0.0));
  const Point2 d_end = UnitVector(TangentAngle(segs.back(), Length(segs.back())));

  std::vector<double> x(grid.size()), y(grid.size());
  CurveDerivatives d;
  d.dx.resize(grid.size());
  d.dy.resize(grid.size());
  d.ddx.resize(grid.size());
  d.ddy.resize(grid.size());

  for (std::size_t g = 0; g < grid.size(); ++g) {
    const Jet l = Jet::Variable(grid[g]);
    Jet xt{}, yt{};
    for (std::size_t i = 0; i < n; ++i) {
      Jet w = Jet::Constant(1.0);
      if (i > 0) w = w * logistic(q * (l - bp[i]));
      if (i + 1 < n) w = w * logistic(-q * (l - bp[i + 1]));
      const auto [xi, yi] = PointAlong<Jet>(segs[i], l - bp[i]);
      xt = xt + w * xi;
      yt = yt + w * yi;
    }
    const Jet rise = tanh(p * l);           // f1(l)
    const Jet fall = tanh(p * (lf - l));    // f1(lf - l)
    const Jet head = fall * (1.0 - rise) * l;
    const Jet body = rise * fall;
    const Jet tail = rise * (1.0 - fall) * (l - lf);
    const Jet xs = head * d_start.x + body * xt + tail * d_end.x;
    const Jet ys = head * d_start.y + body * yt + tail * d_end.y;
    for (double v : {xs.v, xs.d1, xs.d2, ys.v, ys.d1, ys.d2}) {
      if (!std::isfinite(v)) {
        throw NumericError("smoothing produced a non-finite value at lambda = " + std::to_string(grid[g]));
      }
    }
    x[g] = xs.v;
    y[g] = ys.v;
    d.dx[g] = xs.d1;
    d.dy[g] = ys.d1;
    d.ddx[g] = xs.d2;
    d.ddy[g] = ys.d2;
  }
  return SampledCurve(grid, std::move(x), std::move(y), std::move(d));
}

// Omega(t) of a smoothed curve; t(lambda) is re-integrated from the speed.
inline PulseWaveform ExtractSmoothedPulse(const SampledCurve& curve) { return PulseFromCurve(curve).value; }

// T*Omega invariant rescale so that max |Omega| = amplitude_bound.
inline PulseWaveform RescaleAmplitude(const PulseWaveform& pulse, double amplitude_bound) {
  if (!(amplitude_bound > 0.0)) throw InvalidInputError("amplitude bound must be positive");
  const double m = pulse.max_amplitude();
  if (!(m > 0.0)) throw PreconditionError("cannot rescale an identically zero pulse");
  const double c = amplitude_bound / m;
  if (std::abs(c - 1.0) <= 1e-15) return pulse;
  if (pulse.is_piecewise()) {
    std::vector<Step> steps = pulse.steps();
    for (Step& s : steps) {
      s.duration /= c;
      s.amplitude *= c;
    }
    return PulseWaveform::Square(std::move(steps));
  }
  Sampled s = pulse.samples();
  for (double& t : s.t) t /= c;
  for (double& w : s.omega) w *= c;
  return PulseWaveform(std::move(s));
}

// Scale amplitudes so the net rotation hits target_angle (mod 2 pi, nearest
// branch), then enforce the amplitude bound with a T*Omega invariant rescale.
inline PulseWaveform RescalePulse(const PulseWaveform& pulse, double target_angle, double amplitude_bound) {
  const double theta = pulse.rotation_angle();
  if (!(std::abs(theta) > 1e-12)) throw PreconditionError("cannot rescale a pulse with zero net rotation");
  const double branch = target_angle + kTwoPi * std::round((theta - target_angle) / kTwoPi);
  if (branch == 0.0) throw PreconditionError("target rotation branch is zero; cannot rescale");
  const double c = branch / theta;
  PulseWaveform scaled = pulse;
  if (std::abs(c - 1.0) > 1e-15) {
    if (pulse.is_piecewise()) {
      std::vector<Step> steps = pulse.steps();
      for (Step& s : steps) s.amplitude *= c;
      scaled = PulseWaveform::Square(std::move(steps));
    } else {
      Sampled s = pulse.samples();
      for (double& w : s.omega) w *= c;
      scaled = PulseWaveform(std::move(s));
    }
  }
  return RescaleAmplitude(scaled, amplitude_bound);
}

// Square pulse with every jump a -> b (including 0 -> first level at t = 0 and
// last level -> 0 at t = T) replaced by (b - a)/2 (1 + tanh(rate (t - t_j))),
// sampled on [0, T].
inline Annotated<PulseWaveform> DirectSmooth(const PulseWaveform& pulse, double rate,
                                             std::size_t grid_points = DefaultGridPoints(kDefaultSmoothingGridPoints)) {
  if (!pulse.is_piecewise()) throw InvalidInputError("direct smoothing needs a piecewise-constant pulse");
  if (!(rate > 0.0) || !std::isfinite(rate)) throw InvalidInputError("smoothing rate must be positive");
  const auto& steps = pulse.steps();
  const std::vector<double> times = pulse.breakpoints();
  std::vector<std::pair<double, double>> jumps;  // (time, b - a)
  double level = 0.0;
  for (std::size_t i = 0; i < steps.size(); ++i) {
    if (steps[i].amplitude != level) jumps.emplace_back(times[i], steps[i].amplitude - level);
    level = steps[i].amplitude;
  }
  if (level != 0.0) jumps.emplace_back(times.back(), -level);

  Annotated<PulseWaveform> out;
  const double width = 4.0 / rate;  // ~96% of a tanh ramp
  for (const Step& s : steps) {
    if (width > 0.5 * s.duration) {
      out.warnings.push_back("transitions overlap: ramp width " + std::to_string(width) +
                             " exceeds half of a segment of duration " + std::to_string(s.duration));
      break;
    }
  }
  std::vector<Cluster> clusters;
  for (const auto& j : jumps) clusters.push_back({j.first, kClusterHalfWidth / rate, kClusterSpacing / rate});
  const std::vector<double> t =
      RefinedGrid(0.0, times.back(), std::max(grid_points, kMinSmoothingGridPoints), clusters);
  std::vector<double> omega(t.size(), 0.0);
  for (std::size_t i = 0; i < t.size(); ++i) {
    for (const auto& [tj, dj] : jumps) omega[i] += 0.5 * dj * (1.0 + std::tanh(rate * (t[i] - tj)));
  }
  out.value = PulseWaveform::FromSamples(t, std::move(omega));
  return out;
}

// Largest |dOmega/dt| by fourth-order finite differences; +inf for square pulses.
inline double MaxSlope(const PulseWaveform& pulse) {
  if (pulse.is_piecewise()) return std::numeric_limits<double>::infinity();
  const auto& s = pulse.samples();
  const auto deriv = FiniteDifference(s.t, s.omega, 1);
  double worst = 0.0;
  for (double v : deriv) worst = std::max(worst, std::abs(v));
  return worst;
}

namespace detail {

struct SmoothingTrial {
  PulseWaveform pulse;
  double slope = 0.0;
  std::vector<std::string> warnings;
};

inline SmoothingTrial CurveSmoothingTrial(const PiecewiseCurve& curve, const SynthesisSpec& spec, double q,
                                          std::size_t grid_points) {
  const auto params = SmoothingParams::WithQ(q, grid_points);
  const PulseWaveform raw = ExtractSmoothedPulse(SmoothCurve(curve, params));
  SmoothingTrial out{RescalePulse(raw, spec.target_rotation(), spec.omega_max), 0.0, {}};
  out.slope = MaxSlope(out.pulse);
  return out;
}

// Direct smoothing keeps the rotation-angle error it introduces; only the
// amplitude bound is enforced.
inline SmoothingTrial DirectSmoothingTrial(const PulseWaveform& square, const SynthesisSpec& spec, double rate,
                                           std::size_t grid_points) {
  auto smoothed = DirectSmooth(square, rate, grid_points);
  SmoothingTrial out{RescaleAmplitude(smoothed.value, spec.omega_max), 0.0, std::move(smoothed.warnings)};
  out.slope = MaxSlope(out.pulse);
  return out;
}

}  // namespace detail

// Diagnostics recomputed from the final pulse's own curve.
inline SmoothedPulseReport MakeReport(SmoothingMethod method, const PulseWaveform& pulse, const SynthesisSpec& spec,
                                      double sharpness) {
  SmoothedPulseReport r;
  r.method = method;
  r.pulse = pulse;
  r.sharpness = sharpness;
  r.max_slope = MaxSlope(pulse);
  r.rotation_angle = pulse.rotation_angle();
  const SampledCurve c = CurveFromPulse(pulse);
  r.residual_closure = ClosureDefect(c);
  r.residual_area = SignedArea(c, std::numeric_limits<double>::infinity());
  r.time_overhead = pulse.total_time() / TMin(spec);
  return r;
}

inline constexpr double kSlopeTolerance = 0.02;

// Searches q (curve smoothing, p = q/4) or the tanh rate (direct smoothing) so
// that the final pulse's max slope matches `budget` (units omega_max^2).
inline SmoothedPulseReport CalibrateToSlope(SmoothingMethod method, const SynthesisSpec& spec, double budget,
                                            std::size_t grid_points = DefaultGridPoints(kDefaultSmoothingGridPoints)) {
  spec.Validate();
  if (!(budget > 0.0) || !std::isfinite(budget)) throw InvalidInputError("slope budget must be positive");
  const double target = budget * spec.omega_max * spec.omega_max;
  const PiecewiseCurve curve = OptimalCurve(spec);
  const PulseWaveform square = OptimalPulse(spec);

  auto trial = [&](double s) {
    return method == SmoothingMethod::kCurveSmoothing ? detail::CurveSmoothingTrial(curve, spec, s, grid_points)
                                                      : detail::DirectSmoothingTrial(square, spec, s, grid_points);
  };

  constexpr double kMinSharpness = 1e-3, kMaxSharpness = 1e8;
  constexpr int kMaxIterations = 80;
  double lo = kMinSharpness, hi = kMaxSharpness;
  double s = std::clamp(target / spec.omega_max, lo, hi);
  double best_s = s, best_err = std::numeric_limits<double>::infinity();
  detail::SmoothingTrial best;
  std::string last_failure;
  for (int it = 0; it < kMaxIterations; ++it) {
    detail::SmoothingTrial t;
    try {
      t = trial(s);
    } catch (const NumericError& e) {
      // Too gentle a blend collapses the curve; sharpen.
      last_failure = e.what();
      lo = std::max(lo, s);
      if (hi / lo < 1.0 + 1e-12) break;
      s = std::min(std::sqrt(lo * hi), 4.0 * s);
      continue;
    }
    const double ratio = t.slope / target;
    const double err = std::abs(ratio - 1.0);
    if (err < best_err) {
      best_err = err;
      best_s = s;
      best = std::move(t);
    }
    if (err < 0.25 * kSlopeTolerance) break;
    if (ratio > 1.0) {
      hi = std::min(hi, s);
    } else {
      lo = std::max(lo, s);
    }
    // The slope grows roughly linearly with the sharpness; step along that
    // model and fall back to log-bisection once it leaves the bracket.
    double next = s / ratio;
    if (!(next > lo && next < hi)) next = std::sqrt(lo * hi);
    if (hi / lo < 1.0 + 1e-12) break;
    s = next;
  }
  if (!(best_err <= kSlopeTolerance)) {
    throw CalibrationError("slope budget " + std::to_string(budget) + " not reached: best max slope " +
                           std::to_string(best.slope) + " at sharpness " + std::to_string(best_s) +
                           (last_failure.empty() ? "" : "; last failure: " + last_failure));
  }
  SmoothedPulseReport report = MakeReport(method, best.pulse, spec, best_s);
  report.warnings = std::move(best.warnings);
  return report;
}

}  // namespace dcg

#endif  // DCG_SMOOTHING_HPP_
