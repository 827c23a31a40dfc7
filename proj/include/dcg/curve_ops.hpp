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

#ifndef DCG_CURVE_OPS_HPP_
#define DCG_CURVE_OPS_HPP_

// Maps between error-plane curves and driving pulses: time is arc length,
// amplitude is signed curvature. Closing the curve cancels first-order noise;
// zero net signed area additionally cancels second order.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <cstdlib>
#include <optional>
#include <string>
#include <vector>

#include "dcg/error.hpp"
#include "dcg/geometry.hpp"
#include "dcg/numerics.hpp"
#include "dcg/pulse.hpp"

namespace dcg {

inline constexpr std::size_t kDefaultGridPoints = 4096;

// Sampling density used when a pulse is turned into a curve; the
// DCG_GRID_POINTS environment variable overrides the default.
inline std::size_t DefaultGridPoints(std::size_t fallback = kDefaultGridPoints) {
  if (const char* env = std::getenv("DCG_GRID_POINTS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && v >= static_cast<long>(kMinSampledPoints)) return static_cast<std::size_t>(v);
  }
  return fallback;
}

namespace detail {

// Cubic Hermite interpolant of (x, y) on one grid interval, in the local
// coordinate u in [0, 1].
struct HermiteInterval {
  double x0, x1, y0, y1, mx0, mx1, my0, my1;  // slopes already scaled by h

  HermiteInterval(const SampledCurve& c, std::size_t i) {
    const auto& d = c.derivatives();
    const double h = c.lambda()[i + 1] - c.lambda()[i];
    x0 = c.x()[i];
    x1 = c.x()[i + 1];
    y0 = c.y()[i];
    y1 = c.y()[i + 1];
    mx0 = h * d.dx[i];
    mx1 = h * d.dx[i + 1];
    my0 = h * d.dy[i];
    my1 = h * d.dy[i + 1];
  }

  static std::array<double, 4> Basis(double u) {
    const double u2 = u * u, u3 = u2 * u;
    return {2 * u3 - 3 * u2 + 1, u3 - 2 * u2 + u, -2 * u3 + 3 * u2, u3 - u2};
  }
  static std::array<double, 4> BasisDerivative(double u) {
    const double u2 = u * u;
    return {6 * u2 - 6 * u, 3 * u2 - 4 * u + 1, -6 * u2 + 6 * u, 3 * u2 - 2 * u};
  }
  Point2 Value(double u) const {
    const auto b = Basis(u);
    return {b[0] * x0 + b[1] * mx0 + b[2] * x1 + b[3] * mx1, b[0] * y0 + b[1] * my0 + b[2] * y1 + b[3] * my1};
  }
  Point2 Velocity(double u) const {
    const auto b = BasisDerivative(u);
    return {b[0] * x0 + b[1] * mx0 + b[2] * x1 + b[3] * mx1, b[0] * y0 + b[1] * my0 + b[2] * y1 + b[3] * my1};
  }
  // Length of the interpolant on this interval.
  double Length() const {
    return GaussLegendre([&](double u) { return Norm(Velocity(u)); }, 0.0, 1.0);
  }
  // Integral of (x dy - y dx) / 2; the integrand is a degree-5 polynomial.
  double Area() const {
    return 0.5 * GaussLegendre(
                     [&](double u) {
                       const Point2 p = Value(u), v = Velocity(u);
                       return p.x * v.y - p.y * v.x;
                     },
                     0.0, 1.0);
  }
};

inline std::vector<double> CumulativeLength(const SampledCurve& c) {
  std::vector<double> out(c.size(), 0.0);
  for (std::size_t i = 0; i + 1 < c.size(); ++i) out[i + 1] = out[i] + HermiteInterval(c, i).Length();
  return out;
}

inline double ArcArea(const Arc& a) {
  const double r = a.radius, cx = a.center.x, cy = a.center.y;
  const double t0 = a.start_angle, t1 = a.start_angle + a.sweep;
  return 0.5 * (r * r * a.sweep + r * cx * (std::sin(t1) - std::sin(t0)) - r * cy * (std::cos(t1) - std::cos(t0)));
}

inline double SegmentArea(const Segment& seg) {
  if (const auto* line = std::get_if<Line>(&seg)) {
    return 0.5 * (line->start.x * line->end.y - line->end.x * line->start.y);
  }
  return ArcArea(std::get<Arc>(seg));
}

inline double CurvatureFromDerivatives(double dx, double dy, double ddx, double ddy) {
  const double speed2 = dx * dx + dy * dy;
  return (dx * ddy - dy * ddx) / (speed2 * std::sqrt(speed2));
}

}  // namespace detail

inline double ClosureDefect(const PiecewiseCurve& c) { return Distance(c.end(), c.start()); }
inline double ClosureDefect(const SampledCurve& c) { return Distance(c.end(), c.start()); }

inline double ArcLength(const PiecewiseCurve& c) { return c.length(); }

// Composite quadrature of the speed over the cubic Hermite interpolant.
inline double ArcLength(const SampledCurve& c) { return detail::CumulativeLength(c).back(); }

// Signed curvature at arc length lambda, or nullopt at a declared cusp.
inline std::optional<double> CurvatureAt(const PiecewiseCurve& c, double lambda) {
  const auto& bp = c.breakpoints();
  for (std::size_t j : c.cusps()) {
    if (std::abs(lambda - bp[j]) <= kTolGeom) return std::nullopt;
  }
  const auto [i, s] = c.Locate(lambda);
  return Curvature(c.segments()[i]);
}

// Curvature of a sampled curve, linearly interpolated in lambda between grid
// points. Vanishing speed means the parameterization hides a kink.
inline std::optional<double> CurvatureAt(const SampledCurve& c, double lambda) {
  const auto& grid = c.lambda();
  if (!(lambda >= grid.front() && lambda <= grid.back())) {
    throw InvalidInputError("lambda outside the sampled curve's grid");
  }
  const auto& d = c.derivatives();
  auto kappa = [&](std::size_t i) {
    if (d.dx[i] * d.dx[i] + d.dy[i] * d.dy[i] < 1e-12) {
      throw DiscontinuityError("vanishing speed at lambda = " + std::to_string(grid[i]));
    }
    return detail::CurvatureFromDerivatives(d.dx[i], d.dy[i], d.ddx[i], d.ddy[i]);
  };
  auto it = std::upper_bound(grid.begin(), grid.end(), lambda);
  std::size_t hi = std::min(static_cast<std::size_t>(it - grid.begin()), grid.size() - 1);
  const std::size_t lo = hi - 1;
  const double w = (lambda - grid[lo]) / (grid[hi] - grid[lo]);
  return (1.0 - w) * kappa(lo) + w * kappa(hi);
}

// Net signed area via (1/2) closed-integral of (x dy - y dx); positive for
// counterclockwise loops.
inline double SignedArea(const PiecewiseCurve& c, double closure_tolerance = kTolClose) {
  const double defect = ClosureDefect(c);
  if (defect > closure_tolerance) {
    throw PreconditionError("signed area needs a closed curve; closure defect = " + std::to_string(defect));
  }
  double area = 0.0;
  for (const Segment& s : c.segments()) area += detail::SegmentArea(s);
  return area;
}

inline double SignedArea(const SampledCurve& c, double closure_tolerance = kTolClose) {
  const double defect = ClosureDefect(c);
  if (defect > closure_tolerance) {
    throw PreconditionError("signed area needs a closed curve; closure defect = " + std::to_string(defect));
  }
  double area = 0.0;
  for (std::size_t i = 0; i + 1 < c.size(); ++i) area += detail::HermiteInterval(c, i).Area();
  return area;
}

// Composite square pulse of a line/arc curve: one step per segment with
// duration = segment length and amplitude = signed curvature. Segments whose
// |curvature| exceeds `amplitude_bound` are reported as warnings.
inline Annotated<PulseWaveform> PulseFromCurve(const PiecewiseCurve& c,
                                               std::optional<double> amplitude_bound = std::nullopt) {
  Annotated<PulseWaveform> out;
  std::vector<Step> steps;
  steps.reserve(c.size());
  for (std::size_t i = 0; i < c.size(); ++i) {
    const Segment& s = c.segments()[i];
    steps.push_back({Length(s), Curvature(s)});
    if (amplitude_bound && std::abs(Curvature(s)) > *amplitude_bound * (1.0 + 1e-12)) {
      out.warnings.push_back("segment " + std::to_string(i) + " curvature " + std::to_string(Curvature(s)) +
                             " exceeds bound " + std::to_string(*amplitude_bound));
    }
  }
  out.value = PulseWaveform::Square(std::move(steps));
  return out;
}

// Sampled pulse of a sampled curve: t(lambda) re-integrated from the speed and
// Omega = curvature, so the parameter need not be arc length.
inline Annotated<PulseWaveform> PulseFromCurve(const SampledCurve& c,
                                               std::optional<double> amplitude_bound = std::nullopt) {
  const auto& d = c.derivatives();
  std::vector<double> omega(c.size());
  for (std::size_t i = 0; i < c.size(); ++i) {
    const double speed2 = d.dx[i] * d.dx[i] + d.dy[i] * d.dy[i];
    if (!(speed2 >= 1e-12)) {
      throw NumericError("degenerate parameterization: vanishing speed at lambda = " +
                         std::to_string(c.lambda()[i]));
    }
    omega[i] = detail::CurvatureFromDerivatives(d.dx[i], d.dy[i], d.ddx[i], d.ddy[i]);
  }
  Annotated<PulseWaveform> out;
  out.value = PulseWaveform::FromSamples(detail::CumulativeLength(c), std::move(omega));
  if (amplitude_bound && out.value.max_amplitude() > *amplitude_bound) {
    out.warnings.push_back("max |curvature| " + std::to_string(out.value.max_amplitude()) + " exceeds bound " +
                           std::to_string(*amplitude_bound));
  }
  return out;
}

// Error-plane curve traced by a pulse: x = integral of cos(theta), y = integral
// of sin(theta), theta(t) = integral of Omega, starting at the origin heading
// along +x. The curve is unit speed with curvature Omega(t).
inline SampledCurve CurveFromPulse(const PulseWaveform& pulse, std::size_t grid_points = DefaultGridPoints()) {
  std::vector<double> lam, x, y, theta, omega;
  if (pulse.is_piecewise()) {
    const auto& steps = pulse.steps();
    const double total = pulse.total_time();
    grid_points = std::max(grid_points, kMinSampledPoints);
    double t0 = 0.0, th = 0.0;
    Point2 p{};
    lam.push_back(0.0);
    x.push_back(0.0);
    y.push_back(0.0);
    theta.push_back(0.0);
    omega.push_back(steps.front().amplitude);
    for (const Step& s : steps) {
      const auto n = std::max<std::size_t>(
          8, static_cast<std::size_t>(std::ceil(static_cast<double>(grid_points) * s.duration / total)));
      for (std::size_t k = 1; k <= n; ++k) {
        const double u = s.duration * static_cast<double>(k) / static_cast<double>(n);
        Point2 q;
        if (s.amplitude == 0.0) {
          q = p + u * UnitVector(th);
        } else {
          const double w = s.amplitude;
          q = p + Point2{(std::sin(th + w * u) - std::sin(th)) / w, -(std::cos(th + w * u) - std::cos(th)) / w};
        }
        lam.push_back(t0 + u);
        x.push_back(q.x);
        y.push_back(q.y);
        theta.push_back(th + s.amplitude * u);
        omega.push_back(s.amplitude);
      }
      const double w = s.amplitude;
      if (w == 0.0) {
        p = p + s.duration * UnitVector(th);
      } else {
        p = p + Point2{(std::sin(th + w * s.duration) - std::sin(th)) / w,
                       -(std::cos(th + w * s.duration) - std::cos(th)) / w};
      }
      th += w * s.duration;
      t0 += s.duration;
      lam.back() = t0;
    }
  } else {
    // Linear Omega between samples makes theta quadratic per interval.
    const auto& smp = pulse.samples();
    const std::size_t n = smp.t.size();
    std::vector<double> t = smp.t, w = smp.omega;
    if (n < kMinSampledPoints) {
      // Too coarse for a SampledCurve: refine uniformly, Omega stays linear.
      t = Linspace(0.0, smp.t.back(), kMinSampledPoints * (n - 1) + 1);
      w.resize(t.size());
      for (std::size_t i = 0; i < t.size(); ++i) w[i] = pulse(t[i]);
    }
    double th = 0.0;
    Point2 p{};
    lam.push_back(0.0);
    x.push_back(0.0);
    y.push_back(0.0);
    theta.push_back(0.0);
    omega.push_back(w.front());
    for (std::size_t i = 1; i < t.size(); ++i) {
      const double h = t[i] - t[i - 1];
      const double w0 = w[i - 1], slope = (w[i] - w[i - 1]) / h;
      auto angle = [&](double s) { return th + w0 * s + 0.5 * slope * s * s; };
      const double cx = GaussLegendre([&](double s) { return std::cos(angle(s)); }, 0.0, h);
      const double cy = GaussLegendre([&](double s) { return std::sin(angle(s)); }, 0.0, h);
      p = p + Point2{cx, cy};
      th = angle(h);
      lam.push_back(t[i]);
      x.push_back(p.x);
      y.push_back(p.y);
      theta.push_back(th);
      omega.push_back(w[i]);
    }
  }
  CurveDerivatives d;
  const std::size_t n = lam.size();
  d.dx.resize(n);
  d.dy.resize(n);
  d.ddx.resize(n);
  d.ddy.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double c = std::cos(theta[i]), s = std::sin(theta[i]);
    d.dx[i] = c;
    d.dy[i] = s;
    d.ddx[i] = -omega[i] * s;
    d.ddy[i] = omega[i] * c;
  }
  return SampledCurve(std::move(lam), std::move(x), std::move(y), std::move(d));
}

// Largest deviation of the speed from 1 over the grid, using the stored
// derivative arrays.
inline double UnitSpeedResidual(const SampledCurve& c) {
  const auto& d = c.derivatives();
  double worst = 0.0;
  for (std::size_t i = 0; i < c.size(); ++i) worst = std::max(worst, std::abs(std::hypot(d.dx[i], d.dy[i]) - 1.0));
  return worst;
}

// Net change of the tangent angle along a sampled curve, unwrapped.
inline double TotalTurning(const SampledCurve& c) {
  const auto& d = c.derivatives();
  double total = 0.0;
  double prev = std::atan2(d.dy.front(), d.dx.front());
  for (std::size_t i = 1; i < c.size(); ++i) {
    const double a = std::atan2(d.dy[i], d.dx[i]);
    total += WrapAngle(a - prev);
    prev = a;
  }
  return total;
}

}  // namespace dcg

#endif  // DCG_CURVE_OPS_HPP_
