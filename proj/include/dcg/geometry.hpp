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

#ifndef DCG_GEOMETRY_HPP_
#define DCG_GEOMETRY_HPP_

// Plane curves in the error plane: analytic piecewise curves made of lines and
// circular arcs, and densely sampled curves with optional derivative arrays.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <type_traits>
#include <utility>
#include <variant>
#include <vector>

#include "dcg/error.hpp"
#include "dcg/numerics.hpp"

namespace dcg {

// Geometric tolerances.
inline constexpr double kTolGeom = 1e-9;
inline constexpr double kTolClose = 1e-8;
inline constexpr double kTolDeriv = 1e-5;
inline constexpr std::size_t kMinSampledPoints = 16;

struct Point2 {
  double x = 0.0;
  double y = 0.0;

  friend constexpr Point2 operator+(Point2 a, Point2 b) { return {a.x + b.x, a.y + b.y}; }
  friend constexpr Point2 operator-(Point2 a, Point2 b) { return {a.x - b.x, a.y - b.y}; }
  friend constexpr Point2 operator*(double s, Point2 a) { return {s * a.x, s * a.y}; }
  friend constexpr bool operator==(Point2, Point2) = default;
};

inline double Norm(Point2 p) { return std::hypot(p.x, p.y); }
inline double Distance(Point2 a, Point2 b) { return Norm(a - b); }
inline Point2 UnitVector(double angle) { return {std::cos(angle), std::sin(angle)}; }

// Rotation about the origin.
inline Point2 Rotate(Point2 p, double angle) {
  const double c = std::cos(angle), s = std::sin(angle);
  return {c * p.x - s * p.y, s * p.x + c * p.y};
}

// Wraps an angle into (-pi, pi].
inline double WrapAngle(double a) {
  a = std::remainder(a, kTwoPi);
  if (a <= -kPi) a += kTwoPi;
  return a;
}

struct Line {
  Point2 start;
  Point2 end;

  friend bool operator==(const Line&, const Line&) = default;
};

// Circular arc; a positive sweep is counterclockwise.
struct Arc {
  Point2 center;
  double radius = 1.0;
  double start_angle = 0.0;
  double sweep = 0.0;

  friend bool operator==(const Arc&, const Arc&) = default;
};

using Segment = std::variant<Line, Arc>;

inline double Length(const Segment& seg) {
  return std::visit(
      [](const auto& s) -> double {
        if constexpr (std::is_same_v<std::decay_t<decltype(s)>, Line>) {
          return Distance(s.start, s.end);
        } else {
          return s.radius * std::abs(s.sweep);
        }
      },
      seg);
}

// Signed curvature: 0 for lines, +-1/radius for arcs.
inline double Curvature(const Segment& seg) {
  if (const auto* arc = std::get_if<Arc>(&seg)) {
    return (arc->sweep > 0.0 ? 1.0 : -1.0) / arc->radius;
  }
  return 0.0;
}

// Position at arc-length offset s from the segment start. The parametric form
// is valid for every real s, which extends the segment beyond its ends.
template <typename T>
std::pair<T, T> PointAlong(const Segment& seg, T s) {
  if (const auto* line = std::get_if<Line>(&seg)) {
    const double len = Distance(line->start, line->end);
    const double ux = (line->end.x - line->start.x) / len;
    const double uy = (line->end.y - line->start.y) / len;
    return {line->start.x + ux * s, line->start.y + uy * s};
  }
  const Arc& arc = std::get<Arc>(seg);
  const double dir = arc.sweep > 0.0 ? 1.0 : -1.0;
  using std::cos;
  using std::sin;
  const T angle = arc.start_angle + (dir / arc.radius) * s;
  return {arc.center.x + arc.radius * cos(angle), arc.center.y + arc.radius * sin(angle)};
}

inline Point2 PointOn(const Segment& seg, double s) {
  const auto [x, y] = PointAlong<double>(seg, s);
  return {x, y};
}

inline Point2 StartPoint(const Segment& seg) { return PointOn(seg, 0.0); }
inline Point2 EndPoint(const Segment& seg) {
  if (const auto* line = std::get_if<Line>(&seg)) return line->end;
  return PointOn(seg, Length(seg));
}

// Direction of travel (radians) at offset s.
inline double TangentAngle(const Segment& seg, double s) {
  if (const auto* line = std::get_if<Line>(&seg)) {
    return std::atan2(line->end.y - line->start.y, line->end.x - line->start.x);
  }
  const Arc& arc = std::get<Arc>(seg);
  const double dir = arc.sweep > 0.0 ? 1.0 : -1.0;
  return arc.start_angle + dir * s / arc.radius + dir * 0.5 * kPi;
}

inline void ValidateSegment(const Segment& seg) {
  if (const auto* arc = std::get_if<Arc>(&seg)) {
    if (!(arc->radius > 0.0) || !std::isfinite(arc->radius)) {
      throw InvalidInputError("arc radius must be positive and finite");
    }
    if (!(std::abs(arc->sweep) > 0.0) || !std::isfinite(arc->sweep)) {
      throw InvalidInputError("arc sweep must be nonzero and finite");
    }
    if (!std::isfinite(arc->center.x) || !std::isfinite(arc->center.y) ||
        !std::isfinite(arc->start_angle)) {
      throw InvalidInputError("arc parameters must be finite");
    }
    return;
  }
  const Line& line = std::get<Line>(seg);
  if (!std::isfinite(line.start.x) || !std::isfinite(line.start.y) || !std::isfinite(line.end.x) ||
      !std::isfinite(line.end.y)) {
    throw InvalidInputError("line endpoints must be finite");
  }
  if (!(Distance(line.start, line.end) > 0.0)) throw InvalidInputError("line length must be > 0");
}

// Ordered chain of segments parameterized by arc length. Joint j sits between
// segment j-1 and segment j; joint 0 is the start and joint n the end. Joints
// listed in `cusps` are allowed to break tangent continuity and report no
// curvature.
class PiecewiseCurve {
 public:
  PiecewiseCurve() = default;

  explicit PiecewiseCurve(std::vector<Segment> segments, std::vector<std::size_t> cusps = {})
      : segments_(std::move(segments)), cusps_(std::move(cusps)) {
    if (segments_.empty()) throw InvalidInputError("curve needs at least one segment");
    std::sort(cusps_.begin(), cusps_.end());
    cusps_.erase(std::unique(cusps_.begin(), cusps_.end()), cusps_.end());
    for (std::size_t c : cusps_) {
      if (c > segments_.size()) throw InvalidInputError("cusp joint index out of range");
    }
    breakpoints_.reserve(segments_.size() + 1);
    breakpoints_.push_back(0.0);
    for (std::size_t i = 0; i < segments_.size(); ++i) {
      ValidateSegment(segments_[i]);
      breakpoints_.push_back(breakpoints_.back() + Length(segments_[i]));
      if (i == 0) continue;
      const Point2 prev_end = EndPoint(segments_[i - 1]);
      const Point2 start = StartPoint(segments_[i]);
      if (Distance(prev_end, start) > kTolGeom * std::max(1.0, Norm(start))) {
        throw InvalidInputError("segments " + std::to_string(i - 1) + " and " + std::to_string(i) +
                                " do not connect");
      }
      if (!IsCusp(i)) {
        const double turn = WrapAngle(TangentAngle(segments_[i], 0.0) -
                                      TangentAngle(segments_[i - 1], Length(segments_[i - 1])));
        if (std::abs(turn) > kTolGeom) {
          throw InvalidInputError("undeclared kink at joint " + std::to_string(i));
        }
      }
    }
  }

  // Tangent-continuous chain built from (curvature, length) pairs.
  static PiecewiseCurve FromTurtle(Point2 start, double heading,
                                   std::span<const std::pair<double, double>> pieces,
                                   std::vector<std::size_t> cusps = {}) {
    std::vector<Segment> segs;
    Point2 p = start;
    double h = heading;
    for (const auto& [kappa, len] : pieces) {
      if (!(len > 0.0)) continue;
      if (kappa == 0.0) {
        const Point2 q = p + len * UnitVector(h);
        segs.emplace_back(Line{p, q});
        p = q;
        continue;
      }
      const double r = 1.0 / std::abs(kappa);
      const double side = kappa > 0.0 ? 0.5 * kPi : -0.5 * kPi;
      const Point2 center = p + r * UnitVector(h + side);
      const Arc arc{center, r, h - side, kappa * len};
      segs.emplace_back(arc);
      p = EndPoint(arc);
      h += kappa * len;
    }
    return PiecewiseCurve(std::move(segs), std::move(cusps));
  }

  const std::vector<Segment>& segments() const { return segments_; }
  const std::vector<double>& breakpoints() const { return breakpoints_; }
  const std::vector<std::size_t>& cusps() const { return cusps_; }
  std::size_t size() const { return segments_.size(); }
  double length() const { return breakpoints_.back(); }
  Point2 start() const { return StartPoint(segments_.front()); }
  Point2 end() const { return EndPoint(segments_.back()); }

  bool IsCusp(std::size_t joint) const {
    return std::binary_search(cusps_.begin(), cusps_.end(), joint);
  }

  // Segment index containing lambda (right-continuous; lambda == length maps
  // to the last segment) and the offset into it.
  std::pair<std::size_t, double> Locate(double lambda) const {
    if (!(lambda >= -kTolGeom && lambda <= length() + kTolGeom)) {
      throw InvalidInputError("lambda outside [0, length]");
    }
    const auto it = std::upper_bound(breakpoints_.begin(), breakpoints_.end(), lambda);
    std::size_t idx = it == breakpoints_.begin() ? 0 : static_cast<std::size_t>(it - breakpoints_.begin()) - 1;
    idx = std::min(idx, segments_.size() - 1);
    return {idx, lambda - breakpoints_[idx]};
  }

  Point2 PointAt(double lambda) const {
    const auto [i, s] = Locate(lambda);
    return PointOn(segments_[i], s);
  }

  double TangentAt(double lambda) const {
    const auto [i, s] = Locate(lambda);
    return TangentAngle(segments_[i], s);
  }

  friend bool operator==(const PiecewiseCurve&, const PiecewiseCurve&) = default;

 private:
  std::vector<Segment> segments_;
  std::vector<std::size_t> cusps_;
  std::vector<double> breakpoints_;
};

// First and second derivatives of x and y with respect to the curve parameter.
struct CurveDerivatives {
  std::vector<double> dx, dy, ddx, ddy;

  friend bool operator==(const CurveDerivatives&, const CurveDerivatives&) = default;
};

// Densely sampled plane curve. The parameter grid need not be arc length.
class SampledCurve {
 public:
  SampledCurve() = default;

  SampledCurve(std::vector<double> lambda, std::vector<double> x, std::vector<double> y,
               std::optional<CurveDerivatives> derivatives = std::nullopt)
      : lambda_(std::move(lambda)), x_(std::move(x)), y_(std::move(y)) {
    const std::size_t n = lambda_.size();
    if (n < kMinSampledPoints) throw InvalidInputError("sampled curve needs >= 16 points");
    if (x_.size() != n || y_.size() != n) throw InvalidInputError("sampled curve arrays differ in length");
    if (!StrictlyIncreasing(lambda_)) throw InvalidInputError("sampled curve grid is not strictly increasing");
    for (std::size_t i = 0; i < n; ++i) {
      if (!std::isfinite(x_[i]) || !std::isfinite(y_[i]) || !std::isfinite(lambda_[i])) {
        throw NumericError("sampled curve has a non-finite value at lambda index " + std::to_string(i));
      }
    }
    if (derivatives) {
      const auto& d = *derivatives;
      if (d.dx.size() != n || d.dy.size() != n || d.ddx.size() != n || d.ddy.size() != n) {
        throw InvalidInputError("derivative arrays differ in length");
      }
      derivatives_ = std::move(derivatives);
    } else {
      derivatives_ = CurveDerivatives{FiniteDifference(lambda_, x_, 1), FiniteDifference(lambda_, y_, 1),
                                      FiniteDifference(lambda_, x_, 2), FiniteDifference(lambda_, y_, 2)};
      derived_by_fd_ = true;
    }
  }

  const std::vector<double>& lambda() const { return lambda_; }
  const std::vector<double>& x() const { return x_; }
  const std::vector<double>& y() const { return y_; }
  const CurveDerivatives& derivatives() const { return *derivatives_; }
  bool derivatives_from_finite_differences() const { return derived_by_fd_; }
  std::size_t size() const { return lambda_.size(); }
  Point2 start() const { return {x_.front(), y_.front()}; }
  Point2 end() const { return {x_.back(), y_.back()}; }

  // Largest mismatch between the stored first derivatives and fourth-order
  // finite differences of the positions.
  double DerivativeMismatch() const {
    const auto fdx = FiniteDifference(lambda_, x_, 1);
    const auto fdy = FiniteDifference(lambda_, y_, 1);
    double worst = 0.0;
    for (std::size_t i = 0; i < size(); ++i) {
      worst = std::max({worst, std::abs(fdx[i] - derivatives_->dx[i]), std::abs(fdy[i] - derivatives_->dy[i])});
    }
    return worst;
  }

  friend bool operator==(const SampledCurve& a, const SampledCurve& b) {
    return a.lambda_ == b.lambda_ && a.x_ == b.x_ && a.y_ == b.y_ && a.derivatives_ == b.derivatives_;
  }

 private:
  std::vector<double> lambda_, x_, y_;
  std::optional<CurveDerivatives> derivatives_;
  bool derived_by_fd_ = false;
};

}  // namespace dcg

#endif  // DCG_GEOMETRY_HPP_
