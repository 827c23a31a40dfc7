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

#ifndef DCG_SYNTHESIS_HPP_
#define DCG_SYNTHESIS_HPP_

// Time-optimal noise-cancelling curves and their composite square pulses.
//
// Every optimal curve is a chain of tangent arcs of radius 1/omega_max that
// starts at the origin with heading -phi/2 and is mirror symmetric about the
// x axis, so the two legs meet at the origin with opening angle phi. The
// implemented gate is a z rotation by phi + pi.
//
//   first order:  arcs (cw, ccw, cw) with sweeps (psi - phi/2, 2 psi + pi, psi - phi/2),
//                 psi = acos(cos(phi/2) / 2)
//   second order: arcs (cw, ccw, cw, ccw, cw) with sweeps
//                 (psi1 - phi/2, psi1 + psi2, 2 psi2 + pi, psi1 + psi2, psi1 - phi/2),
//                 psi1 = acos((k + cos(phi/2)) / 2), psi2 = acos(k / 2),
//                 where k is fixed by requiring zero net signed area.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "dcg/curve_ops.hpp"
#include "dcg/error.hpp"
#include "dcg/geometry.hpp"
#include "dcg/numerics.hpp"
#include "dcg/pulse.hpp"

namespace dcg {

struct SynthesisSpec {
  double phi = 0.0;  // subtended cusp angle in [0, pi]
  int order = 1;     // cancellation order, 1 or 2
  double omega_max = 1.0;

  void Validate() const {
    if (!(phi >= 0.0 && phi <= kPi)) throw InvalidInputError("phi must lie in [0, pi]");
    if (order != 1 && order != 2) throw InvalidInputError("order must be 1 or 2");
    if (!(omega_max > 0.0) || !std::isfinite(omega_max)) throw InvalidInputError("omega_max must be positive");
  }

  double target_rotation() const { return phi + kPi; }

  friend bool operator==(const SynthesisSpec&, const SynthesisSpec&) = default;
};

struct SecondOrderGeometry {
  double k = 0.0;     // height of the middle arcs' centers above/below the x axis
  double psi1 = 0.0;
  double psi2 = 0.0;
  double r = 1.0;
};

// Lengths of the three candidate first-order families (units 1/omega_max).
struct FamilyLengths {
  double line_arc_line = 0.0;
  double arc_line_arc = 0.0;
  double three_arc = 0.0;
};

// Pieces shorter than this are dropped (they appear at the phi = pi limits).
inline constexpr double kDegenerateLength = 1e-12;
inline constexpr double kSolveKTolerance = 1e-12;

namespace detail {

inline void CheckPhi(double phi) {
  if (!(phi >= 0.0 && phi <= kPi)) throw InvalidInputError("phi must lie in [0, pi], got " + std::to_string(phi));
}

// (curvature, length) pieces with unit radius and scaled by omega_max.
inline std::vector<std::pair<double, double>> ScalePieces(std::vector<std::pair<double, double>> pieces,
                                                          double omega_max) {
  std::vector<std::pair<double, double>> out;
  for (auto [kappa, len] : pieces) {
    if (len > kDegenerateLength) out.emplace_back(kappa * omega_max, len / omega_max);
  }
  return out;
}

inline PiecewiseCurve ChainFromOrigin(const std::vector<std::pair<double, double>>& pieces, double phi,
                                      bool cusp_at_origin) {
  std::vector<std::size_t> cusps;
  if (cusp_at_origin) cusps = {0, pieces.size()};
  return PiecewiseCurve::FromTurtle({0.0, 0.0}, -0.5 * phi, pieces, std::move(cusps));
}

inline PulseWaveform SquareFromPieces(const std::vector<std::pair<double, double>>& pieces) {
  std::vector<Step> steps;
  for (const auto& [kappa, len] : pieces) steps.push_back({len, kappa});
  return PulseWaveform::Square(std::move(steps));
}

inline double FirstOrderPsi(double phi) { return std::acos(0.5 * std::cos(0.5 * phi)); }

inline std::vector<std::pair<double, double>> FirstOrderPieces(double phi) {
  const double psi = FirstOrderPsi(phi);
  return {{-1.0, psi - 0.5 * phi}, {1.0, 2.0 * psi + kPi}, {-1.0, psi - 0.5 * phi}};
}

inline std::vector<std::pair<double, double>> SecondOrderPieces(double phi, double k) {
  const double psi1 = std::acos(0.5 * (k + std::cos(0.5 * phi)));
  const double psi2 = std::acos(0.5 * k);
  return {{-1.0, psi1 - 0.5 * phi},
          {1.0, psi1 + psi2},
          {-1.0, 2.0 * psi2 + kPi},
          {1.0, psi1 + psi2},
          {-1.0, psi1 - 0.5 * phi}};
}

// The cusp disappears when the first/last arcs vanish (phi = pi).
inline bool HasOriginCusp(const std::vector<std::pair<double, double>>& unit_pieces) {
  return unit_pieces.front().second > kDegenerateLength;
}

}  // namespace detail

// Five-arc second-order candidate for an arbitrary center offset k in
// [0, cos(phi/2)]; closed for every k, zero-area only at k(phi).
inline PiecewiseCurve SecondOrderCurveForK(double phi, double k, double omega_max = 1.0) {
  detail::CheckPhi(phi);
  if (!(k >= -1e-15 && k <= std::cos(0.5 * phi) + 1e-15)) {
    throw InvalidInputError("k must lie in [0, cos(phi/2)]");
  }
  k = std::clamp(k, 0.0, std::cos(0.5 * phi));
  const auto unit = detail::SecondOrderPieces(phi, k);
  const auto pieces = detail::ScalePieces(unit, omega_max);
  return detail::ChainFromOrigin(pieces, phi, detail::HasOriginCusp(unit));
}

// Center offset k(phi) giving zero net area, by bisection on the
// segment-analytic area of the constructed curve.
inline SecondOrderGeometry SolveK(double phi) {
  detail::CheckPhi(phi);
  const double hi_bound = std::cos(0.5 * phi);
  auto geometry = [phi](double k) {
    return SecondOrderGeometry{k, std::acos(0.5 * (k + std::cos(0.5 * phi))), std::acos(0.5 * k), 1.0};
  };
  if (hi_bound <= kSolveKTolerance) return geometry(0.0);  // two tangent circles
  auto area = [phi](double k) { return SignedArea(SecondOrderCurveForK(phi, k)); };

  double lo = 0.0, hi = hi_bound;
  double f_lo = area(lo), f_hi = area(hi);
  if (f_lo == 0.0) return geometry(lo);
  if (std::signbit(f_lo) == std::signbit(f_hi)) {
    // Fall back to a scan for any sign change.
    constexpr int kScan = 1024;
    bool found = false;
    double prev_k = lo, prev_f = f_lo;
    for (int i = 1; i <= kScan && !found; ++i) {
      const double kk = hi_bound * i / kScan;
      const double f = area(kk);
      if (std::signbit(f) != std::signbit(prev_f)) {
        lo = prev_k;
        f_lo = prev_f;
        hi = kk;
        f_hi = f;
        found = true;
      }
      prev_k = kk;
      prev_f = f;
    }
    if (!found) {
      throw SolverError("SolveK: no sign change of the net area on [0, " + std::to_string(hi_bound) +
                        "] for phi = " + std::to_string(phi) + " (area(0) = " + std::to_string(area(0.0)) +
                        ", area(cos(phi/2)) = " + std::to_string(area(hi_bound)) + ")");
    }
  }
  while (hi - lo > kSolveKTolerance) {
    const double mid = 0.5 * (lo + hi);
    const double f_mid = area(mid);
    if (f_mid == 0.0) {
      lo = hi = mid;
      break;
    }
    if (std::signbit(f_mid) == std::signbit(f_lo)) {
      lo = mid;
      f_lo = f_mid;
    } else {
      hi = mid;
    }
  }
  return geometry(0.5 * (lo + hi));
}

inline PiecewiseCurve FirstOrderCurve(const SynthesisSpec& spec) {
  spec.Validate();
  if (spec.order != 1) throw InvalidInputError("FirstOrderCurve needs order = 1");
  const auto unit = detail::FirstOrderPieces(spec.phi);
  return detail::ChainFromOrigin(detail::ScalePieces(unit, spec.omega_max), spec.phi, detail::HasOriginCusp(unit));
}

inline PulseWaveform FirstOrderPulse(const SynthesisSpec& spec) {
  spec.Validate();
  if (spec.order != 1) throw InvalidInputError("FirstOrderPulse needs order = 1");
  return detail::SquareFromPieces(detail::ScalePieces(detail::FirstOrderPieces(spec.phi), spec.omega_max));
}

inline PiecewiseCurve SecondOrderCurve(const SynthesisSpec& spec) {
  spec.Validate();
  if (spec.order != 2) throw InvalidInputError("SecondOrderCurve needs order = 2");
  return SecondOrderCurveForK(spec.phi, SolveK(spec.phi).k, spec.omega_max);
}

inline PulseWaveform SecondOrderPulse(const SynthesisSpec& spec) {
  spec.Validate();
  if (spec.order != 2) throw InvalidInputError("SecondOrderPulse needs order = 2");
  const double k = SolveK(spec.phi).k;
  return detail::SquareFromPieces(detail::ScalePieces(detail::SecondOrderPieces(spec.phi, k), spec.omega_max));
}

inline PiecewiseCurve OptimalCurve(const SynthesisSpec& spec) {
  return spec.order == 1 ? FirstOrderCurve(spec) : SecondOrderCurve(spec);
}

inline PulseWaveform OptimalPulse(const SynthesisSpec& spec) {
  return spec.order == 1 ? FirstOrderPulse(spec) : SecondOrderPulse(spec);
}

// Closed-form minimal gate time.
inline double TMin(const SynthesisSpec& spec) {
  spec.Validate();
  if (spec.order == 1) {
    return (4.0 * detail::FirstOrderPsi(spec.phi) - spec.phi + kPi) / spec.omega_max;
  }
  const auto g = SolveK(spec.phi);
  return (4.0 * g.psi1 + 4.0 * g.psi2 - spec.phi + kPi) / spec.omega_max;
}

// Lengths of the line-arc-line, arc-line-arc and three-arc first-order
// candidates. The line families diverge at phi = 0 (reported as +inf).
inline FamilyLengths CandidateFamilyLengths(double phi) {
  detail::CheckPhi(phi);
  FamilyLengths out;
  const double inf = std::numeric_limits<double>::infinity();
  const double cot = phi > 0.0 ? std::cos(0.5 * phi) / std::sin(0.5 * phi) : inf;
  out.line_arc_line = kPi + phi + 2.0 * cot;
  out.arc_line_arc = 3.0 * kPi - phi + 2.0 * cot;
  out.three_arc = 4.0 * detail::FirstOrderPsi(phi) + kPi - phi;
  return out;
}

namespace detail {

struct TwoLoopAngles {
  double psi1, psi2, psi3;
};

inline TwoLoopAngles TwoLoopAnglesFor(double k, double r, double phi) {
  const double a1 = 0.5 * (std::cos(0.5 * phi) + k);
  if (!(r > 0.0) || !std::isfinite(r)) throw InvalidInputError("two-loop family: r must be positive");
  if (!(std::abs(a1) <= 1.0 && std::abs(k) <= 1.0)) {
    throw InvalidInputError("two-loop family: arccos argument outside [-1, 1]");
  }
  return {std::acos(a1), std::acos(k), std::acos(0.5 * k)};
}

}  // namespace detail

// Closed-form net area of the two-loop family whose near loop has radius r and
// whose middle arcs' centers sit at height r*k. Here psi2 = acos(k) and
// psi3 = acos(k/2); the optimal pulse's psi2 corresponds to psi3.
inline double TwoLoopArea(double k, double r, double phi) {
  detail::CheckPhi(phi);
  const auto [p1, p2, p3] = detail::TwoLoopAnglesFor(k, r, phi);
  const double near = std::tan(p1) * (-2.0 * k * k + std::cos(phi) + 1.0) - 2.0 * std::sqrt(1.0 - k * k) * k +
                      2.0 * p2 + phi - std::sin(phi);
  // sin(2 p2 - p3) / cos(p3) - tan(p3), rearranged to stay finite at k = 0
  const double far = std::sin(2.0 * p2) - 2.0 * k * k * std::tan(p3);
  return 0.5 * (r * r * near + far - 2.0 * p2 - kPi);
}

inline double TwoLoopPerimeter(double k, double r, double phi) {
  detail::CheckPhi(phi);
  const auto [p1, p2, p3] = detail::TwoLoopAnglesFor(k, r, phi);
  return r * (4.0 * p1 + 2.0 * p2 - phi) - 2.0 * p2 + 4.0 * p3 + kPi;
}

// The family itself: near-loop arcs of radius r, far loop of radius 1, the
// curvature switching where the near arcs cross the x axis.
inline PiecewiseCurve TwoLoopCurve(double k, double r, double phi) {
  detail::CheckPhi(phi);
  const auto [p1, p2, p3] = detail::TwoLoopAnglesFor(k, r, phi);
  if (p1 < 0.5 * phi - kDegenerateLength) {
    throw InvalidInputError("two-loop family: needs k <= cos(phi/2)");
  }
  const std::vector<std::pair<double, double>> unit = {
      {-1.0 / r, r * (p1 - 0.5 * phi)}, {1.0 / r, r * (p1 + p2)}, {1.0, p3 - p2},           {-1.0, kPi + 2.0 * p3},
      {1.0, p3 - p2},                   {1.0 / r, r * (p1 + p2)}, {-1.0 / r, r * (p1 - 0.5 * phi)}};
  const auto pieces = detail::ScalePieces(unit, 1.0);
  return detail::ChainFromOrigin(pieces, phi, detail::HasOriginCusp(unit));
}

// Near-loop radius that zeroes the closed-form area for a given k (the area
// is r^2 B + C, so the root is explicit).
inline double TwoLoopZeroAreaRadius(double k, double phi) {
  const double a1 = TwoLoopArea(k, 1.0, phi);
  const double a2 = TwoLoopArea(k, 2.0, phi);
  const double b = (a2 - a1) / 3.0;  // coefficient of r^2
  const double c = a1 - b;
  if (!(b != 0.0) || -c / b <= 0.0) {
    throw SolverError("no positive radius gives zero area for k = " + std::to_string(k));
  }
  return std::sqrt(-c / b);
}

}  // namespace dcg

#endif  // DCG_SYNTHESIS_HPP_
