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

#ifndef DCG_QSIM_HPP_
#define DCG_QSIM_HPP_

// Propagation of H(t) = Omega(t)/2 sigma_z + delta_beta sigma_x, gate fidelity,
// the perturbative error coefficients g1, g2 and infidelity sweeps.
//
// U(t) = [[u1, -conj(u2)], [u2, conj(u1)]]. For delta_beta -> 0,
//   u1 = e^{-i theta/2} (1 - g2 delta_beta^2 + ...), u2 = -i e^{i theta/2} conj(g1) delta_beta + ...
// with g1 = int e^{i theta}, g2 = int e^{i theta} conj(g1), theta = int Omega.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <boost/numeric/odeint.hpp>

#include "dcg/error.hpp"
#include "dcg/numerics.hpp"
#include "dcg/pulse.hpp"

namespace dcg {

using Complex = std::complex<double>;

inline constexpr double kUnitarityTolerance = 1e-10;
inline constexpr double kFidelityUnitarityTolerance = 1e-8;
inline constexpr double kIntegratorTolerance = 1e-12;
inline constexpr double kInfidelityFloor = 1e-14;
// The RKF78 error estimate can miss long steps on near-quadrature problems.
inline constexpr double kMaxIntegratorStep = 0.05;
inline constexpr std::size_t kMinSweepPoints = 8;

// Row-major 2x2 complex matrix.
using Mat2 = std::array<Complex, 4>;

struct Unitary2 {
  Complex u1{1.0, 0.0};
  Complex u2{0.0, 0.0};

  double norm2() const { return std::norm(u1) + std::norm(u2); }
  Mat2 matrix() const { return {u1, -std::conj(u2), u2, std::conj(u1)}; }

  friend bool operator==(const Unitary2&, const Unitary2&) = default;
};

// later * earlier
inline Unitary2 Compose(const Unitary2& later, const Unitary2& earlier) {
  return {later.u1 * earlier.u1 - std::conj(later.u2) * earlier.u2,
          later.u2 * earlier.u1 + std::conj(later.u1) * earlier.u2};
}

// exp(-i H dt) for constant Omega (Rabi formula).
inline Unitary2 SegmentPropagator(double omega, double delta_beta, double dt) {
  const double half = 0.5 * omega;
  const double w = std::hypot(half, delta_beta);
  if (w == 0.0) return {};
  const double s = std::sin(w * dt) / w;
  return {Complex(std::cos(w * dt), -half * s), Complex(0.0, -delta_beta * s)};
}

// Largest entry of |A - B|, a cheap operator-norm proxy (within a factor 2).
inline double OperatorDistance(const Unitary2& a, const Unitary2& b) {
  return std::max(std::abs(a.u1 - b.u1), std::abs(a.u2 - b.u2));
}

namespace detail {

using State4 = std::array<double, 4>;

inline void CheckUnitary(const Unitary2& u) {
  const double defect = std::abs(u.norm2() - 1.0);
  if (!(defect <= kUnitarityTolerance)) {
    throw AccuracyError("propagator lost unitarity: | |u1|^2 + |u2|^2 - 1 | = " + std::to_string(defect));
  }
}

// Adaptive RKF78 over [t0, t1] for the first column of U.
template <typename OmegaFn>
Unitary2 IntegrateColumn(const OmegaFn& omega, double delta_beta, double t0, double t1, Unitary2 u) {
  namespace odeint = boost::numeric::odeint;
  State4 x{u.u1.real(), u.u1.imag(), u.u2.real(), u.u2.imag()};
  auto rhs = [&](const State4& s, State4& dxdt, double t) {
    const double h = 0.5 * omega(t);
    // du1 = -i (h u1 + db u2), du2 = -i (db u1 - h u2)
    dxdt[0] = h * s[1] + delta_beta * s[3];
    dxdt[1] = -(h * s[0] + delta_beta * s[2]);
    dxdt[2] = delta_beta * s[1] - h * s[3];
    dxdt[3] = -(delta_beta * s[0] - h * s[2]);
  };
  try {
    odeint::integrate_adaptive(
        odeint::make_controlled(kIntegratorTolerance, kIntegratorTolerance, kMaxIntegratorStep,
                                odeint::runge_kutta_fehlberg78<State4>()),
        rhs, x, t0, t1, std::min(t1 - t0, kMaxIntegratorStep));
  } catch (const std::exception& e) {
    throw AccuracyError(std::string("integrator failed to reach tolerance 1e-12: ") + e.what());
  }
  return {Complex(x[0], x[1]), Complex(x[2], x[3])};
}

}  // namespace detail

// Adaptive propagation of an arbitrary Omega(t), restarted at every
// breakpoint (the first and last breakpoints bound the time window).
inline Unitary2 PropagateAdaptive(const std::function<double(double)>& omega, std::span<const double> breakpoints,
                                  double delta_beta) {
  if (breakpoints.size() < 2 || !StrictlyIncreasing(breakpoints)) {
    throw InvalidInputError("PropagateAdaptive needs >= 2 increasing breakpoints");
  }
  Unitary2 u;
  for (std::size_t i = 1; i < breakpoints.size(); ++i) {
    // Omega may jump at a breakpoint; stages at the ends read it from inside.
    const double lo = std::nextafter(breakpoints[i - 1], breakpoints[i]);
    const double hi = std::nextafter(breakpoints[i], breakpoints[i - 1]);
    auto inside = [&](double t) { return omega(std::clamp(t, lo, hi)); };
    u = detail::IntegrateColumn(inside, delta_beta, breakpoints[i - 1], breakpoints[i], u);
  }
  detail::CheckUnitary(u);
  return u;
}

// U(T) for a waveform at quasistatic noise delta_beta. Square pulses use the
// exact per-step exponential; sampled pulses (linear between samples) are
// integrated adaptively per sample interval.
inline Unitary2 Propagate(const PulseWaveform& pulse, double delta_beta) {
  if (!std::isfinite(delta_beta)) throw InvalidInputError("delta_beta must be finite");
  Unitary2 u;
  if (pulse.is_piecewise()) {
    for (const Step& s : pulse.steps()) u = Compose(SegmentPropagator(s.amplitude, delta_beta, s.duration), u);
  } else {
    const auto& smp = pulse.samples();
    for (std::size_t i = 1; i < smp.t.size(); ++i) {
      const double t0 = smp.t[i - 1], w0 = smp.omega[i - 1];
      const double slope = (smp.omega[i] - w0) / (smp.t[i] - t0);
      if (slope == 0.0) {
        u = Compose(SegmentPropagator(w0, delta_beta, smp.t[i] - t0), u);
        continue;
      }
      u = detail::IntegrateColumn([&](double t) { return w0 + slope * (t - t0); }, delta_beta, t0, smp.t[i], u);
    }
  }
  detail::CheckUnitary(u);
  return u;
}

namespace detail {

inline Complex TargetPhase(double target_phi) { return std::polar(1.0, 0.5 * (target_phi + kPi)); }

}  // namespace detail

// |Tr(U_target^dagger U)| / 2 with U_target = exp(-i (phi + pi) sigma_z / 2).
inline double Fidelity(const Unitary2& u, double target_phi) {
  if (!(std::abs(u.norm2() - 1.0) <= kFidelityUnitarityTolerance)) {
    throw InvalidInputError("fidelity needs a unitary input");
  }
  return std::abs((detail::TargetPhase(target_phi) * u.u1).real());
}

inline double Fidelity(const Mat2& u, double target_phi) {
  // U^dagger U = I
  const Complex a = std::conj(u[0]) * u[0] + std::conj(u[2]) * u[2];
  const Complex b = std::conj(u[0]) * u[1] + std::conj(u[2]) * u[3];
  const Complex d = std::conj(u[1]) * u[1] + std::conj(u[3]) * u[3];
  if (!(std::abs(a - 1.0) <= kFidelityUnitarityTolerance && std::abs(b) <= kFidelityUnitarityTolerance &&
        std::abs(d - 1.0) <= kFidelityUnitarityTolerance)) {
    throw InvalidInputError("fidelity needs a unitary input");
  }
  const Complex e = detail::TargetPhase(target_phi);
  return 0.5 * std::abs(e * u[0] + std::conj(e) * u[3]);
}

// 1 - F evaluated as ((Im m)^2 + |u2|^2) / (1 + F), m = e^{i(phi+pi)/2} u1,
// which keeps full relative precision for tiny infidelities.
inline double Infidelity(const Unitary2& u, double target_phi) {
  const double f = Fidelity(u, target_phi);
  const Complex m = detail::TargetPhase(target_phi) * u.u1;
  const double num = m.imag() * m.imag() + std::norm(u.u2) + (1.0 - u.norm2());
  return std::max(0.0, num / (1.0 + f));
}

struct PerturbativeCoefficients {
  Complex g1;
  Complex g2;
  double theta = 0.0;  // integral of Omega
};

// g1(T), g2(T) from the coupled ODE theta' = Omega, g1' = e^{i theta},
// g2' = e^{i theta} conj(g1), integrated adaptively between breakpoints.
inline PerturbativeCoefficients PerturbativeCoeffs(const PulseWaveform& pulse) {
  namespace odeint = boost::numeric::odeint;
  using State = std::array<double, 5>;
  State x{};
  auto integrate = [&](const auto& omega, double t0, double t1) {
    auto rhs = [&](const State& s, State& dxdt, double t) {
      const double c = std::cos(s[0]), sn = std::sin(s[0]);
      dxdt[0] = omega(t);
      dxdt[1] = c;
      dxdt[2] = sn;
      // e^{i th} (g1r - i g1i)
      dxdt[3] = c * s[1] + sn * s[2];
      dxdt[4] = sn * s[1] - c * s[2];
    };
    try {
      odeint::integrate_adaptive(
          odeint::make_controlled(kIntegratorTolerance, kIntegratorTolerance, kMaxIntegratorStep,
                                  odeint::runge_kutta_fehlberg78<State>()),
          rhs, x, t0, t1, std::min(t1 - t0, kMaxIntegratorStep));
    } catch (const std::exception& e) {
      throw AccuracyError(std::string("g-coefficient quadrature failed: ") + e.what());
    }
  };
  if (pulse.is_piecewise()) {
    double t0 = 0.0;
    for (const Step& s : pulse.steps()) {
      integrate([w = s.amplitude](double) { return w; }, t0, t0 + s.duration);
      t0 += s.duration;
    }
  } else {
    const auto& smp = pulse.samples();
    for (std::size_t i = 1; i < smp.t.size(); ++i) {
      const double t0 = smp.t[i - 1], w0 = smp.omega[i - 1];
      const double slope = (smp.omega[i] - w0) / (smp.t[i] - t0);
      integrate([=](double t) { return w0 + slope * (t - t0); }, t0, smp.t[i]);
    }
  }
  for (double v : x) {
    if (!std::isfinite(v)) throw AccuracyError("g-coefficient quadrature produced non-finite values");
  }
  return {Complex(x[1], x[2]), Complex(x[3], x[4]), x[0]};
}

struct SimReport {
  Unitary2 final_unitary;
  double fidelity = 0.0;
  double infidelity = 0.0;
  Complex g1;
  Complex g2;
  double theta_total = 0.0;
};

inline SimReport Simulate(const PulseWaveform& pulse, double delta_beta, double target_phi) {
  SimReport r;
  r.final_unitary = Propagate(pulse, delta_beta);
  r.fidelity = Fidelity(r.final_unitary, target_phi);
  r.infidelity = Infidelity(r.final_unitary, target_phi);
  const auto g = PerturbativeCoeffs(pulse);
  r.g1 = g.g1;
  r.g2 = g.g2;
  r.theta_total = g.theta;
  return r;
}

struct SweepPoint {
  double delta_beta = 0.0;
  double infidelity = 0.0;

  friend bool operator==(const SweepPoint&, const SweepPoint&) = default;
};

struct SweepResult {
  std::vector<SweepPoint> points;  // ascending in delta_beta
  double fitted_exponent = std::numeric_limits<double>::quiet_NaN();
  std::pair<double, double> fit_window{0.0, 0.0};
};

// Least-squares slope of log(infidelity) against log(delta_beta) over the
// window; points at the numeric floor are skipped.
inline double FitExponent(std::span<const SweepPoint> points, std::pair<double, double> window) {
  std::vector<std::pair<double, double>> xy;
  bool any_in_window = false;
  for (const SweepPoint& p : points) {
    if (p.delta_beta < window.first * (1.0 - 1e-12) || p.delta_beta > window.second * (1.0 + 1e-12)) continue;
    any_in_window = true;
    if (p.infidelity >= kInfidelityFloor) xy.emplace_back(std::log(p.delta_beta), std::log(p.infidelity));
  }
  if (!any_in_window) throw InvalidInputError("fit window contains no sweep points");
  const double span = xy.empty() ? 0.0 : (xy.back().first - xy.front().first) / std::log(10.0);
  if (xy.size() < kMinSweepPoints || span < 1.0 - 1e-9) {
    throw NumericError("cannot fit an exponent: only " + std::to_string(xy.size()) +
                       " points above the 1e-14 infidelity floor in the window; try larger delta_beta");
  }
  double mx = 0.0, my = 0.0;
  for (const auto& [x, y] : xy) {
    mx += x;
    my += y;
  }
  mx /= static_cast<double>(xy.size());
  my /= static_cast<double>(xy.size());
  double sxy = 0.0, sxx = 0.0;
  for (const auto& [x, y] : xy) {
    sxy += (x - mx) * (y - my);
    sxx += (x - mx) * (x - mx);
  }
  return sxy / sxx;
}

inline SweepResult Sweep(const PulseWaveform& pulse, std::vector<double> noise_grid, double target_phi,
                         std::optional<std::pair<double, double>> window = std::nullopt) {
  if (noise_grid.size() < kMinSweepPoints) throw InvalidInputError("sweep needs at least 8 noise points");
  for (double d : noise_grid) {
    if (!(d > 0.0) || !std::isfinite(d)) throw InvalidInputError("sweep noise points must be positive");
  }
  std::sort(noise_grid.begin(), noise_grid.end());
  SweepResult out;
  for (double d : noise_grid) out.points.push_back({d, Infidelity(Propagate(pulse, d), target_phi)});
  out.fit_window = window.value_or(std::make_pair(noise_grid.front(), noise_grid.back()));
  out.fitted_exponent = FitExponent(out.points, out.fit_window);
  return out;
}

}  // namespace dcg

#endif  // DCG_QSIM_HPP_
