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

#include <cmath>
#include <complex>
#include <vector>

#include <gtest/gtest.h>

#include "dcg/curve_ops.hpp"
#include "dcg/qsim.hpp"
#include "dcg/synthesis.hpp"

namespace dcg {
namespace {

using namespace std::complex_literals;

PulseWaveform GenericSampled() {
  const auto t = Linspace(0.0, 5.0, 2001);
  std::vector<double> w;
  for (double ti : t) w.push_back(0.8 * std::sin(1.3 * ti) + 0.3 * std::cos(0.4 * ti));
  return PulseWaveform::FromSamples(t, w);
}

TEST(Propagate, PureNoiseIsXRotation) {
  const double b = 0.37, T = 2.5;
  const Unitary2 u = Propagate(PulseWaveform::Square({{T, 0.0}}), b);
  EXPECT_NEAR(std::abs(u.u1 - std::cos(b * T)), 0.0, 1e-14);
  EXPECT_NEAR(std::abs(u.u2 + 1i * std::sin(b * T)), 0.0, 1e-14);
}

TEST(Propagate, NoiselessIsZRotation) {
  const Unitary2 u = Propagate(PulseWaveform::Square({{1.2, 1.0}}), 0.0);
  EXPECT_NEAR(std::abs(u.u1 - std::polar(1.0, -0.6)), 0.0, 1e-14);
  EXPECT_NEAR(std::abs(u.u2), 0.0, 1e-15);
}

TEST(Propagate, ComposeOrder) {
  const Unitary2 a = SegmentPropagator(1.0, 0.3, 0.7), b = SegmentPropagator(-1.0, 0.3, 1.1);
  const Mat2 ab = a.matrix(), bb = b.matrix();
  // later * earlier as plain matrices
  const Mat2 expect{bb[0] * ab[0] + bb[1] * ab[2], bb[0] * ab[1] + bb[1] * ab[3], bb[2] * ab[0] + bb[3] * ab[2],
                    bb[2] * ab[1] + bb[3] * ab[3]};
  const Mat2 got = Compose(b, a).matrix();
  for (int i = 0; i < 4; ++i) EXPECT_NEAR(std::abs(got[i] - expect[i]), 0.0, 1e-15);
}

TEST(Propagate, ExactMatchesAdaptive) {
  const PulseWaveform p = SecondOrderPulse({kPi / 2.0, 2, 1.0});
  const auto bps = p.breakpoints();
  for (double db : {0.0, 1e-3, 0.1}) {
    const Unitary2 exact = Propagate(p, db);
    const Unitary2 adaptive = PropagateAdaptive([&](double t) { return p(t); }, bps, db);
    EXPECT_LT(OperatorDistance(exact, adaptive), 1e-10) << db;
  }
}

TEST(Propagate, Unitarity) {
  for (double db : {0.0, 0.01, 0.5}) {
    EXPECT_NEAR(Propagate(GenericSampled(), db).norm2(), 1.0, 1e-10);
    EXPECT_NEAR(Propagate(OptimalPulse({1.0, 2, 1.0}), db).norm2(), 1.0, 1e-12);
  }
}

TEST(Fidelity, SynthesizedPulsesAreExactAtZeroNoise) {
  for (int order : {1, 2}) {
    for (double phi : {0.0, kPi / 3.0, kPi / 2.0, 2.0, kPi}) {
      const SynthesisSpec spec{phi, order, 1.0};
      const Unitary2 u = Propagate(OptimalPulse(spec), 0.0);
      EXPECT_NEAR(Fidelity(u, phi), 1.0, 1e-12) << order << " " << phi;
      EXPECT_LT(Infidelity(u, phi), 1e-13);
    }
  }
}

TEST(Fidelity, TrivialCases) {
  EXPECT_NEAR(Fidelity(Unitary2{1.0, 0.0}, kPi), 1.0, 1e-15);
  EXPECT_NEAR(Fidelity(Unitary2{1.0, 0.0}, 0.0), 0.0, 1e-15);
  EXPECT_NEAR(Fidelity(Unitary2{0.0, 1.0}, 0.0), 0.0, 1e-15);
  const Mat2 id{1.0, 0.0, 0.0, 1.0};
  EXPECT_NEAR(Fidelity(id, kPi), 1.0, 1e-15);
  EXPECT_THROW(Fidelity(Unitary2{1.1, 0.0}, 0.0), InvalidInputError);
  const Mat2 bad{1.0, 0.5, 0.0, 1.0};
  EXPECT_THROW(Fidelity(bad, 0.0), InvalidInputError);
}

TEST(Fidelity, InfidelityAvoidsCancellation) {
  const double e = 1e-9;
  const Unitary2 u{std::polar(1.0, -kPi / 2.0) * std::cos(e), std::complex<double>(std::sin(e), 0.0)};
  EXPECT_NEAR(Infidelity(u, 0.0) / (0.5 * e * e), 1.0, 1e-6);
}

TEST(PerturbativeCoeffs, CircleHasNoFirstOrderError) {
  const auto g = PerturbativeCoeffs(PulseWaveform::Square({{kTwoPi, 1.0}}));
  EXPECT_LT(std::abs(g.g1), 1e-12);
  EXPECT_NEAR(std::abs(g.g2 - 2i * kPi), 0.0, 1e-10);
  EXPECT_NEAR(g.theta, kTwoPi, 1e-12);
}

TEST(PerturbativeCoeffs, SecondCoefficientIsTwiceArea) {
  std::vector<SynthesisSpec> specs{{0.0, 1, 1.0}, {kPi / 3.0, 1, 1.0}, {kPi, 1, 1.0}, {0.0, 2, 1.0},
                                   {kPi / 2.0, 2, 1.0}};
  for (const SynthesisSpec& s : specs) {
    const PiecewiseCurve c = OptimalCurve(s);
    const PulseWaveform p = PulseFromCurve(c).value;
    const auto g = PerturbativeCoeffs(p);
    EXPECT_LT(std::abs(g.g1), 1e-9);
    if (s.order == 1) {
      EXPECT_NEAR(std::abs(g.g2 - 2i * SignedArea(c)), 0.0, 1e-9) << s.phi;
      EXPECT_GT(std::abs(g.g2), 0.1);
    } else {
      EXPECT_LT(std::abs(g.g2), 1e-8) << s.phi;
    }
  }
}

TEST(PerturbativeCoeffs, MatchesPropagatorExpansion) {
  // u2 = -i e^{i theta / 2} conj(g1) db + O(db^2), u1 = e^{-i theta / 2} (1 - g2 db^2) + O(db^3)
  const PulseWaveform p = GenericSampled();
  const auto g = PerturbativeCoeffs(p);
  const double db = 1e-5;
  const Unitary2 u = Propagate(p, db);
  const Complex pred_u2 = -1i * std::polar(1.0, 0.5 * g.theta) * std::conj(g.g1) * db;
  EXPECT_LT(std::abs(u.u2 - pred_u2), 1e-3 * std::abs(pred_u2));
  const Unitary2 u0 = Propagate(p, 0.0);
  const Complex pred_du1 = -std::polar(1.0, -0.5 * g.theta) * g.g2 * db * db;
  EXPECT_LT(std::abs((u.u1 - u0.u1) - pred_du1), 1e-2 * std::abs(pred_du1));
}

TEST(Infidelity, EvenInNoise) {
  const PulseWaveform p = FirstOrderPulse({kPi / 3.0, 1, 1.0});
  for (double db : {1e-3, 0.05}) {
    const double a = Infidelity(Propagate(p, db), kPi / 3.0), b = Infidelity(Propagate(p, -db), kPi / 3.0);
    EXPECT_NEAR(a, b, 1e-12 * std::max(1.0, a) + 1e-16);
  }
}

TEST(Sweep, ExponentsFollowOrder) {
  const auto grid = Logspace(1e-3, 1e-2, 16);
  const double e0 = Sweep(PulseWaveform::Square({{kPi, 1.0}}), grid, 0.0).fitted_exponent;
  const double e1 = Sweep(FirstOrderPulse({0.0, 1, 1.0}), grid, 0.0).fitted_exponent;
  const double e2 = Sweep(SecondOrderPulse({0.0, 2, 1.0}), Logspace(std::pow(10.0, -2.5), std::pow(10.0, -1.5), 16), 0.0).fitted_exponent;
  EXPECT_NEAR(e0, 2.0, 0.1);
  EXPECT_NEAR(e1, 4.0, 0.1);
  EXPECT_NEAR(e2, 6.0, 0.15);
  EXPECT_LT(e0, e1);
  EXPECT_LT(e1, e2);
}

TEST(Sweep, SortsAndChecksGrid) {
  std::vector<double> grid = Logspace(1e-3, 1e-1, 10);
  std::reverse(grid.begin(), grid.end());
  const SweepResult r = Sweep(FirstOrderPulse({0.0, 1, 1.0}), grid, 0.0);
  for (std::size_t i = 1; i < r.points.size(); ++i) EXPECT_LT(r.points[i - 1].delta_beta, r.points[i].delta_beta);
  EXPECT_THROW(Sweep(FirstOrderPulse({0.0, 1, 1.0}), Logspace(1e-3, 1e-1, 5), 0.0), InvalidInputError);
  EXPECT_THROW(Sweep(FirstOrderPulse({0.0, 1, 1.0}), Linspace(0.0, 1.0, 10), 0.0), InvalidInputError);
}

TEST(Sweep, FloorMakesFitImpossible) {
  // Second order at tiny noise sits below the numeric floor.
  EXPECT_THROW(Sweep(SecondOrderPulse({0.0, 2, 1.0}), Logspace(1e-6, 1e-4, 12), 0.0), NumericError);
  std::vector<SweepPoint> pts;
  for (double d : Logspace(1e-3, 3.16e-3, 12)) pts.push_back({d, d * d});
  EXPECT_THROW(FitExponent(pts, {1e-3, 10.0 * 1e-3}), NumericError);
  EXPECT_THROW(FitExponent(pts, {1.0, 2.0}), InvalidInputError);
}

}  // namespace
}  // namespace dcg
