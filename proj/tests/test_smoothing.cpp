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

#include <algorithm>
#include <cmath>
#include <vector>

#include <gtest/gtest.h>

#include "dcg/curve_ops.hpp"
#include "dcg/qsim.hpp"
#include "dcg/smoothing.hpp"
#include "dcg/synthesis.hpp"

namespace dcg {
namespace {

const SynthesisSpec kPiSecondOrder{0.0, 2, 1.0};

// Scale-free curvature overshoot of a logistic blend between curvatures -1 and
// +1: peak of s + 2 u s' + u^2 s''/2 in units of the jump.
double DerivedOvershootPeak() {
  double best = 0.0;
  for (double u : Linspace(0.0, 10.0, 200001)) {
    const double s = Logistic(u), ds = s * (1.0 - s), dds = ds * (1.0 - 2.0 * s);
    best = std::max(best, s + 2.0 * u * ds + 0.5 * u * u * dds);
  }
  return -1.0 + 2.0 * best;
}

TEST(BlendF, Definitions) {
  EXPECT_DOUBLE_EQ(BlendF(1, 3.0, 0.0), 0.0);
  EXPECT_DOUBLE_EQ(BlendF(3, 3.0, 0.0), 0.5);
  for (double x : Linspace(-4.0, 4.0, 33)) {
    EXPECT_NEAR(BlendF(1, 2.0, x) + BlendF(2, 2.0, x), 1.0, 1e-15);
    EXPECT_NEAR(BlendF(3, 2.0, x) + BlendF(4, 2.0, x), 1.0, 1e-15);
  }
  EXPECT_NEAR(BlendF(3, 10.0, 3.01), 1.0, 1e-12);
  EXPECT_NEAR(BlendF(4, 10.0, -3.01), 1.0, 1e-12);
  EXPECT_THROW(BlendF(5, 1.0, 0.0), InvalidInputError);
  EXPECT_THROW(BlendF(1, 0.0, 0.0), InvalidInputError);
}

TEST(SmoothingParams, Validation) {
  SmoothingParams p;
  p.grid_points = 100;
  EXPECT_THROW(p.Validate(), InvalidInputError);
  p = SmoothingParams::WithQ(-1.0);
  EXPECT_THROW(p.Validate(), InvalidInputError);
  p = SmoothingParams::WithQ(8.0);
  EXPECT_DOUBLE_EQ(p.p, 2.0);
  EXPECT_NO_THROW(p.Validate());
}

TEST(SmoothCurve, ConvergesToPiecewiseCurve) {
  const PiecewiseCurve base = SecondOrderCurve(kPiSecondOrder);
  const SampledCurve s = SmoothCurve(base, SmoothingParams::WithQ(500.0, 8192));
  double worst = 0.0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    worst = std::max(worst, Distance({s.x()[i], s.y()[i]}, base.PointAt(s.lambda()[i])));
  }
  EXPECT_LT(worst, 1e-3);
  EXPECT_LT(ClosureDefect(s), 1e-12);
}

TEST(SmoothCurve, SecondDerivativesContinuous) {
  const PiecewiseCurve base = SecondOrderCurve(kPiSecondOrder);
  const SampledCurve s = SmoothCurve(base, SmoothingParams::DefaultFor(base));
  const auto& d = s.derivatives();
  const auto fd_xx = FiniteDifference(s.lambda(), d.dx, 1);
  const auto fd_yy = FiniteDifference(s.lambda(), d.dy, 1);
  double scale = 0.0, worst = 0.0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    scale = std::max({scale, std::abs(d.ddx[i]), std::abs(d.ddy[i])});
    worst = std::max({worst, std::abs(fd_xx[i] - d.ddx[i]), std::abs(fd_yy[i] - d.ddy[i])});
  }
  EXPECT_LT(worst / scale, 1e-3);
  EXPECT_LT(s.DerivativeMismatch(), kTolDeriv);
}

TEST(SmoothCurve, PulseStartsAndEndsAtZero) {
  for (const SynthesisSpec& spec : {kPiSecondOrder, SynthesisSpec{kPi / 3.0, 1, 1.0}}) {
    const PiecewiseCurve base = OptimalCurve(spec);
    const PulseWaveform p = ExtractSmoothedPulse(SmoothCurve(base, SmoothingParams::DefaultFor(base)));
    EXPECT_NEAR(p.samples().omega.front(), 0.0, 1e-6);
    EXPECT_NEAR(p.samples().omega.back(), 0.0, 1e-6);
  }
}

TEST(SmoothCurve, ResidualsShrinkWithQ) {
  const PiecewiseCurve base = SecondOrderCurve(kPiSecondOrder);
  std::vector<double> closure, area, overhead;
  for (double q : {25.0, 50.0, 100.0, 200.0, 400.0, 800.0}) {
    const SampledCurve s = SmoothCurve(base, SmoothingParams::WithQ(q));
    const PulseWaveform raw = ExtractSmoothedPulse(s);
    const SmoothedPulseReport r =
        MakeReport(SmoothingMethod::kCurveSmoothing, RescalePulse(raw, kPi, 1.0), kPiSecondOrder, q);
    closure.push_back(r.residual_closure);
    area.push_back(std::abs(r.residual_area));
    overhead.push_back(r.time_overhead);
  }
  int closure_violations = 0, area_violations = 0;
  for (std::size_t i = 1; i < closure.size(); ++i) {
    closure_violations += closure[i] > closure[i - 1];
    area_violations += area[i] > area[i - 1];
  }
  EXPECT_LE(closure_violations, 1);
  EXPECT_LE(area_violations, 1);
  EXPECT_LT(area.back(), 1e-4 * area.front());
  // The overhead settles at the blend overshoot rather than at 1.
  EXPECT_NEAR(overhead.back(), DerivedOvershootPeak(), 0.01);
}

TEST(ExtractSmoothedPulse, CircleIsConstant) {
  const SampledCurve c = CurveFromPulse(PulseWaveform::Square({{kTwoPi, 1.0}}));
  const PulseWaveform p = ExtractSmoothedPulse(c);
  for (double w : p.samples().omega) EXPECT_NEAR(w, 1.0, 1e-9);
  EXPECT_NEAR(p.total_time(), kTwoPi, 1e-9);
}

TEST(ExtractSmoothedPulse, TimeIsArcLength) {
  const PiecewiseCurve base = SecondOrderCurve(kPiSecondOrder);
  const SampledCurve s = SmoothCurve(base, SmoothingParams::DefaultFor(base));
  EXPECT_NEAR(ExtractSmoothedPulse(s).total_time(), ArcLength(s), 1e-8);
}

TEST(ExtractSmoothedPulse, OvershootMatchesDerivedConstant) {
  // The spec's "within 20% of 1" cannot hold for any Q: the blend adds a
  // fixed relative overshoot at every junction.
  const PiecewiseCurve base = SecondOrderCurve(kPiSecondOrder);
  const double expected = DerivedOvershootPeak();
  EXPECT_NEAR(expected, 1.32, 0.01);
  for (double q : {200.0, 1000.0}) {
    const PulseWaveform p = ExtractSmoothedPulse(SmoothCurve(base, SmoothingParams::WithQ(q)));
    EXPECT_NEAR(p.max_amplitude(), expected, 2e-3) << q;
  }
}

TEST(ExtractSmoothedPulse, VanishingSpeedIsAnError) {
  const auto lam = Linspace(0.0, 1.0, 64);
  const std::vector<double> zeros(lam.size(), 0.0);
  EXPECT_THROW(ExtractSmoothedPulse(SampledCurve(lam, zeros, zeros)), NumericError);
}

TEST(RescalePulse, UnchangedWhenTargetsMet) {
  const PulseWaveform p = FirstOrderPulse({kPi / 3.0, 1, 1.0});
  EXPECT_EQ(RescalePulse(p, kPi / 3.0 + kPi, 1.0), p);
}

TEST(RescalePulse, HalvedAmplitudeDoublesDuration) {
  const auto t = Linspace(0.0, 4.0, 401);
  std::vector<double> w;
  for (double ti : t) w.push_back(0.5 * std::sin(kPi * ti / 4.0));
  const PulseWaveform half = PulseWaveform::FromSamples(t, w);
  const PulseWaveform r = RescaleAmplitude(half, 1.0);
  EXPECT_NEAR(r.total_time(), 2.0, 1e-12);
  EXPECT_NEAR(r.max_amplitude(), 1.0, 1e-12);
  // T * Omega(t / T) is unchanged.
  for (std::size_t i = 0; i < t.size(); ++i) {
    EXPECT_NEAR(r.samples().omega[i] * r.total_time(), w[i] * half.total_time(), 1e-12);
    EXPECT_NEAR(r.samples().t[i] / r.total_time(), t[i] / half.total_time(), 1e-12);
  }
}

TEST(RescalePulse, RestoresAngleOfSmoothedPulse) {
  const PiecewiseCurve base = SecondOrderCurve(kPiSecondOrder);
  const PulseWaveform raw = ExtractSmoothedPulse(SmoothCurve(base, SmoothingParams::WithQ(60.0)));
  const PulseWaveform r = RescalePulse(raw, kPi, 1.0);
  EXPECT_NEAR(WrapAngle(r.rotation_angle() - kPi), 0.0, 1e-9);
  EXPECT_NEAR(r.max_amplitude(), 1.0, 1e-12);
  const double T = r.total_time(), T0 = raw.total_time();
  const double c = r.samples().omega[100] / raw.samples().omega[100];
  for (std::size_t i = 0; i < raw.samples().t.size(); i += 97) {
    EXPECT_NEAR(r.samples().t[i] / T, raw.samples().t[i] / T0, 1e-12);
    EXPECT_NEAR(r.samples().omega[i], c * raw.samples().omega[i], 1e-12);
  }
}

TEST(RescalePulse, ZeroRotationCannotBeRescaled) {
  const PulseWaveform p = PulseWaveform::Square({{1.0, 1.0}, {1.0, -1.0}});
  EXPECT_THROW(RescalePulse(p, kPi, 1.0), PreconditionError);
}

TEST(DirectSmooth, SharpLimitRecoversSquare) {
  const PulseWaveform square = SecondOrderPulse(kPiSecondOrder);
  const PulseWaveform ds = DirectSmooth(square, 1e5).value;
  const auto jumps = square.breakpoints();
  for (double t : Linspace(0.0, square.total_time(), 2001)) {
    bool near_jump = false;
    for (double j : jumps) near_jump = near_jump || std::abs(t - j) < 1e-3;
    if (!near_jump) {
      EXPECT_NEAR(ds(t), square(t), 1e-9) << t;
    }
  }
}

TEST(DirectSmooth, AngleDeficitGrowsAsRateDrops) {
  const PulseWaveform square = SecondOrderPulse(kPiSecondOrder);
  double prev = 0.0;
  for (double rate : {2000.0, 600.0, 100.0, 20.0}) {
    const double deficit = std::abs(DirectSmooth(square, rate).value.rotation_angle() - square.rotation_angle());
    EXPECT_GT(deficit, prev);
    // Half ramps at both ends each lose ln(2) / (2 rate).
    EXPECT_NEAR(deficit, std::log(2.0) / rate, 0.05 * std::log(2.0) / rate);
    prev = deficit;
  }
}

TEST(DirectSmooth, OverlapWarningAndInputChecks) {
  const PulseWaveform square = SecondOrderPulse(kPiSecondOrder);
  EXPECT_TRUE(DirectSmooth(square, 600.0).warnings.empty());
  EXPECT_FALSE(DirectSmooth(square, 2.0).warnings.empty());
  EXPECT_THROW(DirectSmooth(square, 0.0), InvalidInputError);
  const PulseWaveform sampled = DirectSmooth(square, 600.0).value;
  EXPECT_THROW(DirectSmooth(sampled, 600.0), InvalidInputError);
}

TEST(MaxSlope, RampTanhAndSquare) {
  const PulseWaveform ramp = PulseWaveform::FromSamples(Linspace(0.0, 0.25, 101), Linspace(0.0, 1.0, 101));
  EXPECT_NEAR(MaxSlope(ramp), 4.0, 1e-9);
  const double rate = 300.0;
  const auto t = Linspace(0.0, 1.0, 20001);
  std::vector<double> w;
  for (double ti : t) w.push_back(std::tanh(rate * (ti - 0.5)));
  EXPECT_NEAR(MaxSlope(PulseWaveform::FromSamples(t, w)) / rate, 1.0, 0.02);
  EXPECT_TRUE(std::isinf(MaxSlope(SecondOrderPulse(kPiSecondOrder))));
}

TEST(CalibrateToSlope, HitsBudgetForBothMethods) {
  for (double budget : {450.0, 600.0}) {
    for (SmoothingMethod m : {SmoothingMethod::kCurveSmoothing, SmoothingMethod::kDirectSmoothing}) {
      const SmoothedPulseReport r = CalibrateToSlope(m, kPiSecondOrder, budget);
      EXPECT_NEAR(r.max_slope / budget, 1.0, kSlopeTolerance) << MethodName(m);
      EXPECT_NEAR(r.max_slope, MaxSlope(r.pulse), 1e-9);
      EXPECT_LE(r.pulse.max_amplitude(), 1.0 + 1e-12);
    }
  }
}

TEST(CalibrateToSlope, CurveSmoothingReport) {
  const SmoothedPulseReport cs = CalibrateToSlope(SmoothingMethod::kCurveSmoothing, kPiSecondOrder, 600.0);
  EXPECT_LT(std::abs(cs.residual_area), 1e-4);
  EXPECT_NEAR(WrapAngle(cs.rotation_angle - kPi), 0.0, 1e-9);
  EXPECT_NEAR(cs.time_overhead, DerivedOvershootPeak(), 0.01);
  const auto g = PerturbativeCoeffs(cs.pulse);
  EXPECT_NEAR(std::abs(g.g1), cs.residual_closure, 1e-9);
  EXPECT_NEAR(std::abs(g.g2), 2.0 * std::abs(cs.residual_area), 1e-8);
}

TEST(CalibrateToSlope, SharpBudget) {
  const SmoothedPulseReport ds = CalibrateToSlope(SmoothingMethod::kDirectSmoothing, kPiSecondOrder, 1e5);
  EXPECT_LT(ds.time_overhead, 1.01);
  const SmoothedPulseReport cs = CalibrateToSlope(SmoothingMethod::kCurveSmoothing, kPiSecondOrder, 1e5);
  EXPECT_NEAR(cs.time_overhead, DerivedOvershootPeak(), 0.01);
  EXPECT_LT(std::abs(cs.residual_area), 1e-7);
}

TEST(CalibrateToSlope, ScalesWithOmegaMax) {
  const SynthesisSpec spec{0.0, 2, 2.0};
  const SmoothedPulseReport r = CalibrateToSlope(SmoothingMethod::kCurveSmoothing, spec, 500.0);
  EXPECT_NEAR(r.max_slope / (500.0 * 4.0), 1.0, kSlopeTolerance);
  EXPECT_NEAR(r.pulse.max_amplitude(), 2.0, 1e-12);
}

TEST(CalibrateToSlope, UnreachableBudget) {
  EXPECT_THROW(CalibrateToSlope(SmoothingMethod::kDirectSmoothing, kPiSecondOrder, 1e12), CalibrationError);
  EXPECT_THROW(CalibrateToSlope(SmoothingMethod::kDirectSmoothing, kPiSecondOrder, -1.0), InvalidInputError);
}

}  // namespace
}  // namespace dcg
