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

#ifndef DCG_VERIFY_HPP_
#define DCG_VERIFY_HPP_

// Constraint checks behind `dcg verify`. Which checks are binding depends on
// the pulse's method: square pulses must cancel their design order exactly,
// smoothed pulses report residual errors informationally.

#include <cmath>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "dcg/curve_ops.hpp"
#include "dcg/io.hpp"
#include "dcg/qsim.hpp"
#include "dcg/smoothing.hpp"

namespace dcg {

inline constexpr double kVerifyCancellationTolerance = 1e-8;
inline constexpr double kVerifyAngleTolerance = 1e-8;
inline constexpr double kVerifyInfidelityTolerance = 1e-9;

struct Check {
  std::string name;
  double value = 0.0;
  std::optional<double> limit;  // binding upper bound; none = informational
  bool pass = true;
};

struct VerifyReport {
  std::vector<Check> checks;
  bool pass = true;
};

inline VerifyReport VerifyPulseFile(const PulseFile& f) {
  const std::string& method = f.metadata.method;
  if (method != "square" && method != "cs" && method != "ds") {
    throw InvalidInputError("unknown pulse method '" + method + "'");
  }
  const bool square = method == "square";
  const bool ds = method == "ds";
  VerifyReport r;
  auto add = [&r](std::string name, double value, bool binding, double limit) {
    Check c{std::move(name), value, std::nullopt, true};
    if (binding) {
      c.limit = limit;
      c.pass = std::isfinite(value) && value <= limit;
      r.pass = r.pass && c.pass;
    }
    r.checks.push_back(std::move(c));
  };

  const PulseWaveform& pulse = f.pulse;
  const SampledCurve curve = CurveFromPulse(pulse);
  const auto g = PerturbativeCoeffs(pulse);
  add("closure_defect", ClosureDefect(curve), square, kTolClose);
  add("signed_area", SignedArea(curve, std::numeric_limits<double>::infinity()), false, 0.0);
  add("abs_g1", std::abs(g.g1), square, kVerifyCancellationTolerance);
  add("abs_g2", std::abs(g.g2), square && f.spec.order >= 2, kVerifyCancellationTolerance);
  add("rotation_angle", pulse.rotation_angle(), false, 0.0);
  add("rotation_angle_error", std::abs(WrapAngle(pulse.rotation_angle() - f.spec.target_rotation())), !ds,
      kVerifyAngleTolerance);
  add("max_amplitude", pulse.max_amplitude(), true, f.spec.omega_max * (1.0 + 1e-9));
  const double slope = MaxSlope(pulse);
  add("max_slope", slope, false, 0.0);
  if (f.metadata.slope_budget) {
    const double budget = *f.metadata.slope_budget * f.spec.omega_max * f.spec.omega_max;
    add("slope_budget_error", std::abs(slope / budget - 1.0), true, kSlopeTolerance);
  }
  add("infidelity_at_zero_noise", Infidelity(Propagate(pulse, 0.0), f.spec.phi), !ds, kVerifyInfidelityTolerance);
  return r;
}

inline std::string FormatVerifyReport(const VerifyReport& r) {
  std::string out;
  for (const Check& c : r.checks) {
    out += c.name + " = " + Format10(c.value);
    if (c.limit) {
      out += "  (limit " + Format10(*c.limit) + ") " + (c.pass ? "PASS" : "FAIL");
    } else {
      out += "  (info)";
    }
    out += "\n";
  }
  out += std::string("RESULT: ") + (r.pass ? "PASS" : "FAIL") + "\n";
  return out;
}

}  // namespace dcg

#endif  // DCG_VERIFY_HPP_
