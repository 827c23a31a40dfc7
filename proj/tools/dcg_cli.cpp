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

// dcg: synthesize, smooth, verify, sweep and export noise-cancelling pulses.
//
// Exit status: 0 success / PASS, 1 verification FAIL or runtime failure,
// 2 usage error.

#include <cmath>
#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>

#include "dcg/dcg.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void PrintSegmentTable(const dcg::PulseWaveform& pulse) {
  std::printf("%-8s %-18s %-18s\n", "segment", "duration", "amplitude");
  int i = 0;
  for (const dcg::Step& s : pulse.steps()) {
    std::printf("%-8d %-18s %-18s\n", i++, dcg::Format10(s.duration).c_str(), dcg::Format10(s.amplitude).c_str());
  }
}

void MaybeWrite(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
  } else {
    dcg::WriteText(path, text);
  }
}

int Synthesize(const std::string& phi_text, int order, double omega_max, const std::string& out) {
  double phi = 0.0;
  try {
    phi = dcg::ParseAngle(phi_text);
  } catch (const dcg::InvalidInputError& e) {
    throw UsageError(e.what());
  }
  const dcg::SynthesisSpec spec{phi, order, omega_max};
  try {
    spec.Validate();
  } catch (const dcg::InvalidInputError& e) {
    throw UsageError(e.what());
  }
  const dcg::PulseWaveform pulse = dcg::OptimalPulse(spec);
  std::printf("phi = %s\n", dcg::Format10(phi).c_str());
  std::printf("order = %d\n", order);
  if (order == 2) std::printf("k = %s\n", dcg::Format10(dcg::SolveK(phi).k).c_str());
  std::printf("T_min = %s\n", dcg::Format10(dcg::TMin(spec)).c_str());
  std::printf("segments = %zu\n", pulse.steps().size());
  PrintSegmentTable(pulse);
  if (!out.empty()) dcg::WritePulseFile(out, dcg::MakePulseFile(spec, pulse));
  return kExitOk;
}

int Smooth(const std::string& in, const std::string& method_text, double slope, const std::string& out) {
  dcg::SmoothingMethod method;
  if (method_text == "cs") {
    method = dcg::SmoothingMethod::kCurveSmoothing;
  } else if (method_text == "ds") {
    method = dcg::SmoothingMethod::kDirectSmoothing;
  } else {
    throw UsageError("--method must be cs or ds");
  }
  const dcg::PulseFile src = dcg::ReadPulseFile(in);
  if (src.metadata.method != "square") {
    throw dcg::InvalidInputError("smooth needs a synthesized square pulse file, got method '" +
                                 src.metadata.method + "'");
  }
  const dcg::SmoothedPulseReport r = dcg::CalibrateToSlope(method, src.spec, slope);
  const auto g = dcg::PerturbativeCoeffs(r.pulse);

  const dcg::PulseMetadata meta = dcg::MetadataFromReport(r, slope);

  std::printf("method = %s\n", method_text.c_str());
  std::printf("sharpness = %s\n", dcg::Format10(r.sharpness).c_str());
  std::printf("max_slope = %s\n", dcg::Format10(r.max_slope).c_str());
  std::printf("total_time = %s\n", dcg::Format10(r.pulse.total_time()).c_str());
  std::printf("time_overhead = %s\n", dcg::Format10(r.time_overhead).c_str());
  std::printf("rotation_angle = %s\n", dcg::Format10(r.rotation_angle).c_str());
  std::printf("residual_area = %s\n", dcg::Format10(r.residual_area).c_str());
  std::printf("residual_closure = %s\n", dcg::Format10(r.residual_closure).c_str());
  std::printf("abs_g1 = %s\n", dcg::Format10(std::abs(g.g1)).c_str());
  std::printf("abs_g2 = %s\n", dcg::Format10(std::abs(g.g2)).c_str());
  for (const auto& w : r.warnings) std::printf("warning: %s\n", w.c_str());
  if (!out.empty()) dcg::WritePulseFile(out, dcg::MakePulseFile(src.spec, r.pulse, meta));
  return kExitOk;
}

int Verify(const std::string& in) {
  const dcg::PulseFile f = dcg::ReadPulseFile(in);
  const dcg::VerifyReport r = dcg::VerifyPulseFile(f);
  std::printf("method = %s\n", f.metadata.method.c_str());
  std::cout << dcg::FormatVerifyReport(r);
  return r.pass ? kExitOk : kExitFail;
}

int SweepCmd(const std::string& in, double lo, double hi, int points, const std::string& out) {
  if (points < static_cast<int>(dcg::kMinSweepPoints)) throw UsageError("--points must be >= 8");
  if (!(lo > 0.0 && hi > lo)) throw UsageError("need 0 < --dbeta-min < --dbeta-max");
  const dcg::PulseFile f = dcg::ReadPulseFile(in);
  const auto grid = dcg::Logspace(lo, hi, static_cast<std::size_t>(points));
  dcg::SweepResult r;
  std::vector<std::pair<std::string, std::string>> header = {
      {"pulse", in},
      {"method", f.metadata.method},
      {"phi", dcg::FormatExact(f.spec.phi)},
      {"order", std::to_string(f.spec.order)},
      {"omega_max", dcg::FormatExact(f.spec.omega_max)}};
  try {
    r = dcg::Sweep(f.pulse, grid, f.spec.phi);
    std::printf("fitted_exponent = %s\n", dcg::Format10(r.fitted_exponent).c_str());
  } catch (const dcg::NumericError& e) {
    // Keep the data, flag the floor-limited window.
    r.points.clear();
    for (double d : grid) r.points.push_back({d, dcg::Infidelity(dcg::Propagate(f.pulse, d), f.spec.phi)});
    r.fit_window = {lo, hi};
    std::printf("warning: %s\n", e.what());
    std::printf("suggested window: [%s, %s]\n", dcg::Format10(lo * 10.0).c_str(), dcg::Format10(hi * 10.0).c_str());
    std::printf("fitted_exponent = nan\n");
  }
  for (const auto& p : r.points) {
    std::printf("%s %s\n", dcg::Format10(p.delta_beta).c_str(), dcg::Format10(p.infidelity).c_str());
  }
  if (!out.empty()) dcg::WriteText(out, dcg::SweepCsv(r, header));
  return kExitOk;
}

int Export(const std::string& in, const std::string& format, const std::string& out) {
  if (format != "csv" && format != "json") throw UsageError("--format must be csv or json");
  const dcg::PulseFile f = dcg::ReadPulseFile(in);
  MaybeWrite(out, format == "csv" ? dcg::PulseCsv(f.pulse) : dcg::SerializePulseFile(f));
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Time-optimal noise-cancelling single-qubit pulses"};
  app.require_subcommand(1);

  std::string phi = "0", in, out, method, format = "json";
  int order = 1, points = 16;
  double omega_max = 1.0, slope = 0.0, dbeta_min = 1e-3, dbeta_max = 1e-2;

  auto* syn = app.add_subcommand("synthesize", "optimal composite square pulse");
  syn->add_option("--phi", phi, "cusp angle: radians or pi fraction, e.g. pi/3")->required();
  syn->add_option("--order", order, "cancellation order (1 or 2)")->check(CLI::IsMember({1, 2}));
  syn->add_option("--omega-max", omega_max, "amplitude bound")->check(CLI::PositiveNumber);
  syn->add_option("--out", out, "pulse file to write");

  auto* smo = app.add_subcommand("smooth", "smooth a square pulse under a slope budget");
  smo->add_option("input", in, "square pulse file")->required();
  smo->add_option("--method", method, "cs (curve smoothing) or ds (direct smoothing)")
      ->required()
      ->check(CLI::IsMember({"cs", "ds"}));
  smo->add_option("--slope", slope, "max |dOmega/dt| in units omega_max^2")->required()->check(CLI::PositiveNumber);
  smo->add_option("--out", out, "pulse file to write");

  auto* ver = app.add_subcommand("verify", "check a pulse file's constraints");
  ver->add_option("input", in, "pulse file")->required();

  auto* swp = app.add_subcommand("sweep", "infidelity versus noise strength");
  swp->add_option("input", in, "pulse file")->required();
  swp->add_option("--dbeta-min", dbeta_min, "smallest noise strength")->check(CLI::PositiveNumber);
  swp->add_option("--dbeta-max", dbeta_max, "largest noise strength")->check(CLI::PositiveNumber);
  swp->add_option("--points", points, "number of log-spaced points (>= 8)");
  swp->add_option("--out", out, "sweep CSV to write");

  auto* exp = app.add_subcommand("export", "write a pulse as CSV or canonical JSON");
  exp->add_option("input", in, "pulse file")->required();
  exp->add_option("--format", format, "csv or json");
  exp->add_option("--out", out, "output path ('-' or empty for stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (syn->parsed()) return Synthesize(phi, order, omega_max, out);
    if (smo->parsed()) return Smooth(in, method, slope, out);
    if (ver->parsed()) return Verify(in);
    if (swp->parsed()) return SweepCmd(in, dbeta_min, dbeta_max, points, out);
    if (exp->parsed()) return Export(in, format, out);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitFail;
  }
  return kExitUsage;
}
