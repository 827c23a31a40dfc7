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

#ifndef DCG_IO_HPP_
#define DCG_IO_HPP_

// Pulse files (JSON), sweep files (CSV with '#' header lines), CSV export and
// angle parsing for the command-line front end.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <optional>
#include <regex>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "dcg/error.hpp"
#include "dcg/numerics.hpp"
#include "dcg/pulse.hpp"
#include "dcg/qsim.hpp"
#include "dcg/smoothing.hpp"
#include "dcg/synthesis.hpp"

namespace dcg {

inline constexpr int kPulseFileSchemaVersion = 1;
inline constexpr std::size_t kMinExportRows = 1024;

struct PulseMetadata {
  std::string method = "square";  // square | cs | ds
  std::optional<double> p, q, rate, slope_budget;
  std::optional<double> max_slope, residual_area, residual_closure, time_overhead;
  double total_time = 0.0;
  double rotation_angle = 0.0;
  std::vector<std::string> warnings;

  friend bool operator==(const PulseMetadata&, const PulseMetadata&) = default;
};

struct PulseFile {
  int schema_version = kPulseFileSchemaVersion;
  SynthesisSpec spec;
  PulseWaveform pulse;
  PulseMetadata metadata;

  friend bool operator==(const PulseFile&, const PulseFile&) = default;
};

inline PulseFile MakePulseFile(const SynthesisSpec& spec, PulseWaveform pulse, PulseMetadata meta = {}) {
  meta.total_time = pulse.total_time();
  meta.rotation_angle = pulse.rotation_angle();
  return {kPulseFileSchemaVersion, spec, std::move(pulse), std::move(meta)};
}

inline PulseMetadata MetadataFromReport(const SmoothedPulseReport& r, double slope_budget) {
  PulseMetadata meta;
  meta.method = MethodName(r.method);
  if (r.method == SmoothingMethod::kCurveSmoothing) {
    meta.q = r.sharpness;
    meta.p = 0.25 * r.sharpness;
  } else {
    meta.rate = r.sharpness;
  }
  meta.slope_budget = slope_budget;
  meta.max_slope = r.max_slope;
  meta.residual_area = r.residual_area;
  meta.residual_closure = r.residual_closure;
  meta.time_overhead = r.time_overhead;
  meta.warnings = r.warnings;
  return meta;
}

namespace detail {

using nlohmann::json;

inline void PutOptional(json& j, const char* key, const std::optional<double>& v) {
  if (v) j[key] = *v;
}

inline std::optional<double> GetOptional(const json& j, const char* key) {
  if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
  return j.at(key).get<double>();
}

}  // namespace detail

inline nlohmann::json ToJson(const PulseFile& f) {
  using nlohmann::json;
  json j;
  j["schema_version"] = f.schema_version;
  j["spec"] = {{"phi", f.spec.phi}, {"order", f.spec.order}, {"omega_max", f.spec.omega_max}};
  if (f.pulse.is_piecewise()) {
    j["form"] = "piecewise";
    json segs = json::array();
    for (const Step& s : f.pulse.steps()) segs.push_back({{"duration", s.duration}, {"amplitude", s.amplitude}});
    j["segments"] = std::move(segs);
  } else {
    j["form"] = "sampled";
    j["t"] = f.pulse.samples().t;
    j["omega"] = f.pulse.samples().omega;
  }
  json m;
  m["method"] = f.metadata.method;
  detail::PutOptional(m, "p", f.metadata.p);
  detail::PutOptional(m, "q", f.metadata.q);
  detail::PutOptional(m, "rate", f.metadata.rate);
  detail::PutOptional(m, "slope_budget", f.metadata.slope_budget);
  detail::PutOptional(m, "max_slope", f.metadata.max_slope);
  detail::PutOptional(m, "residual_area", f.metadata.residual_area);
  detail::PutOptional(m, "residual_closure", f.metadata.residual_closure);
  detail::PutOptional(m, "time_overhead", f.metadata.time_overhead);
  m["total_time"] = f.metadata.total_time;
  m["rotation_angle"] = f.metadata.rotation_angle;
  m["warnings"] = f.metadata.warnings;
  j["metadata"] = std::move(m);
  return j;
}

inline PulseFile PulseFileFromJson(const nlohmann::json& j) {
  try {
    PulseFile f;
    f.schema_version = j.at("schema_version").get<int>();
    if (f.schema_version != kPulseFileSchemaVersion) {
      throw InvalidInputError("unsupported pulse file schema_version " + std::to_string(f.schema_version));
    }
    const auto& s = j.at("spec");
    f.spec = {s.at("phi").get<double>(), s.at("order").get<int>(), s.at("omega_max").get<double>()};
    f.spec.Validate();
    const std::string form = j.at("form").get<std::string>();
    if (form == "piecewise") {
      std::vector<Step> steps;
      for (const auto& seg : j.at("segments")) {
        steps.push_back({seg.at("duration").get<double>(), seg.at("amplitude").get<double>()});
      }
      f.pulse = PulseWaveform::Square(std::move(steps));
    } else if (form == "sampled") {
      f.pulse = PulseWaveform::FromSamples(j.at("t").get<std::vector<double>>(),
                                           j.at("omega").get<std::vector<double>>());
    } else {
      throw InvalidInputError("unknown pulse form '" + form + "'");
    }
    const auto& m = j.at("metadata");
    f.metadata.method = m.at("method").get<std::string>();
    f.metadata.p = detail::GetOptional(m, "p");
    f.metadata.q = detail::GetOptional(m, "q");
    f.metadata.rate = detail::GetOptional(m, "rate");
    f.metadata.slope_budget = detail::GetOptional(m, "slope_budget");
    f.metadata.max_slope = detail::GetOptional(m, "max_slope");
    f.metadata.residual_area = detail::GetOptional(m, "residual_area");
    f.metadata.residual_closure = detail::GetOptional(m, "residual_closure");
    f.metadata.time_overhead = detail::GetOptional(m, "time_overhead");
    f.metadata.total_time = m.at("total_time").get<double>();
    f.metadata.rotation_angle = m.at("rotation_angle").get<double>();
    if (m.contains("warnings")) f.metadata.warnings = m.at("warnings").get<std::vector<std::string>>();
    return f;
  } catch (const nlohmann::json::exception& e) {
    throw InvalidInputError(std::string("malformed pulse file: ") + e.what());
  }
}

inline std::string ReadText(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidInputError("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline void WriteText(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw InvalidInputError("cannot write '" + path + "'");
  out << text;
  if (!out) throw InvalidInputError("write to '" + path + "' failed");
}

inline std::string SerializePulseFile(const PulseFile& f) { return ToJson(f).dump(2) + "\n"; }

inline PulseFile ParsePulseFile(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw InvalidInputError(std::string("pulse file is not valid JSON: ") + e.what());
  }
  return PulseFileFromJson(j);
}

inline void WritePulseFile(const std::string& path, const PulseFile& f) { WriteText(path, SerializePulseFile(f)); }
inline PulseFile ReadPulseFile(const std::string& path) { return ParsePulseFile(ReadText(path)); }

// %.17g keeps doubles exact in text files; %.10g is the display precision.
inline std::string FormatExact(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

inline std::string Format10(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

// Rows t,omega; square pulses are sampled uniformly on >= 1024 points.
inline std::string PulseCsv(const PulseWaveform& pulse) {
  std::vector<double> t, w;
  if (pulse.is_sampled()) {
    t = pulse.samples().t;
    w = pulse.samples().omega;
  } else {
    t = Linspace(0.0, pulse.total_time(), std::max(kMinExportRows, 8 * pulse.steps().size()));
    for (double ti : t) w.push_back(pulse(ti));
  }
  std::string out = "t,omega\n";
  for (std::size_t i = 0; i < t.size(); ++i) out += FormatExact(t[i]) + "," + FormatExact(w[i]) + "\n";
  return out;
}

// Header lines are written as "# key: value" before the column names.
inline std::string SweepCsv(const SweepResult& r, const std::vector<std::pair<std::string, std::string>>& header) {
  std::string out;
  for (const auto& [k, v] : header) out += "# " + k + ": " + v + "\n";
  out += "# fitted_exponent: " + FormatExact(r.fitted_exponent) + "\n";
  out += "# fit_window: " + FormatExact(r.fit_window.first) + "," + FormatExact(r.fit_window.second) + "\n";
  out += "delta_beta,infidelity\n";
  for (const SweepPoint& p : r.points) out += FormatExact(p.delta_beta) + "," + FormatExact(p.infidelity) + "\n";
  return out;
}

inline std::vector<SweepPoint> ParseSweepCsv(const std::string& text) {
  std::vector<SweepPoint> rows;
  std::istringstream in(text);
  std::string line;
  bool header_seen = false;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    if (!header_seen) {
      header_seen = true;
      continue;
    }
    const auto comma = line.find(',');
    if (comma == std::string::npos) throw InvalidInputError("malformed sweep row '" + line + "'");
    rows.push_back({std::stod(line.substr(0, comma)), std::stod(line.substr(comma + 1))});
  }
  return rows;
}

// Radians or multiples of pi ("pi/3", "2pi/3", "2*pi/3", "-pi/2", "0.5"),
// reduced modulo 2 pi; the result must land in [0, pi].
inline double ParseAngle(const std::string& text) {
  static const std::regex kPiForm(R"(^\s*([+-]?(?:\d+(?:\.\d*)?|\.\d+)?)\s*\*?\s*pi\s*(?:/\s*(\d+(?:\.\d*)?))?\s*$)",
                                  std::regex::icase);
  double value = 0.0;
  std::smatch m;
  if (std::regex_match(text, m, kPiForm)) {
    const std::string coef = m[1].str();
    double c = 1.0;
    if (coef == "-") {
      c = -1.0;
    } else if (!coef.empty() && coef != "+") {
      c = std::stod(coef);
    }
    const double denom = m[2].matched ? std::stod(m[2].str()) : 1.0;
    if (denom == 0.0) throw InvalidInputError("angle '" + text + "' divides by zero");
    value = c * kPi / denom;
  } else {
    std::size_t used = 0;
    try {
      value = std::stod(text, &used);
    } catch (const std::exception&) {
      throw InvalidInputError("cannot parse angle '" + text + "'");
    }
    if (text.find_first_not_of(" \t", used) != std::string::npos) {
      throw InvalidInputError("cannot parse angle '" + text + "'");
    }
  }
  if (!std::isfinite(value)) throw InvalidInputError("angle must be finite");
  double reduced = std::fmod(value, kTwoPi);
  if (reduced < 0.0) reduced += kTwoPi;
  if (reduced > kTwoPi - 1e-12) reduced = 0.0;
  if (reduced > kPi && reduced - kPi < 1e-12) reduced = kPi;
  if (reduced > kPi) {
    throw InvalidInputError("angle '" + text + "' reduces to " + std::to_string(reduced) +
                            " rad, outside the supported cusp range [0, pi]");
  }
  return reduced;
}

}  // namespace dcg

#endif  // DCG_IO_HPP_
