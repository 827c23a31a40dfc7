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

#ifndef DCG_NUMERICS_HPP_
#define DCG_NUMERICS_HPP_

// Small numerical helpers shared by the curve, smoothing and simulation code.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

#include "dcg/error.hpp"

namespace dcg {

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;

// Value with first and second derivative, propagated by the chain rule.
struct Jet {
  double v = 0.0;
  double d1 = 0.0;
  double d2 = 0.0;

  static constexpr Jet Constant(double c) { return {c, 0.0, 0.0}; }
  static constexpr Jet Variable(double x) { return {x, 1.0, 0.0}; }
};

constexpr Jet operator+(Jet a, Jet b) { return {a.v + b.v, a.d1 + b.d1, a.d2 + b.d2}; }
constexpr Jet operator-(Jet a, Jet b) { return {a.v - b.v, a.d1 - b.d1, a.d2 - b.d2}; }
constexpr Jet operator-(Jet a) { return {-a.v, -a.d1, -a.d2}; }
constexpr Jet operator*(Jet a, Jet b) {
  return {a.v * b.v, a.d1 * b.v + a.v * b.d1, a.d2 * b.v + 2.0 * a.d1 * b.d1 + a.v * b.d2};
}
constexpr Jet operator*(double s, Jet a) { return {s * a.v, s * a.d1, s * a.d2}; }
constexpr Jet operator*(Jet a, double s) { return s * a; }
constexpr Jet operator+(Jet a, double c) { return {a.v + c, a.d1, a.d2}; }
constexpr Jet operator+(double c, Jet a) { return a + c; }
constexpr Jet operator-(double c, Jet a) { return {c - a.v, -a.d1, -a.d2}; }
constexpr Jet operator-(Jet a, double c) { return {a.v - c, a.d1, a.d2}; }

// h(f) given h(f.v), h'(f.v), h''(f.v).
constexpr Jet Compose(Jet f, double h0, double h1, double h2) {
  return {h0, h1 * f.d1, h2 * f.d1 * f.d1 + h1 * f.d2};
}

inline Jet sin(Jet f) {
  const double s = std::sin(f.v), c = std::cos(f.v);
  return Compose(f, s, c, -s);
}

inline Jet cos(Jet f) {
  const double s = std::sin(f.v), c = std::cos(f.v);
  return Compose(f, c, -s, -c);
}

inline Jet tanh(Jet f) {
  const double t = std::tanh(f.v);
  const double sech2 = 1.0 - t * t;
  return Compose(f, t, sech2, -2.0 * t * sech2);
}

// Logistic 1/(1+exp(-x)); evaluated without overflow for large |x|.
inline double Logistic(double x) {
  if (x >= 0.0) return 1.0 / (1.0 + std::exp(-x));
  const double e = std::exp(x);
  return e / (1.0 + e);
}

inline Jet logistic(Jet f) {
  const double s = Logistic(f.v);
  const double ds = s * (1.0 - s);
  return Compose(f, s, ds, ds * (1.0 - 2.0 * s));
}

// 8-point Gauss-Legendre rule on [-1, 1].
inline constexpr std::array<double, 8> kGaussNodes = {
    -0.9602898564975363, -0.7966664774136267, -0.5255324099163290, -0.1834346424956498,
    0.1834346424956498,  0.5255324099163290,  0.7966664774136267,  0.9602898564975363};
inline constexpr std::array<double, 8> kGaussWeights = {
    0.1012285362903763, 0.2223810344533745, 0.3137066458778873, 0.3626837833783620,
    0.3626837833783620, 0.3137066458778873, 0.2223810344533745, 0.1012285362903763};

template <typename F>
auto GaussLegendre(F&& f, double a, double b) {
  const double half = 0.5 * (b - a);
  const double mid = 0.5 * (a + b);
  decltype(f(a)) acc{};
  for (std::size_t i = 0; i < kGaussNodes.size(); ++i) {
    acc += kGaussWeights[i] * f(mid + half * kGaussNodes[i]);
  }
  return acc * half;
}

// Fornberg's algorithm: weights w[k][j] such that f^(k)(x0) ~ sum_j w[k][j] f(nodes[j]).
template <std::size_t N>
std::array<std::array<double, N>, 3> FiniteDifferenceWeights(double x0,
                                                             const std::array<double, N>& nodes) {
  constexpr int kMaxOrder = 2;
  std::array<std::array<double, N>, 3> c{};
  double c1 = 1.0;
  double c4 = nodes[0] - x0;
  c[0][0] = 1.0;
  for (std::size_t i = 1; i < N; ++i) {
    const int mn = std::min<int>(static_cast<int>(i), kMaxOrder);
    double c2 = 1.0;
    const double c5 = c4;
    c4 = nodes[i] - x0;
    for (std::size_t j = 0; j < i; ++j) {
      const double c3 = nodes[i] - nodes[j];
      c2 *= c3;
      if (j == i - 1) {
        for (int k = mn; k >= 1; --k) {
          c[k][i] = c1 * (k * c[k - 1][i - 1] - c5 * c[k][i - 1]) / c2;
        }
        c[0][i] = -c1 * c5 * c[0][i - 1] / c2;
      }
      for (int k = mn; k >= 1; --k) {
        c[k][j] = (c4 * c[k][j] - k * c[k - 1][j]) / c3;
      }
      c[0][j] = c4 * c[0][j] / c3;
    }
    c1 = c2;
  }
  return c;
}

namespace detail {

template <std::size_t N>
std::vector<double> StencilDerivative(std::span<const double> x, std::span<const double> f,
                                      int order) {
  const std::size_t n = x.size();
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t lo = std::min(i >= 2 ? i - 2 : 0, n - N);
    std::array<double, N> nodes{};
    for (std::size_t j = 0; j < N; ++j) nodes[j] = x[lo + j];
    const auto w = FiniteDifferenceWeights(x[i], nodes);
    double acc = 0.0;
    for (std::size_t j = 0; j < N; ++j) acc += w[order][j] * f[lo + j];
    out[i] = acc;
  }
  return out;
}

}  // namespace detail

// Fourth-order finite-difference derivative of order 1 (five-point stencils)
// or 2 (six-point stencils) on an arbitrary ascending grid; stencils shift to
// one side near the ends.
inline std::vector<double> FiniteDifference(std::span<const double> x, std::span<const double> f,
                                            int order) {
  if (x.size() != f.size()) throw InvalidInputError("FiniteDifference: size mismatch");
  if (order == 1) {
    if (x.size() < 5) throw InvalidInputError("FiniteDifference: need >= 5 samples");
    return detail::StencilDerivative<5>(x, f, 1);
  }
  if (order == 2) {
    if (x.size() < 6) throw InvalidInputError("FiniteDifference: need >= 6 samples");
    return detail::StencilDerivative<6>(x, f, 2);
  }
  throw InvalidInputError("FiniteDifference: order must be 1 or 2");
}

// Cumulative integral of f using the Hermite (endpoint-corrected trapezoid)
// rule, fourth order on any grid: h/2 (fa + fb) + h^2/12 (f'a - f'b).
inline std::vector<double> CumulativeHermite(std::span<const double> x, std::span<const double> f,
                                             std::span<const double> df) {
  std::vector<double> out(x.size(), 0.0);
  for (std::size_t i = 1; i < x.size(); ++i) {
    const double h = x[i] - x[i - 1];
    out[i] = out[i - 1] + 0.5 * h * (f[i - 1] + f[i]) + h * h / 12.0 * (df[i - 1] - df[i]);
  }
  return out;
}

inline bool StrictlyIncreasing(std::span<const double> x) {
  for (std::size_t i = 1; i < x.size(); ++i) {
    if (!(x[i] > x[i - 1])) return false;
  }
  return true;
}

inline std::vector<double> Linspace(double a, double b, std::size_t n) {
  std::vector<double> out(n);
  if (n == 1) {
    out[0] = a;
    return out;
  }
  for (std::size_t i = 0; i < n; ++i) {
    out[i] = a + (b - a) * static_cast<double>(i) / static_cast<double>(n - 1);
  }
  out.back() = b;
  return out;
}

inline std::vector<double> Logspace(double lo, double hi, std::size_t n) {
  std::vector<double> out = Linspace(std::log10(lo), std::log10(hi), n);
  for (double& v : out) v = std::pow(10.0, v);
  if (n > 0) {
    out.front() = lo;
    out.back() = hi;
  }
  return out;
}

// Dense window [center - half_width, center + half_width] sampled with the
// given spacing.
struct Cluster {
  double center = 0.0;
  double half_width = 0.0;
  double spacing = 0.0;
};

// Grid on [a, b]: uniform with `uniform_points` samples outside the clusters,
// uniform with the cluster spacing inside them. Overlapping clusters are
// merged (finest spacing wins), so the grid stays piecewise uniform.
inline std::vector<double> RefinedGrid(double a, double b, std::size_t uniform_points,
                                       std::span<const Cluster> clusters) {
  struct Window {
    double lo, hi, h;
  };
  std::vector<Window> windows;
  for (const Cluster& c : clusters) {
    if (!(c.half_width > 0.0 && c.spacing > 0.0)) continue;
    const double lo = std::max(a, c.center - c.half_width), hi = std::min(b, c.center + c.half_width);
    if (hi > lo) windows.push_back({lo, hi, c.spacing});
  }
  std::sort(windows.begin(), windows.end(), [](const Window& u, const Window& v) { return u.lo < v.lo; });
  std::vector<Window> merged;
  for (const Window& w : windows) {
    if (!merged.empty() && w.lo <= merged.back().hi) {
      merged.back().hi = std::max(merged.back().hi, w.hi);
      merged.back().h = std::min(merged.back().h, w.h);
    } else {
      merged.push_back(w);
    }
  }
  const double coarse = (b - a) / static_cast<double>(std::max<std::size_t>(uniform_points, 2) - 1);
  std::vector<double> grid;
  auto fill = [&](double lo, double hi, double h) {
    const auto n = static_cast<std::size_t>(std::max(1.0, std::ceil((hi - lo) / h)));
    for (std::size_t i = 0; i < n; ++i) grid.push_back(lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n));
  };
  double cursor = a;
  for (const Window& w : merged) {
    if (w.lo > cursor) fill(cursor, w.lo, coarse);
    fill(w.lo, w.hi, w.h);
    cursor = w.hi;
  }
  if (b > cursor) fill(cursor, b, coarse);
  grid.push_back(b);
  return grid;
}

// Linear interpolation on an ascending grid; clamps outside.
inline double InterpolateLinear(std::span<const double> x, std::span<const double> y, double at) {
  if (at <= x.front()) return y.front();
  if (at >= x.back()) return y.back();
  const auto it = std::upper_bound(x.begin(), x.end(), at);
  const std::size_t i = static_cast<std::size_t>(it - x.begin());
  const double w = (at - x[i - 1]) / (x[i] - x[i - 1]);
  return (1.0 - w) * y[i - 1] + w * y[i];
}

}  // namespace dcg

#endif  // DCG_NUMERICS_HPP_
