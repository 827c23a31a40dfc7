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

#ifndef DCG_ERROR_HPP_
#define DCG_ERROR_HPP_

#include <stdexcept>
#include <string>

namespace dcg {

// Base of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Argument outside the documented domain (bad angle, non-monotone grid, ...).
class InvalidInputError : public Error {
 public:
  using Error::Error;
};

// An operation's precondition on its input object failed, e.g. signed area of
// an open curve.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

// Curvature requested at a kink that was not declared as a cusp.
class DiscontinuityError : public Error {
 public:
  using Error::Error;
};

// Root bracketing / bisection failed.
class SolverError : public Error {
 public:
  using Error::Error;
};

// Integrator or quadrature could not reach the requested tolerance.
class AccuracyError : public Error {
 public:
  using Error::Error;
};

// Non-finite values or a degenerate parameterization appeared mid-computation.
class NumericError : public Error {
 public:
  using Error::Error;
};

// Slope calibration could not hit the requested budget.
class CalibrationError : public Error {
 public:
  using Error::Error;
};

}  // namespace dcg

#endif  // DCG_ERROR_HPP_
