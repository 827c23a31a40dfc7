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

// Minimum gate times of the optimal first- and second-order pulses over phi.

#include <cstdio>

#include "dcg/dcg.hpp"

int main() {
  std::printf("%-12s %-14s %-14s %-14s\n", "phi", "T_min(1)", "T_min(2)", "k");
  for (double phi : dcg::Linspace(0.0, dcg::kPi, 13)) {
    const double t1 = dcg::TMin({phi, 1, 1.0});
    const double t2 = dcg::TMin({phi, 2, 1.0});
    std::printf("%-12.6f %-14.8f %-14.8f %-14.10f\n", phi, t1, t2, dcg::SolveK(phi).k);
  }
  return 0;
}
