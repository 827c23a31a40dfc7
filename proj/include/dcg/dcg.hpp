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

#ifndef DCG_DCG_HPP_
#define DCG_DCG_HPP_

#include "dcg/curve_ops.hpp"
#include "dcg/error.hpp"
#include "dcg/geometry.hpp"
#include "dcg/io.hpp"
#include "dcg/numerics.hpp"
#include "dcg/pulse.hpp"
#include "dcg/qsim.hpp"
#include "dcg/smoothing.hpp"
#include "dcg/synthesis.hpp"
#include "dcg/verify.hpp"

#endif  // DCG_DCG_HPP_
