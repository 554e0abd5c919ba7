// SPDX-License-Identifier: Apache-2.0
//
// icfade: finite-blocklength bounds for infinite constellations over fading
// Copyright (C) 2026 The icfade Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------
#ifndef ICFADE_ICFADE_HPP
#define ICFADE_ICFADE_HPP

#include "icfade/achievability.hpp"
#include "icfade/analysis.hpp"
#include "icfade/converse.hpp"
#include "icfade/fading.hpp"
#include "icfade/monte_carlo.hpp"
#include "icfade/quadrature.hpp"
#include "icfade/rng.hpp"
#include "icfade/simulator.hpp"
#include "icfade/special.hpp"

#endif  // ICFADE_ICFADE_HPP
