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

#ifndef ICFADE_QUADRATURE_HPP
#define ICFADE_QUADRATURE_HPP

#include <cmath>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace icfade {

/// Adaptive Gauss-Kronrod (61-point) over consecutive breakpoints; the
/// integrand should be smooth between breakpoints.
template <typename F>
double integrate(F&& f, std::span<const double> breakpoints, double tol = 1e-12,
                 double* error_out = nullptr) {
  if (breakpoints.size() < 2) throw std::invalid_argument("integrate: need two breakpoints");
  double total = 0.0;
  double error = 0.0;
  for (std::size_t i = 0; i + 1 < breakpoints.size(); ++i) {
    double err = 0.0;
    total += boost::math::quadrature::gauss_kronrod<double, 61>::integrate(
        f, breakpoints[i], breakpoints[i + 1], 15, tol, &err);
    error += err;
  }
  if (error_out) *error_out = error;
  return total;
}

template <typename F>
double integrate(F&& f, std::initializer_list<double> breakpoints, double tol = 1e-12,
                 double* error_out = nullptr) {
  const std::vector<double> b(breakpoints);
  return integrate(std::forward<F>(f), std::span<const double>(b), tol, error_out);
}

/// Evenly spaced breakpoints lo, lo + step, ..., hi.
inline std::vector<double> linspace(double lo, double hi, std::size_t pieces) {
  std::vector<double> v(pieces + 1);
  for (std::size_t i = 0; i <= pieces; ++i) {
    v[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(pieces);
  }
  v.back() = hi;
  return v;
}

}  // namespace icfade

#endif  // ICFADE_QUADRATURE_HPP
