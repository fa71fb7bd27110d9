/*
 * Copyright 2026 The masersync Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <vector>

namespace masersync {

struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

// n-point Gauss-Legendre rule on [-1, 1] (Newton iteration on P_n).
QuadratureRule gauss_legendre(int n);

// The same rule mapped affinely onto [a, b].
QuadratureRule gauss_legendre(int n, double a, double b);

// n equispaced nodes on [0, 2pi) with weight 2pi/n; exact for
// trigonometric polynomials of degree < n.
QuadratureRule periodic_trapezoid(int n);

}  // namespace masersync
