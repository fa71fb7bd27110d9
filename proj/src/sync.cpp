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

#include "masersync/sync.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

#include "masersync/quadrature.hpp"

namespace masersync {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr int kGridPoints = 360;

double wrap_phase(double phi) {
  double w = std::fmod(phi, kTwoPi);
  if (w < 0.0) w += kTwoPi;
  if (w >= kTwoPi) w = 0.0;
  return w;
}

// a cos(phi1 + t12) + b cos(phi2 + t13) + c cos(phi2 - phi1 + t23)
struct PhaseObjective {
  double a, b, c;
  double t12, t13, t23;

  double value(double p1, double p2) const {
    return a * std::cos(p1 + t12) + b * std::cos(p2 + t13) + c * std::cos(p2 - p1 + t23);
  }
};

struct Candidate {
  double value;
  double phi1;
  double phi2;
};

Candidate refine(const PhaseObjective& f, double p1, double p2) {
  double current = f.value(p1, p2);
  for (int iter = 0; iter < 200; ++iter) {
    const double su = std::sin(p1 + f.t12), cu = std::cos(p1 + f.t12);
    const double sv = std::sin(p2 + f.t13), cv = std::cos(p2 + f.t13);
    const double sw = std::sin(p2 - p1 + f.t23), cw = std::cos(p2 - p1 + f.t23);
    const double g1 = -f.a * su + f.c * sw;
    const double g2 = -f.b * sv - f.c * sw;
    const double h11 = -f.a * cu - f.c * cw;
    const double h22 = -f.b * cv - f.c * cw;
    const double h12 = f.c * cw;

    double d1, d2;
    const double det = h11 * h22 - h12 * h12;
    if (h11 < 0.0 && det > 0.0) {
      d1 = -(h22 * g1 - h12 * g2) / det;
      d2 = -(-h12 * g1 + h11 * g2) / det;
    } else {
      const double scale = std::max({std::abs(f.a), std::abs(f.b), std::abs(f.c)});
      d1 = g1 / scale;
      d2 = g2 / scale;
    }

    double step = 1.0;
    bool improved = false;
    for (int k = 0; k < 60; ++k) {
      const double next = f.value(p1 + step * d1, p2 + step * d2);
      if (next >= current) {
        p1 += step * d1;
        p2 += step * d2;
        improved = next > current;
        current = next;
        break;
      }
      step *= 0.5;
    }
    if (!improved || std::hypot(step * d1, step * d2) < 1e-15) break;
  }
  return {current, wrap_phase(p1), wrap_phase(p2)};
}

bool lexicographically_before(const Candidate& x, const Candidate& y) {
  return x.phi1 < y.phi1 || (x.phi1 == y.phi1 && x.phi2 < y.phi2);
}

Candidate maximize_general(const PhaseObjective& f) {
  const double h = kTwoPi / kGridPoints;
  std::array<double, kGridPoints> term1, term2, term3;
  for (int k = 0; k < kGridPoints; ++k) {
    term1[k] = f.a * std::cos(h * k + f.t12);
    term2[k] = f.b * std::cos(h * k + f.t13);
    term3[k] = f.c * std::cos(h * k + f.t23);
  }
  std::vector<double> grid(kGridPoints * kGridPoints);
  auto at = [&](int i, int j) -> double& {
    return grid[((i + kGridPoints) % kGridPoints) * kGridPoints + (j + kGridPoints) % kGridPoints];
  };
  for (int i = 0; i < kGridPoints; ++i) {
    for (int j = 0; j < kGridPoints; ++j) {
      at(i, j) = term1[i] + term2[j] + term3[(j - i + kGridPoints) % kGridPoints];
    }
  }

  std::vector<Candidate> seeds;
  for (int i = 0; i < kGridPoints; ++i) {
    for (int j = 0; j < kGridPoints; ++j) {
      const double v = at(i, j);
      bool local_max = true;
      for (int di = -1; di <= 1 && local_max; ++di) {
        for (int dj = -1; dj <= 1; ++dj) {
          if ((di != 0 || dj != 0) && at(i + di, j + dj) > v) {
            local_max = false;
            break;
          }
        }
      }
      if (local_max) seeds.push_back({v, h * i, h * j});
    }
  }
  // Flat plateaus produce many equal seeds; the best few suffice.
  std::stable_sort(seeds.begin(), seeds.end(),
                   [](const Candidate& x, const Candidate& y) { return x.value > y.value; });
  if (seeds.size() > 8) seeds.resize(8);

  Candidate best{-std::numeric_limits<double>::infinity(), 0.0, 0.0};
  const double tie = 1e-14 * (std::abs(f.a) + std::abs(f.b) + std::abs(f.c));
  for (const Candidate& seed : seeds) {
    const Candidate c = refine(f, seed.phi1, seed.phi2);
    if (c.value > best.value + tie ||
        (std::abs(c.value - best.value) <= tie && lexicographically_before(c, best))) {
      best = c;
    }
  }
  return best;
}

}  // namespace

void SU3Angles::validate() const {
  const bool ok = theta >= 0.0 && theta <= kPi / 2 && xi >= 0.0 && xi <= kPi / 2 && phi1 >= 0.0 &&
                  phi1 < kTwoPi && phi2 >= 0.0 && phi2 < kTwoPi;
  if (!ok) throw Error(ErrorKind::InvalidArgument, "SU3Angles: angle out of range");
}

Vector3c su3_coherent_state(const SU3Angles& a) {
  a.validate();
  const double st = std::sin(a.theta);
  return Vector3c(std::cos(a.theta), std::polar(std::cos(a.xi) * st, a.phi1),
                  std::polar(std::sin(a.xi) * st, a.phi2));
}

double husimi_q(const DensityMatrix& rho, const SU3Angles& a) {
  const Vector3c n = su3_coherent_state(a);
  return 6.0 / (kPi * kPi) * n.dot(rho.matrix() * n).real();
}

double l1_coherence(const DensityMatrix& rho) {
  double sum = 0.0;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      if (i != j) sum += std::abs(rho(i, j));
    }
  }
  return sum;
}

double sync_measure_closed(const DensityMatrix& rho, double phi1, double phi2) {
  const double s = (std::polar(1.0, phi1) * rho(0, 1)).real() +
                   (std::polar(1.0, phi2) * rho(0, 2)).real() +
                   (std::polar(1.0, phi2 - phi1) * rho(1, 2)).real();
  return s / (8.0 * kPi);
}

double sync_measure_quadrature(const DensityMatrix& rho, double phi1, double phi2, int nodes) {
  if (nodes < 8) throw Error(ErrorKind::InvalidArgument, "sync_measure_quadrature: nodes must be >= 8");
  const QuadratureRule rule = gauss_legendre(nodes, 0.0, kPi / 2);
  const double p1 = wrap_phase(phi1);
  const double p2 = wrap_phase(phi2);
  double integral = 0.0;
  for (int i = 0; i < nodes; ++i) {
    const double theta = rule.nodes[i];
    const double st = std::sin(theta);
    const double w_theta = rule.weights[i] * std::cos(theta) * st * st * st;
    for (int j = 0; j < nodes; ++j) {
      const double xi = rule.nodes[j];
      const double w_xi = rule.weights[j] * std::cos(xi) * std::sin(xi);
      integral += w_theta * w_xi * husimi_q(rho, SU3Angles{theta, xi, p1, p2});
    }
  }
  return integral - 1.0 / (4.0 * kPi * kPi);
}

namespace {

// Product rule over (theta, xi, phi1, phi2) with the group-measure weights
// folded in; visits every node with its coherent state.
template <class Visit>
void for_each_node(int polar_nodes, int phase_nodes, Visit&& visit) {
  const QuadratureRule polar = gauss_legendre(polar_nodes, 0.0, kPi / 2);
  const QuadratureRule phase = periodic_trapezoid(phase_nodes);
  std::vector<Complex> phases(phase_nodes);
  for (int k = 0; k < phase_nodes; ++k) phases[k] = std::polar(1.0, phase.nodes[k]);
  for (int i = 0; i < polar_nodes; ++i) {
    const double ct = std::cos(polar.nodes[i]);
    const double st = std::sin(polar.nodes[i]);
    const double w_theta = polar.weights[i] * ct * st * st * st;
    for (int j = 0; j < polar_nodes; ++j) {
      const double cx = std::cos(polar.nodes[j]);
      const double sx = std::sin(polar.nodes[j]);
      const double w_xi = polar.weights[j] * cx * sx;
      for (int k = 0; k < phase_nodes; ++k) {
        for (int l = 0; l < phase_nodes; ++l) {
          const Vector3c n(ct, cx * st * phases[k], sx * st * phases[l]);
          visit(w_theta * w_xi * phase.weights[k] * phase.weights[l], n);
        }
      }
    }
  }
}

}  // namespace

Complex3x3 coherent_state_frame_operator(int polar_nodes, int phase_nodes) {
  Complex3x3 sum = Complex3x3::Zero();
  for_each_node(polar_nodes, phase_nodes,
                [&](double w, const Vector3c& n) { sum.noalias() += w * (n * n.adjoint()); });
  return sum;
}

double husimi_normalization(const DensityMatrix& rho, int polar_nodes, int phase_nodes) {
  const Complex3x3& m = rho.matrix();
  double sum = 0.0;
  for_each_node(polar_nodes, phase_nodes,
                [&](double w, const Vector3c& n) { sum += w * n.dot(m * n).real(); });
  return 6.0 / (kPi * kPi) * sum;
}

double SyncProfile::operator()(double p1, double p2) const {
  const double s = (std::polar(1.0, p1) * rho12).real() + (std::polar(1.0, p2) * rho13).real() +
                   (std::polar(1.0, p2 - p1) * rho23).real();
  return s / (8.0 * kPi);
}

double SyncProfile::coherence_bound() const {
  return 2.0 * (std::abs(rho12) + std::abs(rho13) + std::abs(rho23)) / (16.0 * kPi);
}

SyncProfile sync_max(const DensityMatrix& rho) {
  SyncProfile out;
  out.rho12 = rho(0, 1);
  out.rho13 = rho(0, 2);
  out.rho23 = rho(1, 2);

  const double a = std::abs(out.rho12);
  const double b = std::abs(out.rho13);
  const double c = std::abs(out.rho23);
  const double t12 = std::arg(out.rho12);
  const double t13 = std::arg(out.rho13);
  const double t23 = std::arg(out.rho23);
  const double norm = 1.0 / (8.0 * kPi);

  // With a vanishing coherence the terms decouple and the maximum is the sum
  // of the remaining moduli; free phases are pinned at 0.
  if (a == 0.0 && b == 0.0) {
    out.s_max = c * norm;
    out.phi1 = 0.0;
    out.phi2 = c == 0.0 ? 0.0 : wrap_phase(-t23);
  } else if (a == 0.0 && c == 0.0) {
    out.s_max = b * norm;
    out.phi1 = 0.0;
    out.phi2 = wrap_phase(-t13);
  } else if (b == 0.0 && c == 0.0) {
    out.s_max = a * norm;
    out.phi1 = wrap_phase(-t12);
    out.phi2 = 0.0;
  } else if (c == 0.0) {
    out.s_max = (a + b) * norm;
    out.phi1 = wrap_phase(-t12);
    out.phi2 = wrap_phase(-t13);
  } else if (b == 0.0) {
    out.s_max = (a + c) * norm;
    out.phi1 = wrap_phase(-t12);
    out.phi2 = wrap_phase(-t12 - t23);
  } else if (a == 0.0) {
    out.s_max = (b + c) * norm;
    out.phi2 = wrap_phase(-t13);
    out.phi1 = wrap_phase(-t13 + t23);
  } else {
    const Candidate best = maximize_general(PhaseObjective{a, b, c, t12, t13, t23});
    out.s_max = best.value * norm;
    out.phi1 = best.phi1;
    out.phi2 = best.phi2;
  }
  return out;
}

}  // namespace masersync
