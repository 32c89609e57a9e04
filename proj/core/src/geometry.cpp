// Copyright 2026 The Omnilink Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "omnilink/geometry.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace omnilink {

namespace {

constexpr double kPlaneTol = 1e-12;

Vec3 row_axis(const Vec3& normal) {
  const Vec3 y{0.0, 1.0, 0.0};
  const double c = normal.dot(y);
  if (std::abs(c) > 1.0 - 1e-9) {
    throw std::invalid_argument("surface normal may not be parallel to y");
  }
  return (y - normal * c).normalized();
}

}  // namespace

Vec3 Vec3::normalized() const {
  const double n = norm();
  if (n == 0.0) throw std::invalid_argument("cannot normalize a zero vector");
  return {x / n, y / n, z / n};
}

void SurfaceSpec::validate() const {
  if (rows < 0 || cols < 0) {
    throw std::invalid_argument("surface rows/cols must be non-negative");
  }
  if (delta_x <= 0.0 || delta_y <= 0.0) {
    throw std::invalid_argument("element pitch must be positive");
  }
  if (epsilon < 0.0 || !std::isfinite(epsilon)) {
    throw std::invalid_argument("epsilon must be finite and non-negative");
  }
  if (gamma_sq <= 0.0 || gamma_sq > 1.0) {
    throw std::invalid_argument("gamma_sq must lie in (0, 1]");
  }
  if (element_gain <= 0.0) {
    throw std::invalid_argument("element gain must be positive");
  }
  if (phase_levels < 2) {
    throw std::invalid_argument("phase_levels must be at least 2");
  }
}

Vec3 element_position(const SurfaceSpec& spec, const Vec3& normal, int m) {
  if (m < 0 || m >= spec.element_count()) {
    throw std::invalid_argument("element index out of range");
  }
  const Vec3 er = row_axis(normal);
  const Vec3 ec = normal.cross(er).normalized();
  const int r = m / spec.cols;
  const int c = m % spec.cols;
  const double dr = (r - 0.5 * (spec.rows - 1)) * spec.delta_y;
  const double dc = (c - 0.5 * (spec.cols - 1)) * spec.delta_x;
  return spec.center + er * dr + ec * dc;
}

Vec3 ScenarioLayout::element_position(int m) const {
  return omnilink::element_position(surface, normal, m);
}

void ScenarioLayout::validate() const {
  surface.validate();
  if (std::abs(normal.norm() - 1.0) > 1e-9) {
    throw std::invalid_argument("surface normal must be unit length");
  }
  if (sbs_antennas.empty()) {
    throw std::invalid_argument("at least one base station antenna required");
  }
  for (const Vec3& a : sbs_antennas) {
    if (side_of(*this, a) != Side::kReflective) {
      throw std::invalid_argument(
          "base station antennas must be on the reflective side");
    }
  }
  for (const Vec3& p : mu_positions) {
    side_of(*this, p); // throws for on-plane users
    for (const Vec3& a : sbs_antennas) {
      if ((p - a).norm() < 1e-9) {
        throw std::invalid_argument("user coincides with an antenna");
      }
    }
  }
}

Side side_of(const ScenarioLayout& layout, const Vec3& p) {
  const double s = (p - layout.surface.center).dot(layout.normal);
  if (std::abs(s) < kPlaneTol) {
    throw std::domain_error("point lies on the surface plane");
  }
  return s > 0.0 ? Side::kReflective : Side::kRefractive;
}

double angle_from_normal(const Vec3& element, const Vec3& other,
                         const Vec3& normal) {
  const Vec3 v = other - element;
  const double n = v.norm();
  if (n == 0.0) {
    throw std::invalid_argument("direction undefined for coincident points");
  }
  const double c = std::clamp(v.dot(normal) / n, -1.0, 1.0);
  return std::acos(c);
}

double k_incident(double theta) {
  const double c = std::abs(std::cos(theta));
  return c * c * c;
}

double k_departure(double theta, double epsilon) {
  if (theta < 0.0 || theta > kPi) {
    throw std::domain_error("departure angle must lie in [0, pi]");
  }
  if (epsilon < 0.0 || !std::isfinite(epsilon)) {
    throw std::invalid_argument("epsilon must be finite and non-negative");
  }
  if (theta == kPi / 2.0) {
    throw std::domain_error("grazing departure has no defined face");
  }
  const double c = std::abs(std::cos(theta));
  const double pattern = c * c * c / (1.0 + epsilon);
  return theta < kPi / 2.0 ? pattern : epsilon * pattern;
}

std::complex<double> element_gain(const SurfaceSpec& spec, double theta_a,
                                  double theta_d, double phase_shift) {
  const double power = spec.element_gain * k_incident(theta_a) *
                       k_departure(theta_d, spec.epsilon) * spec.delta_x *
                       spec.delta_y * spec.gamma_sq;
  return std::polar(std::sqrt(power), -phase_shift);
}

PassivityReport passivity_check(const SurfaceSpec& spec, int grid) {
  if (grid < 8) throw std::invalid_argument("integration grid too coarse");
  // |g|^2 has no azimuthal dependence, so the sphere integral reduces to
  // 2*pi times a polar midpoint sum. The incident pattern scales the whole
  // integrand, so the worst case is scanned over incidence angles.
  const double dtheta = kPi / grid;
  double departure_integral = 0.0;
  for (int t = 0; t < grid; ++t) {
    const double theta = (t + 0.5) * dtheta;
    departure_integral +=
        k_departure(theta, spec.epsilon) * std::sin(theta) * dtheta;
  }
  departure_integral *= kTwoPi;
  const double scale =
      spec.element_gain * spec.delta_x * spec.delta_y * spec.gamma_sq;
  double worst = 0.0;
  for (int t = 0; t <= grid / 2; ++t) {
    const double theta_a = t * (kPi / 2.0) / (grid / 2);
    worst = std::max(worst, k_incident(theta_a));
  }
  PassivityReport report;
  report.max_radiated = scale * worst * departure_integral;
  report.passes = report.max_radiated <= 1.0 + 1e-9;
  return report;
}

}  // namespace omnilink
