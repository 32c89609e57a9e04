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

#ifndef OMNILINK_GEOMETRY_HPP_
#define OMNILINK_GEOMETRY_HPP_

#include <cmath>
#include <complex>
#include <vector>

namespace omnilink {

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;

struct Vec3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  Vec3 operator+(const Vec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
  Vec3 operator-(const Vec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
  Vec3 operator*(double s) const { return {x * s, y * s, z * s}; }
  double dot(const Vec3& o) const { return x * o.x + y * o.y + z * o.z; }
  Vec3 cross(const Vec3& o) const {
    return {y * o.z - z * o.y, z * o.x - x * o.z, x * o.y - y * o.x};
  }
  double norm() const { return std::sqrt(dot(*this)); }
  Vec3 normalized() const;
};

/// Which face of the surface a point sees. The reflective face is the one
/// the serving base station is on; the refractive face is the opposite one.
enum class Side { kReflective, kRefractive };

/// A rectangular dual-face surface made of `rows x cols` elements lying in a
/// plane. Element phases are drawn from `phase_levels` uniform steps of the
/// full circle. `epsilon` is the refracted-to-reflected power ratio applied
/// by every element; `epsilon == 0` degenerates to a reflect-only surface.
/// `rows == 0` or `cols == 0` describes an absent surface (no elements).
struct SurfaceSpec {
  Vec3 center;
  int rows = 0;
  int cols = 0;
  double delta_x = 0.025;    // element pitch along the in-plane column axis [m]
  double delta_y = 0.025;    // element pitch along the in-plane row axis [m]
  double epsilon = 1.0;      // refracted/reflected power ratio, >= 0
  double gamma_sq = 1.0;     // fraction of intercepted power re-emitted, (0, 1]
  double element_gain = 1.0; // boresight power gain of one element
  int phase_levels = 4;      // size of the discrete phase alphabet, >= 2

  int element_count() const { return rows * cols; }
  double phase_step() const { return kTwoPi / phase_levels; }
  /// Throws std::invalid_argument on out-of-range fields.
  void validate() const;
};

/// Static geometry of one downlink drop: the surface, its unit normal
/// (pointing into the half space holding the base station), the base station
/// antenna positions and the user positions.
struct ScenarioLayout {
  SurfaceSpec surface;
  Vec3 normal{-1.0, 0.0, 0.0};
  std::vector<Vec3> sbs_antennas;
  std::vector<Vec3> mu_positions;

  int antenna_count() const { return static_cast<int>(sbs_antennas.size()); }
  int user_count() const { return static_cast<int>(mu_positions.size()); }
  Vec3 element_position(int m) const;
  /// Throws std::invalid_argument if the normal is not unit length, an
  /// antenna sits on the refractive side or a position lies on the plane.
  void validate() const;
};

/// Center of element `m` (row-major, 0-based). Rows run along the in-plane
/// projection of the global y axis, columns along `normal x row_axis`.
Vec3 element_position(const SurfaceSpec& spec, const Vec3& normal, int m);

/// Classifies `p` against the surface plane. Throws std::domain_error for
/// points on the plane (within 1e-12 m), which belong to neither side.
Side side_of(const ScenarioLayout& layout, const Vec3& p);

/// Angle in [0, pi] between `normal` and the direction from `element` to
/// `other`. Values below pi/2 are on the reflective side.
double angle_from_normal(const Vec3& element, const Vec3& other,
                         const Vec3& normal);

/// Power pattern seen by a ray arriving at `theta` from the normal: |cos^3|.
/// Folds angles beyond pi/2 so incidence is measured against its own face.
double k_incident(double theta);

/// Departure power pattern for a ray leaving at `theta` from the normal:
/// |cos^3(theta)| / (1 + epsilon) on the reflective side and
/// epsilon |cos^3(theta)| / (1 + epsilon) on the refractive side.
/// Throws std::domain_error at theta == pi/2 (grazing, no defined face).
double k_departure(double theta, double epsilon);

/// Complex amplitude response of one element for the given incidence and
/// departure angles and applied phase shift.
std::complex<double> element_gain(const SurfaceSpec& spec, double theta_a,
                                  double theta_d, double phase_shift);

struct PassivityReport {
  double max_radiated = 0.0; // worst-case radiated/intercepted power ratio
  bool passes = false;       // max_radiated <= 1 + 1e-9
};

/// Integrates |element_gain|^2 over the departure sphere on a midpoint grid
/// of `grid` polar samples and maximises over incidence angles. A passive
/// element never radiates more power than it intercepts.
PassivityReport passivity_check(const SurfaceSpec& spec, int grid = 2048);

}  // namespace omnilink

#endif  // OMNILINK_GEOMETRY_HPP_
