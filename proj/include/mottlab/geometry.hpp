#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <variant>

namespace mottlab {

struct Vec3 {
  double x = 0.0, y = 0.0, z = 0.0;
};

inline Vec3 operator-(const Vec3& a, const Vec3& b) {
  return {a.x - b.x, a.y - b.y, a.z - b.z};
}
inline Vec3 operator+(const Vec3& a, const Vec3& b) {
  return {a.x + b.x, a.y + b.y, a.z + b.z};
}
inline Vec3 operator*(double s, const Vec3& a) {
  return {s * a.x, s * a.y, s * a.z};
}
inline double dot(const Vec3& a, const Vec3& b) {
  return a.x * b.x + a.y * b.y + a.z * b.z;
}
inline double norm(const Vec3& a) { return std::sqrt(dot(a, a)); }

// Upright cylinder (dish), axis along z, centered at x = y = 0.
struct CylinderShape {
  double dish_radius;
  double floor_z;
  double ceiling_z;
};

// Sphere centered at the origin.
struct SphereShape {
  double radius;
};

// Detector volume plus the position of the decaying source inside it.
struct ChamberGeometry {
  std::variant<CylinderShape, SphereShape> shape;
  Vec3 source;
};

inline bool contains(const ChamberGeometry& g, const Vec3& p,
                     double slack = 1e-9) {
  if (const auto* cyl = std::get_if<CylinderShape>(&g.shape)) {
    const double rho2 = p.x * p.x + p.y * p.y;
    return rho2 <= (cyl->dish_radius + slack) * (cyl->dish_radius + slack) &&
           p.z >= cyl->floor_z - slack && p.z <= cyl->ceiling_z + slack;
  }
  const auto& sph = std::get<SphereShape>(g.shape);
  return dot(p, p) <= (sph.radius + slack) * (sph.radius + slack);
}

// Distance from the source along unit direction dir to the boundary.
inline double exit_distance(const ChamberGeometry& g, const Vec3& dir) {
  const Vec3& s = g.source;
  if (const auto* cyl = std::get_if<CylinderShape>(&g.shape)) {
    double t_side = std::numeric_limits<double>::infinity();
    const double a = dir.x * dir.x + dir.y * dir.y;
    if (a > 0.0) {
      const double b = 2.0 * (s.x * dir.x + s.y * dir.y);
      const double c =
          s.x * s.x + s.y * s.y - cyl->dish_radius * cyl->dish_radius;
      const double disc = b * b - 4.0 * a * c;
      // source is inside, so the positive root exists
      t_side = (-b + std::sqrt(std::max(disc, 0.0))) / (2.0 * a);
    }
    double t_cap = std::numeric_limits<double>::infinity();
    if (dir.z > 0.0) {
      t_cap = (cyl->ceiling_z - s.z) / dir.z;
    } else if (dir.z < 0.0) {
      t_cap = (cyl->floor_z - s.z) / dir.z;
    }
    return std::max(0.0, std::min(t_side, t_cap));
  }
  const auto& sph = std::get<SphereShape>(g.shape);
  const double sd = dot(s, dir);
  const double disc = sd * sd - (dot(s, s) - sph.radius * sph.radius);
  return -sd + std::sqrt(std::max(disc, 0.0));
}

// Maximal source-to-boundary chord; the rejection-sampling envelope.
inline double max_chord(const ChamberGeometry& g) {
  const Vec3& s = g.source;
  if (const auto* cyl = std::get_if<CylinderShape>(&g.shape)) {
    const double rho = std::sqrt(s.x * s.x + s.y * s.y);
    const double planar = rho + cyl->dish_radius;
    const double vertical =
        std::max(cyl->ceiling_z - s.z, s.z - cyl->floor_z);
    return std::sqrt(planar * planar + vertical * vertical);
  }
  const auto& sph = std::get<SphereShape>(g.shape);
  return sph.radius + norm(s);
}

// Largest planar (x-y) distance from the source to any point of the volume.
inline double max_planar_extent(const ChamberGeometry& g) {
  const Vec3& s = g.source;
  if (const auto* cyl = std::get_if<CylinderShape>(&g.shape)) {
    return std::sqrt(s.x * s.x + s.y * s.y) + cyl->dish_radius;
  }
  const auto& sph = std::get<SphereShape>(g.shape);
  // widest planar circle reachable given the source offset
  const double rho_s = std::sqrt(s.x * s.x + s.y * s.y);
  return rho_s + sph.radius;
}

inline void validate(const ChamberGeometry& g) {
  if (const auto* cyl = std::get_if<CylinderShape>(&g.shape)) {
    if (cyl->dish_radius <= 0.0) {
      throw std::invalid_argument("geometry: dish_radius must be positive");
    }
    if (cyl->ceiling_z <= cyl->floor_z) {
      throw std::invalid_argument("geometry: ceiling_z must exceed floor_z");
    }
  } else {
    if (std::get<SphereShape>(g.shape).radius <= 0.0) {
      throw std::invalid_argument("geometry: sphere radius must be positive");
    }
  }
  if (!contains(g, g.source)) {
    throw std::invalid_argument("geometry: source must lie inside the volume");
  }
}

}  // namespace mottlab
