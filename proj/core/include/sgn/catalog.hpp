#pragma once

#include <Eigen/Core>

#include "sgn/net.hpp"

namespace sgn {

// Three straight edges meeting at 120 degrees at v0 and at the opposite
// vertex on the unit flat torus.
GammaNet torus_theta(const Surface& surface, int n, const Vec2& v0 = Vec2(0.3, 0.2));

// Point of a sphere of revolution from a unit vector in R^3.
SurfacePoint sphere_point(const Surface& surface, const Eigen::Vector3d& x);
// Great circle cos(2 pi s) a + sin(2 pi s) b for orthonormal a, b.
GammaNet great_circle(const Surface& surface, const Eigen::Vector3d& a, const Eigen::Vector3d& b, int n);
// Meridians at 90, 210 and 330 degrees joined at the poles.
GammaNet sphere_theta(const Surface& surface, int n);

}  // namespace sgn
