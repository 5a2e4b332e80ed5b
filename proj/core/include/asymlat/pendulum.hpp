#pragma once

#include "asymlat/geometry.hpp"

namespace asymlat {

// Classical rotation number (mod 1) of the spherical pendulum with
// potential V = z, at the energy-momentum value c = (J, H).
//
// The reduced motion in z = cos(theta) obeys zdot^2 = P(z) with
//   P(z) = 2 (H - z)(1 - z^2) - J^2,
// oscillating between the two roots z1 < z2 of P inside (-1, 1). The value
// returned is frac(dphi / 2pi) where dphi is the azimuth advance over one
// reduced period,
//   dphi = 2 J int_{z1}^{z2} dz / ((1 - z^2) sqrt(P(z))),
// computed by adaptive quadrature after the turning-point substitution
// z = z1 + (z2 - z1) sin^2(psi). Turning points are located by bisection to
// 1e-12. For J = 0 (|H| < 1) each pole passage advances phi by pi and the
// value is exactly 1/2.
//
// Errors: SingularValue when c is on or outside the critical locus,
// QuadratureFailure when the quadrature does not reach tolerance.
double pendulum_rotation(Point2 c, double rel_tol = 1e-8);

// Turning points (z1, z2) and the third root z3 of P; exposed for tests.
struct PendulumRoots {
    double z1, z2, z3;
};
PendulumRoots pendulum_turning_points(Point2 c);

// Ratio of the azimuthal frequency to the reduced oscillation frequency at
// the relative equilibrium of height zc in (-1, 0): 1 / sqrt(1 + 3 zc^2).
// Boundary limit of the rotation number (mod 1).
double pendulum_boundary_ratio(double zc);

// Energy-momentum value (J, H) of the circular orbit at height zc in (-1,0).
Point2 pendulum_boundary_point(double zc);

} // namespace asymlat
