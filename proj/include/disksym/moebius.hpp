#pragma once

#include <complex>

#include "disksym/errors.hpp"

namespace disksym {

using cplx = std::complex<double>;

inline constexpr double kDiskMargin = 1e-12;
inline constexpr double kCircleTol = 1e-12;

// Point strictly inside the unit disk, |value| <= 1 - 1e-12.
struct DiskPoint {
    cplx value;

    DiskPoint() : value(0.0) {}
    explicit DiskPoint(cplx v);
    DiskPoint(double re, double im) : DiskPoint(cplx(re, im)) {}

    double abs() const { return std::abs(value); }
};

// Point on the unit circle, ||value| - 1| <= 1e-12.
struct CirclePoint {
    cplx value;

    explicit CirclePoint(cplx v);
    static CirclePoint from_angle(double theta);
};

// a together with its inner fixed point omega_a and the preimage Omega_a
// (fixed_point_omega(Omega_a) == a).
struct FixedPointPair {
    DiskPoint a;
    DiskPoint omega;
    DiskPoint Omega;
};

// phi_a(z) = (a - z)/(1 - conj(a) z)
cplx eval_phi(const DiskPoint& a, cplx z);

// omega_a = (1/conj(a)) (1 - sqrt(1 - |a|^2)), omega_0 = 0
DiskPoint fixed_point_omega(const DiskPoint& a);

// Omega_a = 2a/(1 + |a|^2)
DiskPoint omega_inverse(const DiskPoint& a);

FixedPointPair fixed_points(const DiskPoint& a);

// d.b with C_d C_b C_d = C_{d.b}
DiskPoint dot_compose(const DiskPoint& d, const DiskPoint& b);

// k_a(z) = 1/(1 - conj(a) z) and its L2 norm (1-|a|^2)^{-1/2}
cplx szego_kernel(const DiskPoint& a, const CirclePoint& z);
double szego_norm(const DiskPoint& a);

// psi_a(z) = (1 + (1-|a|^2)/|1 - conj(a) z|^2)^{-1}, real valued in (0,1)
double ando_symbol(const DiskPoint& a, const CirclePoint& z);

// principal branch of (1 - conj(a) z)^{1/2}; Re(1 - conj(a) z) > 0 on the
// circle so the value is continuous there
cplx half_power_symbol(const DiskPoint& a, const CirclePoint& z);

} // namespace disksym
