#include "disksym/moebius.hpp"

#include <cmath>

namespace disksym {

DiskPoint::DiskPoint(cplx v) : value(v) {
    if (std::abs(v) > 1.0 - kDiskMargin)
        throw std::invalid_argument("DiskPoint: |value| must be <= 1 - 1e-12");
}

CirclePoint::CirclePoint(cplx v) : value(v) {
    if (std::abs(std::abs(v) - 1.0) > kCircleTol)
        throw std::invalid_argument("CirclePoint: value must lie on the unit circle");
}

CirclePoint CirclePoint::from_angle(double theta) {
    return CirclePoint(std::polar(1.0, theta));
}

cplx eval_phi(const DiskPoint& a, cplx z) {
    const cplx den = 1.0 - std::conj(a.value) * z;
    if (std::abs(den) <= 1e-14)
        throw DegenerateDenominator("eval_phi: 1 - conj(a) z vanishes");
    return (a.value - z) / den;
}

DiskPoint fixed_point_omega(const DiskPoint& a) {
    const double r2 = std::norm(a.value);
    if (r2 == 0.0) return DiskPoint(cplx(0.0));
    const double s = std::sqrt(1.0 - r2);
    return DiskPoint(a.value / r2 * (1.0 - s));
}

DiskPoint omega_inverse(const DiskPoint& a) {
    return DiskPoint(2.0 * a.value / (1.0 + std::norm(a.value)));
}

FixedPointPair fixed_points(const DiskPoint& a) {
    return FixedPointPair{a, fixed_point_omega(a), omega_inverse(a)};
}

DiskPoint dot_compose(const DiskPoint& d, const DiskPoint& b) {
    const cplx dv = d.value, bv = b.value;
    const cplx num = 2.0 * dv - bv - dv * dv * std::conj(bv);
    const cplx den = std::norm(dv) - dv * std::conj(bv) - std::conj(dv) * bv + 1.0;
    return DiskPoint(num / den);
}

cplx szego_kernel(const DiskPoint& a, const CirclePoint& z) {
    return 1.0 / (1.0 - std::conj(a.value) * z.value);
}

double szego_norm(const DiskPoint& a) {
    return 1.0 / std::sqrt(1.0 - std::norm(a.value));
}

double ando_symbol(const DiskPoint& a, const CirclePoint& z) {
    const double u = std::norm(1.0 - std::conj(a.value) * z.value);
    return 1.0 / (1.0 + (1.0 - std::norm(a.value)) / u);
}

cplx half_power_symbol(const DiskPoint& a, const CirclePoint& z) {
    return std::exp(0.5 * std::log(1.0 - std::conj(a.value) * z.value));
}

} // namespace disksym
