#pragma once

#include "disksym/operators.hpp"

namespace disksym {

// Matrix of an orthogonal projection together with residual certificates.
// Certificates are measured on the trustworthy central band: idempotency and
// self-adjointness of a product of truncated factors are meaningful only
// where truncation has not discarded image frequencies.
struct ProjectionMatrix {
    OperatorMatrix base;
    double idempotency_residual = 0.0;
    double selfadjoint_residual = 0.0;
    double trace_estimate = 0.0;
    int cert_band = 0;

    int order() const { return base.order; }
    const Eigen::MatrixXcd& matrix() const { return base.entries; }
};

inline constexpr double kCertValid = 1e-6;   // consumers require this much
inline constexpr double kCertRefuse = 1e-4;  // builders refuse beyond this

// Ando's closed form (I + sign*C_a) M_{psi_a}.  Throws ResidualTooLarge when
// the truncation order cannot carry the parameter (window too small or
// residuals beyond 1e-4).
ProjectionMatrix projection_C(const DiskPoint& a, int sign, int N);

// (I + sign*S)/2 for a symmetry S (S^2 = I, S = S*); certificates checked on
// the band first, NotASymmetry otherwise.
ProjectionMatrix projection_symmetry(const OperatorMatrix& S, int sign);

// U P U^* for a self-adjoint unitary U (V, U_theta, R_b, W_b);
// recomputes certificates.
ProjectionMatrix conjugate_projection(const OperatorMatrix& U, const ProjectionMatrix& P);

void require_valid(const ProjectionMatrix& P, double tol = kCertValid);

struct SubspaceBasis {
    Eigen::MatrixXcd columns; // orthonormal, (2N+1) x k
    std::string source;
    double rank_tol = 1e-8;
    int order = 0;
};

// Orthonormalized {C_{omega_a} z^k} with k even (sign=+1) or odd (sign=-1),
// |k| <= m_max <= N/4.
SubspaceBasis basis_N_C(const DiskPoint& a, int sign, int m_max, int N);
// weighted images M_{1/|1-conj(a)z|^{1/2}} resp. M_{1/(1-conj(a)z)^{1/2}}
SubspaceBasis basis_N_R(const DiskPoint& a, int sign, int m_max, int N);
SubspaceBasis basis_N_W(const DiskPoint& a, int sign, int m_max, int N);

// membership defect for N(R_a - I): L2 norm of the odd part of
// (|1+conj(w)z|/|1-conj(w)z|)^{1/2} f(phi_w(z)), w = omega_a
double check_characterization_R(const DiskPoint& a, const TrigPoly& f, int gridM = 4096);

// <C_a g, 1> for g supported in negative frequencies (quadrature)
cplx hminus_constant_coefficient(const DiskPoint& a, const TrigPoly& g, int gridM = 4096);

} // namespace disksym
