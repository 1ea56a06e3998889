#pragma once

#include <functional>
#include <map>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "disksym/circle_space.hpp"
#include "disksym/moebius.hpp"

namespace disksym {

// Bounded symbol on the circle together with the decay radius of its Fourier
// coefficients (|ghat(k)| ~ rho^|k|), used to size trustworthy bands.
struct SymbolFunction {
    std::function<cplx(cplx)> fn;
    std::string note;
    double decay_rho = 0.0;
};

// Dense matrix of a truncated operator on span{z^n : |n| <= N},
// entries(m+N, n+N) = <T z^n, z^m>.
struct OperatorMatrix {
    int order = 0;
    Eigen::MatrixXcd entries;
    std::string label;
    std::map<std::string, cplx> params;
    double decay_rho = 0.0; // worst Toeplitz-symbol decay radius among factors
    int entry_band = -1;    // |index| range with entrywise-accurate values; -1 = derive
    bool alias_warning = false;

    int dim() const { return 2 * order + 1; }
    cplx entry(int m, int n) const { return entries(m + order, n + order); }
};

// entry_band if set, else order minus the symbol-decay margin
int trusted_entry_band(const OperatorMatrix& T);

OperatorMatrix build_composition(const DiskPoint& a, int N, int oversample = 8);
OperatorMatrix build_multiplication(const SymbolFunction& g, int N, int oversample = 8);
OperatorMatrix build_adjoint_composition(const DiskPoint& a, int N);
OperatorMatrix build_modulus(const DiskPoint& a, int N);
OperatorMatrix build_R(const DiskPoint& a, int N);
OperatorMatrix build_W(const DiskPoint& a, int N);
OperatorMatrix build_V(int N);
OperatorMatrix build_rotation(double theta, int N);
OperatorMatrix build_C0(int N);
OperatorMatrix build_parity_projection(Parity p, int N);

// canonical symbols
SymbolFunction modulus_symbol(const DiskPoint& a);     // (1-|a|^2)^{1/2}/|1-conj(a) z|
SymbolFunction szego_weight_symbol(const DiskPoint& a); // (1-|a|^2)^{1/2}/(1-conj(a) z)
SymbolFunction adjoint_weight_symbol(const DiskPoint& a); // (1-|a|^2)/|1-conj(a) z|^2
SymbolFunction ando_symbol_fn(const DiskPoint& a);

// largest singular value via the Hermitian square
double op_norm(const Eigen::MatrixXcd& A);
double op_norm(const OperatorMatrix& T);

// eigenvalues (ascending) after symmetrization; requires near self-adjointness
std::vector<double> self_adjoint_spectrum(const OperatorMatrix& T, double tol = 1e-8);

// sup over an M-point grid of | |C_a| - |C_b| | symbol difference
double gamma_ab(const DiskPoint& a, const DiskPoint& b, int gridM = 4096);

OperatorMatrix matmul(const OperatorMatrix& A, const OperatorMatrix& B, std::string label = "Composite");
Eigen::VectorXcd apply(const OperatorMatrix& T, const TrigPoly& f);

// --- trustworthy-band utilities -------------------------------------------
//
// Truncation is lossy: C_a spreads frequency n over [n/v, n v] with
// v = (1+|a|)/(1-|a|), and Toeplitz factors decay like rho^|lag|.  Identities
// between products of truncated matrices therefore hold only on a central
// band whose width respects both effects.

// number of lags after which rho^k drops below eps
int decay_margin(double rho, double eps = 1e-9);

// spread velocity of phi_a on the circle
double spread_velocity(double abs_a);

// widest band with entrywise-accurate products: N - decay_margin(rho)
int entry_window(int N, double rho, double eps = 1e-9);

// band on which operator identities with net spread velocity v hold:
// kappa * N / v
int velocity_band(int N, double velocity, double kappa = 0.6);

// central band submatrix, indices [-B, B]
Eigen::MatrixXcd central_band(const Eigen::MatrixXcd& A, int N, int B);
// spectral norm of the central band
double band_residual(const Eigen::MatrixXcd& A, int N, int B);

} // namespace disksym
