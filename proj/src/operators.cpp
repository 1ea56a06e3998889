#include "disksym/operators.hpp"

#include <cmath>

#include <Eigen/Eigenvalues>

#include <unsupported/Eigen/FFT>

namespace disksym {

namespace {

std::vector<cplx> fft_fwd(std::vector<cplx> data) {
    static thread_local Eigen::FFT<double> fft;
    std::vector<cplx> out(data.size());
    fft.fwd(out, data);
    return out;
}

} // namespace

OperatorMatrix build_composition(const DiskPoint& a, int N, int oversample) {
    SampleGrid g = SampleGrid::for_order(N, oversample);
    const int M = g.size;
    std::vector<cplx> phi(M);
    for (int j = 0; j < M; ++j) phi[j] = eval_phi(a, g.nodes[j]);

    OperatorMatrix T;
    T.order = N;
    T.label = "Ca";
    T.params["a"] = a.value;
    T.decay_rho = a.abs();
    T.entry_band = N;
    T.entries = Eigen::MatrixXcd::Zero(2 * N + 1, 2 * N + 1);

    std::vector<cplx> cur(M, 1.0);
    for (int n = 0; n <= N; ++n) {
        if (n > 0)
            for (int j = 0; j < M; ++j) cur[j] *= phi[j];
        std::vector<cplx> freq = fft_fwd(cur);
        for (int m = -N; m <= N; ++m) {
            const int k = ((m % M) + M) % M;
            T.entries(m + N, n + N) = freq[k] / static_cast<double>(M);
        }
        if (n > 0) {
            // phi^{-n} = conj(phi^n) on the circle:
            // coeff(-n at m) = conj(coeff(n at -m))
            for (int m = -N; m <= N; ++m)
                T.entries(m + N, N - n) = std::conj(T.entries(N - m, n + N));
        }
    }
    return T;
}

OperatorMatrix build_multiplication(const SymbolFunction& g, int N, int oversample) {
    SampleGrid grid = SampleGrid::for_order(2 * N, oversample);
    const int M = grid.size;
    std::vector<cplx> samples(M);
    for (int j = 0; j < M; ++j) samples[j] = g.fn(grid.nodes[j]);
    std::vector<cplx> freq = fft_fwd(samples);

    auto ghat = [&](int k) { return freq[((k % M) + M) % M] / static_cast<double>(M); };

    OperatorMatrix T;
    T.order = N;
    T.label = "Mult";
    T.decay_rho = g.decay_rho;
    T.entry_band = N;
    T.entries = Eigen::MatrixXcd::Zero(2 * N + 1, 2 * N + 1);
    for (int m = -N; m <= N; ++m)
        for (int n = -N; n <= N; ++n)
            T.entries(m + N, n + N) = ghat(m - n);
    const double edge = std::max({std::abs(ghat(2 * N)), std::abs(ghat(-2 * N)),
                                  std::abs(ghat(2 * N - 1)), std::abs(ghat(-(2 * N - 1)))});
    T.alias_warning = edge > 1e-10;
    return T;
}

SymbolFunction modulus_symbol(const DiskPoint& a) {
    const cplx ab = std::conj(a.value);
    const double c = std::sqrt(1.0 - std::norm(a.value));
    return {[=](cplx z) { return cplx(c / std::abs(1.0 - ab * z), 0.0); },
            "(1-|a|^2)^{1/2}/|1-conj(a)z|", a.abs()};
}

SymbolFunction szego_weight_symbol(const DiskPoint& a) {
    const cplx ab = std::conj(a.value);
    const double c = std::sqrt(1.0 - std::norm(a.value));
    return {[=](cplx z) { return c / (1.0 - ab * z); },
            "(1-|a|^2)^{1/2}/(1-conj(a)z)", a.abs()};
}

SymbolFunction adjoint_weight_symbol(const DiskPoint& a) {
    const cplx ab = std::conj(a.value);
    const double c = 1.0 - std::norm(a.value);
    return {[=](cplx z) { return cplx(c / std::norm(1.0 - ab * z), 0.0); },
            "(1-|a|^2)/|1-conj(a)z|^2", a.abs()};
}

SymbolFunction ando_symbol_fn(const DiskPoint& a) {
    const cplx ab = std::conj(a.value);
    const double c = 1.0 - std::norm(a.value);
    return {[=](cplx z) { return cplx(1.0 / (1.0 + c / std::norm(1.0 - ab * z)), 0.0); },
            "ando", a.abs()};
}

int trusted_entry_band(const OperatorMatrix& T) {
    if (T.entry_band >= 0) return std::min(T.entry_band, T.order);
    return entry_window(T.order, T.decay_rho);
}

OperatorMatrix matmul(const OperatorMatrix& A, const OperatorMatrix& B, std::string label) {
    if (A.order != B.order)
        throw std::invalid_argument("matmul: mismatched truncation orders");
    OperatorMatrix T;
    T.order = A.order;
    T.label = std::move(label);
    T.params = A.params;
    for (auto& [k, v] : B.params) T.params.emplace(k, v);
    T.decay_rho = std::max(A.decay_rho, B.decay_rho);
    T.entry_band = std::min(trusted_entry_band(A), trusted_entry_band(B)) -
                   decay_margin(T.decay_rho);
    T.entries = A.entries * B.entries;
    T.alias_warning = A.alias_warning || B.alias_warning;
    return T;
}

OperatorMatrix build_adjoint_composition(const DiskPoint& a, int N) {
    OperatorMatrix T = matmul(build_multiplication(adjoint_weight_symbol(a), N),
                              build_composition(a, N), "CaStar");
    T.params["a"] = a.value;
    return T;
}

OperatorMatrix build_modulus(const DiskPoint& a, int N) {
    OperatorMatrix T = build_multiplication(modulus_symbol(a), N);
    T.label = "AbsCa";
    T.params["a"] = a.value;
    return T;
}

OperatorMatrix build_R(const DiskPoint& a, int N) {
    OperatorMatrix T = matmul(build_multiplication(modulus_symbol(a), N),
                              build_composition(a, N), "Ra");
    T.params["a"] = a.value;
    return T;
}

OperatorMatrix build_W(const DiskPoint& a, int N) {
    OperatorMatrix T = matmul(build_multiplication(szego_weight_symbol(a), N),
                              build_composition(a, N), "Wa");
    T.params["a"] = a.value;
    return T;
}

OperatorMatrix build_V(int N) {
    OperatorMatrix T;
    T.order = N;
    T.label = "V";
    T.entry_band = T.order;
    T.entries = Eigen::MatrixXcd::Zero(2 * N + 1, 2 * N + 1);
    for (int n = -N; n <= N; ++n) T.entries(-n + N, n + N) = 1.0;
    return T;
}

OperatorMatrix build_rotation(double theta, int N) {
    OperatorMatrix T;
    T.order = N;
    T.label = "Utheta";
    T.entry_band = T.order;
    T.params["theta"] = theta;
    T.entries = Eigen::MatrixXcd::Zero(2 * N + 1, 2 * N + 1);
    for (int n = -N; n <= N; ++n)
        T.entries(n + N, n + N) = std::polar(1.0, -n * theta);
    return T;
}

OperatorMatrix build_C0(int N) {
    OperatorMatrix T;
    T.order = N;
    T.label = "C0";
    T.entry_band = T.order;
    T.entries = Eigen::MatrixXcd::Zero(2 * N + 1, 2 * N + 1);
    for (int n = -N; n <= N; ++n)
        T.entries(n + N, n + N) = (n % 2 == 0) ? 1.0 : -1.0;
    return T;
}

OperatorMatrix build_parity_projection(Parity p, int N) {
    OperatorMatrix T;
    T.order = N;
    T.label = "Eps";
    T.entry_band = T.order;
    T.entries = Eigen::MatrixXcd::Zero(2 * N + 1, 2 * N + 1);
    for (int n = -N; n <= N; ++n) {
        const bool even = ((n % 2) == 0);
        if ((p == Parity::even) == even) T.entries(n + N, n + N) = 1.0;
    }
    return T;
}

double op_norm(const Eigen::MatrixXcd& A) {
    if (A.rows() == 0 || A.cols() == 0) return 0.0;
    Eigen::MatrixXcd H = A.adjoint() * A;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(H, Eigen::EigenvaluesOnly);
    const double lmax = es.eigenvalues().maxCoeff();
    return std::sqrt(std::max(0.0, lmax));
}

double op_norm(const OperatorMatrix& T) { return op_norm(T.entries); }

std::vector<double> self_adjoint_spectrum(const OperatorMatrix& T, double tol) {
    const double defect = (T.entries - T.entries.adjoint()).cwiseAbs().maxCoeff();
    if (defect > tol)
        throw NotSelfAdjoint("self_adjoint_spectrum: ||T - T*|| = " + std::to_string(defect));
    Eigen::MatrixXcd H = 0.5 * (T.entries + T.entries.adjoint());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(H, Eigen::EigenvaluesOnly);
    std::vector<double> out(es.eigenvalues().data(), es.eigenvalues().data() + es.eigenvalues().size());
    return out;
}

double gamma_ab(const DiskPoint& a, const DiskPoint& b, int gridM) {
    if (gridM < 1024) throw std::invalid_argument("gamma_ab: grid must be >= 1024");
    const double ca = std::sqrt(1.0 - std::norm(a.value));
    const double cb = std::sqrt(1.0 - std::norm(b.value));
    double best = 0.0;
    for (int j = 0; j < gridM; ++j) {
        const cplx z = std::polar(1.0, 2.0 * M_PI * j / gridM);
        const double v = std::abs(ca / std::abs(1.0 - std::conj(a.value) * z) -
                                  cb / std::abs(1.0 - std::conj(b.value) * z));
        best = std::max(best, v);
    }
    return best;
}

Eigen::VectorXcd apply(const OperatorMatrix& T, const TrigPoly& f) {
    if (f.order != T.order)
        throw std::invalid_argument("apply: order mismatch");
    return T.entries * f.coeffs;
}

int decay_margin(double rho, double eps) {
    if (rho < 0.05) return 2;
    return static_cast<int>(std::ceil(std::log(eps) / std::log(rho)));
}

double spread_velocity(double abs_a) {
    return (1.0 + abs_a) / (1.0 - abs_a);
}

int entry_window(int N, double rho, double eps) {
    return N - decay_margin(rho, eps);
}

int velocity_band(int N, double velocity, double kappa) {
    return std::max(4, static_cast<int>(kappa * N / velocity));
}

Eigen::MatrixXcd central_band(const Eigen::MatrixXcd& A, int N, int B) {
    if (B > N) B = N;
    return A.block(N - B, N - B, 2 * B + 1, 2 * B + 1);
}

double band_residual(const Eigen::MatrixXcd& A, int N, int B) {
    return op_norm(central_band(A, N, B));
}

} // namespace disksym
