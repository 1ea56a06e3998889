#include "disksym/eigenspaces.hpp"

#include <cmath>

namespace disksym {

namespace {

int certificate_band(int N, double velocity, int entry_band) {
    if (entry_band < 4)
        throw ResidualTooLarge("truncation order " + std::to_string(N) +
                               " cannot carry this parameter (trusted band " +
                               std::to_string(entry_band) + ")");
    return std::min(velocity_band(N, velocity), entry_band);
}

void fill_certificates(ProjectionMatrix& P, double velocity) {
    const int N = P.base.order;
    P.cert_band = certificate_band(N, velocity, trusted_entry_band(P.base));
    const Eigen::MatrixXcd& M = P.base.entries;
    P.idempotency_residual = band_residual(M * M - M, N, P.cert_band);
    P.selfadjoint_residual = band_residual(M - M.adjoint(), N, P.cert_band);
    P.trace_estimate = M.trace().real();
    if (P.idempotency_residual > kCertRefuse || P.selfadjoint_residual > kCertRefuse)
        throw ResidualTooLarge("projection certificates exceed 1e-4 (idem=" +
                               std::to_string(P.idempotency_residual) + ", sa=" +
                               std::to_string(P.selfadjoint_residual) + ")");
}

} // namespace

ProjectionMatrix projection_C(const DiskPoint& a, int sign, int N) {
    if (sign != 1 && sign != -1)
        throw std::invalid_argument("projection_C: sign must be +1 or -1");
    OperatorMatrix C = build_composition(a, N);
    OperatorMatrix Mpsi = build_multiplication(ando_symbol_fn(a), N);
    OperatorMatrix P;
    P.order = N;
    P.label = sign > 0 ? "ProjPlus" : "ProjMinus";
    P.params["a"] = a.value;
    P.decay_rho = a.abs();
    P.entry_band = N - decay_margin(a.abs());
    P.entries = Mpsi.entries + static_cast<double>(sign) * (C.entries * Mpsi.entries);

    ProjectionMatrix out;
    out.base = std::move(P);
    fill_certificates(out, spread_velocity(a.abs()));
    return out;
}

ProjectionMatrix projection_symmetry(const OperatorMatrix& S, int sign) {
    if (sign != 1 && sign != -1)
        throw std::invalid_argument("projection_symmetry: sign must be +1 or -1");
    const int N = S.order;
    double abs_a = 0.0;
    if (auto it = S.params.find("a"); it != S.params.end()) abs_a = std::abs(it->second);
    int band;
    try {
        band = certificate_band(N, spread_velocity(abs_a), trusted_entry_band(S));
    } catch (const ResidualTooLarge& e) {
        throw NotASymmetry(e.what());
    }
    const Eigen::MatrixXcd I = Eigen::MatrixXcd::Identity(S.dim(), S.dim());
    const double invol = band_residual(S.entries * S.entries - I, N, band);
    const double selfadj = band_residual(S.entries - S.entries.adjoint(), N, band);
    if (invol > kCertValid || selfadj > kCertValid)
        throw NotASymmetry("operator is not a symmetry on the certificate band (S2-I=" +
                           std::to_string(invol) + ", S-S*=" + std::to_string(selfadj) + ")");

    ProjectionMatrix out;
    out.base.order = N;
    out.base.label = sign > 0 ? "SymProjPlus" : "SymProjMinus";
    out.base.params = S.params;
    out.base.decay_rho = S.decay_rho;
    out.base.entry_band = trusted_entry_band(S);
    out.base.entries = 0.5 * (I + static_cast<double>(sign) * S.entries);
    out.cert_band = band;
    out.idempotency_residual =
        band_residual(out.base.entries * out.base.entries - out.base.entries, N, band);
    out.selfadjoint_residual = selfadj / 2.0;
    out.trace_estimate = out.base.entries.trace().real();
    return out;
}

ProjectionMatrix conjugate_projection(const OperatorMatrix& U, const ProjectionMatrix& P) {
    if (U.order != P.base.order)
        throw std::invalid_argument("conjugate_projection: order mismatch");
    double abs_u = 0.0;
    if (auto it = U.params.find("a"); it != U.params.end()) abs_u = std::abs(it->second);
    double abs_p = 0.0;
    if (auto it = P.base.params.find("a"); it != P.base.params.end())
        abs_p = std::abs(it->second);
    const double vu = spread_velocity(abs_u);

    ProjectionMatrix out;
    out.base.order = P.base.order;
    out.base.label = "Conj(" + U.label + "," + P.base.label + ")";
    out.base.params = P.base.params;
    for (auto& [k, v] : U.params) out.base.params.emplace("u_" + k, v);
    out.base.decay_rho = std::max(U.decay_rho, P.base.decay_rho);
    // the sandwich spreads frequencies by the unitary's velocity on each
    // side, so both the trusted entries and the certificate band shrink
    const int inner = std::min(trusted_entry_band(U), trusted_entry_band(P.base));
    out.base.entry_band = static_cast<int>((inner - decay_margin(U.decay_rho)) / vu);
    out.base.entries = U.entries * P.base.entries * U.entries.adjoint();
    fill_certificates(out, vu * vu * spread_velocity(abs_p));
    return out;
}

void require_valid(const ProjectionMatrix& P, double tol) {
    if (P.idempotency_residual > tol || P.selfadjoint_residual > tol)
        throw CertificateInvalid("projection certificates exceed " + std::to_string(tol));
}

namespace {

// modified Gram-Schmidt with one re-orthogonalization pass
Eigen::MatrixXcd orthonormalize(Eigen::MatrixXcd A, double drop_tol) {
    const int n = static_cast<int>(A.cols());
    Eigen::MatrixXcd Q(A.rows(), n);
    int k = 0;
    for (int j = 0; j < n; ++j) {
        Eigen::VectorXcd v = A.col(j);
        const double orig = v.norm();
        for (int pass = 0; pass < 2; ++pass)
            for (int i = 0; i < k; ++i) v -= Q.col(i).dot(v) * Q.col(i);
        const double nv = v.norm();
        if (nv < drop_tol * orig || nv == 0.0)
            throw RankDeficient("orthonormalize: column " + std::to_string(j) + " dropped");
        Q.col(k++) = v / nv;
    }
    return Q.leftCols(k);
}

Eigen::MatrixXcd composition_columns(const DiskPoint& w, int N, int parity_start, int m_max) {
    OperatorMatrix Cw = build_composition(w, N);
    // enumerate exponents outward from 0 so the first basis column tracks the
    // lowest monomial image
    std::vector<int> ks;
    for (int k = parity_start; k <= m_max; k += 2) {
        ks.push_back(k);
        if (k > 0 && -k >= -m_max) ks.push_back(-k);
    }
    Eigen::MatrixXcd A(2 * N + 1, ks.size());
    for (size_t j = 0; j < ks.size(); ++j) A.col(j) = Cw.entries.col(ks[j] + N);
    return A;
}

Eigen::MatrixXcd weight_columns(const Eigen::MatrixXcd& A, int N,
                                const std::function<cplx(cplx)>& weight) {
    SampleGrid g = SampleGrid::for_order(N, 8);
    std::vector<cplx> wv(g.size);
    for (int j = 0; j < g.size; ++j) wv[j] = weight(g.nodes[j]);
    Eigen::MatrixXcd out(A.rows(), A.cols());
    for (int c = 0; c < A.cols(); ++c) {
        TrigPoly f(N);
        f.coeffs = A.col(c);
        std::vector<cplx> s = synthesize(f, g);
        for (int j = 0; j < g.size; ++j) s[j] *= wv[j];
        out.col(c) = analyze(s, N).coeffs;
    }
    return out;
}

} // namespace

SubspaceBasis basis_N_C(const DiskPoint& a, int sign, int m_max, int N) {
    if (m_max > N / 4)
        throw std::invalid_argument("basis_N_C: m_max must be <= N/4");
    const DiskPoint w = fixed_point_omega(a);
    Eigen::MatrixXcd A = composition_columns(w, N, sign > 0 ? 0 : 1, m_max);
    SubspaceBasis b;
    b.columns = orthonormalize(std::move(A), 1e-8);
    b.source = sign > 0 ? "C_omega even monomials" : "C_omega odd monomials";
    b.order = N;
    return b;
}

SubspaceBasis basis_N_R(const DiskPoint& a, int sign, int m_max, int N) {
    if (m_max > N / 4)
        throw std::invalid_argument("basis_N_R: m_max must be <= N/4");
    const DiskPoint w = fixed_point_omega(a);
    const cplx ab = std::conj(a.value);
    Eigen::MatrixXcd A = composition_columns(w, N, sign > 0 ? 0 : 1, m_max);
    A = weight_columns(A, N, [ab](cplx z) {
        return cplx(1.0 / std::sqrt(std::abs(1.0 - ab * z)), 0.0);
    });
    SubspaceBasis b;
    b.columns = orthonormalize(std::move(A), 1e-8);
    b.source = "weighted C_omega monomials (R)";
    b.order = N;
    return b;
}

SubspaceBasis basis_N_W(const DiskPoint& a, int sign, int m_max, int N) {
    if (m_max > N / 4)
        throw std::invalid_argument("basis_N_W: m_max must be <= N/4");
    const DiskPoint w = fixed_point_omega(a);
    const cplx ab = std::conj(a.value);
    Eigen::MatrixXcd A = composition_columns(w, N, sign > 0 ? 0 : 1, m_max);
    // N(W_a - I) = M_{(1-conj(a)z)^{-1/2}} N(C_a - I): the defining relation
    // "(1-conj(a)z)^{1/2} f in N(C_a-I)" inverts the weight.
    A = weight_columns(A, N, [ab](cplx z) {
        return std::exp(-0.5 * std::log(1.0 - ab * z));
    });
    SubspaceBasis b;
    b.columns = orthonormalize(std::move(A), 1e-8);
    b.source = "weighted C_omega monomials (W)";
    b.order = N;
    return b;
}

double check_characterization_R(const DiskPoint& a, const TrigPoly& f, int gridM) {
    const DiskPoint w = fixed_point_omega(a);
    const cplx wb = std::conj(w.value);
    const int M = next_pow2(std::max(gridM, 4 * (2 * f.order + 1)));
    // odd part sampled on a grid closed under z -> -z
    double acc = 0.0;
    std::vector<cplx> vals(M);
    for (int j = 0; j < M; ++j) {
        const cplx z = std::polar(1.0, 2.0 * M_PI * j / M);
        const double wgt = std::sqrt(std::abs(1.0 + wb * z) / std::abs(1.0 - wb * z));
        const cplx pz = eval_phi(w, z);
        vals[j] = wgt * eval_at(f, CirclePoint(pz));
    }
    for (int j = 0; j < M; ++j) {
        const cplx odd = 0.5 * (vals[j] - vals[(j + M / 2) % M]);
        acc += std::norm(odd);
    }
    return std::sqrt(acc / M);
}

cplx hminus_constant_coefficient(const DiskPoint& a, const TrigPoly& g, int gridM) {
    for (int n = 0; n <= g.order; ++n)
        if (std::abs(g.coeff(n)) > 0.0)
            throw std::invalid_argument(
                "hminus_constant_coefficient: g must be supported in n < 0");
    const int M = next_pow2(std::max(gridM, 4 * (2 * g.order + 1)));
    cplx acc = 0.0;
    for (int j = 0; j < M; ++j) {
        const cplx z = std::polar(1.0, 2.0 * M_PI * j / M);
        acc += eval_at(g, CirclePoint(eval_phi(a, z)));
    }
    return acc / static_cast<double>(M);
}

} // namespace disksym
