#include "disksym/grassmann.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

namespace disksym {

namespace {

Eigen::MatrixXcd window_block(const Eigen::MatrixXcd& A, int N, int B) {
    // indices [-B, B-1] -> rows/cols [N-B, N+B)
    return A.block(N - B, N - B, 2 * B, 2 * B);
}

Eigen::MatrixXcd orth_span(const Eigen::MatrixXcd& J, double tol = 1e-8) {
    if (J.cols() == 0) return J;
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(J, Eigen::ComputeThinU);
    int r = 0;
    for (int i = 0; i < svd.singularValues().size(); ++i)
        if (svd.singularValues()(i) > tol) ++r;
    return svd.matrixU().leftCols(r);
}

} // namespace

int pair_window(const ProjectionMatrix& P, const ProjectionMatrix& Q) {
    if (P.order() != Q.order())
        throw std::invalid_argument("pair_window: order mismatch");
    require_valid(P);
    require_valid(Q);
    int B = std::min(trusted_entry_band(P.base), trusted_entry_band(Q.base));
    B = std::min(B, P.order());
    if (B < 8)
        throw CertificateInvalid("pair_window: window too small at this order");
    return B;
}

SubspaceModel make_model(const ProjectionMatrix& P, int window_B, double conf) {
    require_valid(P);
    const int N = P.order();
    if (window_B < 4 || window_B > N)
        throw std::invalid_argument("make_model: window out of range");
    Eigen::MatrixXcd Pw = window_block(P.matrix(), N, window_B);
    Eigen::MatrixXcd H = 0.5 * (Pw + Pw.adjoint());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(H);
    const auto& w = es.eigenvalues();
    int klo = 0, khi = 0;
    for (int i = 0; i < w.size(); ++i) {
        if (w(i) < conf) ++klo;
        if (w(i) > 1.0 - conf) ++khi;
    }
    SubspaceModel S;
    S.window = window_B;
    S.order = N;
    S.label = P.base.label;
    S.spectrum = w;
    S.kernel = es.eigenvectors().leftCols(klo);
    // eigenvalues ascend, so the most confident basis columns come last
    S.basis = es.eigenvectors().rightCols(khi);
    return S;
}

SubspaceModel complement(const SubspaceModel& S) {
    SubspaceModel T = S;
    std::swap(T.basis, T.kernel);
    T.spectrum = Eigen::VectorXd::Ones(S.spectrum.size()) - S.spectrum;
    T.label = S.label + "^perp";
    return T;
}

std::vector<double> principal_cosines(const SubspaceModel& S, const SubspaceModel& T) {
    if (S.window != T.window || S.order != T.order)
        throw std::invalid_argument("principal_cosines: mismatched models");
    if (S.dim() == 0 || T.dim() == 0) return {};
    Eigen::MatrixXcd G = S.basis.adjoint() * T.basis;
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(G);
    std::vector<double> out(svd.singularValues().data(),
                            svd.singularValues().data() + svd.singularValues().size());
    return out;
}

std::vector<double> principal_cosines(const ProjectionMatrix& P, const ProjectionMatrix& Q) {
    const int B = pair_window(P, Q);
    return principal_cosines(make_model(P, B), make_model(Q, B));
}

namespace {

int count_near_one(const std::vector<double>& cos, double tol) {
    int c = 0;
    for (double v : cos)
        if (v > 1.0 - tol) ++c;
    return c;
}

} // namespace

Dims4 intersection_dims(const SubspaceModel& S, const SubspaceModel& T, double tol) {
    SubspaceModel Sc = complement(S), Tc = complement(T);
    Dims4 d;
    d.meet = count_near_one(principal_cosines(S, T), tol);
    d.meet_perp = count_near_one(principal_cosines(S, Tc), tol);
    d.perp_meet = count_near_one(principal_cosines(Sc, T), tol);
    d.perp_perp = count_near_one(principal_cosines(Sc, Tc), tol);
    return d;
}

Dims4 stable_intersection_dims(const SubspaceModel& S1, const SubspaceModel& T1,
                               const SubspaceModel& S2, const SubspaceModel& T2,
                               double tol) {
    const Dims4 d1 = intersection_dims(S1, T1, tol);
    const Dims4 d2 = intersection_dims(S2, T2, tol);
    // counts of finite intersections must agree; window-scaling ones may not
    auto finite_mismatch = [&](int a, int b) {
        const int big = std::max(4, std::min(S1.window, S2.window) / 4);
        return (a != b) && (a < big || b < big);
    };
    if (finite_mismatch(d1.meet, d2.meet) || finite_mismatch(d1.meet_perp, d2.meet_perp) ||
        finite_mismatch(d1.perp_meet, d2.perp_meet))
        throw UnstableRank("intersection counts changed under order doubling");
    return d2;
}

std::vector<double> difference_spectrum(const SubspaceModel& S, const SubspaceModel& T) {
    if (S.dim() == 0 && T.dim() == 0) return {};
    Eigen::MatrixXcd J(S.basis.rows(), S.dim() + T.dim());
    J << S.basis, T.basis;
    Eigen::MatrixXcd Q = orth_span(J);
    Eigen::MatrixXcd PS = Q.adjoint() * (S.basis * (S.basis.adjoint() * Q));
    Eigen::MatrixXcd PT = Q.adjoint() * (T.basis * (T.basis.adjoint() * Q));
    Eigen::MatrixXcd D = 0.5 * ((PS - PT) + (PS - PT).adjoint());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(D, Eigen::EigenvaluesOnly);
    return std::vector<double>(es.eigenvalues().data(),
                               es.eigenvalues().data() + es.eigenvalues().size());
}

double product_norm(const SubspaceModel& S, const SubspaceModel& T) {
    auto c = principal_cosines(S, T);
    return c.empty() ? 0.0 : c.front();
}

double triple_norm(const SubspaceModel& S, const SubspaceModel& T) {
    const double p = product_norm(S, T);
    return p * p;
}

const char* to_string(GeodesicOutcome o) {
    switch (o) {
        case GeodesicOutcome::yes_unique: return "yes_unique";
        case GeodesicOutcome::yes_many: return "yes_many";
        default: return "no";
    }
}

GeodesicOutcome geodesic_exists(const SubspaceModel& S, const SubspaceModel& T, double tol) {
    const Dims4 d = intersection_dims(S, T, tol);
    const int big = std::max(4, S.window / 4);
    if (d.meet_perp == 0 && d.perp_meet == 0) return GeodesicOutcome::yes_unique;
    if (d.meet_perp == d.perp_meet) return GeodesicOutcome::yes_many;
    if (d.meet_perp >= big && d.perp_meet >= big) return GeodesicOutcome::yes_many;
    return GeodesicOutcome::no;
}

GeodesicSegment geodesic_between(const Eigen::MatrixXcd& BS_in, const Eigen::MatrixXcd& BT_in) {
    const int r = static_cast<int>(std::min(BS_in.cols(), BT_in.cols()));
    if (r == 0) throw LogBranchFailure("geodesic_between: empty subspace model");
    // bases arrive with the most confident directions last
    const Eigen::MatrixXcd BS = BS_in.rightCols(r);
    const Eigen::MatrixXcd BT = BT_in.rightCols(r);
    const int d = static_cast<int>(BS.rows());

    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(BS.adjoint() * BT,
                                           Eigen::ComputeFullU | Eigen::ComputeFullV);
    Eigen::MatrixXcd U = BS * svd.matrixU();  // principal vectors of S
    Eigen::MatrixXcd Wv = BT * svd.matrixV(); // principal vectors of T

    Eigen::MatrixXcd Z = Eigen::MatrixXcd::Zero(d, d);
    for (int k = 0; k < r; ++k) {
        const double c = std::clamp(svd.singularValues()(k), 0.0, 1.0);
        const double theta = std::acos(c);
        const double s = std::sin(theta);
        if (s < 1e-9) continue; // already aligned, nothing to rotate
        Eigen::VectorXcd v = (Wv.col(k) - c * U.col(k)) / s;
        Z += theta * (v * U.col(k).adjoint() - U.col(k) * v.adjoint());
    }

    GeodesicSegment seg;
    seg.generator = Z;
    seg.start = BS * BS.adjoint();
    seg.target = BT * BT.adjoint();
    seg.trimmed_from_S = static_cast<int>(BS_in.cols()) - r;
    seg.trimmed_from_T = static_cast<int>(BT_in.cols()) - r;
    seg.skew_residual = op_norm(Eigen::MatrixXcd(Z + Z.adjoint()));
    Eigen::MatrixXcd epsS = 2.0 * seg.start - Eigen::MatrixXcd::Identity(d, d);
    seg.codiag_residual = op_norm(Eigen::MatrixXcd(Z * epsS + epsS * Z));
    seg.norm_bound = op_norm(Z);
    return seg;
}

GeodesicSegment geodesic_generator(const SubspaceModel& S, const SubspaceModel& T) {
    if (S.window != T.window || S.order != T.order)
        throw std::invalid_argument("geodesic_generator: mismatched models");
    if (geodesic_exists(S, T) != GeodesicOutcome::yes_unique)
        throw LogBranchFailure("geodesic_generator: pair fails the uniqueness criterion");
    return geodesic_between(S.basis, T.basis);
}

Eigen::MatrixXcd geodesic_point(const GeodesicSegment& seg, double t) {
    // Z is skew, iZ Hermitian: e^{tZ} = V e^{-i t diag} V^*
    Eigen::MatrixXcd H = cplx(0.0, 1.0) * seg.generator;
    H = 0.5 * (H + H.adjoint());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(H);
    Eigen::VectorXcd ph(es.eigenvalues().size());
    for (int i = 0; i < ph.size(); ++i)
        ph(i) = std::polar(1.0, -t * es.eigenvalues()(i));
    Eigen::MatrixXcd E = es.eigenvectors() * ph.asDiagonal() * es.eigenvectors().adjoint();
    return E * seg.start * E.adjoint();
}

PairReport make_pair_report(const SubspaceModel& S, const SubspaceModel& T, double tol) {
    PairReport r;
    r.label_S = S.label;
    r.label_T = T.label;
    r.order = S.order;
    r.window = S.window;
    r.cosines = principal_cosines(S, T);
    if (r.cosines.size() > 16) r.cosines.resize(16);
    r.dims = intersection_dims(S, T, tol);
    r.diff_spectrum = difference_spectrum(S, T);
    r.product_norm = product_norm(S, T);
    r.triple_norm = r.product_norm * r.product_norm;
    return r;
}

} // namespace disksym
