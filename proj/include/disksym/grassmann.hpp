#pragma once

#include "disksym/eigenspaces.hpp"

namespace disksym {

// Finite model of a closed subspace, extracted from a truncated projection.
//
// The compression of an orthogonal projection to the window
// span{z^n : -B <= n < B} has eigenvalues clustered at {0,1} plus a fuzzy
// boundary layer.  Only confidently resolved directions enter the model:
// `basis` spans eigenvectors with eigenvalue > 1-conf, `kernel` those with
// eigenvalue < conf.  The layer in between belongs to neither side and is
// excluded from every geometric question.  The window has even dimension 2B
// so that parity-split pairs (E, O and their Moebius images) model with
// matching dimensions.
struct SubspaceModel {
    Eigen::MatrixXcd basis;
    Eigen::MatrixXcd kernel;
    Eigen::VectorXd spectrum;
    int window = 0; // B; window indices [-B, B-1] inside order-N ambient
    int order = 0;
    std::string label;

    int dim() const { return static_cast<int>(basis.cols()); }
    int codim() const { return static_cast<int>(kernel.cols()); }
};

inline constexpr double kDefaultConfidence = 1e-3;
inline constexpr double kIntersectTol = 1e-6;

// widest window with entrywise-accurate projections for this pair
int pair_window(const ProjectionMatrix& P, const ProjectionMatrix& Q);

SubspaceModel make_model(const ProjectionMatrix& P, int window_B,
                         double conf = kDefaultConfidence);
// model of the orthocomplement: swaps basis and kernel
SubspaceModel complement(const SubspaceModel& S);

// singular values of basis_S^H basis_T, descending
std::vector<double> principal_cosines(const SubspaceModel& S, const SubspaceModel& T);
std::vector<double> principal_cosines(const ProjectionMatrix& P, const ProjectionMatrix& Q);

struct Dims4 {
    int meet = 0;       // dim S cap T
    int meet_perp = 0;  // dim S cap T^perp
    int perp_meet = 0;  // dim S^perp cap T
    int perp_perp = 0;  // dim S^perp cap T^perp
    bool operator==(const Dims4&) const = default;
};

Dims4 intersection_dims(const SubspaceModel& S, const SubspaceModel& T,
                        double tol = kIntersectTol);
// same counts at two truncation orders; UnstableRank if they differ
Dims4 stable_intersection_dims(const SubspaceModel& S1, const SubspaceModel& T1,
                               const SubspaceModel& S2, const SubspaceModel& T2,
                               double tol = kIntersectTol);

// eigenvalues (ascending) of P_S - P_T restricted to span(S, T); the
// restriction removes the deficiency kernel the window model would otherwise
// park at 0
std::vector<double> difference_spectrum(const SubspaceModel& S, const SubspaceModel& T);

double product_norm(const SubspaceModel& S, const SubspaceModel& T); // ||P_S P_T||
double triple_norm(const SubspaceModel& S, const SubspaceModel& T);  // ||P_S P_T P_S||

enum class GeodesicOutcome { yes_unique, yes_many, no };
const char* to_string(GeodesicOutcome o);

// Remark-7 criterion: dim(S cap T^perp) vs dim(S^perp cap T).  Dimensions
// that scale with the window are the finite shadow of infinite dimension and
// count as equal when both exceed window/4.
GeodesicOutcome geodesic_exists(const SubspaceModel& S, const SubspaceModel& T,
                                double tol = kIntersectTol);

struct GeodesicSegment {
    Eigen::MatrixXcd generator; // Z, skew, S-codiagonal, on window coords
    Eigen::MatrixXcd start;     // P_S (trimmed to the common rank)
    Eigen::MatrixXcd target;    // P_T (trimmed)
    double skew_residual = 0.0;
    double codiag_residual = 0.0;
    double norm_bound = 0.0;
    int trimmed_from_S = 0;
    int trimmed_from_T = 0;
};

// Direct-rotation generator between two orthonormal bases of equal rank
// (ranks are equalized by dropping the least confident columns).  gamma(t) =
// e^{tZ} P_S e^{-tZ}, gamma(1) = P_T.
GeodesicSegment geodesic_between(const Eigen::MatrixXcd& BS, const Eigen::MatrixXcd& BT);
GeodesicSegment geodesic_generator(const SubspaceModel& S, const SubspaceModel& T);
Eigen::MatrixXcd geodesic_point(const GeodesicSegment& seg, double t);

struct PairReport {
    std::string label_S, label_T;
    int order = 0;
    int window = 0;
    std::vector<double> cosines;
    Dims4 dims;
    std::vector<double> diff_spectrum;
    double triple_norm = 0.0;
    double product_norm = 0.0;
};

PairReport make_pair_report(const SubspaceModel& S, const SubspaceModel& T,
                            double tol = kIntersectTol);

} // namespace disksym
