#pragma once

#include <vector>

#include <Eigen/Dense>

#include "disksym/moebius.hpp"

namespace disksym {

enum class Parity { even, odd };

// Finite two-sided Fourier series, coefficient of z^n stored at index n+order,
// n in [-order, order].
struct TrigPoly {
    int order = 1;
    Eigen::VectorXcd coeffs;

    TrigPoly() : coeffs(Eigen::VectorXcd::Zero(3)) {}
    explicit TrigPoly(int N);

    static TrigPoly delta(int n, int N);

    cplx coeff(int n) const;
    void set_coeff(int n, cplx v);
    double norm2() const { return coeffs.norm(); }
};

// Uniform grid of M-th roots of unity; M a power of two.
struct SampleGrid {
    int size = 0;
    std::vector<cplx> nodes;

    explicit SampleGrid(int M);
    // smallest power-of-two grid with M >= oversample*(2*order+1)
    static SampleGrid for_order(int order, int oversample = 8);
};

int next_pow2(int n);

std::vector<cplx> synthesize(const TrigPoly& f, const SampleGrid& g);
TrigPoly analyze(const std::vector<cplx>& samples, int order);

cplx eval_at(const TrigPoly& f, const CirclePoint& z);

TrigPoly pointwise_mul(const TrigPoly& f, const TrigPoly& h);
TrigPoly parity_project(const TrigPoly& f, Parity p);

cplx inner_product(const TrigPoly& f, const TrigPoly& h);

// serialization used by the CLI: CSV rows "n,re,im" and a JSON-ready triple list
std::string to_csv(const TrigPoly& f);
TrigPoly from_csv(const std::string& text);

} // namespace disksym
