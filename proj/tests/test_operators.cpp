#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "disksym/detail/rng.hpp"
#include "disksym/operators.hpp"

using namespace disksym;

TEST_CASE("composition at a = 0 is the parity diagonal") {
    OperatorMatrix C = build_composition(DiskPoint(cplx(0.0)), 8);
    for (int m = -8; m <= 8; ++m)
        for (int n = -8; n <= 8; ++n) {
            const cplx want = (m == n) ? ((n % 2 == 0) ? 1.0 : -1.0) : 0.0;
            CHECK(std::abs(C.entry(m, n) - want) < 1e-14);
        }
}

TEST_CASE("composition columns") {
    OperatorMatrix C = build_composition(DiskPoint(0.5, 0.0), 32);
    // constants are fixed
    for (int m = -32; m <= 32; ++m)
        CHECK(std::abs(C.entry(m, 0) - (m == 0 ? 1.0 : 0.0)) < 1e-14);
    // column 1: geometric expansion of (0.5 - z)/(1 - 0.5 z)
    CHECK(std::abs(C.entry(0, 1) - 0.5) < 1e-12);
    for (int m = 1; m <= 20; ++m)
        CHECK(std::abs(C.entry(m, 1) - std::pow(0.5, m - 1) * (0.25 - 1.0)) < 1e-12);
    for (int m = -32; m < 0; ++m)
        CHECK(std::abs(C.entry(m, 1)) < 1e-14);
}

TEST_CASE("negative columns mirror positive ones") {
    OperatorMatrix C = build_composition(DiskPoint(0.4, 0.3), 16);
    for (int n = 1; n <= 16; ++n)
        for (int m = -16; m <= 16; ++m)
            CHECK(std::abs(C.entry(m, -n) - std::conj(C.entry(-m, n))) < 1e-15);
}

TEST_CASE("column structure of C_a on negative frequencies") {
    // C_a maps H^- into constants plus H^-; the constant is conj(a)^{-n}
    OperatorMatrix C = build_composition(DiskPoint(0.3, 0.4), 24);
    const cplx ab = std::conj(cplx(0.3, 0.4));
    for (int n = -1; n >= -6; --n) {
        for (int m = 1; m <= 24; ++m) CHECK(std::abs(C.entry(m, n)) < 1e-10);
        CHECK(std::abs(C.entry(0, n) - std::pow(ab, -n)) < 1e-12);
    }
}

TEST_CASE("multiplication operator") {
    SymbolFunction one{[](cplx) { return cplx(1.0); }, "1", 0.0};
    OperatorMatrix I = build_multiplication(one, 6);
    CHECK((I.entries - Eigen::MatrixXcd::Identity(13, 13)).cwiseAbs().maxCoeff() < 1e-14);

    SymbolFunction zsym{[](cplx z) { return z; }, "z", 0.0};
    OperatorMatrix S = build_multiplication(zsym, 6);
    for (int m = -6; m <= 6; ++m)
        for (int n = -6; n <= 6; ++n)
            CHECK(std::abs(S.entry(m, n) - (m == n + 1 ? 1.0 : 0.0)) < 1e-14);

    // ando symbol: self-adjoint Toeplitz with spectrum inside the symbol range
    OperatorMatrix A = build_multiplication(ando_symbol_fn(DiskPoint(0.6, 0.0)), 32);
    CHECK((A.entries - A.entries.adjoint()).cwiseAbs().maxCoeff() < 1e-13);
    auto eigs = self_adjoint_spectrum(A);
    CHECK(eigs.front() > 0.2);
    CHECK(eigs.back() < 0.8);
    CHECK(!A.alias_warning);

    // a symbol with energy at the band edge trips the alias flag
    SymbolFunction hi{[](cplx z) { return std::pow(z, 12); }, "z^12", 0.0};
    OperatorMatrix H = build_multiplication(hi, 6);
    CHECK(H.alias_warning);
}

TEST_CASE("adjoint composition") {
    OperatorMatrix C0s = build_adjoint_composition(DiskPoint(cplx(0.0)), 8);
    OperatorMatrix C0 = build_C0(8);
    CHECK((C0s.entries - C0.entries).cwiseAbs().maxCoeff() < 1e-13);

    const int N = 64;
    OperatorMatrix Cs = build_adjoint_composition(DiskPoint(0.6, 0.0), N);
    CHECK(std::abs(Cs.entry(0, 0) - 1.0) < 1e-10);

    // agreement with the conjugate transpose of C_a on the trusted band
    OperatorMatrix C = build_composition(DiskPoint(0.6, 0.0), N);
    const int B = velocity_band(N, spread_velocity(0.6));
    CHECK(band_residual(Cs.entries - C.entries.adjoint(), N, B) < 1e-8);

    // <C_a z^{-1}, 1> = conj(a)
    OperatorMatrix C5 = build_composition(DiskPoint(0.5, 0.0), N);
    CHECK(std::abs(C5.entry(0, -1) - 0.5) < 1e-10);
}

TEST_CASE("modulus operator") {
    OperatorMatrix M0 = build_modulus(DiskPoint(cplx(0.0)), 8);
    CHECK((M0.entries - Eigen::MatrixXcd::Identity(17, 17)).cwiseAbs().maxCoeff() < 1e-14);

    const int N = 128;
    OperatorMatrix M = build_modulus(DiskPoint(0.5, 0.0), N);
    CHECK((M.entries - M.entries.adjoint()).cwiseAbs().maxCoeff() < 1e-13);

    OperatorMatrix C = build_composition(DiskPoint(0.5, 0.0), N);
    OperatorMatrix Cs = build_adjoint_composition(DiskPoint(0.5, 0.0), N);
    const int B = velocity_band(N, spread_velocity(0.5));
    CHECK(band_residual(M.entries * M.entries - Cs.entries * C.entries, N, B) < 1e-8);
}

TEST_CASE("R and W at a = 0 collapse to C_0") {
    OperatorMatrix R = build_R(DiskPoint(cplx(0.0)), 8);
    OperatorMatrix W = build_W(DiskPoint(cplx(0.0)), 8);
    OperatorMatrix C0 = build_C0(8);
    CHECK((R.entries - C0.entries).cwiseAbs().maxCoeff() < 1e-13);
    CHECK((W.entries - C0.entries).cwiseAbs().maxCoeff() < 1e-13);
}

TEST_CASE("W preserves the Hardy space") {
    const int N = 64;
    OperatorMatrix W = build_W(DiskPoint(0.5, 0.0), N);
    for (int m = -N; m < 0; ++m)
        for (int n = 0; n <= N; ++n)
            CHECK(std::abs(W.entry(m, n)) < 1e-10);
}

TEST_CASE("R self-adjointness on the trusted band") {
    const int N = 128;
    OperatorMatrix R = build_R(DiskPoint(0.5, 0.0), N);
    const int B = velocity_band(N, spread_velocity(0.5));
    CHECK(band_residual(R.entries - R.entries.adjoint(), N, B) < 1e-8);
}

TEST_CASE("V, rotation, C0, parity") {
    OperatorMatrix V = build_V(8);
    CHECK((V.entries * V.entries - Eigen::MatrixXcd::Identity(17, 17)).cwiseAbs().maxCoeff() ==
          0.0);

    const int N = 32;
    OperatorMatrix U = build_rotation(M_PI_2, N);
    OperatorMatrix Cr = build_composition(DiskPoint(0.5, 0.0), N);
    OperatorMatrix Ci = build_composition(DiskPoint(0.0, 0.5), N);
    Eigen::MatrixXcd lhs = U.entries * Cr.entries * U.entries.adjoint();
    CHECK((lhs - Ci.entries).cwiseAbs().maxCoeff() < 1e-10);

    OperatorMatrix C0 = build_C0(8);
    OperatorMatrix PE = build_parity_projection(Parity::even, 8);
    OperatorMatrix PO = build_parity_projection(Parity::odd, 8);
    CHECK((C0.entries - (PE.entries - PO.entries)).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("operator norms and spectra") {
    CHECK(std::abs(op_norm(build_C0(8)) - 1.0) < 1e-13);
    const double n06 = op_norm(build_composition(DiskPoint(0.6, 0.0), 128));
    CHECK(n06 >= 1.0);
    CHECK(n06 <= 2.0); // || C_a || = ((1+|a|)/(1-|a|))^{1/2} = 2 at 0.6
    CHECK_THROWS_AS(self_adjoint_spectrum(build_composition(DiskPoint(0.5, 0.0), 32)),
                    NotSelfAdjoint);
}

TEST_CASE("gamma_ab") {
    CHECK(gamma_ab(DiskPoint(0.4, 0.1), DiskPoint(0.4, 0.1)) == 0.0);
    // sup_t |1 - 0.8/sqrt(1.36 - 1.2 cos t)| attained at t = 0
    CHECK(std::abs(gamma_ab(DiskPoint(cplx(0.0)), DiskPoint(0.6, 0.0)) - 1.0) < 1e-6);
    detail::Rng rng(3);
    for (int t = 0; t < 5; ++t) {
        const DiskPoint a = rng.disk_point(0.7), b = rng.disk_point(0.7);
        CHECK(gamma_ab(a, b) == gamma_ab(b, a));
    }
    CHECK_THROWS_AS(gamma_ab(DiskPoint(cplx(0.0)), DiskPoint(0.5, 0.0), 512),
                    std::invalid_argument);
}

TEST_CASE("reflection residuals on truncation-aware vectors") {
    // test family supported on the band that survives the frequency spread
    detail::Rng rng(5);
    for (const cplx av : {cplx(0.3, 0.0), cplx(0.0, 0.5), cplx(0.6, 0.0)}) {
        const DiskPoint a(av);
        double prev = 1.0;
        for (int N : {64, 128, 256}) {
            OperatorMatrix C = build_composition(a, N);
            const int B = velocity_band(N, spread_velocity(a.abs()), 0.5);
            double worst = 0.0;
            for (int t = 0; t < 3; ++t) {
                Eigen::VectorXcd f = Eigen::VectorXcd::Zero(2 * N + 1);
                for (int n = -B; n <= B; ++n)
                    f(n + N) = cplx(rng.uniform(-1, 1), rng.uniform(-1, 1));
                f.normalize();
                worst = std::max(worst, (C.entries * (C.entries * f) - f).norm());
            }
            if (N == 128) CHECK(worst < 1e-8);
            if (N > 64) CHECK(worst < std::max(prev, 1e-13));
            prev = worst;
        }
    }
}

TEST_CASE("polar identity on the trusted band") {
    const int N = 128;
    for (const cplx av : {cplx(0.5, 0.0), cplx(0.0, 0.4)}) {
        const DiskPoint a(av);
        OperatorMatrix C = build_composition(a, N);
        OperatorMatrix R = build_R(a, N);
        OperatorMatrix M = build_modulus(a, N);
        const int B = velocity_band(N, spread_velocity(a.abs()));
        CHECK(band_residual(C.entries - R.entries * M.entries, N, B) < 1e-8);
    }
}

TEST_CASE("conjugation identities") {
    const int N = 128;
    for (const cplx av : {cplx(0.5, 0.0), cplx(0.0, 0.4)}) {
        const DiskPoint a(av);
        const DiskPoint w = fixed_point_omega(a);
        const DiskPoint Om = omega_inverse(a);
        const double va = spread_velocity(a.abs());

        OperatorMatrix C = build_composition(a, N);
        OperatorMatrix R = build_R(a, N);
        OperatorMatrix W = build_W(a, N);
        OperatorMatrix Cs = build_adjoint_composition(a, N);
        OperatorMatrix C0 = build_C0(N);

        const int B1 = std::min(velocity_band(N, va), entry_window(N, a.abs()));
        CHECK(band_residual(R.entries * C.entries * R.entries - Cs.entries, N, B1) < 1e-6);

        OperatorMatrix Cw = build_composition(w, N);
        CHECK(band_residual(Cw.entries * C0.entries * Cw.entries - C.entries, N, B1) < 1e-6);

        const cplx ab = std::conj(a.value);
        const double c2 = 1.0 - std::norm(a.value);
        SymbolFunction wcw{[=](cplx z) { return c2 / ((1.0 - ab * z) * (1.0 - ab * z)); },
                           "(1-|a|^2)/(1-conj(a)z)^2", a.abs()};
        OperatorMatrix Mw = build_multiplication(wcw, N);
        CHECK(band_residual(W.entries * C.entries * W.entries - Mw.entries * C.entries, N, B1) <
              1e-6);

        // pushing C_0 with R_a and W_a lands on the Omega_a symmetries
        OperatorMatrix RO = build_R(Om, N);
        OperatorMatrix WO = build_W(Om, N);
        const int B4 = std::min(velocity_band(N, spread_velocity(Om.abs())),
                                entry_window(N, Om.abs()));
        CHECK(band_residual(R.entries * C0.entries * R.entries - RO.entries, N, B4) < 1e-6);
        CHECK(band_residual(W.entries * C0.entries * W.entries - WO.entries, N, B4) < 1e-6);

        OperatorMatrix Rw = build_R(w, N);
        const cplx wb = std::conj(w.value);
        SymbolFunction ratio{[=](cplx z) {
                                 return cplx(std::abs(1.0 + wb * z) / std::abs(1.0 - wb * z), 0.0);
                             },
                             "|1+conj(w)z|/|1-conj(w)z|", w.abs()};
        OperatorMatrix Mr = build_multiplication(ratio, N);
        const int B6 = std::min(velocity_band(N, spread_velocity(w.abs())),
                                entry_window(N, w.abs()) - decay_margin(w.abs()));
        CHECK(band_residual(Rw.entries * C.entries * Rw.entries - Mr.entries * C0.entries, N,
                            std::max(8, B6)) < 1e-6);

        OperatorMatrix V = build_V(N);
        OperatorMatrix Cbar = build_composition(DiskPoint(std::conj(a.value)), N);
        CHECK(band_residual(V.entries * C.entries - Cbar.entries * V.entries, N, N / 2) < 1e-6);

        SymbolFunction u1{[=](cplx z) { return std::abs(1.0 - ab * z) / (1.0 - ab * z); },
                          "|1-az|/(1-az)", a.abs()};
        SymbolFunction u2{[=](cplx z) { return (1.0 - ab * z) / std::abs(1.0 - ab * z); },
                          "(1-az)/|1-az|", a.abs()};
        OperatorMatrix M1 = build_multiplication(u1, N);
        OperatorMatrix M2 = build_multiplication(u2, N);
        CHECK(band_residual(W.entries * R.entries - M1.entries, N, B1) < 1e-6);
        CHECK(band_residual(R.entries * W.entries - M2.entries, N, B1) < 1e-6);
    }
}

TEST_CASE("adjoint conjugated by R_omega is a polar decomposition") {
    // R_w C_a* R_w = C_0 M_{|1+wz|/|1-wz|}; the multiplication factor is the
    // modulus of the conjugated adjoint
    const int N = 128;
    const DiskPoint a(0.5, 0.0);
    const DiskPoint w = fixed_point_omega(a);
    OperatorMatrix Rw = build_R(w, N);
    OperatorMatrix Cs = build_adjoint_composition(a, N);
    OperatorMatrix C0 = build_C0(N);
    const cplx wb = std::conj(w.value);
    SymbolFunction ratio{[=](cplx z) {
                             return cplx(std::abs(1.0 + wb * z) / std::abs(1.0 - wb * z), 0.0);
                         },
                         "|1+wz|/|1-wz|", w.abs()};
    OperatorMatrix Mr = build_multiplication(ratio, N);
    const int B = std::max(8, std::min(velocity_band(N, spread_velocity(w.abs())),
                                       entry_window(N, w.abs()) - decay_margin(w.abs())));
    CHECK(band_residual(Rw.entries * Cs.entries * Rw.entries - C0.entries * Mr.entries, N, B) <
          1e-6);
}

TEST_CASE("matrix level dot law") {
    const int N = 128;
    const DiskPoint d(1.0 / 3.0, 0.0), b(0.6, 0.0);
    OperatorMatrix Cd = build_composition(d, N);
    OperatorMatrix Cb = build_composition(b, N);
    OperatorMatrix Cdb = build_composition(dot_compose(d, b), N);
    const double vprod = spread_velocity(d.abs()) * spread_velocity(b.abs());
    const int B = velocity_band(N, vprod);
    CHECK(band_residual(Cd.entries * Cb.entries * Cd.entries - Cdb.entries, N, B) < 1e-6);
}

TEST_CASE("Berkson lower bound probe") {
    const int N = 128;
    detail::Rng rng(2024);
    for (int t = 0; t < 10; ++t) {
        const DiskPoint a = rng.disk_point(0.6);
        const DiskPoint b = rng.disk_point(0.6);
        if (std::abs(a.value - b.value) < 1e-3) continue;
        OperatorMatrix Ca = build_composition(a, N);
        OperatorMatrix Cb = build_composition(b, N);
        CHECK(op_norm(Eigen::MatrixXcd(Ca.entries - Cb.entries)) >= 0.70);
    }
}
