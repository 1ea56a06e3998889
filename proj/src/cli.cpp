#include "disksym/cli.hpp"

#include <cmath>
#include <fstream>
#include <future>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "disksym/detail/rng.hpp"

namespace disksym {

namespace {

cplx parse_complex_pair(const std::string& s) {
    const auto comma = s.find(',');
    if (comma == std::string::npos)
        return cplx(std::stod(s), 0.0);
    return cplx(std::stod(s.substr(0, comma)), std::stod(s.substr(comma + 1)));
}

bool modes_ok(int n) {
    for (int p = 16; p <= 512; p <<= 1)
        if (std::abs(n - p) <= 1) return true;
    return false;
}

struct Check {
    std::string name;
    double residual;
    double tol;
    bool pass;
};

json checks_to_json(const std::vector<Check>& checks) {
    json arr = json::array();
    for (const auto& c : checks)
        arr.push_back(json{{"name", c.name},
                           {"residual", c.residual},
                           {"tol", c.tol},
                           {"pass", c.pass}});
    return arr;
}

void push(std::vector<Check>& v, std::string name, double res, double tol) {
    v.push_back({std::move(name), res, tol, res <= tol});
}

} // namespace

json RunConfig::echo() const {
    return json{{"command", command},
                {"a", complex_to_json(a)},
                {"b", has_b ? complex_to_json(b) : json(nullptr)},
                {"modes", modes},
                {"oversample", oversample},
                {"tol", tol},
                {"format", format}};
}

json verify_payload(const RunConfig& cfg, bool& pass) {
    std::vector<Check> checks;
    const double stol = 1e-12;
    detail::Rng rng(0x5eedULL);

    double inv = 0, p1 = 0, p2 = 0, corno = 0, fix = 0, pre = 0;
    for (int t = 0; t < 1000; ++t) {
        const DiskPoint a = rng.disk_point(0.8);
        const DiskPoint w = fixed_point_omega(a);
        const cplx z = rng.circle_point().value;
        inv = std::max(inv, std::abs(eval_phi(a, eval_phi(a, z)) - z));
        p1 = std::max(p1, std::abs(eval_phi(w, eval_phi(a, z)) + eval_phi(w, z)));
        p2 = std::max(p2, std::abs(eval_phi(a, eval_phi(w, z)) -
                                   (-eval_phi(DiskPoint(-w.value), z))));
        const double lhs = std::abs(1.0 - std::conj(a.value) * eval_phi(w, z));
        const double rhs = std::sqrt(1.0 - std::norm(a.value)) *
                           std::abs(1.0 + std::conj(w.value) * z) /
                           std::abs(1.0 - std::conj(w.value) * z);
        corno = std::max(corno, std::abs(lhs - rhs));
        fix = std::max(fix, std::abs(eval_phi(a, w.value) - w.value));
        pre = std::max(pre, std::abs(fixed_point_omega(omega_inverse(a)).value - a.value));
        const DiskPoint O = omega_inverse(a);
        const double l62 = std::abs((1.0 - std::norm(O.value)) -
                                    std::pow(1.0 - std::norm(a.value), 2) /
                                        std::pow(1.0 + std::norm(a.value), 2));
        pre = std::max(pre, l62);
    }
    push(checks, "scalar/involution", inv, stol);
    push(checks, "scalar/phis1", p1, stol);
    push(checks, "scalar/phis2", p2, stol);
    push(checks, "scalar/corno", corno, stol);
    push(checks, "scalar/fixed_point", fix, stol);
    push(checks, "scalar/omega_inverse", pre, stol);

    const DiskPoint a(cfg.a);
    const int N = cfg.modes;
    const double v = spread_velocity(a.abs());
    const int Bv = std::min(velocity_band(N, v), entry_window(N, a.abs()));
    if (entry_window(N, a.abs()) < 8)
        throw ResidualTooLarge("verify: |a| too close to 1 for this order");

    OperatorMatrix C = build_composition(a, N, cfg.oversample);
    OperatorMatrix R = build_R(a, N);
    OperatorMatrix W = build_W(a, N);
    OperatorMatrix Cs = build_adjoint_composition(a, N);
    OperatorMatrix modC = build_modulus(a, N);
    const Eigen::MatrixXcd I = Eigen::MatrixXcd::Identity(C.dim(), C.dim());

    push(checks, "matrix/C2_minus_I", band_residual(C.entries * C.entries - I, N, Bv), cfg.tol);
    push(checks, "matrix/R2_minus_I", band_residual(R.entries * R.entries - I, N, Bv), cfg.tol);
    push(checks, "matrix/W2_minus_I", band_residual(W.entries * W.entries - I, N, Bv), cfg.tol);
    push(checks, "matrix/R_selfadjoint", band_residual(R.entries - R.entries.adjoint(), N, Bv), cfg.tol);
    push(checks, "matrix/W_selfadjoint", band_residual(W.entries - W.entries.adjoint(), N, Bv), cfg.tol);
    push(checks, "matrix/polar_identity", band_residual(C.entries - R.entries * modC.entries, N, Bv), cfg.tol);
    push(checks, "matrix/RCR_minus_Cstar",
         band_residual(R.entries * C.entries * R.entries - Cs.entries, N, Bv), cfg.tol);

    const DiskPoint w = fixed_point_omega(a);
    OperatorMatrix Cw = build_composition(w, N);
    OperatorMatrix C0 = build_C0(N);
    push(checks, "matrix/Comega_C0_Comega_minus_C",
         band_residual(Cw.entries * C0.entries * Cw.entries - C.entries, N, Bv), cfg.tol);

    ProjectionMatrix Pp = projection_C(a, +1, N);
    ProjectionMatrix Pm = projection_C(a, -1, N);
    push(checks, "projection/idempotency",
         std::max(Pp.idempotency_residual, Pm.idempotency_residual), cfg.tol);
    push(checks, "projection/selfadjoint",
         std::max(Pp.selfadjoint_residual, Pm.selfadjoint_residual), cfg.tol);
    // oblique idempotents (C_a +- I)/2 sum to the identity; their traces add
    // to the full dimension exactly
    const double tr_sum = 0.5 * ((I + C.entries).trace() + (I - C.entries).trace()).real();
    push(checks, "projection/idempotent_trace_sum",
         std::abs(tr_sum - static_cast<double>(2 * N + 1)), cfg.tol);

    const int m_max = std::min(N / 4, 16);
    for (int sign : {+1, -1}) {
        SubspaceBasis bc = basis_N_C(a, sign, m_max, N);
        double worst = 0.0;
        for (int c = 0; c < bc.columns.cols(); ++c)
            worst = std::max(worst, (C.entries * bc.columns.col(c) -
                                     static_cast<double>(sign) * bc.columns.col(c))
                                        .norm());
        push(checks, sign > 0 ? "basis/C_plus" : "basis/C_minus", worst, 1e-7);
    }
    {
        SubspaceBasis br = basis_N_R(a, +1, m_max, N);
        double worst = 0.0;
        for (int c = 0; c < br.columns.cols(); ++c)
            worst = std::max(worst, (R.entries * br.columns.col(c) - br.columns.col(c)).norm());
        push(checks, "basis/R_plus", worst, cfg.tol);
        SubspaceBasis bw = basis_N_W(a, +1, m_max, N);
        worst = 0.0;
        for (int c = 0; c < bw.columns.cols(); ++c)
            worst = std::max(worst, (W.entries * bw.columns.col(c) - bw.columns.col(c)).norm());
        push(checks, "basis/W_plus", worst, cfg.tol);
    }

    pass = true;
    for (const auto& c : checks) pass = pass && c.pass;
    return json{{"a", complex_to_json(cfg.a)},
                {"N", N},
                {"band", Bv},
                {"checks", checks_to_json(checks)}};
}

json spectrum_payload(const RunConfig& cfg, bool& pass) {
    const DiskPoint a(cfg.a);
    const int N = cfg.modes;
    ProjectionMatrix Pp = projection_C(a, +1, N);
    ProjectionMatrix Pm = projection_C(a, -1, N);
    const int B = pair_window(Pp, Pm);
    SubspaceModel S = make_model(Pp, B);
    SubspaceModel T = make_model(Pm, B);
    std::vector<double> eigs = difference_spectrum(S, T);

    const double gap = std::sqrt(1.0 - std::norm(a.value));
    int inside = 0;
    double minpos = 1.0, maxabs = 0.0;
    for (double e : eigs) {
        if (std::abs(e) < gap - 0.01) ++inside;
        if (e > 0.0) minpos = std::min(minpos, e);
        maxabs = std::max(maxabs, std::abs(e));
    }
    pass = (a.abs() < 1e-9) ||
           (inside == 0 && std::abs(minpos - gap) <= 0.02 && std::abs(maxabs - 1.0) <= 0.02);
    return json{{"a", complex_to_json(cfg.a)},
                {"N", N},
                {"window", B},
                {"gap_target", gap},
                {"inside_gap", inside},
                {"min_positive", minpos},
                {"max_abs", maxabs},
                {"eigenvalues", eigs}};
}

json angles_payload(const RunConfig& cfg, bool& pass) {
    if (!cfg.has_b) throw std::invalid_argument("angles: --b is required");
    const DiskPoint a(cfg.a), b(cfg.b);
    const int N = cfg.modes;
    ProjectionMatrix Pa = projection_C(a, +1, N);
    ProjectionMatrix Pb = projection_C(b, +1, N);
    ProjectionMatrix Qa = projection_C(a, -1, N);
    ProjectionMatrix Qb = projection_C(b, -1, N);
    const int B = std::min(pair_window(Pa, Pb), pair_window(Qa, Qb));
    SubspaceModel Sa = make_model(Pa, B);
    SubspaceModel Sb = make_model(Pb, B);
    PairReport plus = make_pair_report(Sa, Sb, cfg.tol);
    plus.label_S = "N(C_a-I)";
    plus.label_T = "N(C_b-I)";
    PairReport minus = make_pair_report(make_model(Qa, B), make_model(Qb, B), cfg.tol);
    minus.label_S = "N(C_a+I)";
    minus.label_T = "N(C_b+I)";
    pass = (plus.dims.meet == 1) && (minus.dims.meet == 0);

    // top principal vector of the plus pair (the detected intersection line)
    json top_vec = json(nullptr);
    if (Sa.dim() > 0 && Sb.dim() > 0) {
        Eigen::JacobiSVD<Eigen::MatrixXcd> svd(Sa.basis.adjoint() * Sb.basis,
                                               Eigen::ComputeFullU);
        Eigen::VectorXcd top = Sa.basis * svd.matrixU().col(0);
        TrigPoly f(B);
        for (int n = -B; n < B; ++n) f.set_coeff(n, top(n + B));
        top_vec = to_json(f);
    }
    return json{{"plus", to_json(plus, cfg.a, cfg.b)},
                {"minus", to_json(minus, cfg.a, cfg.b)},
                {"top_vector", top_vec}};
}

json geodesic_payload(const RunConfig& cfg, bool& pass) {
    const DiskPoint a(cfg.a);
    const int N = cfg.modes;
    ProjectionMatrix Pp = projection_C(a, +1, N);
    ProjectionMatrix Pm = projection_C(a, -1, N);
    const int B = pair_window(Pp, Pm);
    SubspaceModel S = make_model(Pp, B);
    SubspaceModel T = make_model(Pm, B);
    const GeodesicOutcome outcome = geodesic_exists(S, T, cfg.tol);
    json out{{"a", complex_to_json(cfg.a)}, {"N", N}, {"outcome", to_string(outcome)}};
    if (outcome != GeodesicOutcome::yes_unique) {
        pass = false;
        return out;
    }
    GeodesicSegment seg = geodesic_generator(S, T);
    const double endpoint = op_norm(Eigen::MatrixXcd(geodesic_point(seg, 1.0) - seg.target));
    json samples = json::array();
    const Eigen::MatrixXcd Iw =
        Eigen::MatrixXcd::Identity(seg.start.rows(), seg.start.cols());
    for (double t : {0.0, 0.25, 0.5, 0.75, 1.0}) {
        Eigen::MatrixXcd G = geodesic_point(seg, t);
        const double offdiag = op_norm(Eigen::MatrixXcd((Iw - seg.start) * G * seg.start));
        samples.push_back(json::array({t, offdiag}));
    }
    out["normZ"] = seg.norm_bound;
    out["skew_residual"] = seg.skew_residual;
    out["codiag_residual"] = seg.codiag_residual;
    out["endpoint_residual"] = endpoint;
    out["samples"] = samples;
    pass = seg.skew_residual <= 1e-6 && seg.codiag_residual <= 1e-6 &&
           seg.norm_bound <= M_PI_2 + 1e-8 && endpoint <= 1e-5;
    return out;
}

json sweep_payload(const RunConfig& cfg, bool& pass) {
    const int N = cfg.modes;
    std::vector<cplx> points;
    for (int i = 1; i <= cfg.sweep_radii; ++i)
        for (int j = 0; j < cfg.sweep_angles; ++j) {
            const double r = 0.6 * i / cfg.sweep_radii;
            const double th = M_PI * j / cfg.sweep_angles;
            points.push_back(std::polar(r, th));
        }

    auto run_point = [&](cplx av) -> json {
        try {
            const DiskPoint a(av);
            ProjectionMatrix Pp = projection_C(a, +1, N);
            ProjectionMatrix Pm = projection_C(a, -1, N);
            const int B = pair_window(Pp, Pm);
            SubspaceModel S = make_model(Pp, B);
            SubspaceModel T = make_model(Pm, B);
            std::vector<double> eigs = difference_spectrum(S, T);
            double gap_edge = 1.0;
            for (double e : eigs)
                if (e > 0.0) gap_edge = std::min(gap_edge, e);
            const double tn = triple_norm(S, T);
            std::vector<double> top;
            if (cfg.has_b) {
                // exploratory: N(C_a - I) against N(C_b - I)^perp; no
                // asserted ground truth
                ProjectionMatrix Pb = projection_C(DiskPoint(cfg.b), +1, N);
                const int B2 = std::min(B, pair_window(Pp, Pb));
                top = principal_cosines(make_model(Pp, B2), complement(make_model(Pb, B2)));
            } else {
                top = principal_cosines(S, T);
            }
            if (top.size() > 3) top.resize(3);
            return json{{"a", complex_to_json(av)},
                        {"gap_edge", gap_edge},
                        {"triple_norm", tn},
                        {"top_cosines", top}};
        } catch (const Error& e) {
            return json{{"a", complex_to_json(av)}, {"error", e.what()}};
        }
    };

    std::vector<std::future<json>> futs;
    futs.reserve(points.size());
    for (cplx av : points)
        futs.push_back(std::async(std::launch::async, run_point, av));
    json rows = json::array();
    pass = true;
    for (auto& f : futs) {
        rows.push_back(f.get());
        if (rows.back().contains("error")) pass = false;
    }
    return json{{"N", N}, {"rows", rows}};
}

namespace {

std::string payload_csv(const RunConfig& cfg, const json& payload) {
    std::ostringstream os;
    os.precision(17);
    if (cfg.command == "spectrum") {
        std::vector<double> eigs = payload.at("eigenvalues").get<std::vector<double>>();
        return spectrum_csv(eigs);
    }
    if (cfg.command == "sweep") {
        os << "a_re,a_im,gap_edge,triple_norm,cos1,cos2,cos3\n";
        for (const auto& row : payload.at("rows")) {
            if (row.contains("error")) continue;
            const auto a = row.at("a");
            os << a[0].get<double>() << ',' << a[1].get<double>() << ','
               << row.at("gap_edge").get<double>() << ','
               << row.at("triple_norm").get<double>();
            const auto& tc = row.at("top_cosines");
            for (size_t i = 0; i < 3; ++i)
                os << ',' << (i < tc.size() ? tc[i].get<double>() : 0.0);
            os << '\n';
        }
        return os.str();
    }
    if (cfg.command == "verify") {
        os << "name,residual,tol,pass\n";
        for (const auto& c : payload.at("checks"))
            os << c.at("name").get<std::string>() << ',' << c.at("residual").get<double>()
               << ',' << c.at("tol").get<double>() << ',' << (c.at("pass").get<bool>() ? 1 : 0)
               << '\n';
        return os.str();
    }
    return payload.dump(2) + "\n";
}

} // namespace

int run_cli(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Truncated Fourier models of disk-automorphism reflections on L2(T)"};
    app.require_subcommand(1);

    RunConfig cfg;
    std::string a_str, b_str, a_polar;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--a", a_str, "parameter a as re,im");
        sub->add_option("--a-polar", a_polar, "parameter a as r,theta");
        sub->add_option("--b", b_str, "parameter b as re,im");
        sub->add_option("--modes", cfg.modes, "truncation order N (16..512, power of two +-1)");
        sub->add_option("--oversample", cfg.oversample, "grid oversampling factor");
        sub->add_option("--tol", cfg.tol, "residual tolerance");
        sub->add_option("--out", cfg.out, "output path (default stdout)");
        sub->add_option("--format", cfg.format, "json or csv")
            ->check(CLI::IsMember({"json", "csv"}));
    };

    for (const char* name : {"verify", "spectrum", "angles", "geodesic", "sweep"}) {
        CLI::App* sub = app.add_subcommand(name);
        add_common(sub);
        if (std::string(name) == "sweep") {
            sub->add_option("--sweep-radii", cfg.sweep_radii, "radial grid count");
            sub->add_option("--sweep-angles", cfg.sweep_angles, "angular grid count");
        }
    }

    std::vector<std::string> rev(args.rbegin(), args.rend());
    try {
        app.parse(rev);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << e.what() << "\n";
        return 64;
    }

    try {
        cfg.command = app.get_subcommands().front()->get_name();
        if (!a_str.empty() && !a_polar.empty()) {
            err << "specify --a or --a-polar, not both\n";
            return 64;
        }
        if (!a_polar.empty()) {
            const cplx rt = parse_complex_pair(a_polar);
            cfg.a = std::polar(rt.real(), rt.imag());
        } else if (!a_str.empty()) {
            cfg.a = parse_complex_pair(a_str);
        }
        if (!b_str.empty()) {
            cfg.b = parse_complex_pair(b_str);
            cfg.has_b = true;
        }
        if (!modes_ok(cfg.modes)) {
            err << "--modes must be within 1 of a power of two in [16, 512]\n";
            return 64;
        }
        if (std::abs(cfg.a) > 1.0 - kDiskMargin || (cfg.has_b && std::abs(cfg.b) > 1.0 - kDiskMargin)) {
            err << "parameters must lie strictly inside the unit disk\n";
            return 64;
        }
    } catch (const std::exception& e) {
        err << "usage error: " << e.what() << "\n";
        return 64;
    }

    bool pass = false;
    json payload;
    try {
        if (cfg.command == "verify") payload = verify_payload(cfg, pass);
        else if (cfg.command == "spectrum") payload = spectrum_payload(cfg, pass);
        else if (cfg.command == "angles") payload = angles_payload(cfg, pass);
        else if (cfg.command == "geodesic") payload = geodesic_payload(cfg, pass);
        else payload = sweep_payload(cfg, pass);
    } catch (const ResidualTooLarge& e) {
        err << "certificate failure: " << e.what() << "\n";
        return 2;
    } catch (const CertificateInvalid& e) {
        err << "certificate failure: " << e.what() << "\n";
        return 2;
    } catch (const NotASymmetry& e) {
        err << "certificate failure: " << e.what() << "\n";
        return 2;
    } catch (const UnstableRank& e) {
        err << "certificate failure: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        err << "usage error: " << e.what() << "\n";
        return 64;
    }

    std::string text;
    if (cfg.format == "csv") {
        text = payload_csv(cfg, payload);
    } else {
        json env = envelope(cfg.echo(), payload, pass,
                            pass ? "all checks passed" : "some checks failed");
        text = env.dump(2) + "\n";
    }
    if (!cfg.out.empty()) {
        std::ofstream f(cfg.out);
        if (!f) {
            err << "cannot open output file " << cfg.out << "\n";
            return 64;
        }
        f << text;
    } else {
        out << text;
    }
    return pass ? 0 : 1;
}

} // namespace disksym
