#include "disksym/report.hpp"

#include <chrono>
#include <sstream>

namespace disksym {

json complex_to_json(cplx v) { return json::array({v.real(), v.imag()}); }

json to_json(const OperatorMatrix& T) {
    json params = json::object();
    for (auto& [k, v] : T.params) params[k] = complex_to_json(v);
    json entries = json::array();
    for (int m = 0; m < T.dim(); ++m)
        for (int n = 0; n < T.dim(); ++n) {
            entries.push_back(T.entries(m, n).real());
            entries.push_back(T.entries(m, n).imag());
        }
    return json{{"label", T.label},
                {"params", params},
                {"N", T.order},
                {"entries", entries}};
}

json to_json(const SubspaceBasis& b, cplx a, int sign) {
    json cols = json::array();
    for (int c = 0; c < b.columns.cols(); ++c) {
        json col = json::array();
        for (int r = 0; r < b.columns.rows(); ++r)
            col.push_back(complex_to_json(b.columns(r, c)));
        cols.push_back(col);
    }
    return json{{"source", b.source},
                {"a", complex_to_json(a)},
                {"sign", sign},
                {"N", b.order},
                {"columns", cols}};
}

json to_json(const PairReport& r, cplx a, cplx b) {
    return json{{"labels", json::array({r.label_S, r.label_T})},
                {"a", complex_to_json(a)},
                {"b", complex_to_json(b)},
                {"N", r.order},
                {"window", r.window},
                {"cosines", r.cosines},
                {"dims",
                 json{{"meet", r.dims.meet},
                      {"meet_perp", r.dims.meet_perp},
                      {"perp_meet", r.dims.perp_meet},
                      {"perp_perp", r.dims.perp_perp}}},
                {"diff_spectrum", r.diff_spectrum},
                {"triple_norm", r.triple_norm},
                {"product_norm", r.product_norm}};
}

json to_json(const TrigPoly& f) {
    json rows = json::array();
    for (int n = -f.order; n <= f.order; ++n)
        rows.push_back(json::array({n, f.coeff(n).real(), f.coeff(n).imag()}));
    return rows;
}

std::string spectrum_csv(const std::vector<double>& eigs) {
    std::ostringstream os;
    os.precision(17);
    os << "index,eigenvalue\n";
    for (size_t i = 0; i < eigs.size(); ++i) os << i << ',' << eigs[i] << '\n';
    return os.str();
}

json envelope(const json& config_echo, const json& payload, bool pass,
              const std::string& summary_text) {
    const auto now = std::chrono::system_clock::now();
    const auto secs = std::chrono::duration_cast<std::chrono::seconds>(
                          now.time_since_epoch())
                          .count();
    return json{{"tool_version", kToolVersion},
                {"config", config_echo},
                {"timestamp_unix", secs},
                {"results", payload},
                {"summary", json{{"pass", pass}, {"text", summary_text}}}};
}

} // namespace disksym
