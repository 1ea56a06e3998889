#pragma once

#include <string>

#include <json.hpp>

#include "disksym/grassmann.hpp"

namespace disksym {

using json = nlohmann::ordered_json;

inline constexpr const char* kToolVersion = "0.1.0";

json complex_to_json(cplx v);

// {label, params, N, entries: row-major [re, im] pairs}
json to_json(const OperatorMatrix& T);
// {source, a, sign, columns: [[ [re,im], ... ]]}
json to_json(const SubspaceBasis& b, cplx a, int sign);
// {labels, a, b, N, cosines, dims{...}, diff_spectrum, triple_norm, product_norm}
json to_json(const PairReport& r, cplx a, cplx b);
// coefficient triples [n, re, im]
json to_json(const TrigPoly& f);

std::string spectrum_csv(const std::vector<double>& eigs);

// {tool_version, config, timestamp, results, summary}; `results` is the
// deterministic payload, the timestamp lives outside it
json envelope(const json& config_echo, const json& payload, bool pass,
              const std::string& summary_text);

} // namespace disksym
