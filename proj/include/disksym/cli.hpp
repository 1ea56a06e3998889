#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "disksym/report.hpp"

namespace disksym {

struct RunConfig {
    std::string command;
    cplx a{0.0, 0.0};
    cplx b{0.0, 0.0};
    bool has_b = false;
    int modes = 128;
    int oversample = 8;
    double tol = 1e-6;
    std::string out;
    std::string format = "json";
    int sweep_radii = 3;
    int sweep_angles = 2;

    json echo() const;
};

// exit codes: 0 pass, 1 mathematical assertion failure,
// 2 numerical-certificate failure, 64 usage error
int run_cli(std::vector<std::string> args, std::ostream& out, std::ostream& err);

// suites behind the subcommands; `pass` out-parameters feed the exit code
json verify_payload(const RunConfig& cfg, bool& pass);
json spectrum_payload(const RunConfig& cfg, bool& pass);
json angles_payload(const RunConfig& cfg, bool& pass);
json geodesic_payload(const RunConfig& cfg, bool& pass);
json sweep_payload(const RunConfig& cfg, bool& pass);

} // namespace disksym
