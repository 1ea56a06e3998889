#pragma once

#include <stdexcept>
#include <string>

namespace disksym {

struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

struct DegenerateDenominator : Error {
    using Error::Error;
};
struct GridTooSmall : Error {
    using Error::Error;
};
struct NotSelfAdjoint : Error {
    using Error::Error;
};
struct NotASymmetry : Error {
    using Error::Error;
};
struct RankDeficient : Error {
    using Error::Error;
};
struct ResidualTooLarge : Error {
    using Error::Error;
};
struct CertificateInvalid : Error {
    using Error::Error;
};
struct UnstableRank : Error {
    using Error::Error;
};
struct LogBranchFailure : Error {
    using Error::Error;
};

} // namespace disksym
