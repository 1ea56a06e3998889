#pragma once

#include <cstdint>

#include "disksym/moebius.hpp"

namespace disksym::detail {

// splitmix64; deterministic across platforms, unlike <random> distributions
struct Rng {
    std::uint64_t state;

    explicit Rng(std::uint64_t seed) : state(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    DiskPoint disk_point(double max_abs) {
        const double r = max_abs * std::sqrt(uniform());
        const double t = 2.0 * M_PI * uniform();
        return DiskPoint(std::polar(r, t));
    }

    CirclePoint circle_point() {
        return CirclePoint::from_angle(2.0 * M_PI * uniform());
    }
};

} // namespace disksym::detail
