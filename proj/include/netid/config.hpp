#pragma once

#include <cstdint>

namespace netid {

// Tunables shared across modules. Defaults are sized for desk-scale
// instances; exhaustive procedures refuse inputs beyond max_exact_n.
struct Config {
    // Largest dimension for exhaustive procedures (principal-minor scans,
    // spanning-cycle-family determinants, measurement-set search).
    // Larger graphs are still accepted by the flow-based operations.
    int max_exact_n = 16;

    // Abort path-set enumeration after this many sets.
    std::int64_t enumeration_cap = 1'000'000;
};

// Hard cap on polynomial degree; exceeding it raises SizeLimit.
inline constexpr int kDegreeCap = 64;

inline const Config& default_config() {
    static const Config cfg{};
    return cfg;
}

}  // namespace netid
