#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace cartan {

/// Seed used by `cartan verify-identities` unless overridden.
inline constexpr std::uint64_t kIdentitySeed = 20100531;

struct IdentityOptions {
    std::uint64_t seed = kIdentitySeed;
    int samples = 200;  // random points per randomized check
};

struct IdentityCheck {
    std::string name;
    bool passed = false;
    double worst = 0.0;      // largest observed deviation
    double tolerance = 0.0;  // threshold it was held to
    int cases = 0;
    std::string detail;
};

/// Structural property suite: fiber homogeneity and y-independence of F*,
/// the Euler identity for L*, the scaling reduction, Cartesian/polar
/// agreement, non-reversibility, jet derivatives against finite differences,
/// invariances of K, and agreement of K with the closed form along
/// (r, t) = (0, x). Deterministic for a given seed.
std::vector<IdentityCheck> run_identity_suite(const IdentityOptions& options = {});

}  // namespace cartan
