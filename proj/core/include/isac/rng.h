#pragma once

#include <cstdint>

namespace isac {

// SplitMix64 finalizer; a bijective 64-bit mixer.
std::uint64_t mix64(std::uint64_t x);

// Seed of trial `index` under `master`. Depends only on the pair, so any
// partition of trials over workers reproduces the same streams.
std::uint64_t trial_seed(std::uint64_t master, std::uint64_t index);

// xoshiro256++ with a Marsaglia polar normal sampler.
class TrialRng {
public:
    explicit TrialRng(std::uint64_t seed);

    std::uint64_t next();
    double uniform();  // [0, 1), 53-bit resolution
    double normal();   // standard normal

private:
    std::uint64_t s_[4];
    double spare_ = 0.0;
    bool has_spare_ = false;
};

}  // namespace isac
