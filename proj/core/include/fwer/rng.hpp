#pragma once

#include <cstdint>

namespace fwer {

/// Counter-based generator: each (seed, stream) pair owns an independent
/// SplitMix64 sequence whose key is derived by avalanche mixing, so draws are
/// a pure function of (seed, stream, draw index). Replications keyed by their
/// index therefore produce identical output under any scheduling.
class CounterRng {
public:
    CounterRng(std::uint64_t seed, std::uint64_t stream);

    std::uint64_t next_u64();
    /// Uniform on the open interval (0, 1).
    double next_unit();
    /// Standard normal via the inverse-CDF transform.
    double next_normal();

private:
    std::uint64_t key_;
    std::uint64_t counter_ = 0;
};

}  // namespace fwer
