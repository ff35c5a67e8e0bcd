#pragma once

#include "irmlab/rational.hpp"

#include <cstdint>
#include <vector>

namespace irmlab {

/// Deterministic counter-based generator (SplitMix64 keyed by seed and
/// stream). Every (seed, stream) pair is an independent sequence, so trials
/// can be distributed over any number of workers and still reproduce exactly.
/// Bounded sampling is implemented here because the standard library's
/// distributions are not reproducible across implementations.
class CounterRng {
public:
    CounterRng(std::uint64_t seed, std::uint64_t stream);

    std::uint64_t next();

    /// Uniform-ish value in [0, n); n must be > 0.
    std::uint64_t below(std::uint64_t n);

    /// Uniform int in [lo, hi] inclusive.
    std::int64_t range(std::int64_t lo, std::int64_t hi);

    /// Random probability vector of length n with a common denominator
    /// drawn from 1..max_den.
    RationalVec simplex(std::size_t n, std::uint64_t max_den);

    /// Rational in [lo, hi] with denominator dividing max_den.
    Rational rational_in(std::int64_t lo, std::int64_t hi, std::uint64_t max_den);

private:
    std::uint64_t state_;
};

} // namespace irmlab
