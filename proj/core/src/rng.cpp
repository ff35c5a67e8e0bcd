#include "irmlab/rng.hpp"

#include <algorithm>

namespace irmlab {

namespace {

std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

} // namespace

CounterRng::CounterRng(std::uint64_t seed, std::uint64_t stream) {
    std::uint64_t s = seed;
    std::uint64_t mixed = splitmix64(s);
    s = mixed ^ (stream * 0xD1342543DE82EF95ULL + 1);
    state_ = splitmix64(s);
}

std::uint64_t CounterRng::next() {
    return splitmix64(state_);
}

std::uint64_t CounterRng::below(std::uint64_t n) {
    return static_cast<std::uint64_t>(
        (static_cast<unsigned __int128>(next()) * n) >> 64);
}

std::int64_t CounterRng::range(std::int64_t lo, std::int64_t hi) {
    return lo + static_cast<std::int64_t>(below(static_cast<std::uint64_t>(hi - lo + 1)));
}

RationalVec CounterRng::simplex(std::size_t n, std::uint64_t max_den) {
    const std::uint64_t den = 1 + below(max_den);
    // Stars and bars: n-1 sorted cut points in [0, den] split den units.
    std::vector<std::uint64_t> cuts;
    cuts.reserve(n + 1);
    cuts.push_back(0);
    for (std::size_t i = 0; i + 1 < n; ++i) cuts.push_back(below(den + 1));
    cuts.push_back(den);
    std::sort(cuts.begin(), cuts.end());
    RationalVec out(n);
    for (std::size_t i = 0; i < n; ++i) {
        out[i] = Rational(BigInt(cuts[i + 1] - cuts[i]), BigInt(den));
    }
    return out;
}

Rational CounterRng::rational_in(std::int64_t lo, std::int64_t hi, std::uint64_t max_den) {
    const std::uint64_t den = 1 + below(max_den);
    const std::int64_t span = (hi - lo) * static_cast<std::int64_t>(den);
    const std::int64_t num = static_cast<std::int64_t>(below(static_cast<std::uint64_t>(span + 1)));
    return Rational(BigInt(lo) * BigInt(den) + num, BigInt(den));
}

} // namespace irmlab
