#pragma once

#include <cstdint>
#include <random>

namespace gbeta {

/// Seeded generator whose streams are identical on every platform: the
/// engine is fully specified and the range mapping is ours, not the
/// implementation-defined std distributions.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : g_(seed) {}

    std::uint64_t below(std::uint64_t m) { return g_() % m; }

    std::int64_t between(std::int64_t lo, std::int64_t hi) {
        return lo + static_cast<std::int64_t>(below(static_cast<std::uint64_t>(hi - lo + 1)));
    }

    bool coin() { return (g_() >> 63) != 0; }

private:
    std::mt19937_64 g_;
};

}  // namespace gbeta
