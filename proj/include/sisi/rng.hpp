#pragma once

#include <cstdint>
#include <random>

namespace sisi {

// splitmix64 finalizer, used to derive stream seeds.
inline std::uint64_t mix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/// Seedable, splittable random stream.
///
/// `split(i)` derives a child stream that depends only on (root seed, i),
/// never on how many values were drawn from the parent. Parallel work items
/// are assigned streams by ordinal, so results are independent of thread
/// schedule. Draw functions avoid std::uniform_*_distribution, whose output
/// is not pinned by the standard; everything here is bit-reproducible.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : root_(seed), eng_(mix64(seed)) {}

    std::uint64_t root() const { return root_; }

    Rng split(std::uint64_t ordinal) const {
        return Rng(mix64(root_ ^ mix64(ordinal + 0x6a09e667f3bcc909ULL)));
    }

    std::uint64_t next_u64() { return eng_(); }

    /// Uniform double in the open interval (0,1).
    double open01() {
        return (static_cast<double>(eng_() >> 11) + 0.5) * 0x1.0p-53;
    }

    /// Uniform integer in [0, n). n must be positive.
    std::uint64_t below(std::uint64_t n) {
        // Lemire multiply-shift with rejection.
        unsigned __int128 m = static_cast<unsigned __int128>(eng_()) * n;
        auto lo = static_cast<std::uint64_t>(m);
        if (lo < n) {
            const std::uint64_t t = (0 - n) % n;
            while (lo < t) {
                m = static_cast<unsigned __int128>(eng_()) * n;
                lo = static_cast<std::uint64_t>(m);
            }
        }
        return static_cast<std::uint64_t>(m >> 64);
    }

    bool bernoulli(double p) { return open01() < p; }

private:
    std::uint64_t root_;
    std::mt19937_64 eng_;
};

}  // namespace sisi
