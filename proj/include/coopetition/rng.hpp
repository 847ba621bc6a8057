#pragma once

#include <cstdint>
#include <vector>

namespace coopetition {

// splitmix64. std:: distributions are implementation-defined; seeded
// instances must be byte-identical across platforms.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // uniform in [0, n); n >= 1
    std::uint64_t below(std::uint64_t n) {
        const std::uint64_t limit = n * (UINT64_MAX / n);
        std::uint64_t x = next();
        while (x >= limit) x = next();
        return x % n;
    }

    // uniform in [lo, hi], inclusive
    long range(long lo, long hi) {
        return lo + static_cast<long>(below(static_cast<std::uint64_t>(hi - lo + 1)));
    }

    bool coin() { return below(2) == 1; }

    template <typename T>
    const T& pick(const std::vector<T>& xs) {
        return xs[below(xs.size())];
    }

private:
    std::uint64_t state_;
};

}  // namespace coopetition
