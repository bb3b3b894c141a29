#pragma once

#include <cstdint>

namespace lcmod {

// splitmix64: the usual finalizer-based stream. Self-contained so that
// streams are bit-identical across platforms and standard libraries
// (std::uniform_int_distribution is not portable).
inline uint64_t splitmix64(uint64_t& state) {
    uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// Seeded, splittable stream. split(tag) derives an independent child
// stream; work items split by index so results do not depend on the
// thread schedule.
class Rng {
public:
    explicit Rng(uint64_t seed) : s_(mix(seed)) {}

    uint64_t next() { return splitmix64(s_); }

    // uniform in [0, bound), bound >= 1; rejection keeps it unbiased
    uint64_t below(uint64_t bound) {
        uint64_t threshold = (0 - bound) % bound;
        while (true) {
            uint64_t r = next();
            if (r >= threshold) return r % bound;
        }
    }
    int range(int lo, int hi) {  // inclusive lo, exclusive hi
        return lo + int(below(uint64_t(hi - lo)));
    }
    double unit() { return double(next() >> 11) * (1.0 / 9007199254740992.0); }
    bool chance(double p) { return unit() < p; }

    Rng split(uint64_t tag) const {
        uint64_t t = s_;
        uint64_t a = splitmix64(t);
        return Rng(a ^ (0x632be59bd9b4e019ULL * (tag + 1)));
    }
    Rng split(uint64_t tag1, uint64_t tag2) const { return split(tag1).split(tag2); }

private:
    static uint64_t mix(uint64_t x) {
        uint64_t s = x;
        splitmix64(s);
        return s;
    }
    uint64_t s_;
};

} // namespace lcmod
