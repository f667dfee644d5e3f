#ifndef LEVIKIT_RNG_HPP
#define LEVIKIT_RNG_HPP

#include "levikit/rational.hpp"

#include <cstdint>

namespace levikit {

/// SplitMix64: tiny, platform-stable generator. Every randomized routine
/// takes its generator explicitly so runs replay bit-for-bit from a seed.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    /// Uniform integer in [lo, hi] (inclusive); modulo bias is irrelevant
    /// for the tiny ranges used here.
    long uniform(long lo, long hi) {
        if (hi < lo) throw internal_error("Rng::uniform: empty range");
        std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
        return lo + static_cast<long>(next() % span);
    }

    /// Small Gaussian rational with integer parts in [-bound, bound].
    ExactComplex small_gaussian(long bound) {
        return ExactComplex(mpq_class(uniform(-bound, bound)), mpq_class(uniform(-bound, bound)));
    }

    /// Small nonzero Gaussian rational.
    ExactComplex small_gaussian_nonzero(long bound) {
        for (;;) {
            ExactComplex z = small_gaussian(bound);
            if (!z.is_zero()) return z;
        }
    }

    mpq_class small_rational(long bound, long den_bound = 1) {
        mpq_class q(uniform(-bound, bound), uniform(1, den_bound));
        q.canonicalize();
        return q;
    }

    std::uint64_t fork_seed() { return next(); }

private:
    std::uint64_t state_;
};

} // namespace levikit

#endif
