#pragma once

// Deterministic random number generation.
//
// Two generators, both fully specified here so results are identical across
// platforms and standard libraries:
//
//  * Philox4x32-10 — a counter-based block cipher PRNG.  Used by the Monte
//    Carlo module with counter layout {draw, shot_lo, shot_hi, stream} and the
//    64-bit seed as key, so every shot owns an independent stream and reports
//    are bit-identical regardless of how shots are distributed over threads.
//  * splitmix64 — a tiny sequential generator used for identity-registry
//    parameter sampling, where counter addressing is unnecessary.
//
// Normal variates come from the Marsaglia polar method on top of either
// generator (rejection is fine for counter-based streams: rejected draws just
// advance the draw counter).

#include <cmath>
#include <cstdint>

namespace qrl {

struct Philox4x32 {
    // One 10-round Philox4x32 block: 4 output words from (counter, key).
    struct Block {
        std::uint32_t v[4];
    };

    static Block block(std::uint32_t c0, std::uint32_t c1, std::uint32_t c2, std::uint32_t c3,
                       std::uint32_t k0, std::uint32_t k1) {
        constexpr std::uint32_t M0 = 0xD2511F53u, M1 = 0xCD9E8D57u;
        constexpr std::uint32_t W0 = 0x9E3779B9u, W1 = 0xBB67AE85u;
        for (int round = 0; round < 10; ++round) {
            const std::uint64_t p0 = static_cast<std::uint64_t>(M0) * c0;
            const std::uint64_t p1 = static_cast<std::uint64_t>(M1) * c2;
            const std::uint32_t hi0 = static_cast<std::uint32_t>(p0 >> 32), lo0 = static_cast<std::uint32_t>(p0);
            const std::uint32_t hi1 = static_cast<std::uint32_t>(p1 >> 32), lo1 = static_cast<std::uint32_t>(p1);
            const std::uint32_t n0 = hi1 ^ c1 ^ k0;
            const std::uint32_t n1 = lo1;
            const std::uint32_t n2 = hi0 ^ c3 ^ k1;
            const std::uint32_t n3 = lo0;
            c0 = n0; c1 = n1; c2 = n2; c3 = n3;
            k0 += W0; k1 += W1;
        }
        return Block{{c0, c1, c2, c3}};
    }
};

// A per-shot Philox stream: uniform words are addressed by an incrementing
// draw counter, so consuming a variable number of draws (polar rejection)
// never lets two shots' streams collide.
class PhiloxStream {
public:
    PhiloxStream(std::uint64_t seed, std::uint64_t shot, std::uint32_t stream)
        : k0_(static_cast<std::uint32_t>(seed)),
          k1_(static_cast<std::uint32_t>(seed >> 32)),
          shot_lo_(static_cast<std::uint32_t>(shot)),
          shot_hi_(static_cast<std::uint32_t>(shot >> 32)),
          stream_(stream) {}

    std::uint32_t next_u32() {
        if (have_ == 0) {
            blk_ = Philox4x32::block(draw_++, shot_lo_, shot_hi_, stream_, k0_, k1_);
            have_ = 4;
        }
        return blk_.v[4 - have_--];
    }

    // Uniform double in the open interval (0, 1).
    double uniform01() { return (next_u32() + 0.5) * (1.0 / 4294967296.0); }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

    // Standard normal pair, Marsaglia polar method.
    void normal_pair(double& n0, double& n1) {
        for (;;) {
            const double x = 2.0 * uniform01() - 1.0;
            const double y = 2.0 * uniform01() - 1.0;
            const double s = x * x + y * y;
            if (s > 0.0 && s < 1.0) {
                const double f = std::sqrt(-2.0 * std::log(s) / s);
                n0 = x * f;
                n1 = y * f;
                return;
            }
        }
    }

private:
    std::uint32_t k0_, k1_, shot_lo_, shot_hi_, stream_;
    std::uint32_t draw_ = 0;
    Philox4x32::Block blk_{};
    int have_ = 0;
};

// splitmix64: the standard 64-bit finalizer-based generator.
struct SplitMix64 {
    std::uint64_t state;

    explicit SplitMix64(std::uint64_t seed) : state(seed) {}

    std::uint64_t next_u64() {
        std::uint64_t z = (state += 0x9E3779B97F4A7C15ull);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

    // Uniform double in [0, 1).
    double uniform01() { return (next_u64() >> 11) * (1.0 / 9007199254740992.0); }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

    double normal() {
        for (;;) {
            const double x = 2.0 * uniform01() - 1.0;
            const double y = 2.0 * uniform01() - 1.0;
            const double s = x * x + y * y;
            if (s > 0.0 && s < 1.0) return x * std::sqrt(-2.0 * std::log(s) / s);
        }
    }
};

}  // namespace qrl
