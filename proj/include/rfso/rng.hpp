#pragma once

// Counter-based random streams for reproducible parallel sampling.
//
// Generator: Philox4x64-10 (Salmon et al. constants). The 128-bit key is
// (seed, stream_id); the counter is a per-stream block index. Distinct
// stream_ids give independent substreams for a fixed seed, and the mapping
// from (seed, stream_id, position) to output is a pure function, so results
// never depend on thread scheduling. Algorithm fixed as stream version 1;
// golden outputs in the tests pin it down.

#include <cmath>
#include <cstdint>

namespace rfso {

inline uint64_t splitmix64(uint64_t x) {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

class RngStream {
  public:
    RngStream(uint64_t seed, uint64_t stream_id)
        : seed_(seed), stream_id_(stream_id) {
        ctr_[0] = ctr_[1] = ctr_[2] = ctr_[3] = 0;
        refill();
    }

    uint64_t seed() const { return seed_; }
    uint64_t stream_id() const { return stream_id_; }

    uint64_t next_u64() {
        if (idx_ == 4) refill();
        return out_[idx_++];
    }

    // uniform on the open interval (0, 1); safe as a log() argument
    double next_double() {
        return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
    }

    // standard normal via Box-Muller, one value cached
    double next_normal() {
        if (have_cached_) {
            have_cached_ = false;
            return cached_;
        }
        double u1 = next_double();
        double u2 = next_double();
        double r = std::sqrt(-2.0 * std::log(u1));
        double t = 6.283185307179586 * u2;
        cached_ = r * std::sin(t);
        have_cached_ = true;
        return r * std::cos(t);
    }

    // Gamma(shape, scale 1) via Marsaglia-Tsang, shape boost below 1
    double next_gamma(double shape) {
        if (shape < 1.0) {
            double u = next_double();
            return next_gamma(shape + 1.0) * std::pow(u, 1.0 / shape);
        }
        const double d = shape - 1.0 / 3.0;
        const double c = 1.0 / std::sqrt(9.0 * d);
        for (;;) {
            double x = next_normal();
            double t = 1.0 + c * x;
            if (t <= 0.0) continue;
            double v = t * t * t;
            double u = next_double();
            double x2 = x * x;
            if (u < 1.0 - 0.0331 * x2 * x2) return d * v;
            if (std::log(u) < 0.5 * x2 + d * (1.0 - v + std::log(v))) return d * v;
        }
    }

  private:
    static void mulhilo(uint64_t a, uint64_t b, uint64_t& hi, uint64_t& lo) {
        unsigned __int128 p = static_cast<unsigned __int128>(a) * b;
        hi = static_cast<uint64_t>(p >> 64);
        lo = static_cast<uint64_t>(p);
    }

    void refill() {
        constexpr uint64_t kM0 = 0xD2E7470EE14C6C93ull;
        constexpr uint64_t kM1 = 0xCA5A826395121157ull;
        constexpr uint64_t kW0 = 0x9E3779B97F4A7C15ull;
        constexpr uint64_t kW1 = 0xBB67AE8584CAA73Bull;
        uint64_t x0 = ctr_[0], x1 = ctr_[1], x2 = ctr_[2], x3 = ctr_[3];
        uint64_t k0 = seed_, k1 = stream_id_;
        for (int round = 0; round < 10; ++round) {
            uint64_t hi0, lo0, hi1, lo1;
            mulhilo(kM0, x0, hi0, lo0);
            mulhilo(kM1, x2, hi1, lo1);
            uint64_t y0 = hi1 ^ x1 ^ k0;
            uint64_t y1 = lo1;
            uint64_t y2 = hi0 ^ x3 ^ k1;
            uint64_t y3 = lo0;
            x0 = y0;
            x1 = y1;
            x2 = y2;
            x3 = y3;
            k0 += kW0;
            k1 += kW1;
        }
        out_[0] = x0;
        out_[1] = x1;
        out_[2] = x2;
        out_[3] = x3;
        idx_ = 0;
        if (++ctr_[0] == 0 && ++ctr_[1] == 0 && ++ctr_[2] == 0) ++ctr_[3];
    }

    uint64_t seed_;
    uint64_t stream_id_;
    uint64_t ctr_[4];
    uint64_t out_[4];
    int idx_ = 4;
    bool have_cached_ = false;
    double cached_ = 0.0;
};

}  // namespace rfso
