#pragma once

// Physical-model simulation of the link: correlated outdated/actual first-hop
// CSI with rank selection, Gamma-Gamma second hop, SNDR composition, and
// outage / exact-capacity estimators with standard errors. This is the
// independent oracle for every closed form in analytics.hpp.
//
// Outdated-CSI construction (the standard bivariate-Rayleigh model): draw N
// i.i.d. circularly-symmetric complex gains, sort by magnitude, keep the
// rank-m gain h~, then form the transmission-time gain
//     h = sqrt(rho) h~ + sqrt(1-rho) w
// with w an independent draw of the same law. The source text specifies only
// rho and the marginal mixture law; the KS tests in the suite validate this
// construction against that marginal.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <thread>
#include <vector>

#include "rfso/analytics.hpp"
#include "rfso/rng.hpp"
#include "rfso/system.hpp"

namespace rfso {

struct Estimate {
    double value = 0.0;
    double std_error = 0.0;
    uint64_t n_samples = 0;
    uint64_t seed = 0;
    // Normal-approximation intervals are poor with < 30 outage failures;
    // flagged rather than switching interval families.
    bool reliable = true;
};

// One draw of the actual SNR of the rank-m selected relay.
inline double sample_selected_gamma1(RngStream& rng, const RfHopParams& p) {
    std::array<double, RfHopParams::kMaxRelays> re, im, mag;
    const int n = p.n_relays;
    constexpr double kInvSqrt2 = 0.7071067811865476;
    for (int i = 0; i < n; ++i) {
        re[i] = rng.next_normal() * kInvSqrt2;
        im[i] = rng.next_normal() * kInvSqrt2;
        mag[i] = re[i] * re[i] + im[i] * im[i];
    }
    std::array<int, RfHopParams::kMaxRelays> order;
    for (int i = 0; i < n; ++i) order[i] = i;
    std::sort(order.begin(), order.begin() + n, [&](int i, int j) {
        return mag[i] != mag[j] ? mag[i] < mag[j] : i < j;
    });
    const int sel = order[p.rank - 1];
    const double sr = std::sqrt(p.rho);
    const double sw = std::sqrt(1.0 - p.rho);
    const double hr = sr * re[sel] + sw * rng.next_normal() * kInvSqrt2;
    const double hi = sr * im[sel] + sw * rng.next_normal() * kInvSqrt2;
    return (hr * hr + hi * hi) * p.mu1;
}

// One draw of the second-hop SNR: gamma2 = mu2 (X Y)^2 with X, Y independent
// mean-one Gamma variates of shapes alpha and beta.
inline double sample_gamma2(RngStream& rng, const FsoHopParams& p) {
    const double x = rng.next_gamma(p.alpha) / p.alpha;
    const double y = rng.next_gamma(p.beta) / p.beta;
    const double irr = x * y;
    return p.mu2 * irr * irr;
}

namespace detail {

// Fixed-size blocks keyed by stream id make the estimate a pure function of
// (cfg, n, seed) for any worker count.
inline constexpr uint64_t kMcBlock = 1u << 16;

struct BlockMoments {
    double sum = 0.0;
    double sum_sq = 0.0;
    uint64_t count_below = 0;
};

template <typename PerSample>
inline std::vector<BlockMoments> run_blocks(const LinkConfig& cfg, uint64_t n,
                                            uint64_t seed, uint64_t kind,
                                            int jobs, PerSample&& per_sample) {
    if (n < 10000)
        throw std::invalid_argument("monte carlo estimate: need n >= 1e4 samples");
    const uint64_t n_blocks = (n + kMcBlock - 1) / kMcBlock;
    std::vector<BlockMoments> blocks(n_blocks);
    const double c = cfg.constant_c();

    auto worker = [&](uint64_t first, uint64_t stride) {
        for (uint64_t b = first; b < n_blocks; b += stride) {
            RngStream rng(seed, (kind << 56) | b);
            const uint64_t lo = b * kMcBlock;
            const uint64_t hi = std::min(n, lo + kMcBlock);
            KahanSum s, s2;
            uint64_t below = 0;
            for (uint64_t i = lo; i < hi; ++i) {
                const double g1 = sample_selected_gamma1(rng, cfg.rf);
                const double g2 = sample_gamma2(rng, cfg.fso);
                const double v = per_sample(sndr(g1, g2, cfg.imp, c), below);
                s.add(v);
                s2.add(v * v);
            }
            blocks[b].sum = s.total();
            blocks[b].sum_sq = s2.total();
            blocks[b].count_below = below;
        }
    };

    jobs = std::max(1, jobs);
    if (jobs == 1 || n_blocks == 1) {
        worker(0, 1);
    } else {
        std::vector<std::thread> pool;
        const int workers = static_cast<int>(
            std::min<uint64_t>(static_cast<uint64_t>(jobs), n_blocks));
        pool.reserve(workers);
        for (int w = 0; w < workers; ++w)
            pool.emplace_back(worker, static_cast<uint64_t>(w),
                              static_cast<uint64_t>(workers));
        for (auto& t : pool) t.join();
    }
    return blocks;
}

}  // namespace detail

// Fraction of SNDR samples below gamma_th, with binomial standard error.
inline Estimate estimate_outage(const LinkConfig& cfg, uint64_t n, uint64_t seed,
                                int jobs = 1) {
    auto blocks = detail::run_blocks(
        cfg, n, seed, /*kind=*/0, jobs,
        [&](double s, uint64_t& below) {
            if (s < cfg.gamma_th) ++below;
            return 0.0;
        });
    uint64_t below = 0;
    for (const auto& b : blocks) below += b.count_below;  // exact integer combine
    Estimate e;
    e.n_samples = n;
    e.seed = seed;
    e.value = static_cast<double>(below) / static_cast<double>(n);
    e.std_error = std::sqrt(e.value * (1.0 - e.value) / static_cast<double>(n));
    const uint64_t failures = std::min(below, n - below);
    e.reliable = failures >= 30;
    return e;
}

// Sample mean of (1/2) log2(1 + SNDR): the exact ergodic capacity.
inline Estimate estimate_capacity(const LinkConfig& cfg, uint64_t n,
                                  uint64_t seed, int jobs = 1) {
    auto blocks = detail::run_blocks(
        cfg, n, seed, /*kind=*/1, jobs,
        [](double s, uint64_t&) { return 0.5 * std::log2(1.0 + s); });
    detail::KahanSum sum, sum_sq;
    for (const auto& b : blocks) {  // fixed block order keeps bit reproducibility
        sum.add(b.sum);
        sum_sq.add(b.sum_sq);
    }
    Estimate e;
    e.n_samples = n;
    e.seed = seed;
    const double nn = static_cast<double>(n);
    e.value = sum.total() / nn;
    const double var =
        std::max(0.0, (sum_sq.total() - nn * e.value * e.value) / (nn - 1.0));
    e.std_error = std::sqrt(var / nn);
    return e;
}

// Largest SNDR over n samples; used by the ceiling checks. The per-block
// maxima combine by max, so the result is jobs-independent like the moments.
inline double max_sampled_sndr(const LinkConfig& cfg, uint64_t n, uint64_t seed,
                               int jobs = 1) {
    const uint64_t n_blocks = (n + detail::kMcBlock - 1) / detail::kMcBlock;
    const double c = cfg.constant_c();
    std::vector<double> maxima(n_blocks, 0.0);
    auto worker = [&](uint64_t first, uint64_t stride) {
        for (uint64_t b = first; b < n_blocks; b += stride) {
            RngStream rng(seed, (2ull << 56) | b);
            const uint64_t lo = b * detail::kMcBlock;
            const uint64_t hi = std::min(n, lo + detail::kMcBlock);
            double m = 0.0;
            for (uint64_t i = lo; i < hi; ++i) {
                const double g1 = sample_selected_gamma1(rng, cfg.rf);
                const double g2 = sample_gamma2(rng, cfg.fso);
                m = std::max(m, sndr(g1, g2, cfg.imp, c));
            }
            maxima[b] = m;
        }
    };
    jobs = std::max(1, jobs);
    if (jobs == 1 || n_blocks == 1) {
        worker(0, 1);
    } else {
        std::vector<std::thread> pool;
        const int workers = static_cast<int>(
            std::min<uint64_t>(static_cast<uint64_t>(jobs), n_blocks));
        for (int w = 0; w < workers; ++w)
            pool.emplace_back(worker, static_cast<uint64_t>(w),
                              static_cast<uint64_t>(workers));
        for (auto& t : pool) t.join();
    }
    double best = 0.0;
    for (double m : maxima) best = std::max(best, m);
    return best;
}

}  // namespace rfso
