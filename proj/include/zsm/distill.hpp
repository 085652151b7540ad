#pragma once

#include <cmath>
#include <cstdint>
#include <map>
#include <random>
#include <stdexcept>
#include <vector>

#include "zsm/entanglement.hpp"
#include "zsm/types.hpp"

namespace zsm {

struct DistillationRun {
    long trials = 0;
    std::uint64_t seed = 0;
    int shards = 1;
    double yield_mean = 0.0;   // ebits per input copy, in the configured base
    double yield_stderr = 0.0;
    double closed_form_s_e = 0.0;
    std::map<int, long> sector_tally; // twice_j -> times sampled
};

namespace detail {

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

inline std::uint64_t shard_seed(std::uint64_t master, int shard) {
    return splitmix64(master + 0x9E3779B97F4A7C15ULL * std::uint64_t(shard + 1));
}

} // namespace detail

// Monte Carlo run of the projective distillation protocol: sample a sector j
// with probability p_j and credit log(2j+1) ebits. Only j is sampled; the
// yield does not depend on the degeneracy indices. RNG is mt19937_64 with
// inverse-CDF sampling, shard seeds a pure function of (master seed, index),
// so runs are bit-reproducible for a fixed shard count.
inline DistillationRun simulate(const SplitSpec& split, const MixtureWeights& weights,
                                long trials, std::uint64_t seed, const Config& cfg = {}) {
    if (trials < 1) throw std::invalid_argument("simulate: trials must be >= 1");
    auto rep = entanglement(split, weights, cfg);
    const auto& dist = rep.p;

    std::vector<double> cum(dist.p.size());
    double acc = 0.0;
    for (std::size_t i = 0; i < dist.p.size(); ++i) {
        acc += dist.p[i];
        cum[i] = acc;
    }
    cum.back() = 1.0;

    DistillationRun run;
    run.trials = trials;
    run.seed = seed;
    run.shards = cfg.shards;
    run.closed_form_s_e = rep.s_e;
    for (int t : dist.twice_j) run.sector_tally[t] = 0;

    const long base_chunk = trials / cfg.shards;
    long assigned = 0;
    for (int shard = 0; shard < cfg.shards; ++shard) {
        long chunk = base_chunk + (shard < trials % cfg.shards ? 1 : 0);
        assigned += chunk;
        std::mt19937_64 rng(detail::shard_seed(seed, shard));
        for (long t = 0; t < chunk; ++t) {
            const double u = double(rng() >> 11) * 0x1.0p-53;
            std::size_t lo = 0, hi = cum.size() - 1;
            while (lo < hi) {
                std::size_t mid = (lo + hi) / 2;
                if (u < cum[mid])
                    hi = mid;
                else
                    lo = mid + 1;
            }
            run.sector_tally[dist.twice_j[lo]]++;
        }
    }
    (void)assigned;

    const double f = base_factor(cfg.log_base);
    KahanSum mean;
    for (const auto& [t, n] : run.sector_tally)
        mean.add(double(n) * f * std::log(double(t + 1)));
    run.yield_mean = mean.value() / double(trials);
    if (trials > 1) {
        KahanSum var;
        for (const auto& [t, n] : run.sector_tally) {
            const double d = f * std::log(double(t + 1)) - run.yield_mean;
            var.add(double(n) * d * d);
        }
        run.yield_stderr = std::sqrt(var.value() / double(trials - 1) / double(trials));
    }
    return run;
}

} // namespace zsm
