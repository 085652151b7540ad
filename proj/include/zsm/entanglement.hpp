#pragma once

#include <cmath>
#include <limits>
#include <map>
#include <stdexcept>
#include <tuple>
#include <vector>

#include "zsm/multiplicity.hpp"
#include "zsm/numeric.hpp"
#include "zsm/types.hpp"

namespace zsm {

struct MixtureWeights {
    enum class Mode { Uniform, PerSector, Full };

    Mode mode = Mode::Uniform;
    std::map<int, double> sector;                           // twice_j -> p_j
    std::map<std::tuple<int, long, long>, double> full;     // (twice_j, a, b) -> w

    static MixtureWeights uniform() { return {}; }

    static MixtureWeights per_sector(std::map<int, double> p) {
        MixtureWeights w;
        w.mode = Mode::PerSector;
        w.sector = std::move(p);
        return w;
    }

    static MixtureWeights full_weights(std::map<std::tuple<int, long, long>, double> m) {
        MixtureWeights w;
        w.mode = Mode::Full;
        w.full = std::move(m);
        return w;
    }
};

// Probability of each singlet sector, aligned ascending in twice_j.
struct SectorDistribution {
    std::vector<int> twice_j;
    std::vector<double> p;

    double at(int t) const {
        for (std::size_t i = 0; i < twice_j.size(); ++i)
            if (twice_j[i] == t) return p[i];
        return 0.0;
    }
};

struct EntanglementReport {
    double s_e = 0.0;
    double e_f = 0.0;
    double e_d = 0.0;
    SectorDistribution p;
    double s_a = 0.0;
    double s_b = 0.0;
    double s_total = 0.0;
    double mutual_information = 0.0;
    double unentangled_fraction = 0.0;
    LogBase log_base = LogBase::Two;
};

// Weight vectors must sum to 1 within 1e-12; the CLI maps this to its data
// error exit code.
struct NormalizationError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

namespace detail {

inline LogMultiplicityRow side_log_row(const SystemSpec& side, const Config& cfg) {
    if (side.kind != SystemSpec::Kind::Spin)
        throw std::invalid_argument("entanglement: spin systems only");
    if (side.count <= cfg.exact_threshold && side.twice_s != 1) {
        auto table = multiplicity_table(side, cfg.exact_threshold);
        LogMultiplicityRow row;
        row.count = side.count;
        row.twice_s = side.twice_s;
        row.parity = (side.count * side.twice_s) & 1;
        int tmax = side.count * side.twice_s;
        row.log_counts.assign((tmax - row.parity) / 2 + 1,
                              -std::numeric_limits<double>::infinity());
        for (const auto& [t, c] : table.counts)
            row.log_counts[(t - row.parity) / 2] = log_mpz(c);
        return row;
    }
    return log_multiplicity_row(side);
}

inline void check_normalized(double sum) {
    if (std::abs(sum - 1.0) > 1e-12)
        throw NormalizationError("MixtureWeights: weights sum to " + std::to_string(sum) +
                                 ", expected 1");
}

} // namespace detail

// Sectors common to both sides: parity-compatible twice_j with nonzero
// multiplicity on A and on B.
inline std::vector<int> sector_support(const SplitSpec& split, const Config& cfg = {}) {
    SystemSpec a = SystemSpec::spins(split.side_a, split.total.twice_s);
    SystemSpec b = SystemSpec::spins(split.side_b(), split.total.twice_s);
    auto ra = detail::side_log_row(a, cfg);
    auto rb = detail::side_log_row(b, cfg);
    std::vector<int> out;
    if (ra.parity != rb.parity) return out; // odd total: no singlet at all
    for (int t = ra.parity; t <= std::min(ra.max_twice_j(), rb.max_twice_j()); t += 2)
        if (std::isfinite(ra.at(TwiceSpin(t))) && std::isfinite(rb.at(TwiceSpin(t))))
            out.push_back(t);
    return out;
}

// p_j = c_j^A c_j^B / N (uniform), the given p_j (per-sector), or the
// aggregated full weights.
inline SectorDistribution singlet_probabilities(const SplitSpec& split,
                                                const MixtureWeights& weights,
                                                const Config& cfg = {}) {
    const auto support = sector_support(split, cfg);
    if (support.empty())
        throw std::invalid_argument("singlet_probabilities: system has no invariant states");
    SectorDistribution dist;
    if (weights.mode == MixtureWeights::Mode::Uniform) {
        if (split.total.count <= cfg.exact_threshold) {
            auto ta = multiplicity_table(SystemSpec::spins(split.side_a, split.total.twice_s),
                                         cfg.exact_threshold);
            auto tb = multiplicity_table(SystemSpec::spins(split.side_b(), split.total.twice_s),
                                         cfg.exact_threshold);
            mpz_class n = 0;
            for (int t : support) n += ta.count(TwiceSpin(t)) * tb.count(TwiceSpin(t));
            for (int t : support) {
                mpq_class q(ta.count(TwiceSpin(t)) * tb.count(TwiceSpin(t)), n);
                q.canonicalize();
                dist.twice_j.push_back(t);
                dist.p.push_back(q.get_d());
            }
        } else {
            auto ra = detail::side_log_row(
                SystemSpec::spins(split.side_a, split.total.twice_s), cfg);
            auto rb = detail::side_log_row(
                SystemSpec::spins(split.side_b(), split.total.twice_s), cfg);
            std::vector<double> lw;
            lw.reserve(support.size());
            for (int t : support)
                lw.push_back(ra.at(TwiceSpin(t)) + rb.at(TwiceSpin(t)));
            const double ln = log_sum_exp(lw);
            for (std::size_t i = 0; i < support.size(); ++i) {
                dist.twice_j.push_back(support[i]);
                dist.p.push_back(std::exp(lw[i] - ln));
            }
        }
        return dist;
    }

    std::map<int, double> agg;
    KahanSum total;
    if (weights.mode == MixtureWeights::Mode::PerSector) {
        for (const auto& [t, w] : weights.sector) {
            if (w < 0) throw std::invalid_argument("MixtureWeights: negative weight");
            agg[t] += w;
            total.add(w);
        }
    } else {
        // Full-mode index bounds need exact tables.
        auto ta = multiplicity_table(SystemSpec::spins(split.side_a, split.total.twice_s),
                                     cfg.exact_threshold);
        auto tb = multiplicity_table(SystemSpec::spins(split.side_b(), split.total.twice_s),
                                     cfg.exact_threshold);
        for (const auto& [key, w] : weights.full) {
            auto [t, a, b] = key;
            if (w < 0) throw std::invalid_argument("MixtureWeights: negative weight");
            if (a < 0 || ta.count(TwiceSpin(t)) <= a || b < 0 || tb.count(TwiceSpin(t)) <= b)
                throw std::invalid_argument("MixtureWeights: degeneracy index out of range");
            agg[t] += w;
            total.add(w);
        }
    }
    detail::check_normalized(total.value());
    for (const auto& [t, w] : agg) {
        bool ok = false;
        for (int s : support) ok = ok || (s == t);
        if (!ok && w > 0)
            throw std::invalid_argument("MixtureWeights: weight on empty sector twice_j=" +
                                        std::to_string(t));
        if (w > 0) {
            dist.twice_j.push_back(t);
            dist.p.push_back(w);
        }
    }
    return dist;
}

// Exact rational sector probabilities for the uniform mixture.
inline std::map<int, mpq_class> exact_singlet_probabilities(const SplitSpec& split,
                                                            int exact_threshold = 4096) {
    auto ta = multiplicity_table(SystemSpec::spins(split.side_a, split.total.twice_s),
                                 exact_threshold);
    auto tb = multiplicity_table(SystemSpec::spins(split.side_b(), split.total.twice_s),
                                 exact_threshold);
    mpz_class n = 0;
    for (const auto& [t, ca] : ta.counts) n += ca * tb.count(TwiceSpin(t));
    std::map<int, mpq_class> out;
    for (const auto& [t, ca] : ta.counts) {
        mpz_class prod = ca * tb.count(TwiceSpin(t));
        if (prod == 0) continue;
        mpq_class q(prod, n);
        q.canonicalize();
        out[t] = q;
    }
    return out;
}

// Full closed-form report. Internally in nats, converted to cfg.log_base.
//
// Reduced entropies use the sector spectra of the uniform-within-sector state:
// each (j, a) block of rho_A carries p_j/(c_j^A (2j+1)) on 2j+1 levels, so
//   S(rho_A) = sum_j p_j [log(2j+1) + log c_j^A - log p_j],
// which for uniform weights reduces to log N + sum_j p_j [log(2j+1) - log c_j^B].
// Full-mode weights fix only S_E and S(rho); reduced entropies are reported
// as NaN (the brute-force oracle covers that regime).
inline EntanglementReport entanglement(const SplitSpec& split, const MixtureWeights& weights,
                                       const Config& cfg = {}) {
    const auto dist = singlet_probabilities(split, weights, cfg);
    auto ra = detail::side_log_row(SystemSpec::spins(split.side_a, split.total.twice_s), cfg);
    auto rb = detail::side_log_row(SystemSpec::spins(split.side_b(), split.total.twice_s), cfg);

    KahanSum se, sa, sb;
    for (std::size_t i = 0; i < dist.twice_j.size(); ++i) {
        const TwiceSpin j(dist.twice_j[i]);
        const double p = dist.p[i];
        if (p <= 0) continue;
        const double ldim = std::log(double(j.dim()));
        se.add(p * ldim);
        sa.add(p * (ldim + ra.at(j) - std::log(p)));
        sb.add(p * (ldim + rb.at(j) - std::log(p)));
    }

    // S(rho): the singlet basis is orthonormal, so the mixture's eigenvalues
    // are the weights themselves.
    double stotal = 0.0;
    if (weights.mode == MixtureWeights::Mode::Full) {
        KahanSum s;
        for (const auto& [key, w] : weights.full)
            if (w > 0) s.add(-w * std::log(w));
        stotal = s.value();
    } else {
        // weight p_j spread over the c_j^A c_j^B states of sector j
        KahanSum s;
        for (std::size_t i = 0; i < dist.twice_j.size(); ++i) {
            const TwiceSpin j(dist.twice_j[i]);
            const double p = dist.p[i];
            if (p <= 0) continue;
            s.add(p * (ra.at(j) + rb.at(j) - std::log(p)));
        }
        stotal = s.value();
    }

    EntanglementReport r;
    const double f = base_factor(cfg.log_base);
    r.log_base = cfg.log_base;
    r.p = dist;
    r.s_e = f * se.value();
    r.e_f = r.s_e;
    r.e_d = r.s_e;
    r.s_total = f * stotal;
    r.unentangled_fraction = dist.at(0);
    if (weights.mode == MixtureWeights::Mode::Full) {
        r.s_a = r.s_b = r.mutual_information = std::numeric_limits<double>::quiet_NaN();
    } else {
        r.s_a = f * sa.value();
        r.s_b = f * sb.value();
        double mi = r.s_a + r.s_b - r.s_total;
        r.mutual_information = (mi < 0 && mi > -1e-9) ? 0.0 : mi;
    }
    return r;
}

inline double reduced_entropy(const SplitSpec& split, Side side, const MixtureWeights& weights,
                              const Config& cfg = {}) {
    if (weights.mode == MixtureWeights::Mode::Full)
        throw std::invalid_argument("reduced_entropy: full-mode weights are handled by the "
                                    "brute-force oracle only");
    auto r = entanglement(split, weights, cfg);
    return side == Side::A ? r.s_a : r.s_b;
}

inline double mutual_information(const SplitSpec& split, const MixtureWeights& weights,
                                 const Config& cfg = {}) {
    if (weights.mode == MixtureWeights::Mode::Full)
        throw std::invalid_argument("mutual_information: full-mode weights are handled by the "
                                    "brute-force oracle only");
    return entanglement(split, weights, cfg).mutual_information;
}

inline double unentangled_fraction(const SplitSpec& split, const MixtureWeights& weights,
                                   const Config& cfg = {}) {
    return singlet_probabilities(split, weights, cfg).at(0);
}

} // namespace zsm
