#pragma once

#include <cmath>
#include <limits>
#include <map>
#include <stdexcept>
#include <vector>

#include <gmpxx.h>

#include "zsm/numeric.hpp"
#include "zsm/types.hpp"
#include "zsm/young.hpp"

namespace zsm {

inline double log_mpz(const mpz_class& z) {
    if (z <= 0) return -std::numeric_limits<double>::infinity();
    long exp2 = 0;
    double d = mpz_get_d_2exp(&exp2, z.get_mpz_t());
    return std::log(d) + double(exp2) * 0.6931471805599453094;
}

// c_j^(m) for m qubits, as a difference of binomials. Total function: invalid
// parity or range gives 0.
inline mpz_class qubit_multiplicity(long m, TwiceSpin j) {
    const long t = j.twice;
    if (m < 0 || t > m || ((m - t) & 1)) return 0;
    const long h = (m + t) / 2;
    mpz_class a, b;
    mpz_bin_uiui(a.get_mpz_t(), m, h);
    if (h + 1 <= m)
        mpz_bin_uiui(b.get_mpz_t(), m, h + 1);
    return a - b;
}

// log c_j^(m) for qubits. Uses the ratio form
//   c_j^(m) = C(m, h) * (2j+1)/(h+1),  h = (m+2j)/2,
// which avoids cancellation between the two near-equal binomials.
inline double log_qubit_multiplicity(long m, TwiceSpin j) {
    const long t = j.twice;
    if (m < 0 || t > m || ((m - t) & 1))
        throw std::domain_error("log_qubit_multiplicity: zero multiplicity (parity/range)");
    const long h = (m + t) / 2;
    return log_binomial(m, h) + std::log1p(double(t)) - std::log1p(double(h));
}

inline mpz_class catalan(long n) {
    mpz_class c;
    mpz_bin_uiui(c.get_mpz_t(), 2 * n, n);
    mpz_class r;
    mpz_divexact_ui(r.get_mpz_t(), c.get_mpz_t(), n + 1);
    return r;
}

// Exact multiplicity table for m spins of spin s, keyed by twice-j.
struct MultiplicityTable {
    SystemSpec spec;
    std::map<int, mpz_class> counts;

    const mpz_class& count(TwiceSpin j) const {
        static const mpz_class zero = 0;
        auto it = counts.find(j.twice);
        return it == counts.end() ? zero : it->second;
    }
    double log_count(TwiceSpin j) const { return log_mpz(count(j)); }
};

// Clebsch-Gordan recursion: c^(m+1)_J = sum of c^(m)_{j'} over |j'-s| <= J <= j'+s.
inline MultiplicityTable multiplicity_table(const SystemSpec& spec, int exact_threshold = 4096) {
    if (spec.kind != SystemSpec::Kind::Spin)
        throw std::invalid_argument("multiplicity_table: spin systems only");
    if (spec.count > exact_threshold)
        throw std::length_error("multiplicity_table: constituent count above exact threshold; "
                                "use log-domain mode");
    const int ts = spec.twice_s;
    std::map<int, mpz_class> cur;
    cur[0] = 1;
    for (int step = 0; step < spec.count; ++step) {
        std::map<int, mpz_class> next;
        for (const auto& [t, c] : cur) {
            for (int T = std::abs(t - ts); T <= t + ts; T += 2) next[T] += c;
        }
        cur = std::move(next);
    }
    // drop zero entries (only possible at ts == 0 edge)
    for (auto it = cur.begin(); it != cur.end();)
        it = (it->second == 0) ? cur.erase(it) : std::next(it);
    return MultiplicityTable{spec, std::move(cur)};
}

// Log-domain multiplicity row for one constituent count; entries indexed by
// i with twice_j = parity + 2*i.
struct LogMultiplicityRow {
    int count = 0;
    int twice_s = 0;
    int parity = 0;              // twice_j parity: (count * twice_s) % 2
    std::vector<double> log_counts;

    int max_twice_j() const { return parity + 2 * (int(log_counts.size()) - 1); }

    double at(TwiceSpin j) const {
        const int t = j.twice;
        if ((t & 1) != parity || t > max_twice_j())
            return -std::numeric_limits<double>::infinity();
        return log_counts[(t - parity) / 2];
    }
};

namespace detail {

// Scaled-double recursion: keep row values normalized by their max and track
// the accumulated log scale. Relative error grows like m*eps.
inline LogMultiplicityRow log_row_recursive(int m, int ts) {
    std::vector<double> v{1.0};
    double scale = 0.0;
    int parity = 0;
    for (int step = 0; step < m; ++step) {
        const int pprev = parity;
        const int pcur = ((step + 1) * ts) & 1;
        const int tmax = (step + 1) * ts;
        std::vector<double> nv((tmax - pcur) / 2 + 1, 0.0);
        for (std::size_t i = 0; i < v.size(); ++i) {
            if (v[i] == 0.0) continue;
            const int t = pprev + 2 * int(i);
            for (int T = std::abs(t - ts); T <= t + ts; T += 2)
                nv[(T - pcur) / 2] += v[i];
        }
        double mx = 0.0;
        for (double x : nv) mx = std::max(mx, x);
        if (mx > 0.0) {
            for (double& x : nv) x /= mx;
            scale += std::log(mx);
        }
        v = std::move(nv);
        parity = pcur;
    }
    LogMultiplicityRow row;
    row.count = m;
    row.twice_s = ts;
    row.parity = parity;
    row.log_counts.resize(v.size());
    for (std::size_t i = 0; i < v.size(); ++i)
        row.log_counts[i] = v[i] > 0.0 ? scale + std::log(v[i])
                                       : -std::numeric_limits<double>::infinity();
    return row;
}

} // namespace detail

inline LogMultiplicityRow log_multiplicity_row(const SystemSpec& spec) {
    if (spec.kind != SystemSpec::Kind::Spin)
        throw std::invalid_argument("log_multiplicity_row: spin systems only");
    if (spec.twice_s == 1) {
        LogMultiplicityRow row;
        row.count = spec.count;
        row.twice_s = 1;
        row.parity = spec.count & 1;
        row.log_counts.resize((spec.count - row.parity) / 2 + 1);
        for (std::size_t i = 0; i < row.log_counts.size(); ++i)
            row.log_counts[i] =
                log_qubit_multiplicity(spec.count, TwiceSpin(row.parity + 2 * int(i)));
        return row;
    }
    return detail::log_row_recursive(spec.count, spec.twice_s);
}

// log c_0^(m) for every m in 0..m_max in one recursion pass; NaN where the
// invariant sector is empty.
inline std::vector<double> log_invariant_series(int twice_s, int m_max) {
    std::vector<double> out(std::size_t(m_max) + 1,
                            std::numeric_limits<double>::quiet_NaN());
    if (twice_s == 1) {
        for (int m = 0; m <= m_max; m += 2)
            out[m] = log_qubit_multiplicity(m, TwiceSpin(0));
        return out;
    }
    std::vector<double> v{1.0};
    double scale = 0.0;
    int parity = 0;
    out[0] = 0.0;
    for (int step = 0; step < m_max; ++step) {
        const int pprev = parity;
        const int pcur = ((step + 1) * twice_s) & 1;
        const int tmax = (step + 1) * twice_s;
        std::vector<double> nv((tmax - pcur) / 2 + 1, 0.0);
        for (std::size_t i = 0; i < v.size(); ++i) {
            if (v[i] == 0.0) continue;
            const int t = pprev + 2 * int(i);
            for (int T = std::abs(t - twice_s); T <= t + twice_s; T += 2)
                nv[(T - pcur) / 2] += v[i];
        }
        double mx = 0.0;
        for (double x : nv) mx = std::max(mx, x);
        if (mx > 0.0) {
            for (double& x : nv) x /= mx;
            scale += std::log(mx);
        }
        v = std::move(nv);
        parity = pcur;
        if (pcur == 0 && v[0] > 0.0) out[step + 1] = scale + std::log(v[0]);
    }
    return out;
}

// N = dim of the invariant (zero total spin) subspace.
inline mpz_class invariant_dimension(const SystemSpec& spec) {
    if (spec.kind == SystemSpec::Kind::Fundamental)
        return su_m_invariant_dimension(spec.unitary_rank, spec.count);
    if (spec.twice_s == 1) {
        if (spec.count & 1) return 0;
        return catalan(spec.count / 2); // C(2n,n) - C(2n,n+1)
    }
    auto table = multiplicity_table(spec);
    return table.count(TwiceSpin(0));
}

} // namespace zsm
