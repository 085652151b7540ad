#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "zsm/entanglement.hpp"
#include "zsm/multiplicity.hpp"
#include "zsm/numeric.hpp"
#include "zsm/types.hpp"

namespace zsm {

struct ScanResult {
    std::vector<long> n_values;
    std::map<std::string, std::vector<double>> quantities;
    std::optional<LinearFit> fit;
};

// Leading entropy asymptote 2n log 2 - (3/2) log n; no constant term.
inline double entropy_asymptote(long n, const Config& cfg = {}) {
    if (n < 1) throw std::invalid_argument("entropy_asymptote: n must be >= 1");
    return base_factor(cfg.log_base) *
           (2.0 * double(n) * 0.6931471805599453094 - 1.5 * std::log(double(n)));
}

// Location of the largest multiplicity c_j^(n), estimate (1/2)sqrt(n+2) - 1.
inline double jmax_estimate(long n) {
    if (n < 1) throw std::invalid_argument("jmax_estimate: n must be >= 1");
    return 0.5 * std::sqrt(double(n) + 2.0) - 1.0;
}

// Exact argmax of c_j^(n) for n qubits, ties broken toward smaller j.
// c_j is unimodal in j; the exact integer ratio test
//   c(t+2)/c(t) = (n-h)(t+3) / ((t+1)(h+2)),  h = (n+t)/2,
// locates the first non-increasing step without any floating point.
inline TwiceSpin jmax_exact(long n) {
    if (n < 1) throw std::invalid_argument("jmax_exact: n must be >= 1");
    long t = n & 1;
    while (t + 2 <= n) {
        const long h = (n + t) / 2;
        if ((n - h) * (t + 3) <= (t + 1) * (h + 2)) break;
        t += 2;
    }
    return TwiceSpin(int(t));
}

// Argmax over an explicit log-multiplicity row; ties toward smaller j.
inline TwiceSpin argmax_multiplicity(const LogMultiplicityRow& row) {
    std::size_t best = 0;
    for (std::size_t i = 1; i < row.log_counts.size(); ++i)
        if (row.log_counts[i] > row.log_counts[best]) best = i;
    return TwiceSpin(row.parity + 2 * int(best));
}

// log N(s; 2n) - 2n log(2s+1) against log n, with the OLS fit whose slope
// approaches -3/2.
inline ScanResult entropy_residual_scan(const std::vector<long>& ns, int twice_s = 1,
                                        const Config& cfg = {}) {
    ScanResult res;
    res.n_values = ns;
    const double f = base_factor(cfg.log_base);
    const double log_d = std::log(double(twice_s + 1));
    std::vector<double> log_n, resid, log_big_n;
    // log n is taken in the same base as the residual, so the fitted slope is
    // base independent.
    if (twice_s == 1) {
        for (long n : ns) {
            const double ln_big = log_qubit_multiplicity(2 * n, TwiceSpin(0));
            log_big_n.push_back(f * ln_big);
            log_n.push_back(f * std::log(double(n)));
            resid.push_back(f * (ln_big - 2.0 * double(n) * log_d));
        }
    } else {
        const long m_max = 2 * *std::max_element(ns.begin(), ns.end());
        auto series = log_invariant_series(twice_s, int(m_max));
        for (long n : ns) {
            const double ln_big = series[std::size_t(2 * n)];
            log_big_n.push_back(f * ln_big);
            log_n.push_back(f * std::log(double(n)));
            resid.push_back(f * (ln_big - 2.0 * double(n) * log_d));
        }
    }
    res.quantities["log_n"] = log_n;
    res.quantities["log_invariant_dim"] = log_big_n;
    res.quantities["residual"] = resid;
    res.fit = linear_fit(log_n, resid);
    return res;
}

// E_F for the n:n split of 2n qubits against (1/2) log n, plus the mutual
// information ratio I/S_E that approaches 3.
inline ScanResult entanglement_scaling_scan(const std::vector<long>& ns,
                                            const Config& cfg = {}) {
    ScanResult res;
    res.n_values = ns;
    const double f = base_factor(cfg.log_base);
    std::vector<double> e_f, half_log, ratio, mi_ratio, log_n;
    for (long n : ns) {
        SplitSpec split(SystemSpec::qubits(int(2 * n)), int(n));
        auto rep = entanglement(split, MixtureWeights::uniform(), cfg);
        const double hl = f * 0.5 * std::log(double(n));
        e_f.push_back(rep.e_f);
        half_log.push_back(hl);
        ratio.push_back(hl > 0 ? rep.e_f / hl : 0.0);
        mi_ratio.push_back(rep.s_e > 0 ? rep.mutual_information / rep.s_e : 0.0);
        log_n.push_back(f * std::log(double(n)));
    }
    res.quantities["e_f"] = e_f;
    res.quantities["half_log_n"] = half_log;
    res.quantities["e_f_over_half_log_n"] = ratio;
    res.quantities["mi_over_s_e"] = mi_ratio;
    res.fit = linear_fit(log_n, e_f);
    return res;
}

// Exact vs estimated peak position of c_j^(n).
inline ScanResult jmax_scan(const std::vector<long>& ns) {
    ScanResult res;
    res.n_values = ns;
    std::vector<double> exact, estimate, diff;
    for (long n : ns) {
        const double je = jmax_exact(n).j();
        const double js = jmax_estimate(n);
        exact.push_back(je);
        estimate.push_back(js);
        diff.push_back(std::abs(je - js));
    }
    res.quantities["jmax_exact"] = exact;
    res.quantities["jmax_estimate"] = estimate;
    res.quantities["abs_difference"] = diff;
    return res;
}

} // namespace zsm
