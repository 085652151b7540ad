// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any
// failure. Criteria with a runtime budget include it in the verdict.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "zsm/zsm.hpp"

using namespace zsm;

namespace {

int failures = 0;

void report(int num, const std::string& name, bool ok, const std::string& detail = "") {
    std::printf("%s %02d %s%s%s\n", ok ? "PASS" : "FAIL", num, name.c_str(),
                detail.empty() ? "" : " ", detail.c_str());
    std::fflush(stdout);
    if (!ok) ++failures;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

const Config nats = [] {
    Config c;
    c.log_base = LogBase::E;
    return c;
}();

// 1. N = 1, 2 for 2n = 2, 4; for n <= 1000 the closed form, the explicit
// binomial-difference multiplicity, and the CG recursion agree bitwise.
void criterion_1() {
    auto t0 = std::chrono::steady_clock::now();
    bool ok = invariant_dimension(SystemSpec::qubits(2)) == 1 &&
              invariant_dimension(SystemSpec::qubits(4)) == 2;
    // one incremental CG recursion sweep up to 2000 constituents;
    // row[k] = c_j at twice_j = parity + 2k
    std::vector<mpz_class> row{1};
    int parity = 0;
    for (int m = 1; m <= 2000 && ok; ++m) {
        const int p2 = 1 - parity;
        std::vector<mpz_class> next((std::size_t(m - p2)) / 2 + 1, 0);
        for (std::size_t kp = 0; kp < next.size(); ++kp) {
            const int tp = p2 + 2 * int(kp);
            if (tp - 1 >= parity && std::size_t((tp - 1 - parity) / 2) < row.size())
                next[kp] += row[std::size_t((tp - 1 - parity) / 2)];
            if (std::size_t((tp + 1 - parity) / 2) < row.size())
                next[kp] += row[std::size_t((tp + 1 - parity) / 2)];
        }
        row = std::move(next);
        parity = p2;
        if (m % 2 == 0) {
            const long n = m / 2;
            const mpz_class closed = catalan(n);
            ok = row[0] == closed && qubit_multiplicity(m, TwiceSpin(0)) == closed;
        }
    }
    const double dt = seconds_since(t0);
    ok = ok && dt < 10.0;
    report(1, "dimension_formulas", ok, "runtime " + std::to_string(dt) + "s (< 10s)");
}

// 2. Sum rules for n <= 64 and the split identity for every split of 2n <= 64.
void criterion_2() {
    bool ok = true;
    for (int m = 2; m <= 128 && ok; m += 2) { // n <= 64, m = 2n
        mpz_class dim_sum = 0, count_sum = 0;
        for (int t = 0; t <= m; t += 2) {
            const mpz_class c = qubit_multiplicity(m, TwiceSpin(t));
            dim_sum += c * (t + 1);
            count_sum += c;
        }
        mpz_class pow4, central;
        mpz_ui_pow_ui(pow4.get_mpz_t(), 2, unsigned(m));
        mpz_bin_uiui(central.get_mpz_t(), unsigned(m), unsigned(m / 2));
        ok = dim_sum == pow4 && count_sum == central;
    }
    for (int m = 2; m <= 64 && ok; m += 2) {
        const mpz_class n0 = qubit_multiplicity(m, TwiceSpin(0));
        for (int a = 0; a <= m && ok; ++a) {
            mpz_class sum = 0;
            for (int t = a & 1; t <= std::min(a, m - a); t += 2)
                sum += qubit_multiplicity(a, TwiceSpin(t)) *
                       qubit_multiplicity(m - a, TwiceSpin(t));
            ok = sum == n0;
        }
    }
    report(2, "sum_rules_and_split_identity", ok);
}

// 3. Closed form vs the dense oracle for every split of 2n in {2,...,12}.
void criterion_3() {
    auto t0 = std::chrono::steady_clock::now();
    Config cfg = nats;
    cfg.dimension_cap = 1 << 14;
    bool ok = true;
    std::string detail;
    for (int m = 2; m <= 12 && ok; m += 2) {
        for (int a = 0; a <= m && ok; ++a) {
            auto rep = oracle::verify_lemma(SplitSpec(SystemSpec::qubits(m), a),
                                            MixtureWeights::uniform(), cfg);
            ok = rep.pass && rep.spectrum_error_a <= 1e-9;
            if (m == 12) ok = ok && rep.singlet_count == 132;
            if (!ok)
                detail = "failed at " + std::to_string(m) + ":" + std::to_string(a) +
                         " err " + std::to_string(rep.max_abs_error);
        }
    }
    const double dt = seconds_since(t0);
    ok = ok && dt < 300.0;
    report(3, "oracle_equivalence", ok,
           detail.empty() ? "runtime " + std::to_string(dt) + "s (< 300s)" : detail);
}

// 4. 100 seeded random decompositions per split of 2n <= 8 never average below S_E.
void criterion_4() {
    bool ok = true;
    for (int m = 2; m <= 8 && ok; m += 2) {
        for (int a = 1; a < m && ok; ++a) {
            auto chk = oracle::random_decomposition_check(
                SplitSpec(SystemSpec::qubits(m), a), 100, 12345,
                MixtureWeights::uniform(), nats);
            ok = chk.pass;
        }
    }
    report(4, "concavity_inequality", ok);
}

// 5. Entropy-law slope within 3% of -3/2 for qubits over [1e3, 1e5], within 5%
// for spin-1 constituents.
void criterion_5() {
    auto scan = entropy_residual_scan(log_spaced(1000, 100000, 50), 1, nats);
    const double s1 = scan.fit->slope;
    auto spin1 = entropy_residual_scan(log_spaced(1000, 20000, 50), 2, nats);
    const double s2 = spin1.fit->slope;
    const bool ok = std::abs(s1 + 1.5) <= 0.03 * 1.5 && std::abs(s2 + 1.5) <= 0.05 * 1.5;
    report(5, "entropy_law_slope", ok,
           "qubit " + std::to_string(s1) + ", spin-1 " + std::to_string(s2));
}

// 6. |jmax_exact - ((1/2)sqrt(n+2) - 1)| <= 1 over a log-spaced set in [10, 1e4].
void criterion_6() {
    bool ok = true;
    for (long n : log_spaced(10, 10000, 60))
        ok = ok && std::abs(jmax_exact(n).j() - jmax_estimate(n)) <= 1.0;
    report(6, "jmax_estimate", ok);
}

// 7. Two-qubit side of 1e4 qubits: p_0 ~ 1/4, p_1 ~ 3/4, S_E ~ (3/4) log 3.
void criterion_7() {
    SplitSpec split(SystemSpec::qubits(10000), 2);
    auto dist = singlet_probabilities(split, MixtureWeights::uniform(), nats);
    auto rep = entanglement(split, MixtureWeights::uniform(), nats);
    const bool ok = std::abs(dist.at(0) - 0.25) <= 1e-3 &&
                    std::abs(dist.at(2) - 0.75) <= 1e-3 &&
                    std::abs(rep.s_e - 0.75 * std::log(3.0)) <= 2e-3 * std::log(3.0);
    report(7, "two_qubit_split", ok,
           "p0 " + std::to_string(dist.at(0)) + ", p1 " + std::to_string(dist.at(2)));
}

// 8. I/S_E for n:n splits increases toward 3 over {1e2,...,1e5} and ends in
// [2.7, 3.3].
void criterion_8() {
    std::vector<double> ratio;
    for (long n : {100L, 1000L, 10000L, 100000L}) {
        auto rep = entanglement(SplitSpec(SystemSpec::qubits(int(2 * n)), int(n)),
                                MixtureWeights::uniform(), nats);
        ratio.push_back(rep.mutual_information / rep.s_e);
    }
    bool ok = ratio.back() >= 2.7 && ratio.back() <= 3.3;
    for (std::size_t i = 1; i < ratio.size(); ++i) ok = ok && ratio[i] > ratio[i - 1];
    report(8, "factor_three_ratio", ok, "final " + std::to_string(ratio.back()));
}

// 9. E_F/((1/2) log n) within [0.8, 1.2] at n = 1e5 and closer to 1 than at 1e3.
void criterion_9() {
    auto ratio_at = [](long n) {
        auto rep = entanglement(SplitSpec(SystemSpec::qubits(int(2 * n)), int(n)),
                                MixtureWeights::uniform(), nats);
        return rep.e_f / (0.5 * std::log(double(n)));
    };
    const double r3 = ratio_at(1000);
    const double r5 = ratio_at(100000);
    const bool ok = r5 >= 0.8 && r5 <= 1.2 && std::abs(r5 - 1.0) < std::abs(r3 - 1.0);
    report(9, "half_log_scaling", ok,
           "at 1e3: " + std::to_string(r3) + ", at 1e5: " + std::to_string(r5));
}

// 10. Monte Carlo distillation at the 4-qubit 2:2 split: 3-sigma agreement at
// 1e6 trials and bitwise reproducibility for a fixed seed.
void criterion_10() {
    SplitSpec split(SystemSpec::qubits(4), 2);
    auto r1 = simulate(split, MixtureWeights::uniform(), 1000000, 7);
    auto r2 = simulate(split, MixtureWeights::uniform(), 1000000, 7);
    const double target = 0.5 * std::log2(3.0);
    const bool ok = std::abs(r1.yield_mean - target) <= 3.0 * r1.yield_stderr &&
                    r1.yield_mean == r2.yield_mean && r1.sector_tally == r2.sector_tally;
    report(10, "distillation", ok,
           "mean " + std::to_string(r1.yield_mean) + " +/- " +
               std::to_string(r1.yield_stderr));
}

// 11. SU(M) dimensions against the null-space oracle, the hook-length formula,
// and the SU(2) qubit reduction.
void criterion_11() {
    bool ok = su_m_invariant_dimension(3, 3) == 1 && su_m_invariant_dimension(3, 6) == 5;
    ok = ok && rectangular_syt_count(3, 1) == 1 && rectangular_syt_count(3, 2) == 5;
    ok = ok && oracle::su_m_invariant_basis(3, 3).cols() == 1;
    ok = ok && oracle::su_m_invariant_basis(3, 6).cols() == 5;
    for (int m = 0; m <= 30 && ok; ++m)
        ok = su_m_invariant_dimension(2, m) == invariant_dimension(SystemSpec::qubits(m));
    report(11, "su_m_generalization", ok);
}

// 12. The 2:4 split of six qubits has distinct singlet basis states with equal
// side-A reductions.
void criterion_12() {
    auto rep = oracle::local_orthogonality_report(SplitSpec(SystemSpec::qubits(6), 2));
    bool ok = rep.has_identical_reduction_pair;
    bool overlap_ok = false;
    for (long i = 0; i < rep.overlap_a.rows(); ++i)
        for (long j = i + 1; j < rep.overlap_a.cols(); ++j) {
            const auto& li = rep.labels[std::size_t(i)];
            const auto& lj = rep.labels[std::size_t(j)];
            if (li.twice_j == lj.twice_j && li.a == lj.a)
                overlap_ok = overlap_ok ||
                             std::abs(rep.overlap_a(i, j) - 1.0 / (li.twice_j + 1)) < 1e-9;
        }
    report(12, "local_orthogonality_counterexample", ok && overlap_ok);
}

} // namespace

int main() {
    criterion_1();
    criterion_2();
    criterion_3();
    criterion_4();
    criterion_5();
    criterion_6();
    criterion_7();
    criterion_8();
    criterion_9();
    criterion_10();
    criterion_11();
    criterion_12();
    if (failures > 0) {
        std::printf("%d criteria failed\n", failures);
        return 1;
    }
    std::printf("all 12 criteria passed\n");
    return 0;
}
