#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "zsm/multiplicity.hpp"

using namespace zsm;

TEST_CASE("qubit multiplicities for four qubits match the 2,3,1 decomposition") {
    CHECK(qubit_multiplicity(4, TwiceSpin(0)) == 2);
    CHECK(qubit_multiplicity(4, TwiceSpin(2)) == 3);
    CHECK(qubit_multiplicity(4, TwiceSpin(4)) == 1);
}

TEST_CASE("qubit multiplicity edge cases") {
    CHECK(qubit_multiplicity(0, TwiceSpin(0)) == 1); // empty tensor product
    CHECK(qubit_multiplicity(4, TwiceSpin(1)) == 0); // parity mismatch
    CHECK(qubit_multiplicity(4, TwiceSpin(6)) == 0); // out of range
    CHECK(qubit_multiplicity(12, TwiceSpin(0)) == 132);
}

TEST_CASE("recursion equals closed form for all m <= 64") {
    for (int m = 0; m <= 64; ++m) {
        auto table = multiplicity_table(SystemSpec::qubits(m));
        for (int t = m & 1; t <= m; t += 2)
            CHECK(table.count(TwiceSpin(t)) == qubit_multiplicity(m, TwiceSpin(t)));
        // no spurious entries
        mpz_class dim_sum = 0;
        for (const auto& [t, c] : table.counts) dim_sum += c * (t + 1);
        mpz_class full;
        mpz_ui_pow_ui(full.get_mpz_t(), 2, unsigned(m));
        CHECK(dim_sum == full);
    }
}

TEST_CASE("sum rules for n <= 64") {
    for (int n = 1; n <= 64; ++n) {
        auto table = multiplicity_table(SystemSpec::qubits(2 * n));
        mpz_class count_sum = 0;
        for (const auto& [t, c] : table.counts) count_sum += c;
        mpz_class central;
        mpz_bin_uiui(central.get_mpz_t(), 2 * n, n);
        CHECK(count_sum == central);
    }
}

TEST_CASE("split identity N = sum c_j^A c_j^B, including odd sides") {
    for (int m : {2, 8, 20, 34, 64}) {
        const mpz_class n0 = qubit_multiplicity(m, TwiceSpin(0));
        for (int a = 0; a <= m; ++a) { // odd a gives half-integer j
            mpz_class sum = 0;
            for (int t = a & 1; t <= std::min(a, m - a); t += 2)
                sum += qubit_multiplicity(a, TwiceSpin(t)) *
                       qubit_multiplicity(m - a, TwiceSpin(t));
            CHECK(sum == n0);
        }
    }
}

TEST_CASE("spin-s tables") {
    auto t2 = multiplicity_table(SystemSpec::spins(2, 1));
    CHECK(t2.counts == std::map<int, mpz_class>{{0, 1}, {2, 1}});

    auto s1m2 = multiplicity_table(SystemSpec::spins(2, 2));
    CHECK(s1m2.counts == std::map<int, mpz_class>{{0, 1}, {2, 1}, {4, 1}});

    auto s1m3 = multiplicity_table(SystemSpec::spins(3, 2));
    CHECK(s1m3.counts == std::map<int, mpz_class>{{0, 1}, {2, 3}, {4, 2}, {6, 1}});
}

TEST_CASE("support is full for m >= 2") {
    for (int ts : {1, 2, 3}) {
        for (int m = 2; m <= 12; ++m) {
            auto table = multiplicity_table(SystemSpec::spins(m, ts));
            const int parity = (m * ts) & 1;
            for (int t = parity; t <= m * ts; t += 2) {
                CAPTURE(ts, m, t);
                CHECK(table.count(TwiceSpin(t)) > 0);
            }
        }
    }
}

TEST_CASE("exact mode rejects counts above the threshold") {
    CHECK_THROWS_AS(multiplicity_table(SystemSpec::qubits(200), 100), std::length_error);
}

TEST_CASE("invariant dimension") {
    CHECK(invariant_dimension(SystemSpec::qubits(2)) == 1);
    CHECK(invariant_dimension(SystemSpec::qubits(4)) == 2);
    CHECK(invariant_dimension(SystemSpec::qubits(6)) == 5);
    CHECK(invariant_dimension(SystemSpec::qubits(0)) == 1);
    CHECK(invariant_dimension(SystemSpec::qubits(3)) == 0);
    CHECK(invariant_dimension(SystemSpec::spins(3, 2)) == 1);
}

TEST_CASE("invariant dimension is the Catalan number") {
    mpz_class prev = 1;
    for (long n = 1; n <= 1000; ++n) {
        const mpz_class c = catalan(n);
        // independent route: Segner's recurrence step C_n = C_{n-1} * 2(2n-1)/(n+1)
        mpz_class via_rec = prev * (2 * (2 * n - 1));
        mpz_class q;
        mpz_divexact_ui(q.get_mpz_t(), via_rec.get_mpz_t(), unsigned(n + 1));
        CHECK(c == q);
        prev = c;
        if (n <= 40) CHECK(invariant_dimension(SystemSpec::qubits(int(2 * n))) == c);
    }
}

TEST_CASE("log multiplicity agrees with exact arithmetic") {
    CHECK(log_qubit_multiplicity(4, TwiceSpin(2)) ==
          Catch::Approx(std::log(3.0)).epsilon(1e-14));
    CHECK(log_qubit_multiplicity(2, TwiceSpin(2)) == Catch::Approx(0.0).margin(1e-14));
    CHECK_THROWS_AS(log_qubit_multiplicity(4, TwiceSpin(1)), std::domain_error);

    const double exact = log_mpz(qubit_multiplicity(2000, TwiceSpin(0)));
    CHECK(log_qubit_multiplicity(2000, TwiceSpin(0)) ==
          Catch::Approx(exact).epsilon(1e-12));

    std::mt19937_64 rng(42);
    for (int trial = 0; trial < 200; ++trial) {
        const long m = long(rng() % 2000) + 1;
        const int t = int(rng() % std::uint64_t(m + 1));
        if ((m - t) & 1) continue;
        const double exact_log = log_mpz(qubit_multiplicity(m, TwiceSpin(t)));
        CAPTURE(m, t);
        CHECK(log_qubit_multiplicity(m, TwiceSpin(t)) ==
              Catch::Approx(exact_log).epsilon(1e-12));
    }
}

TEST_CASE("log row matches exact tables for general spin") {
    for (int ts : {1, 2, 3}) {
        for (int m : {1, 5, 12, 40}) {
            auto table = multiplicity_table(SystemSpec::spins(m, ts));
            auto row = log_multiplicity_row(SystemSpec::spins(m, ts));
            for (const auto& [t, c] : table.counts) {
                CAPTURE(ts, m, t);
                CHECK(row.at(TwiceSpin(t)) == Catch::Approx(log_mpz(c)).epsilon(1e-11).margin(1e-10));
            }
        }
    }
}

TEST_CASE("log invariant series matches closed form along the way") {
    auto series = log_invariant_series(1, 64);
    for (int m = 2; m <= 64; m += 2)
        CHECK(series[std::size_t(m)] ==
              Catch::Approx(log_mpz(qubit_multiplicity(m, TwiceSpin(0)))).epsilon(1e-12));
    auto s1 = log_invariant_series(2, 20);
    for (int m = 2; m <= 20; m += 2) {
        auto table = multiplicity_table(SystemSpec::spins(m, 2));
        CHECK(s1[std::size_t(m)] ==
              Catch::Approx(log_mpz(table.count(TwiceSpin(0)))).epsilon(1e-11));
    }
}
