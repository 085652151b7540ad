#include <catch2/catch_amalgamated.hpp>

#include "zsm/multiplicity.hpp"
#include "zsm/young.hpp"

using namespace zsm;

TEST_CASE("SU(3) invariant dimensions") {
    CHECK(su_m_invariant_dimension(3, 0) == 1);
    CHECK(su_m_invariant_dimension(3, 3) == 1); // the epsilon invariant
    CHECK(su_m_invariant_dimension(3, 6) == 5);
}

TEST_CASE("zero whenever the rank does not divide the count") {
    for (int rank : {2, 3, 4, 5})
        for (int m = 0; m <= 16; ++m)
            if (m % rank != 0) CHECK(su_m_invariant_dimension(rank, m) == 0);
}

TEST_CASE("SU(2) reduces to the qubit count") {
    for (int m = 0; m <= 30; ++m)
        CHECK(su_m_invariant_dimension(2, m) ==
              invariant_dimension(SystemSpec::qubits(m)));
}

TEST_CASE("agrees with the hook-length formula on rectangles") {
    for (int rank : {2, 3, 4}) {
        for (int cols = 0; cols <= 4; ++cols) {
            CAPTURE(rank, cols);
            CHECK(su_m_invariant_dimension(rank, rank * cols) ==
                  rectangular_syt_count(rank, cols));
        }
    }
    CHECK(rectangular_syt_count(3, 2) == 5);
}

TEST_CASE("rank validation") {
    CHECK_THROWS_AS(su_m_invariant_dimension(1, 2), std::invalid_argument);
}
