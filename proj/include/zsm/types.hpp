#pragma once

#include <compare>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace zsm {

// Angular momenta are stored as integer twice-values (2j), so half-integer
// spins stay exact and hashable.
struct TwiceSpin {
    int twice = 0;

    constexpr TwiceSpin() = default;
    constexpr explicit TwiceSpin(int t) : twice(t) {
        if (t < 0) throw std::invalid_argument("TwiceSpin: negative twice-value");
    }

    constexpr int dim() const { return twice + 1; }
    constexpr double j() const { return twice / 2.0; }

    auto operator<=>(const TwiceSpin&) const = default;
};

// A collection of identical constituents: m spins of fixed spin s, or m copies
// of the fundamental representation of SU(M).
struct SystemSpec {
    enum class Kind { Spin, Fundamental };

    int count = 0;        // number of constituents
    Kind kind = Kind::Spin;
    int twice_s = 1;      // Spin kind: 2s
    int unitary_rank = 2; // Fundamental kind: M

    static SystemSpec qubits(int m) { return spins(m, 1); }

    static SystemSpec spins(int m, int twice_s) {
        if (m < 0) throw std::invalid_argument("SystemSpec: negative constituent count");
        if (twice_s < 0) throw std::invalid_argument("SystemSpec: negative spin");
        SystemSpec s;
        s.count = m;
        s.kind = Kind::Spin;
        s.twice_s = twice_s;
        return s;
    }

    static SystemSpec fundamental(int rank, int m) {
        if (m < 0) throw std::invalid_argument("SystemSpec: negative constituent count");
        if (rank < 2) throw std::invalid_argument("SystemSpec: unitary rank must be >= 2");
        SystemSpec s;
        s.count = m;
        s.kind = Kind::Fundamental;
        s.unitary_rank = rank;
        return s;
    }

    int local_dim() const {
        return kind == Kind::Spin ? twice_s + 1 : unitary_rank;
    }

    // Total Hilbert-space dimension local_dim()^count; throws on overflow.
    std::int64_t total_dim() const {
        std::int64_t d = 1;
        for (int i = 0; i < count; ++i) {
            if (d > (std::int64_t{1} << 62) / local_dim())
                throw std::overflow_error("SystemSpec: total dimension overflows 64 bits");
            d *= local_dim();
        }
        return d;
    }

    bool operator==(const SystemSpec&) const = default;
};

enum class Side { A, B };

// Bipartition of the constituents: Alice holds the first side_a, Bob the rest.
struct SplitSpec {
    SystemSpec total;
    int side_a = 0;

    SplitSpec() = default;
    SplitSpec(SystemSpec t, int a) : total(t), side_a(a) {
        if (a < 0 || a > t.count)
            throw std::invalid_argument("SplitSpec: side A count out of range");
    }

    int side_b() const { return total.count - side_a; }
    int side_count(Side s) const { return s == Side::A ? side_a : side_b(); }

    SplitSpec swapped() const { return SplitSpec(total, side_b()); }
};

enum class LogBase { Two, E };

inline double base_factor(LogBase b) {
    // Internal entropies are in nats; multiply by this at the boundary.
    return b == LogBase::Two ? 1.4426950408889634074 /* 1/ln2 */ : 1.0;
}

struct Config {
    LogBase log_base = LogBase::Two;
    int exact_threshold = 4096;   // max constituent count for exact big-integer tables
    std::int64_t dimension_cap = 16384; // max Hilbert-space dimension for the oracle
    std::string output_format = "json";
    std::uint64_t seed = 0;
    int shards = 1;               // fixed shard count for the distillation sampler
    int threads = 1;
};

} // namespace zsm
