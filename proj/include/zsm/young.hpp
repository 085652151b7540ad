#pragma once

#include <map>
#include <stdexcept>
#include <vector>

#include <gmpxx.h>

namespace zsm {

// Reduced Young diagram: weakly decreasing row lengths, fewer than `rank`
// nonzero rows (full columns of height `rank` are removed as they form).
using YoungDiagram = std::vector<int>;

// Multiplicity of the trivial representation in the m-th tensor power of the
// fundamental of SU(rank). Dynamic programming over reduced diagrams: each
// tensor factor adds one box to any row that keeps rows weakly decreasing;
// the answer is the path count ending at the empty reduced diagram.
inline mpz_class su_m_invariant_dimension(int rank, int m) {
    if (rank < 2) throw std::invalid_argument("su_m_invariant_dimension: rank must be >= 2");
    if (m < 0) return 0;
    std::map<YoungDiagram, mpz_class> cur;
    cur[YoungDiagram(rank, 0)] = 1;
    for (int step = 0; step < m; ++step) {
        std::map<YoungDiagram, mpz_class> next;
        for (const auto& [shape, c] : cur) {
            for (int r = 0; r < rank; ++r) {
                if (r > 0 && shape[r] >= shape[r - 1]) continue;
                YoungDiagram s = shape;
                s[r] += 1;
                if (s[rank - 1] > 0) { // full column formed; reduce
                    for (int& row : s) row -= 1;
                }
                next[s] += c;
            }
        }
        cur = std::move(next);
    }
    auto it = cur.find(YoungDiagram(rank, 0));
    return it == cur.end() ? mpz_class(0) : it->second;
}

// Standard Young tableaux of the rank x cols rectangle, by the hook-length
// formula. Independent cross-check for su_m_invariant_dimension.
inline mpz_class rectangular_syt_count(int rank, int cols) {
    mpz_class num;
    mpz_fac_ui(num.get_mpz_t(), unsigned(rank) * unsigned(cols));
    mpz_class hooks = 1;
    for (int r = 0; r < rank; ++r)
        for (int c = 0; c < cols; ++c)
            hooks *= (rank - r) + (cols - c) - 1;
    mpz_class out;
    mpz_divexact(out.get_mpz_t(), num.get_mpz_t(), hooks.get_mpz_t());
    return out;
}

} // namespace zsm
