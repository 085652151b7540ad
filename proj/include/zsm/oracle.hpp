#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <map>
#include <random>
#include <stdexcept>
#include <tuple>
#include <vector>

#include <Eigen/Dense>

#include "zsm/entanglement.hpp"
#include "zsm/multiplicity.hpp"
#include "zsm/types.hpp"

namespace zsm::oracle {

namespace detail {

inline long double factorial(int n) {
    static const auto table = [] {
        std::vector<long double> t(301);
        t[0] = 1.0L;
        for (int i = 1; i <= 300; ++i) t[i] = t[i - 1] * i;
        return t;
    }();
    return table.at(std::size_t(n));
}

} // namespace detail

// Clebsch-Gordan coefficient <j1 m1; j2 m2 | J M> in the Condon-Shortley
// convention, all angular momenta passed as twice-values. Racah's closed
// form with factorials in extended precision; accurate to ~1e-15 for the
// small j used here.
inline double clebsch_gordan(int tj1, int tm1, int tj2, int tm2, int tJ, int tM) {
    if (tm1 + tm2 != tM) return 0.0;
    if (std::abs(tm1) > tj1 || std::abs(tm2) > tj2 || std::abs(tM) > tJ) return 0.0;
    if (tJ < std::abs(tj1 - tj2) || tJ > tj1 + tj2) return 0.0;
    if (((tj1 + tm1) & 1) || ((tj2 + tm2) & 1) || ((tJ + tM) & 1)) return 0.0;
    if ((tj1 + tj2 + tJ) & 1) return 0.0;

    using detail::factorial;
    const int a = (tj1 + tj2 - tJ) / 2;
    const int b = (tj1 - tj2 + tJ) / 2;
    const int c = (-tj1 + tj2 + tJ) / 2;
    const long double delta2 = factorial(a) * factorial(b) * factorial(c) /
                               factorial((tj1 + tj2 + tJ) / 2 + 1);
    const long double pref2 = (tJ + 1) * factorial((tJ + tM) / 2) * factorial((tJ - tM) / 2) *
                              factorial((tj1 + tm1) / 2) * factorial((tj1 - tm1) / 2) *
                              factorial((tj2 + tm2) / 2) * factorial((tj2 - tm2) / 2);
    const int j1nm1 = (tj1 - tm1) / 2;
    const int j2pm2 = (tj2 + tm2) / 2;
    const int Jnj2pm1 = (tJ - tj2 + tm1) / 2;
    const int Jnj1nm2 = (tJ - tj1 - tm2) / 2;
    const int kmin = std::max({0, -Jnj2pm1, -Jnj1nm2});
    const int kmax = std::min({a, j1nm1, j2pm2});
    long double sum = 0.0L;
    for (int k = kmin; k <= kmax; ++k) {
        long double term = 1.0L /
            (factorial(k) * factorial(a - k) * factorial(j1nm1 - k) * factorial(j2pm2 - k) *
             factorial(Jnj2pm1 + k) * factorial(Jnj1nm2 + k));
        sum += (k & 1) ? -term : term;
    }
    return double(std::sqrt(delta2 * pref2) * sum);
}

// One coupling path: all magnetic sublevels of the spin reached after
// sequentially coupling the constituents left to right.
struct PathBlock {
    int twice_j = 0;
    long a_index = -1;            // rank of this path within its j sector
    std::vector<int> path;        // intermediate twice-j values, one per constituent
    std::vector<Eigen::VectorXd> amps; // index i -> twice_m = -twice_j + 2*i

    const Eigen::VectorXd& amp(int twice_m) const {
        return amps.at(std::size_t((twice_m + twice_j) / 2));
    }
};

struct CouplingBasis {
    int count = 0;
    int twice_s = 0;
    std::vector<PathBlock> blocks;
    std::map<int, long> sector_counts; // twice_j -> number of paths

    std::vector<const PathBlock*> sector(int twice_j) const {
        std::vector<const PathBlock*> out;
        for (const auto& b : blocks)
            if (b.twice_j == twice_j) out.push_back(&b);
        return out;
    }
};

// Sequentially couples m spin-s constituents with Clebsch-Gordan
// coefficients. Orthonormal by construction; path counts per final j equal
// the multiplicity table.
inline CouplingBasis build_coupling_basis(int m, int twice_s, const Config& cfg = {}) {
    const int local_dim = twice_s + 1;
    std::int64_t dim = 1;
    for (int i = 0; i < m; ++i) {
        dim *= local_dim;
        if (dim > cfg.dimension_cap)
            throw std::length_error("build_coupling_basis: dimension exceeds cap");
    }
    CouplingBasis basis;
    basis.count = m;
    basis.twice_s = twice_s;
    PathBlock seed;
    seed.twice_j = 0;
    seed.amps = {Eigen::VectorXd::Ones(1)};
    basis.blocks = {seed};
    for (int step = 0; step < m; ++step) {
        std::vector<PathBlock> next;
        for (const auto& prev : basis.blocks) {
            const long prev_dim = prev.amps.front().size();
            for (int tJ = std::abs(prev.twice_j - twice_s); tJ <= prev.twice_j + twice_s;
                 tJ += 2) {
                PathBlock blk;
                blk.twice_j = tJ;
                blk.path = prev.path;
                blk.path.push_back(tJ);
                blk.amps.resize(std::size_t(tJ) + 1);
                for (int tM = -tJ; tM <= tJ; tM += 2) {
                    Eigen::VectorXd v = Eigen::VectorXd::Zero(prev_dim * local_dim);
                    // local index l corresponds to twice_ms = twice_s - 2l
                    for (int l = 0; l < local_dim; ++l) {
                        const int tms = twice_s - 2 * l;
                        const int tmp = tM - tms;
                        if (std::abs(tmp) > prev.twice_j) continue;
                        const double cg =
                            clebsch_gordan(prev.twice_j, tmp, twice_s, tms, tJ, tM);
                        if (cg == 0.0) continue;
                        const Eigen::VectorXd& pa = prev.amp(tmp);
                        for (long i = 0; i < prev_dim; ++i)
                            if (pa[i] != 0.0) v[i * local_dim + l] += cg * pa[i];
                    }
                    blk.amps[std::size_t((tM + tJ) / 2)] = std::move(v);
                }
                next.push_back(std::move(blk));
            }
        }
        basis.blocks = std::move(next);
    }
    for (auto& blk : basis.blocks) blk.a_index = basis.sector_counts[blk.twice_j]++;
    return basis;
}

struct SingletState {
    int twice_j = 0;
    long a = 0;
    long b = 0;
    Eigen::VectorXd amp; // over the product basis of the full system, A most significant
};

// Cross singlets |j,a,b> = (2j+1)^{-1/2} sum_m (-1)^{j-m} |j,-m,a>_A |j,m,b>_B
// for every sector with multiplicity on both sides.
inline std::vector<SingletState> build_singlet_states(const SplitSpec& split,
                                                      const Config& cfg = {}) {
    if (split.total.kind != SystemSpec::Kind::Spin)
        throw std::invalid_argument("build_singlet_states: spin systems only");
    if (split.total.total_dim() > cfg.dimension_cap)
        throw std::length_error("build_singlet_states: dimension exceeds cap");
    const int ts = split.total.twice_s;
    auto basis_a = build_coupling_basis(split.side_a, ts, cfg);
    auto basis_b = build_coupling_basis(split.side_b(), ts, cfg);
    const long dim_b = (basis_b.blocks.front().amps.front()).size();
    std::vector<SingletState> out;
    for (const auto& [tj, count_a] : basis_a.sector_counts) {
        if (!basis_b.sector_counts.contains(tj)) continue;
        const double norm = 1.0 / std::sqrt(double(tj + 1));
        for (const PathBlock* pa : basis_a.sector(tj)) {
            for (const PathBlock* pb : basis_b.sector(tj)) {
                SingletState s;
                s.twice_j = tj;
                s.a = pa->a_index;
                s.b = pb->a_index;
                const long dim_a = pa->amps.front().size();
                s.amp = Eigen::VectorXd::Zero(dim_a * dim_b);
                for (int tm = -tj; tm <= tj; tm += 2) {
                    const double sign = (((tj - tm) / 2) & 1) ? -1.0 : 1.0;
                    const Eigen::VectorXd& va = pa->amp(-tm);
                    const Eigen::VectorXd& vb = pb->amp(tm);
                    for (long ia = 0; ia < dim_a; ++ia) {
                        if (va[ia] == 0.0) continue;
                        s.amp.segment(ia * dim_b, dim_b) += sign * norm * va[ia] * vb;
                    }
                }
                out.push_back(std::move(s));
            }
        }
    }
    return out;
}

// --- dense linear algebra ----------------------------------------------------

inline Eigen::MatrixXcd partial_trace(const Eigen::MatrixXcd& rho, long dim_a, long dim_b,
                                      Side keep) {
    if (rho.rows() != dim_a * dim_b || rho.cols() != dim_a * dim_b)
        throw std::invalid_argument("partial_trace: dimension mismatch");
    if (keep == Side::A) {
        Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(dim_a, dim_a);
        for (long i = 0; i < dim_a; ++i)
            for (long j = 0; j < dim_a; ++j)
                for (long k = 0; k < dim_b; ++k)
                    out(i, j) += rho(i * dim_b + k, j * dim_b + k);
        return out;
    }
    Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(dim_b, dim_b);
    for (long i = 0; i < dim_b; ++i)
        for (long j = 0; j < dim_b; ++j)
            for (long k = 0; k < dim_a; ++k)
                out(i, j) += rho(k * dim_b + i, k * dim_b + j);
    return out;
}

inline Eigen::MatrixXcd partial_trace(const Eigen::VectorXcd& psi, long dim_a, long dim_b,
                                      Side keep) {
    if (psi.size() != dim_a * dim_b)
        throw std::invalid_argument("partial_trace: dimension mismatch");
    Eigen::Map<const Eigen::Matrix<std::complex<double>, Eigen::Dynamic, Eigen::Dynamic,
                                   Eigen::RowMajor>>
        m(psi.data(), dim_a, dim_b);
    if (keep == Side::A) return m * m.adjoint();
    // rho_B[i,j] = sum_k psi[k,i] conj(psi[k,j])
    return (m.adjoint() * m).conjugate();
}

// Schmidt spectrum of a pure state: squared singular values of the
// dim_a x dim_b reshape.
inline std::vector<double> schmidt_spectrum(const Eigen::VectorXcd& psi, long dim_a,
                                            long dim_b) {
    Eigen::Map<const Eigen::Matrix<std::complex<double>, Eigen::Dynamic, Eigen::Dynamic,
                                   Eigen::RowMajor>>
        m(psi.data(), dim_a, dim_b);
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m);
    std::vector<double> out;
    for (long i = 0; i < svd.singularValues().size(); ++i) {
        const double s = svd.singularValues()[i];
        out.push_back(s * s);
    }
    return out;
}

inline double entropy_from_spectrum(const std::vector<double>& spectrum,
                                    const Config& cfg = {}) {
    KahanSum s;
    for (double v : spectrum) {
        if (v < -1e-10) throw std::invalid_argument("entropy: negative eigenvalue");
        if (v > 1e-15) s.add(-v * std::log(v));
    }
    return base_factor(cfg.log_base) * s.value();
}

inline double von_neumann_entropy(const Eigen::MatrixXcd& rho, const Config& cfg = {}) {
    if ((rho - rho.adjoint()).cwiseAbs().maxCoeff() > 1e-10)
        throw std::invalid_argument("von_neumann_entropy: matrix not Hermitian");
    if (std::abs(rho.trace().real() - 1.0) > 1e-10 || std::abs(rho.trace().imag()) > 1e-10)
        throw std::invalid_argument("von_neumann_entropy: trace not 1");
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(rho, Eigen::EigenvaluesOnly);
    std::vector<double> ev(es.eigenvalues().data(),
                           es.eigenvalues().data() + es.eigenvalues().size());
    return entropy_from_spectrum(ev, cfg);
}

namespace detail {

// Nonzero spectrum of sum_i w_i tr_other |psi_i><psi_i| without forming the
// big reduced matrix: rho_X = K^dagger K with K stacking the sqrt(w_i)-scaled
// reshapes, so the spectrum comes from whichever Gram matrix is smaller.
inline std::vector<double> mixture_reduced_spectrum(const std::vector<SingletState>& states,
                                                    const std::vector<double>& weights,
                                                    long dim_a, long dim_b, Side keep) {
    const long rows_per = keep == Side::B ? dim_a : dim_b;
    const long cols = keep == Side::B ? dim_b : dim_a;
    const long stacked = rows_per * long(states.size());
    Eigen::MatrixXd k(stacked, cols);
    for (std::size_t i = 0; i < states.size(); ++i) {
        Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic,
                                       Eigen::RowMajor>>
            m(states[i].amp.data(), dim_a, dim_b);
        const double w = std::sqrt(weights[i]);
        if (keep == Side::B)
            k.middleRows(long(i) * rows_per, rows_per) = w * m;
        else
            k.middleRows(long(i) * rows_per, rows_per) = w * m.transpose();
    }
    Eigen::MatrixXd gram =
        (cols <= stacked) ? Eigen::MatrixXd(k.transpose() * k) : Eigen::MatrixXd(k * k.transpose());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(gram, Eigen::EigenvaluesOnly);
    return std::vector<double>(es.eigenvalues().data(),
                               es.eigenvalues().data() + es.eigenvalues().size());
}

inline std::vector<double> mixture_weights_vector(const SplitSpec& split,
                                                  const MixtureWeights& weights,
                                                  const std::vector<SingletState>& states) {
    std::vector<double> w(states.size(), 0.0);
    if (weights.mode == MixtureWeights::Mode::Uniform) {
        std::fill(w.begin(), w.end(), 1.0 / double(states.size()));
        return w;
    }
    if (weights.mode == MixtureWeights::Mode::PerSector) {
        std::map<int, long> sector_size;
        for (const auto& s : states) sector_size[s.twice_j]++;
        double total = 0.0;
        for (const auto& [t, p] : weights.sector) total += p;
        if (std::abs(total - 1.0) > 1e-12)
            throw NormalizationError("mixture weights not normalized");
        for (std::size_t i = 0; i < states.size(); ++i) {
            auto it = weights.sector.find(states[i].twice_j);
            if (it != weights.sector.end())
                w[i] = it->second / double(sector_size[states[i].twice_j]);
        }
        return w;
    }
    double total = 0.0;
    for (std::size_t i = 0; i < states.size(); ++i) {
        auto it = weights.full.find({states[i].twice_j, states[i].a, states[i].b});
        if (it != weights.full.end()) w[i] = it->second;
        total += w[i];
    }
    if (std::abs(total - 1.0) > 1e-12)
        throw NormalizationError("mixture weights not normalized");
    return w;
}

} // namespace detail

struct LemmaReport {
    long singlet_count = 0;
    double closed_s_e = 0, oracle_s_e = 0;
    double closed_s_a = 0, oracle_s_a = 0;
    double closed_s_b = 0, oracle_s_b = 0;
    double closed_s_total = 0, oracle_s_total = 0;
    double closed_mi = 0, oracle_mi = 0;
    double spectrum_error_a = 0; // max deviation of rho_A spectra as sorted multisets
    double max_abs_error = 0;
    bool pass = false;
};

// Closed-form rho_A spectrum: eigenvalue p_j / (c_j^A (2j+1)) with
// multiplicity c_j^A (2j+1), zero-padded to the side dimension.
inline std::vector<double> closed_form_reduced_spectrum(const SplitSpec& split, Side side,
                                                        const MixtureWeights& weights,
                                                        const Config& cfg = {}) {
    auto dist = singlet_probabilities(split, weights, cfg);
    auto table = multiplicity_table(
        SystemSpec::spins(split.side_count(side), split.total.twice_s), cfg.exact_threshold);
    std::vector<double> out;
    for (std::size_t i = 0; i < dist.twice_j.size(); ++i) {
        const int t = dist.twice_j[i];
        const long c = table.count(TwiceSpin(t)).get_si();
        const long mult = c * (t + 1);
        for (long k = 0; k < mult; ++k) out.push_back(dist.p[i] / double(mult));
    }
    std::sort(out.begin(), out.end());
    return out;
}

// Builds the explicit mixture and checks every closed-form quantity against
// dense linear algebra.
inline LemmaReport verify_lemma(const SplitSpec& split, const MixtureWeights& weights,
                                const Config& cfg = {}, double tol = 1e-9) {
    auto states = build_singlet_states(split, cfg);
    auto w = detail::mixture_weights_vector(split, weights, states);
    const long da = SystemSpec::spins(split.side_a, split.total.twice_s).total_dim();
    const long db = SystemSpec::spins(split.side_b(), split.total.twice_s).total_dim();

    LemmaReport rep;
    rep.singlet_count = long(states.size());

    // oracle average entanglement over the orthogonal decomposition
    KahanSum avg;
    for (std::size_t i = 0; i < states.size(); ++i) {
        if (w[i] <= 0) continue;
        auto spec = schmidt_spectrum(states[i].amp.cast<std::complex<double>>(), da, db);
        avg.add(w[i] * entropy_from_spectrum(spec, cfg));
    }
    rep.oracle_s_e = avg.value();

    // oracle reduced and total entropies
    auto spec_a = detail::mixture_reduced_spectrum(states, w, da, db, Side::A);
    auto spec_b = detail::mixture_reduced_spectrum(states, w, da, db, Side::B);
    rep.oracle_s_a = entropy_from_spectrum(spec_a, cfg);
    rep.oracle_s_b = entropy_from_spectrum(spec_b, cfg);
    Eigen::MatrixXd gram(states.size(), states.size());
    for (std::size_t i = 0; i < states.size(); ++i)
        for (std::size_t j = 0; j < states.size(); ++j)
            gram(long(i), long(j)) =
                std::sqrt(w[i] * w[j]) * states[i].amp.dot(states[j].amp);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(gram, Eigen::EigenvaluesOnly);
    std::vector<double> total_spec(es.eigenvalues().data(),
                                   es.eigenvalues().data() + es.eigenvalues().size());
    rep.oracle_s_total = entropy_from_spectrum(total_spec, cfg);
    rep.oracle_mi = rep.oracle_s_a + rep.oracle_s_b - rep.oracle_s_total;

    auto closed = entanglement(split, weights, cfg);
    rep.closed_s_e = closed.s_e;
    rep.closed_s_total = closed.s_total;
    rep.max_abs_error = std::abs(rep.closed_s_e - rep.oracle_s_e);
    rep.max_abs_error = std::max(rep.max_abs_error,
                                 std::abs(rep.closed_s_total - rep.oracle_s_total));
    if (weights.mode != MixtureWeights::Mode::Full) {
        rep.closed_s_a = closed.s_a;
        rep.closed_s_b = closed.s_b;
        rep.closed_mi = closed.mutual_information;
        rep.max_abs_error =
            std::max({rep.max_abs_error, std::abs(rep.closed_s_a - rep.oracle_s_a),
                      std::abs(rep.closed_s_b - rep.oracle_s_b),
                      std::abs(rep.closed_mi - rep.oracle_mi)});

        auto closed_spec = closed_form_reduced_spectrum(split, Side::A, weights, cfg);
        std::vector<double> oracle_nonzero;
        for (double v : spec_a)
            if (v > 1e-11) oracle_nonzero.push_back(v);
        std::sort(oracle_nonzero.begin(), oracle_nonzero.end());
        std::vector<double> closed_nonzero;
        for (double v : closed_spec)
            if (v > 1e-11) closed_nonzero.push_back(v);
        if (closed_nonzero.size() != oracle_nonzero.size()) {
            rep.spectrum_error_a = 1.0;
        } else {
            for (std::size_t i = 0; i < closed_nonzero.size(); ++i)
                rep.spectrum_error_a = std::max(
                    rep.spectrum_error_a, std::abs(closed_nonzero[i] - oracle_nonzero[i]));
        }
        rep.max_abs_error = std::max(rep.max_abs_error, rep.spectrum_error_a);
    }
    rep.pass = rep.max_abs_error <= tol;
    return rep;
}

struct DecompositionCheck {
    double s_e = 0;           // closed-form lower bound
    double min_average = 0;   // smallest average entanglement observed
    int trials = 0;
    bool pass = false;
};

// Average reduced entropy of one alternative decomposition of rho obtained by
// mixing the sqrt(w)-scaled ensemble with a unitary.
inline double decomposition_average_entropy(const std::vector<SingletState>& states,
                                            const std::vector<double>& weights, long dim_a,
                                            long dim_b, const Eigen::MatrixXcd& mixing,
                                            const Config& cfg = {}) {
    const long n = long(states.size());
    KahanSum avg;
    for (long beta = 0; beta < n; ++beta) {
        Eigen::VectorXcd phi = Eigen::VectorXcd::Zero(states.front().amp.size());
        for (long alpha = 0; alpha < n; ++alpha)
            phi += mixing(beta, alpha) * std::sqrt(weights[std::size_t(alpha)]) *
                   states[std::size_t(alpha)].amp.cast<std::complex<double>>();
        const double wb = phi.squaredNorm();
        if (wb < 1e-14) continue;
        phi /= std::sqrt(wb);
        avg.add(wb * entropy_from_spectrum(schmidt_spectrum(phi, dim_a, dim_b), cfg));
    }
    return avg.value();
}

inline Eigen::MatrixXcd haar_unitary(long n, std::mt19937_64& rng) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    Eigen::MatrixXcd g(n, n);
    for (long i = 0; i < n; ++i)
        for (long j = 0; j < n; ++j) g(i, j) = std::complex<double>(gauss(rng), gauss(rng));
    Eigen::HouseholderQR<Eigen::MatrixXcd> qr(g);
    Eigen::MatrixXcd q = qr.householderQ();
    Eigen::MatrixXcd r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (long i = 0; i < n; ++i) q.col(i) *= r(i, i) / std::abs(r(i, i));
    return q;
}

// Every decomposition of rho with the same ensemble size arises from a
// unitary mixing of the scaled orthogonal ensemble; the average entanglement
// must never drop below S_E.
inline DecompositionCheck random_decomposition_check(const SplitSpec& split, int trials,
                                                     std::uint64_t seed,
                                                     const MixtureWeights& weights = {},
                                                     const Config& cfg = {}) {
    if (trials < 1) throw std::invalid_argument("random_decomposition_check: trials >= 1");
    auto states = build_singlet_states(split, cfg);
    auto w = detail::mixture_weights_vector(split, weights, states);
    const long da = SystemSpec::spins(split.side_a, split.total.twice_s).total_dim();
    const long db = SystemSpec::spins(split.side_b(), split.total.twice_s).total_dim();
    DecompositionCheck chk;
    chk.s_e = entanglement(split, weights, cfg).s_e;
    chk.trials = trials;
    chk.min_average = std::numeric_limits<double>::infinity();
    std::mt19937_64 rng(seed);
    for (int t = 0; t < trials; ++t) {
        auto u = haar_unitary(long(states.size()), rng);
        chk.min_average = std::min(
            chk.min_average, decomposition_average_entropy(states, w, da, db, u, cfg));
    }
    chk.pass = chk.min_average >= chk.s_e - 1e-9;
    return chk;
}

struct OverlapReport {
    struct Label {
        int twice_j;
        long a, b;
    };
    std::vector<Label> labels;
    Eigen::MatrixXd overlap_a, overlap_b; // tr(rho_X^i rho_X^j)
    bool has_identical_reduction_pair = false; // distinct states, same (j,a), overlap > 0
};

// tr(rho_X^i rho_X^j) for every pair of singlet basis states: states sharing
// (j, a) but differing in b have identical A-reductions (overlap 1/(2j+1)),
// which is what breaks local orthogonality.
inline OverlapReport local_orthogonality_report(const SplitSpec& split, const Config& cfg = {}) {
    auto states = build_singlet_states(split, cfg);
    const long da = SystemSpec::spins(split.side_a, split.total.twice_s).total_dim();
    const long db = SystemSpec::spins(split.side_b(), split.total.twice_s).total_dim();
    const long n = long(states.size());
    OverlapReport rep;
    std::vector<Eigen::MatrixXcd> red_a, red_b;
    for (const auto& s : states) {
        rep.labels.push_back({s.twice_j, s.a, s.b});
        Eigen::VectorXcd psi = s.amp.cast<std::complex<double>>();
        red_a.push_back(partial_trace(psi, da, db, Side::A));
        red_b.push_back(partial_trace(psi, da, db, Side::B));
    }
    rep.overlap_a.resize(n, n);
    rep.overlap_b.resize(n, n);
    for (long i = 0; i < n; ++i) {
        for (long j = 0; j < n; ++j) {
            rep.overlap_a(i, j) = (red_a[std::size_t(i)] * red_a[std::size_t(j)]).trace().real();
            rep.overlap_b(i, j) = (red_b[std::size_t(i)] * red_b[std::size_t(j)]).trace().real();
        }
    }
    for (long i = 0; i < n; ++i)
        for (long j = i + 1; j < n; ++j)
            if (rep.labels[std::size_t(i)].twice_j == rep.labels[std::size_t(j)].twice_j &&
                rep.labels[std::size_t(i)].a == rep.labels[std::size_t(j)].a &&
                rep.overlap_a(i, j) > 1e-12)
                rep.has_identical_reduction_pair = true;
    return rep;
}

// --- SU(M) -------------------------------------------------------------------

// Generalized Gell-Mann basis of su(M), M^2 - 1 traceless Hermitian matrices.
inline std::vector<Eigen::MatrixXcd> su_generators(int rank) {
    std::vector<Eigen::MatrixXcd> gens;
    const std::complex<double> im(0.0, 1.0);
    for (int i = 0; i < rank; ++i) {
        for (int j = i + 1; j < rank; ++j) {
            Eigen::MatrixXcd s = Eigen::MatrixXcd::Zero(rank, rank);
            s(i, j) = s(j, i) = 1.0;
            gens.push_back(s);
            Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(rank, rank);
            a(i, j) = -im;
            a(j, i) = im;
            gens.push_back(a);
        }
    }
    for (int l = 1; l < rank; ++l) {
        Eigen::MatrixXcd d = Eigen::MatrixXcd::Zero(rank, rank);
        const double norm = std::sqrt(2.0 / (double(l) * (l + 1)));
        for (int i = 0; i < l; ++i) d(i, i) = norm;
        d(l, l) = -norm * double(l);
        gens.push_back(d);
    }
    return gens;
}

// Orthonormal basis of the joint null space of all total su(M) generators on
// m copies of the fundamental. Computed from the total Casimir, then each
// generator is checked to annihilate every basis vector.
inline Eigen::MatrixXcd su_m_invariant_basis(int rank, int m, const Config& cfg = {}) {
    std::int64_t dim = 1;
    for (int i = 0; i < m; ++i) {
        dim *= rank;
        if (dim > cfg.dimension_cap)
            throw std::length_error("su_m_invariant_basis: dimension exceeds cap");
    }
    auto gens = su_generators(rank);
    std::vector<Eigen::MatrixXcd> totals;
    for (const auto& g : gens) {
        Eigen::MatrixXcd t = Eigen::MatrixXcd::Zero(dim, dim);
        for (int site = 0; site < m; ++site) {
            long left = 1, right = 1;
            for (int k = 0; k < site; ++k) left *= rank;
            for (int k = site + 1; k < m; ++k) right *= rank;
            for (long a = 0; a < left; ++a)
                for (int r = 0; r < rank; ++r)
                    for (int c = 0; c < rank; ++c) {
                        if (g(r, c) == 0.0) continue;
                        for (long b = 0; b < right; ++b)
                            t((a * rank + r) * right + b, (a * rank + c) * right + b) += g(r, c);
                    }
        }
        totals.push_back(std::move(t));
    }
    Eigen::MatrixXcd casimir = Eigen::MatrixXcd::Zero(dim, dim);
    for (const auto& t : totals) casimir += t * t;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(casimir);
    std::vector<long> null_idx;
    for (long i = 0; i < dim; ++i)
        if (es.eigenvalues()[i] < 1e-8) null_idx.push_back(i);
    Eigen::MatrixXcd basis(dim, long(null_idx.size()));
    for (std::size_t k = 0; k < null_idx.size(); ++k)
        basis.col(long(k)) = es.eigenvectors().col(null_idx[k]);
    for (const auto& t : totals)
        for (long k = 0; k < basis.cols(); ++k)
            if ((t * basis.col(k)).norm() > 1e-9)
                throw std::runtime_error("su_m_invariant_basis: candidate not annihilated");
    return basis;
}

} // namespace zsm::oracle
