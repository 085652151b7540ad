#pragma once

#include <cmath>
#include <cstddef>
#include <limits>
#include <span>
#include <vector>

namespace zsm {

// Kahan compensated accumulator; sums over j-supports can reach 10^6 terms.
class KahanSum {
  public:
    void add(double x) {
        double y = x - comp_;
        double t = sum_ + y;
        comp_ = (t - sum_) - y;
        sum_ = t;
    }
    double value() const { return sum_; }

  private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

inline double log_factorial(double n) { return std::lgamma(n + 1.0); }

// log C(m, k); -inf outside the support.
inline double log_binomial(long m, long k) {
    if (k < 0 || k > m) return -std::numeric_limits<double>::infinity();
    return std::lgamma(double(m) + 1.0) - std::lgamma(double(k) + 1.0) -
           std::lgamma(double(m - k) + 1.0);
}

inline double log_sum_exp(std::span<const double> xs) {
    double mx = -std::numeric_limits<double>::infinity();
    for (double x : xs)
        if (x > mx) mx = x;
    if (!std::isfinite(mx)) return mx;
    KahanSum s;
    for (double x : xs) s.add(std::exp(x - mx));
    return mx + std::log(s.value());
}

struct LinearFit {
    double slope = 0.0;
    double intercept = 0.0;
    double residual = 0.0; // root-mean-square residual
};

// Ordinary least squares y = slope*x + intercept.
inline LinearFit linear_fit(std::span<const double> x, std::span<const double> y) {
    const std::size_t n = x.size();
    KahanSum sx, sy;
    for (std::size_t i = 0; i < n; ++i) {
        sx.add(x[i]);
        sy.add(y[i]);
    }
    const double mx = sx.value() / double(n);
    const double my = sy.value() / double(n);
    KahanSum sxx, sxy;
    for (std::size_t i = 0; i < n; ++i) {
        sxx.add((x[i] - mx) * (x[i] - mx));
        sxy.add((x[i] - mx) * (y[i] - my));
    }
    LinearFit f;
    f.slope = sxy.value() / sxx.value();
    f.intercept = my - f.slope * mx;
    KahanSum sr;
    for (std::size_t i = 0; i < n; ++i) {
        double r = y[i] - f.slope * x[i] - f.intercept;
        sr.add(r * r);
    }
    f.residual = std::sqrt(sr.value() / double(n));
    return f;
}

// k log-spaced integers covering [lo, hi], deduplicated, ascending.
inline std::vector<long> log_spaced(long lo, long hi, int k) {
    std::vector<long> out;
    for (int i = 0; i < k; ++i) {
        double t = k == 1 ? 0.0 : double(i) / double(k - 1);
        long v = std::lround(std::exp(std::log(double(lo)) * (1 - t) + std::log(double(hi)) * t));
        if (out.empty() || v > out.back()) out.push_back(v);
    }
    return out;
}

} // namespace zsm
