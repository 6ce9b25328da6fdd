#include "permcycles/series.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "permcycles/error.hpp"

namespace permcycles {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

std::vector<double> log_weight_vector(const WeightModel& model, long n_points, long n_max) {
    std::vector<double> lw(n_max + 1, kNegInf);
    for (long j = 1; j <= n_max; ++j) {
        const double w = model.weight(j, n_points);
        lw[j] = w > 0.0 ? std::log(w) : kNegInf;
    }
    return lw;
}

// log sum_{j=1}^{n} exp(lw[j] + lv[n-j]) in two passes.
double lse_convolution(const std::vector<double>& lw, const double* lv, long n) {
    double m = kNegInf;
    for (long j = 1; j <= n; ++j) {
        const double t = lw[j] + lv[n - j];
        if (t > m) m = t;
    }
    if (m == kNegInf) return kNegInf;
    double s = 0.0;
    for (long j = 1; j <= n; ++j) {
        const double t = lw[j] + lv[n - j];
        if (t != kNegInf) s += std::exp(t - m);
    }
    return m + std::log(s);
}

}  // namespace

double SeriesTable::log_H() const {
    if (n_max() < n_points) throw DomainError("SeriesTable: table shorter than N");
    return log_h[n_points];
}

SeriesTable build_table(const WeightModel& model, long n_points, long n_max) {
    if (n_points < 1 || n_max < 0) throw DomainError("build_table: need N >= 1 and n_max >= 0");
    SeriesTable t;
    t.n_points = n_points;
    t.log_weights = log_weight_vector(model, n_points, n_max);
    t.log_h.assign(n_max + 1, kNegInf);
    t.log_h[0] = 0.0;
    for (long n = 1; n <= n_max; ++n)
        t.log_h[n] = lse_convolution(t.log_weights, t.log_h.data(), n) - std::log(static_cast<double>(n));
    return t;
}

SeriesTable build_table(const WeightModel& model, long n_points) { return build_table(model, n_points, n_points); }

double log_partition(const WeightModel& model, long n_points) { return build_table(model, n_points).log_H(); }

double step_pmf_total(const SeriesTable& table, long n) {
    if (n < 1 || n > table.n_max()) throw DomainError("step_pmf_total: n out of range");
    if (table.log_h[n] == kNegInf) throw DomainError("step_pmf_total: h_n = 0");
    const double base = std::log(static_cast<double>(n)) + table.log_h[n];
    double s = 0.0;
    for (long l = 1; l <= n; ++l) {
        const double t = table.log_weights[l] + table.log_h[n - l];
        if (t != kNegInf) s += std::exp(t - base);
    }
    return s;
}

double TnDistribution::pmf(long k) const {
    if (k < 0 || k >= static_cast<long>(log_pmf.size())) return 0.0;
    return std::exp(log_pmf[k]);
}

double TnDistribution::total() const {
    double s = 0.0;
    for (double v : log_pmf) s += std::exp(v);
    return s;
}

TnDistribution tn_pmf(const WeightModel& model, long n_points, long cap) {
    if (n_points < 1) throw DomainError("tn_pmf: N must be >= 1");
    if (n_points > cap)
        throw DomainError("tn_pmf: N = " + std::to_string(n_points) + " exceeds the cap " + std::to_string(cap) +
                          "; use Monte Carlo sampling instead");
    const long N = n_points;
    const auto lw = log_weight_vector(model, N, N);
    // lc[k][n] = log c_{n,k}; stored by k so the convolution runs over a contiguous row.
    std::vector<std::vector<double>> lc(N + 1, std::vector<double>(N + 1, kNegInf));
    lc[0][0] = 0.0;
    for (long k = 1; k <= N; ++k) {
        for (long n = k; n <= N; ++n) {
            lc[k][n] = lse_convolution(lw, lc[k - 1].data(), n) - std::log(static_cast<double>(n));
        }
    }
    double m = kNegInf;
    for (long k = 1; k <= N; ++k) m = std::max(m, lc[k][N]);
    double s = 0.0;
    for (long k = 1; k <= N; ++k)
        if (lc[k][N] != kNegInf) s += std::exp(lc[k][N] - m);
    const double log_H = m + std::log(s);
    TnDistribution d;
    d.n_points = N;
    d.log_pmf.assign(N + 1, kNegInf);
    for (long k = 1; k <= N; ++k) d.log_pmf[k] = lc[k][N] - log_H;
    return d;
}

}  // namespace permcycles
