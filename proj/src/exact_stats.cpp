#include "permcycles/exact_stats.hpp"

#include <cmath>
#include <limits>
#include <set>

#include "permcycles/error.hpp"

namespace permcycles {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

ExactValue from_log(double lv) { return {lv, lv == kNegInf ? 0.0 : std::exp(std::min(lv, 700.0)), false}; }

ExactValue outside() { return {kNegInf, 0.0, true}; }

void require_full(const SeriesTable& t) {
    if (t.n_max() < t.n_points) throw DomainError("exact_stats: table must reach n = N");
}

}  // namespace

ExactValue factorial_moment(const SeriesTable& t, const FactorialMomentSpec& spec) {
    require_full(t);
    const long N = t.n_points;
    std::set<long> seen;
    long K = 0;
    for (auto [j, nj] : spec) {
        if (j < 1 || nj < 1) throw DomainError("factorial_moment: need j >= 1 and n_j >= 1");
        if (!seen.insert(j).second) throw DomainError("factorial_moment: repeated cycle length");
        if (j > N || nj > N) return outside();
        K += j * nj;
        if (K > N) return outside();
    }
    double lv = t.log_h[N - K] - t.log_H();
    for (auto [j, nj] : spec) {
        if (t.log_weights[j] == kNegInf) return {kNegInf, 0.0, false};
        lv += static_cast<double>(nj) * (t.log_weights[j] - std::log(static_cast<double>(j)));
    }
    return from_log(lv);
}

std::vector<double> expected_cycle_counts(const SeriesTable& t, long j_max) {
    require_full(t);
    if (j_max < 0 || j_max > t.n_points) throw DomainError("expected_cycle_counts: need j_max <= N");
    std::vector<double> out(j_max);
    for (long j = 1; j <= j_max; ++j) out[j - 1] = factorial_moment(t, {{j, 1}}).value;
    return out;
}

std::vector<double> l1_pmf(const SeriesTable& t) {
    require_full(t);
    const long N = t.n_points;
    std::vector<double> out(N);
    const double base = std::log(static_cast<double>(N)) + t.log_H();
    for (long l = 1; l <= N; ++l) {
        const double lv = t.log_weights[l] + t.log_h[N - l] - base;
        out[l - 1] = lv == kNegInf ? 0.0 : std::exp(lv);
    }
    return out;
}

ExactValue joint_l_pmf(const SeriesTable& t, const std::vector<long>& lengths) {
    require_full(t);
    const long N = t.n_points;
    long used = 0;
    double lv = 0.0;
    for (long l : lengths) {
        if (l < 1) throw DomainError("joint_l_pmf: lengths must be >= 1");
        if (used + l > N) return outside();
        lv += t.log_weights[l] - std::log(static_cast<double>(N - used));
        used += l;
    }
    lv += t.log_h[N - used] - t.log_H();
    return from_log(lv);
}

double expected_long_fraction(const SeriesTable& t, long K) {
    require_full(t);
    const long N = t.n_points;
    if (K < 0 || K >= N) throw DomainError("expected_long_fraction: need 0 <= K < N");
    const auto ec = expected_cycle_counts(t, K);
    double s = 0.0;
    for (long j = 1; j <= K; ++j) s += static_cast<double>(j) * ec[j - 1];
    return 1.0 - s / static_cast<double>(N);
}

}  // namespace permcycles
