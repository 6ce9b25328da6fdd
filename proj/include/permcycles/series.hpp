#pragma once

#include <vector>

#include "permcycles/weights.hpp"

namespace permcycles {

// log h_n(N) for n = 0..n_max together with the cached log weights
// log(theta_j + N kappa_j), j = 1..n_max (index 0 unused). Zero weights are -inf.
struct SeriesTable {
    long n_points = 0;
    std::vector<double> log_h;
    std::vector<double> log_weights;

    long n_max() const { return static_cast<long>(log_h.size()) - 1; }
    double log_H() const;  // log h_N(N); requires n_max >= N
};

// Recurrence n h_n = sum_{j=1}^n w_j h_{n-j}, evaluated with two-pass log-sum-exp.
SeriesTable build_table(const WeightModel& model, long n_points, long n_max);
SeriesTable build_table(const WeightModel& model, long n_points);

double log_partition(const WeightModel& model, long n_points);

// sum_{l=1}^n w_l h_{n-l} / (n h_n): the total mass of the sampler's step law.
double step_pmf_total(const SeriesTable& table, long n);

struct TnDistribution {
    long n_points = 0;
    std::vector<double> log_pmf;  // index k = 0..N; entry 0 is -inf for N >= 1

    double pmf(long k) const;
    double total() const;
};

constexpr long kDefaultTnCap = 512;

// Exact law of the number of cycles via c_{n,k} = (1/n) sum_j w_j c_{n-j,k-1}.
TnDistribution tn_pmf(const WeightModel& model, long n_points, long cap = kDefaultTnCap);

}  // namespace permcycles
