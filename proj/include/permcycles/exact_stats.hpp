#pragma once

#include <utility>
#include <vector>

#include "permcycles/series.hpp"

namespace permcycles {

// A quantity carried both as its logarithm and its linear value. Out-of-support
// requests give value 0, log_value -inf and the flag set.
struct ExactValue {
    double log_value = 0.0;
    double value = 0.0;
    bool out_of_support = false;
};

// Pairs (j, n_j) with distinct j >= 1 and n_j >= 1.
using FactorialMomentSpec = std::vector<std::pair<long, long>>;

// All functions below read a table built with n_max >= N.
ExactValue factorial_moment(const SeriesTable& table, const FactorialMomentSpec& spec);
std::vector<double> expected_cycle_counts(const SeriesTable& table, long j_max);  // entry j-1 holds E[C_j]
std::vector<double> l1_pmf(const SeriesTable& table);                             // entry l-1 holds P(L_1 = l)
ExactValue joint_l_pmf(const SeriesTable& table, const std::vector<long>& lengths);
double expected_long_fraction(const SeriesTable& table, long K);

}  // namespace permcycles
