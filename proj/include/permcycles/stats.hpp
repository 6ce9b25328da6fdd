#pragma once

#include <functional>
#include <vector>

namespace permcycles::stats {

double normal_cdf(double x);

// Kolmogorov-Smirnov distances; inputs need not be sorted.
double ks_one_sample(std::vector<double> sample, const std::function<double(double)>& cdf);
double ks_two_sample(std::vector<double> a, std::vector<double> b);

// Upper tail P(chi^2_dof > stat).
double chi_square_pvalue(double stat, double dof);

struct ChiSquare {
    double statistic = 0.0;
    double dof = 0.0;
    double p_value = 1.0;
};
// Pearson test of observed counts against expected probabilities. Cells with
// expected count below min_expected are pooled into one cell.
ChiSquare chi_square_test(const std::vector<double>& observed, const std::vector<double>& probabilities,
                          double n_total, double min_expected = 5.0);

double mean(const std::vector<double>& x);
double variance(const std::vector<double>& x);  // unbiased
double median(std::vector<double> x);

}  // namespace permcycles::stats
