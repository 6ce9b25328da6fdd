#pragma once

#include <vector>

#include "permcycles/rng.hpp"

namespace permcycles {

// One realization of the delayed stick-breaking process. Index n-1 holds the
// n-th step; tau holds the steps (1-based) at which a break occurred.
struct StickPath {
    double nu = 1.0;
    double theta_star = 0.0;
    std::vector<int> xi;
    std::vector<double> D;
    std::vector<double> eta;
    std::vector<double> X;
    std::vector<long> tau;

    double tail_mass() const { return eta.empty() ? 1.0 : eta.back(); }
};

constexpr long kDefaultTerms = 256;

// B ~ Beta(1, theta) by inversion.
double sample_beta_1_theta(double theta, Rng& rng);

// Y_n = B_n prod_{j<n} (1 - B_j).
std::vector<double> gem_from_breaks(const std::vector<double>& breaks);
std::vector<double> sample_gem(double theta, long n_terms, Rng& rng);
std::vector<double> sample_pd(double theta, long n_terms, Rng& rng);

// u*(x) = nu x / (1 - nu + nu x)
double break_probability(double nu, double x);

StickPath sample_stick(double nu, double theta_star, long n_terms, Rng& rng);
StickPath sample_stick_degenerate(double nu, long n_terms, Rng& rng);

// n2 = 0:            E[X_1^n1]
// n1 >= 1, n2 >= 1:  E[X_1^n1 X_2^n2 (1 - nu X_1)]
// n1 = 0:            E[X_2^n2 (1 - nu X_1)]
double stick_moments(double nu, double theta_star, int n1, int n2);

// Descending order statistics of the X sequence of a path.
std::vector<double> ordered(const std::vector<double>& x);

}  // namespace permcycles
