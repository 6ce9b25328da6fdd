#include "permcycles/limitlaws.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "permcycles/error.hpp"

namespace permcycles {

double sample_beta_1_theta(double theta, Rng& rng) {
    if (!(theta > 0.0)) throw DomainError("Beta(1, theta) needs theta > 0");
    return 1.0 - std::pow(uniform01(rng), 1.0 / theta);
}

std::vector<double> gem_from_breaks(const std::vector<double>& breaks) {
    std::vector<double> y(breaks.size());
    double rest = 1.0;
    for (size_t n = 0; n < breaks.size(); ++n) {
        y[n] = breaks[n] * rest;
        rest -= y[n];
    }
    return y;
}

std::vector<double> sample_gem(double theta, long n_terms, Rng& rng) {
    if (n_terms < 1) throw DomainError("sample_gem: n_terms must be >= 1");
    std::vector<double> b(n_terms);
    for (auto& v : b) v = sample_beta_1_theta(theta, rng);
    return gem_from_breaks(b);
}

std::vector<double> ordered(const std::vector<double>& x) {
    std::vector<double> v = x;
    std::sort(v.begin(), v.end(), std::greater<double>());
    return v;
}

std::vector<double> sample_pd(double theta, long n_terms, Rng& rng) { return ordered(sample_gem(theta, n_terms, rng)); }

double break_probability(double nu, double x) { return nu * x / (1.0 - nu + nu * x); }

StickPath sample_stick(double nu, double theta_star, long n_terms, Rng& rng) {
    if (!(nu > 0.0 && nu <= 1.0)) throw DomainError("sample_stick: nu must lie in (0,1]");
    if (!(theta_star > 0.0)) throw DomainError("sample_stick: theta* must be positive (use sample_stick_degenerate)");
    if (n_terms < 1) throw DomainError("sample_stick: n_terms must be >= 1");
    StickPath p;
    p.nu = nu;
    p.theta_star = theta_star;
    double eta = 1.0;
    for (long n = 1; n <= n_terms; ++n) {
        const double u = break_probability(nu, eta);
        // With u = 1 no uniform is consumed, so nu = 1 replays sample_gem on the same stream.
        const int xi = u >= 1.0 ? 1 : (uniform01(rng) < u ? 1 : 0);
        const double d = xi ? sample_beta_1_theta(theta_star, rng) : 0.0;
        const double x = eta * d;
        eta -= x;  // eta_{n-1} (1 - D_n), written so that sum X + eta stays at 1 up to rounding
        p.xi.push_back(xi);
        p.D.push_back(d);
        p.X.push_back(x);
        p.eta.push_back(eta);
        if (xi) p.tau.push_back(n);
    }
    return p;
}

StickPath sample_stick_degenerate(double nu, long n_terms, Rng& rng) {
    if (!(nu > 0.0 && nu <= 1.0)) throw DomainError("sample_stick_degenerate: nu must lie in (0,1]");
    if (n_terms < 1) throw DomainError("sample_stick_degenerate: n_terms must be >= 1");
    StickPath p;
    p.nu = nu;
    p.theta_star = 0.0;
    // tau_1 ~ Geometric(nu) on {1, 2, ...}; the unit stick is taken whole at tau_1.
    long tau = 1;
    if (nu < 1.0) {
        std::geometric_distribution<long> geo(nu);
        tau = 1 + geo(rng);
    }
    double eta = 1.0;
    for (long n = 1; n <= n_terms; ++n) {
        const int xi = n == tau ? 1 : 0;
        const double d = xi ? 1.0 : 0.0;
        p.xi.push_back(xi);
        p.D.push_back(d);
        p.X.push_back(eta * d);
        eta *= 1.0 - d;
        p.eta.push_back(eta);
    }
    p.tau.push_back(tau);
    return p;
}

double stick_moments(double nu, double theta_star, int n1, int n2) {
    if (n1 < 0 || n2 < 0 || (n1 == 0 && n2 == 0)) throw DomainError("stick_moments: need (n1, n2) != (0, 0), both >= 0");
    const double th = theta_star;
    const double lg1 = std::lgamma(th + 1.0);
    if (n2 == 0)
        return nu * std::exp(std::lgamma(n1 + 1.0) + lg1 - std::lgamma(th + n1 + 1.0));
    if (n1 >= 1)
        return th * nu * nu * std::exp(std::lgamma(n1 + 1.0) + std::lgamma(n2 + 1.0) + lg1 - std::lgamma(th + n1 + n2 + 2.0));
    return (th + (n2 + 1.0) * (1.0 - nu)) * nu * std::exp(std::lgamma(n2 + 1.0) + lg1 - std::lgamma(th + n2 + 2.0));
}

}  // namespace permcycles
