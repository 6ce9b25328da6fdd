#include "permcycles/spatial.hpp"

#include <boost/math/special_functions/gamma.hpp>

#include <cmath>
#include <numbers>

#include "permcycles/error.hpp"

namespace permcycles::spatial {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kCut = 41.5;          // exp(-41.5) < 1e-18
constexpr double kMaxDirect = 1e6;

// sum_{l >= 1} exp(-b l^2), truncated relative to the leading term
double gauss_tail(double b) {
    double s = std::exp(-b);
    for (long l = 2;; ++l) {
        const double e = b * static_cast<double>(l) * static_cast<double>(l);
        if (e - b > kCut) break;
        s += std::exp(-e);
    }
    return s;
}

// sum_{k >= 1} exp(-a k^g), with an Euler-Maclaurin tail past 10^6 terms.
double stable_tail(double a, double g) {
    const double kmax = std::pow(kCut / a, 1.0 / g);
    const long K = static_cast<long>(std::min(kmax, kMaxDirect));
    double s = 0.0, comp = 0.0;
    for (long k = 1; k <= K; ++k) {
        const double y = std::exp(-a * std::pow(static_cast<double>(k), g)) - comp;
        const double t = s + y;
        comp = (t - s) - y;
        s = t;
    }
    if (kmax > kMaxDirect) {
        const double x0 = static_cast<double>(K);
        const double f0 = std::exp(-a * std::pow(x0, g));
        const double fp = -a * g * std::pow(x0, g - 1.0) * f0;
        const double integral = boost::math::tgamma(1.0 / g, a * std::pow(x0, g)) / (g * std::pow(a, 1.0 / g));
        // sum_{k > K} f(k) = int_K^inf f - f(K)/2 - f'(K)/12 + ...
        s += integral - 0.5 * f0 - fp / 12.0;
    }
    return s;
}

}  // namespace

std::string to_string(Family f) { return f == Family::Gaussian ? "gaussian" : "stable"; }

void validate(const SpatialConfig& cfg) {
    if (cfg.d < 1) throw DomainError("spatial: dimension must be >= 1");
    if (!(cfg.L > 0.0)) throw DomainError("spatial: box side L must be positive");
    if (cfg.family == Family::Stable && !(cfg.gamma > 0.0 && cfg.gamma < 2.0))
        throw DomainError("spatial: stable index gamma must lie in (0, 2)");
}

double gaussian_lattice_direct(double L, double j) {
    const double a = j / (L * L);
    return 1.0 + 2.0 * gauss_tail(a);
}

double gaussian_lattice_dual(double L, double j) {
    return L * std::sqrt(kPi / j) * (1.0 + 2.0 * gauss_tail(kPi * kPi * L * L / j));
}

double gaussian_dual_tail(double L, double j) { return 2.0 * std::sqrt(kPi / j) * gauss_tail(kPi * kPi * L * L / j); }

double gaussian_dual_tail_bound(double L, double j) { return 2.0 / L * std::erfc(kPi * L / (2.0 * std::sqrt(j))); }

double lattice_sum_1d(const SpatialConfig& cfg, double j) {
    validate(cfg);
    if (!(j > 0.0)) throw DomainError("spatial: j must be positive");
    if (cfg.family == Family::Gaussian) {
        const double a = j / (cfg.L * cfg.L);
        if (std::sqrt(kCut / a) > kMaxDirect) return gaussian_lattice_dual(cfg.L, j);
        return gaussian_lattice_direct(cfg.L, j);
    }
    const double a = j / std::pow(cfg.L, cfg.gamma);
    return 1.0 + 2.0 * stable_tail(a, cfg.gamma);
}

double riemann_sum(const SpatialConfig& cfg, double j) { return std::pow(lattice_sum_1d(cfg, j), cfg.d); }

double integral_weight(const SpatialConfig& cfg, double j) {
    validate(cfg);
    if (!(j > 0.0)) throw DomainError("spatial: j must be positive");
    double one;
    if (cfg.family == Family::Gaussian) {
        one = std::sqrt(kPi / j);
    } else {
        one = 2.0 * boost::math::tgamma(1.0 + 1.0 / cfg.gamma) * std::pow(j, -1.0 / cfg.gamma);
    }
    return std::pow(one, cfg.d);
}

double delta_correction(const SpatialConfig& cfg, double j) {
    validate(cfg);
    const double A = cfg.L * std::pow(integral_weight(cfg, j), 1.0 / cfg.d);
    double c;
    if (cfg.family == Family::Gaussian && j / (cfg.L * cfg.L) <= kPi) {
        // Poisson dual: S = A (1 + 2 T), so the correction is 2 A T with no cancellation.
        c = 2.0 * A * gauss_tail(kPi * kPi * cfg.L * cfg.L / j);
    } else {
        c = lattice_sum_1d(cfg, j) - A;
    }
    // (A + c)^d - A^d = sum_{k>=1} C(d,k) A^{d-k} c^k
    double delta = 0.0, binom = 1.0;
    for (int k = 1; k <= cfg.d; ++k) {
        binom = binom * (cfg.d - k + 1) / k;
        delta += binom * std::pow(A, cfg.d - k) * std::pow(c, k);
    }
    return delta;
}

double eta_scale(const SpatialConfig& cfg, double j) {
    const double expo = cfg.family == Family::Gaussian ? 0.5 : 1.0 / cfg.gamma;
    return cfg.L * std::pow(j, -expo);
}

double big_theta(double eta) {
    if (!(eta > 0.0)) throw DomainError("big_theta: eta must be positive");
    return -1.0 / std::expm1(-1.0 / eta);
}

double heuristic_shape(Family family, int d, double gamma, double Theta) {
    if (family == Family::Gaussian) return std::pow(Theta, d - 1) * std::exp(-Theta * Theta);
    return std::pow(Theta, d - 1 - gamma);
}

double heuristic_theta(const SpatialConfig& cfg, double j) {
    validate(cfg);
    return heuristic_shape(cfg.family, cfg.d, cfg.gamma, big_theta(eta_scale(cfg, j)));
}

TailCheck check_universal_tail(const SpatialConfig& base, const std::vector<double>& L_grid, double eta_exponent) {
    TailCheck out;
    for (double L : L_grid) {
        SpatialConfig cfg = base;
        cfg.L = L;
        const double j = std::pow(L, eta_exponent) * std::log(L);
        out.L.push_back(L);
        out.j.push_back(j);
        out.deviation.push_back(std::abs(riemann_sum(cfg, j) - 1.0));
    }
    out.decreasing = out.deviation.size() >= 2;
    for (size_t i = 1; i < out.deviation.size(); ++i)
        if (!(out.deviation[i] < out.deviation[i - 1])) out.decreasing = false;
    return out;
}

SpatialRow spatial_row(const SpatialConfig& cfg, double j) {
    const double gamma = cfg.family == Family::Gaussian ? 2.0 : cfg.gamma;
    return {cfg.family,
            cfg.d,
            gamma,
            cfg.L,
            j,
            riemann_sum(cfg, j),
            std::pow(cfg.L, cfg.d) * integral_weight(cfg, j),
            delta_correction(cfg, j)};
}

}  // namespace permcycles::spatial
