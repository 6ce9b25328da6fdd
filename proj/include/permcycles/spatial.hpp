#pragma once

#include <string>
#include <vector>

namespace permcycles::spatial {

enum class Family { Gaussian, Stable };
std::string to_string(Family f);

// Gaussian: eps0(s) = s^2. Stable: eps0(s) = |s|^gamma with gamma in (0, 2).
struct SpatialConfig {
    Family family = Family::Gaussian;
    int d = 1;
    double gamma = 2.0;  // only read for the stable family
    double L = 1.0;
};

void validate(const SpatialConfig& cfg);

// sum_{k in Z} exp(-j eps0(k / L)) in one dimension.
double lattice_sum_1d(const SpatialConfig& cfg, double j);

// Both sides of the Poisson summation identity for the Gaussian lattice sum:
// direct  sum_k exp(-j k^2 / L^2)
// dual    L sum_l f(l L),  f(x) = sqrt(pi/j) exp(-pi^2 x^2 / j)
double gaussian_lattice_direct(double L, double j);
double gaussian_lattice_dual(double L, double j);

// sum_{l != 0} f(l L) and the bound (4/L) int_{L/2}^inf f = (2/L) erfc(pi L / (2 sqrt j)).
double gaussian_dual_tail(double L, double j);
double gaussian_dual_tail_bound(double L, double j);

double riemann_sum(const SpatialConfig& cfg, double j);
double integral_weight(const SpatialConfig& cfg, double j);
// riemann_sum - L^d integral_weight, expanded binomially around the 1-D correction
double delta_correction(const SpatialConfig& cfg, double j);

// eta_{j,L}: L j^{-1/2} (Gaussian) or L j^{-1/gamma} (stable).
double eta_scale(const SpatialConfig& cfg, double j);
// Theta = 1 / (1 - exp(-1/eta))
double big_theta(double eta);
// Unscaled shapes: Theta^{d-1} exp(-Theta^2) (Gaussian), Theta^{d-1-gamma} (stable).
double heuristic_shape(Family family, int d, double gamma, double Theta);
double heuristic_theta(const SpatialConfig& cfg, double j);

struct TailCheck {
    std::vector<double> L;
    std::vector<double> j;
    std::vector<double> deviation;  // |riemann_sum - 1|
    bool decreasing = false;
};
// Evaluates the lattice sum along j = L^eta_exponent log L for each L in the grid.
TailCheck check_universal_tail(const SpatialConfig& base, const std::vector<double>& L_grid, double eta_exponent);

struct SpatialRow {
    Family family;
    int d;
    double gamma;
    double L;
    double j;
    double sum;
    double integral_term;  // L^d integral_weight
    double delta;
};
SpatialRow spatial_row(const SpatialConfig& cfg, double j);

}  // namespace permcycles::spatial
