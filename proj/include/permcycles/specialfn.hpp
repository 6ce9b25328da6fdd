#pragma once

#include <complex>
#include <vector>

// Real-argument special functions used by the weight profiles and the
// critical-regime asymptotics.

namespace permcycles::specialfn {

// Gamma function for real x; throws DomainError at non-positive integers.
double gamma_real(double x);

// 1/Gamma(x), entire; exactly 0 at the poles of Gamma.
double rgamma(double x);

// Riemann zeta for real s != 1 (negative s handled by the functional equation).
double zeta_real(double s);

// Singular expansion of Li_s(z) in the variable w = -log z:
//   Li_s(z) = sing_coeff * w^(s-1) [* (log_coeff_shift - log w) for integer s]
//             + sum_n regular[n] * w^n.
struct SingularExpansion {
    double s = 0.0;
    int order = 8;
    std::vector<double> regular;  // coefficients of w^n, n = 0..order
    double sing_exponent = 0.0;   // s - 1
    double sing_coeff = 0.0;      // Gamma(1-s) for non-integer s, (-1)^(q-1)/(q-1)! for integer q >= 1
    bool has_log = false;         // integer s = q >= 1
    double harmonic = 0.0;        // H_{q-1} when has_log
    double validity_radius = 0.0; // |w| < 2 pi
};

SingularExpansion polylog_singular_expansion(double s, int order = 8);
double evaluate(const SingularExpansion& e, double z);

// Li_s(z) for z in [0,1]: direct series for z <= 0.5, singular expansion above.
// Returns +inf at z = 1 when s <= 1.
double polylog(double s, double z);

// Direct defining series sum z^j / j^s with compensated summation (z < 1, or z = 1 and s > 1).
double polylog_series(double s, double z);

struct InverseResult {
    double r = 0.0;
    bool boundary = false;  // y equals Li_s(1) and r = 1 was returned
};

// Solves Li_s(r) = y for r in (0,1]; throws DomainError when y is out of range.
InverseResult polylog_inverse(double s, double y);

// Closed-form contour integral J_xi(sigma) (purely imaginary).
std::complex<double> j_integral(double xi, double sigma);

// Numerical evaluation of the same integral along the two-ray contour with
// opening angle phi and inner radius epsilon. Intended as a test oracle.
std::complex<double> j_integral_quadrature(double xi, double sigma, double phi, double epsilon);

// J~_0(sigma; s) = 2 pi i / (s Gamma((s - 1 + sigma)/s)), s in (1, 2].
std::complex<double> j_tilde(double sigma, double s);

// E[exp(xi sqrt(X))] for X ~ Gamma(theta/2, 1).
double gamma_sqrt_mgf(double theta, double xi);

}  // namespace permcycles::specialfn
