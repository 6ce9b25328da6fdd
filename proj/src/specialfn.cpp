#include "permcycles/specialfn.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/special_functions/gamma.hpp>
#include <boost/math/special_functions/zeta.hpp>
#include <boost/math/tools/roots.hpp>

#include <cmath>
#include <limits>
#include <numbers>

#include "permcycles/error.hpp"

namespace permcycles::specialfn {

namespace {

constexpr double kPi = std::numbers::pi;

bool is_nonpositive_integer(double x) { return x <= 0.0 && x == std::floor(x); }

bool is_integer(double x) { return x == std::floor(x); }

}  // namespace

double gamma_real(double x) {
    if (is_nonpositive_integer(x)) throw DomainError("gamma_real: pole at " + std::to_string(x));
    return boost::math::tgamma(x);
}

double rgamma(double x) {
    if (is_nonpositive_integer(x)) return 0.0;
    if (x > 171.0) return 0.0;
    return 1.0 / boost::math::tgamma(x);
}

double zeta_real(double s) {
    if (s == 1.0) throw DomainError("zeta_real: pole at s = 1");
    return boost::math::zeta(s);
}

SingularExpansion polylog_singular_expansion(double s, int order) {
    SingularExpansion e;
    e.s = s;
    e.order = order;
    e.sing_exponent = s - 1.0;
    e.validity_radius = 2.0 * kPi;
    e.regular.assign(order + 1, 0.0);
    const bool integer_q = is_integer(s) && s >= 1.0;
    const int q = integer_q ? static_cast<int>(s) : 0;
    double fact = 1.0;
    for (int n = 0; n <= order; ++n) {
        if (n > 0) fact *= n;
        if (integer_q && n == q - 1) continue;
        const double sign = (n % 2 == 0) ? 1.0 : -1.0;
        e.regular[n] = sign * zeta_real(s - n) / fact;
    }
    if (integer_q) {
        e.has_log = true;
        double h = 0.0;
        double f = 1.0;
        for (int k = 1; k <= q - 1; ++k) {
            h += 1.0 / k;
            f *= k;
        }
        e.harmonic = h;
        e.sing_coeff = ((q - 1) % 2 == 0 ? 1.0 : -1.0) / f;
    } else {
        e.sing_coeff = gamma_real(1.0 - s);
    }
    return e;
}

double evaluate(const SingularExpansion& e, double z) {
    const double w = -std::log(z);
    double reg = 0.0;
    for (int n = e.order; n >= 0; --n) reg = reg * w + e.regular[n];
    double sing = e.sing_coeff * std::pow(w, e.sing_exponent);
    if (e.has_log) sing *= (e.harmonic - std::log(w));
    return reg + sing;
}

double polylog_series(double s, double z) {
    if (z == 0.0) return 0.0;
    if (z == 1.0) {
        if (s <= 1.0) return std::numeric_limits<double>::infinity();
        return zeta_real(s);
    }
    // Kahan-compensated partial sums of z^j j^{-s}.
    double sum = 0.0, comp = 0.0, zj = 1.0, prev = std::numeric_limits<double>::infinity();
    for (long j = 1;; ++j) {
        zj *= z;
        const double term = zj * std::pow(static_cast<double>(j), -s);
        const double y = term - comp;
        const double t = sum + y;
        comp = (t - sum) - y;
        sum = t;
        if (j >= 64 && std::abs(term) <= 1e-17 * std::abs(sum) && std::abs(term) <= std::abs(prev)) break;
        if (zj == 0.0) break;
        prev = term;
    }
    return sum;
}

double polylog(double s, double z) {
    if (z < 0.0 || z > 1.0) throw DomainError("polylog: z must lie in [0,1]");
    if (z == 0.0) return 0.0;
    if (z == 1.0) return polylog_series(s, z);
    if (s == 1.0) return -std::log1p(-z);
    if (z <= 0.5) return polylog_series(s, z);
    return evaluate(polylog_singular_expansion(s, 8), z);
}

InverseResult polylog_inverse(double s, double y) {
    if (!(y > 0.0)) throw DomainError("polylog_inverse: y must be positive");
    if (s == 1.0) return {-std::expm1(-y), false};
    if (s > 1.0) {
        const double top = zeta_real(s);
        if (y > top * (1.0 + 1e-15)) throw DomainError("polylog_inverse: y exceeds zeta(s)");
        if (std::abs(y - top) <= 1e-15 * top) return {1.0, true};
    }
    auto f = [&](double r) { return polylog(s, r) - y; };
    double lo = 0.0, hi = 1.0;
    if (s < 1.0) {
        // Li_s diverges at 1 for s < 1; shrink the upper end until the sign changes.
        hi = 1.0 - 1e-16;
    }
    if (f(hi) < 0.0) throw DomainError("polylog_inverse: no root below 1");
    std::uintmax_t iters = 300;
    auto tol = [](double a, double b) { return std::abs(b - a) <= 4.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(a)); };
    auto [a, b] = boost::math::tools::toms748_solve(f, lo, hi, -y, f(hi), tol, iters);
    return {0.5 * (a + b), false};
}

std::complex<double> j_integral(double xi, double sigma) {
    // Even and odd parts of sum_n Gamma((sigma+n)/2)/Gamma(sigma/2) xi^n/n!, each
    // written with Pochhammer symbols so the reciprocal gammas absorb the poles.
    const double x2 = xi * xi;
    double even = 0.0, t = 1.0;
    for (int m = 0; m < 2000; ++m) {
        even += t;
        t *= (0.5 * sigma + m) * x2 / ((2.0 * m + 1.0) * (2.0 * m + 2.0));
        if (t == 0.0 || (m > 8 + x2 && std::abs(t) < 1e-18 * std::abs(even))) break;
    }
    double odd = 0.0, u = xi;
    for (int m = 0; m < 2000; ++m) {
        odd += u;
        u *= (0.5 * (sigma + 1.0) + m) * x2 / ((2.0 * m + 2.0) * (2.0 * m + 3.0));
        if (u == 0.0 || (m > 8 + x2 && std::abs(u) < 1e-18 * std::abs(odd))) break;
    }
    const double total = rgamma(0.5 * (sigma + 1.0)) * even + rgamma(0.5 * sigma) * odd;
    return {0.0, kPi * std::exp(-0.25 * x2) * total};
}

std::complex<double> j_integral_quadrature(double xi, double sigma, double phi, double epsilon) {
    if (!(phi > kPi / 4 && phi < kPi / 2)) throw DomainError("j_integral_quadrature: phi outside (pi/4, pi/2)");
    if (!(epsilon > 0.0)) throw DomainError("j_integral_quadrature: epsilon must be positive");
    using cd = std::complex<double>;
    auto integrand = [&](cd w) { return std::exp(-sigma * std::log(-w) - xi * w + w * w); };

    // Ray length: the modulus is y^-sigma exp(-xi y cos(phi) + y^2 cos(2 phi)).
    const double c2 = std::cos(2.0 * phi);
    double ymax = std::max(epsilon, 1.0);
    for (;;) {
        const double logmod = -sigma * std::log(ymax) + std::abs(xi) * ymax + ymax * ymax * c2;
        if (logmod < std::log(1e-18) && 2.0 * ymax * c2 + std::abs(xi) - sigma / ymax < 0.0) break;
        ymax += 0.5;
    }

    using GK = boost::math::quadrature::gauss_kronrod<double, 61>;
    auto integrate_complex = [](auto&& g, double a, double b) {
        const double re = GK::integrate([&](double t) { return g(t).real(); }, a, b, 20, 1e-14);
        const double im = GK::integrate([&](double t) { return g(t).imag(); }, a, b, 20, 1e-14);
        return cd(re, im);
    };

    const cd e_minus = std::polar(1.0, -phi);
    const cd e_plus = std::polar(1.0, phi);
    // Incoming ray y e^{-i phi} from infinity to epsilon.
    const cd leg1 = -integrate_complex([&](double y) { return integrand(y * e_minus) * e_minus; }, epsilon, ymax);
    // Arc w = epsilon e^{-it}, t from phi to 2 pi - phi, passing through w = -epsilon.
    const cd arc = integrate_complex(
        [&](double t) {
            const cd w = epsilon * std::polar(1.0, -t);
            return integrand(w) * (cd(0.0, -1.0) * w);
        },
        phi, 2.0 * kPi - phi);
    // Outgoing ray y e^{i phi}.
    const cd leg3 = integrate_complex([&](double y) { return integrand(y * e_plus) * e_plus; }, epsilon, ymax);
    return leg1 + arc + leg3;
}

std::complex<double> j_tilde(double sigma, double s) {
    if (!(s > 1.0 && s <= 2.0)) throw DomainError("j_tilde: s must lie in (1, 2]");
    return {0.0, 2.0 * kPi / s * rgamma((s - 1.0 + sigma) / s)};
}

double gamma_sqrt_mgf(double theta, double xi) {
    if (!(theta > 0.0)) throw DomainError("gamma_sqrt_mgf: theta must be positive");
    const double x2 = xi * xi;
    double even = 0.0, t = 1.0;
    for (int m = 0; m < 4000; ++m) {
        even += t;
        t *= (0.5 * theta + m) * x2 / ((2.0 * m + 1.0) * (2.0 * m + 2.0));
        if (m > 8 + x2 && std::abs(t) < 1e-18 * std::abs(even)) break;
    }
    double odd = 0.0, u = xi;
    for (int m = 0; m < 4000; ++m) {
        odd += u;
        u *= (0.5 * (theta + 1.0) + m) * x2 / ((2.0 * m + 2.0) * (2.0 * m + 3.0));
        if (u == 0.0 || (m > 8 + x2 && std::abs(u) < 1e-18 * std::abs(odd))) break;
    }
    const double ratio = std::exp(std::lgamma(0.5 * (theta + 1.0)) - std::lgamma(0.5 * theta));
    return even + ratio * odd;
}

}  // namespace permcycles::specialfn
