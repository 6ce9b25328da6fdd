#include "permcycles/weights.hpp"

#include <cmath>
#include <limits>
#include <numeric>

#include "permcycles/error.hpp"
#include "permcycles/specialfn.hpp"

namespace permcycles {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Coefficients a_k of (j-1)(j-2)...(j-n+1) = sum_k a_k j^k.
std::vector<double> falling_factorial_poly(int n) {
    std::vector<double> p{1.0};
    for (int i = 1; i <= n - 1; ++i) {
        std::vector<double> q(p.size() + 1, 0.0);
        for (size_t k = 0; k < p.size(); ++k) {
            q[k + 1] += p[k];
            q[k] -= i * p[k];
        }
        p = std::move(q);
    }
    return p;
}

double falling(long x, int m) {
    double v = 1.0;
    for (int i = 0; i < m; ++i) v *= static_cast<double>(x - i);
    return v;
}

// c * sum_j (j-1)_{n-1} j^{-p} r^j via polylogarithms of lowered order.
double power_mod_deriv(double c, double p, int n, double r) {
    const auto a = falling_factorial_poly(n);
    if (r == 1.0) {
        for (size_t k = 0; k < a.size(); ++k)
            if (a[k] != 0.0 && p - static_cast<double>(k) <= 1.0) return kInf;
    }
    double sum = 0.0;
    for (size_t k = 0; k < a.size(); ++k)
        if (a[k] != 0.0) sum += a[k] * specialfn::polylog(p - static_cast<double>(k), r);
    return c * sum;
}

}  // namespace

SeqRule SeqRule::constant(double c) { return {Kind::Constant, c, 0.0, 0.0, {}}; }
SeqRule SeqRule::power(double c, double p) { return {Kind::Power, c, p, 0.0, {}}; }
SeqRule SeqRule::polylog(double kstar, double s) { return {Kind::Polylog, kstar, s, 0.0, {}}; }
SeqRule SeqRule::perturbed(double c, double p, double eps) { return {Kind::Perturbed, c, p, eps, {}}; }
SeqRule SeqRule::from_table(std::vector<double> values) { return {Kind::Table, 0.0, 0.0, 0.0, std::move(values)}; }

std::string kind_name(SeqRule::Kind k) {
    switch (k) {
        case SeqRule::Kind::Constant: return "constant";
        case SeqRule::Kind::Power: return "power";
        case SeqRule::Kind::Polylog: return "polylog";
        case SeqRule::Kind::Perturbed: return "perturbed";
        case SeqRule::Kind::Table: return "table";
    }
    return "?";
}

double SeqRule::value(long j) const {
    const double x = static_cast<double>(j);
    switch (kind) {
        case Kind::Constant: return c;
        case Kind::Power:
        case Kind::Polylog: return c * std::pow(x, -exponent);
        case Kind::Perturbed: return c * (1.0 + std::pow(x, -eps)) * std::pow(x, -exponent);
        case Kind::Table: return j >= 1 && static_cast<size_t>(j) <= table.size() ? table[j - 1] : 0.0;
    }
    return 0.0;
}

bool SeqRule::entire() const { return kind == Kind::Table || c == 0.0; }

double SeqRule::gf(double r) const {
    if (kind == Kind::Table) {
        double s = 0.0, rj = 1.0;
        for (size_t j = 1; j <= table.size(); ++j) {
            rj *= r;
            s += table[j - 1] * rj / static_cast<double>(j);
        }
        return s;
    }
    if (c == 0.0) return 0.0;
    switch (kind) {
        case Kind::Constant: return r >= 1.0 ? kInf : -c * std::log1p(-r);
        case Kind::Power:
        case Kind::Polylog: return c * specialfn::polylog(exponent + 1.0, r);
        case Kind::Perturbed:
            return c * (specialfn::polylog(exponent + 1.0, r) + specialfn::polylog(exponent + eps + 1.0, r));
        default: return 0.0;
    }
}

double SeqRule::gf_mod_deriv(int n, double r) const {
    if (n == 0) return gf(r);
    if (kind == Kind::Table) {
        double s = 0.0, rj = 1.0;
        for (size_t j = 1; j <= table.size(); ++j) {
            rj *= r;
            s += falling(static_cast<long>(j) - 1, n - 1) * table[j - 1] * rj;
        }
        return s;
    }
    if (c == 0.0) return 0.0;
    switch (kind) {
        case Kind::Constant: {
            if (r >= 1.0) return kInf;
            return c * std::tgamma(static_cast<double>(n)) * std::pow(r / (1.0 - r), n);
        }
        case Kind::Power:
        case Kind::Polylog: return power_mod_deriv(c, exponent, n, r);
        case Kind::Perturbed: return power_mod_deriv(c, exponent, n, r) + power_mod_deriv(c, exponent + eps, n, r);
        default: return 0.0;
    }
}

bool ProfileOverride::empty() const {
    return !radius && !theta_star && !theta_regular_at_R && !sing_index && !sing_coeff && !gk_derivs_at_R &&
           !gt_value_at_R;
}

WeightModel::WeightModel(SeqRule theta, SeqRule kappa_base, double rho, std::optional<ProfileOverride> user_profile)
    : theta_(std::move(theta)), kappa_(std::move(kappa_base)), rho_(rho), user_(std::move(user_profile)) {
    if (!(rho_ > 0.0) || !std::isfinite(rho_)) throw DomainError("weights: rho must be positive and finite");
    for (const SeqRule* r : {&theta_, &kappa_}) {
        if (r->kind == SeqRule::Kind::Table) {
            for (double v : r->table)
                if (!(v >= 0.0) || !std::isfinite(v)) throw DomainError("weights: table entries must be finite and >= 0");
        } else if (!(r->c >= 0.0) || !std::isfinite(r->c)) {
            throw DomainError("weights: sequence scale must be finite and >= 0");
        }
        if (r->kind == SeqRule::Kind::Perturbed && !(r->eps > 0.0))
            throw DomainError("weights: perturbation exponent eps must be positive");
    }
    if (user_ && user_->empty()) user_.reset();
    profile_ = derive_profile();
}

WeightModel WeightModel::with_rho(double rho) const { return WeightModel(theta_, kappa_, rho, user_); }

double WeightModel::weight(long j, long n_points) const {
    return theta(j) + static_cast<double>(n_points) * kappa(j);
}

GenFnProfile WeightModel::derive_profile() const {
    GenFnProfile p;
    const bool has_table = theta_.kind == SeqRule::Kind::Table || kappa_.kind == SeqRule::Kind::Table;
    p.radius = (theta_.entire() && kappa_.entire()) ? kInf : 1.0;

    // Logarithmic singularity of g_theta at R.
    if (theta_.entire()) {
        p.theta_star = 0.0;
        if (std::isfinite(p.radius)) p.theta_regular_at_R = theta_.gf(p.radius);
    } else {
        const double g0 = theta_.exponent;
        if (g0 < 0.0) {
            p.available = false;
            p.unavailable_reason = "theta sequence grows; g_theta has no logarithmic-type singularity";
        } else if (theta_.kind == SeqRule::Kind::Constant || g0 == 0.0) {
            p.theta_star = theta_.c;
            // Constant part left after removing -theta* log(1-z).
            if (theta_.kind == SeqRule::Kind::Perturbed) p.theta_regular_at_R = theta_.c * specialfn::zeta_real(1.0 + theta_.eps);
        } else {
            p.theta_star = 0.0;
            p.theta_regular_at_R = theta_.gf(1.0);
        }
    }
    if (p.theta_star == 0.0 && std::isfinite(p.theta_regular_at_R)) p.gt_value_at_R = p.theta_regular_at_R;

    // Power singularity of g_kappa at R.
    if (!kappa_.entire() && kappa_.kind != SeqRule::Kind::Constant && kappa_.exponent > 1.0) {
        const double s = kappa_.exponent;
        p.sing_index = s;
        if (s != std::floor(s)) p.sing_coeff = kappa_.c / rho_ * specialfn::gamma_real(-s);
        for (int n = 0; n < s; ++n) p.gk_derivs_at_R.push_back(kappa_.gf_mod_deriv(n, 1.0) / rho_);
    } else if (std::isfinite(p.radius) && kappa_.entire()) {
        for (int n = 0; n <= 2; ++n) p.gk_derivs_at_R.push_back(kappa_.gf_mod_deriv(n, p.radius) / rho_);
    }

    if (has_table && !user_) {
        p.available = false;
        p.unavailable_reason = "explicit-table models need a user-supplied profile for asymptotic operations";
    }
    if (user_) {
        const auto& u = *user_;
        if (u.radius) p.radius = *u.radius;
        if (u.theta_star) p.theta_star = *u.theta_star;
        if (u.theta_regular_at_R) p.theta_regular_at_R = *u.theta_regular_at_R;
        if (u.sing_index) p.sing_index = *u.sing_index;
        if (u.sing_coeff) p.sing_coeff = *u.sing_coeff;
        if (u.gk_derivs_at_R) p.gk_derivs_at_R = *u.gk_derivs_at_R;
        if (u.gt_value_at_R) p.gt_value_at_R = *u.gt_value_at_R;
        if (has_table) {
            p.available = true;
            p.unavailable_reason.clear();
        }
    }
    return p;
}

void WeightModel::check_radius(double r, const char* who) const {
    if (!(r >= 0.0) || r > profile_.radius)
        throw DomainError(std::string(who) + ": argument outside [0, R]");
}

double WeightModel::g_theta(double r) const {
    check_radius(r, "g_theta");
    return theta_.gf(r);
}

double WeightModel::g_kappa(double r) const {
    check_radius(r, "g_kappa");
    return kappa_.gf(r) / rho_;
}

double WeightModel::g_kappa_mod_deriv(int n, double r) const {
    if (n < 0) throw DomainError("g_kappa_mod_deriv: order must be >= 0");
    check_radius(r, "g_kappa_mod_deriv");
    if (std::isinf(r)) {
        for (long j = 1; j <= 64; ++j)
            if (kappa(j) > 0.0) return kInf;
        return 0.0;
    }
    return kappa_.gf_mod_deriv(n, r) / rho_;
}

double WeightModel::b2(double r) const { return g_kappa_mod_deriv(1, r) + g_kappa_mod_deriv(2, r); }

double WeightModel::g_kappa_at_R(int n) const {
    if (static_cast<size_t>(n) < profile_.gk_derivs_at_R.size()) return profile_.gk_derivs_at_R[n];
    return g_kappa_mod_deriv(n, profile_.radius);
}

void WeightModel::require_asymptotic_ready() const {
    if (!profile_.available) throw DomainError("profile unavailable: " + profile_.unavailable_reason);
    const long span = kappa_.kind == SeqRule::Kind::Table ? static_cast<long>(kappa_.table.size()) : 64;
    long g = 0;
    bool beyond_one = false;
    for (long j = 1; j <= span; ++j) {
        if (kappa(j) > 0.0) {
            g = std::gcd(g, j);
            if (j >= 2) beyond_one = true;
        }
    }
    if (!beyond_one) throw DomainError("configuration: kappa_j must be positive for some j >= 2");
    if (g != 1) throw DomainError("configuration: kappa support is arithmetic (gcd " + std::to_string(g) + ")");
}

}  // namespace permcycles
