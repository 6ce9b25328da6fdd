#include "permcycles/asymptotics.hpp"

#include <boost/math/tools/roots.hpp>

#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include "permcycles/error.hpp"
#include "permcycles/specialfn.hpp"

namespace permcycles {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

bool is_integer(double x) { return x == std::floor(x); }

// Leading exponent q of the singular part of g_theta at R = 1, where g_theta
// behaves like (1 - z)^q, possibly times a logarithm. +inf when g_theta is
// a polynomial or identically zero.
double theta_singular_exponent(const SeqRule& t) {
    if (t.c == 0.0 || t.kind == SeqRule::Kind::Table) return kInf;
    if (t.kind == SeqRule::Kind::Constant) return 0.0;
    return t.exponent;
}

HnLaw select_hn_law(const WeightModel& m, const RegimeReport& rep) {
    const auto& p = m.profile();
    HnLaw law;
    const double th = p.theta_star;
    auto& c = law.constants;
    switch (rep.regime) {
        case Regime::Subcritical:
            law.kind = HnLawKind::SubcriticalSaddle;
            c["r_1"] = *rep.r_1;
            c["g_theta_r1"] = m.g_theta(*rep.r_1);
            c["g_kappa_r1"] = rep.g_kappa_at;
            c["b2_r1"] = rep.b2_at;
            return law;
        case Regime::Supercritical:
            if (th > 0.0) {
                law.kind = HnLawKind::SupercriticalLog;
                c["theta_star"] = th;
                c["theta_regular_at_R"] = p.theta_regular_at_R;
                return law;
            }
            // The f = 1 form needs the g_theta singularity to be weaker than the kappa one.
            if (p.sing_index && p.sing_coeff && !is_integer(*p.sing_index) && p.gt_value_at_R &&
                (m.user_profile() || theta_singular_exponent(m.theta_rule()) > *p.sing_index - 1.0)) {
                law.kind = HnLawKind::SupercriticalPower;
                c["s"] = *p.sing_index;
                c["a_s"] = *p.sing_coeff;
                c["g_theta_R"] = *p.gt_value_at_R;
                return law;
            }
            law.reason = "supercritical with theta* = 0 needs a non-integer singularity index s, its coefficient a_s, "
                         "and g_theta regular at R up to order s - 1";
            return law;
        case Regime::Critical:
            if (std::isfinite(rep.b2_at)) {
                if (th == 0.0 && p.gt_value_at_R) {
                    law.kind = HnLawKind::CriticalSaddle;
                    c["g_theta_R"] = *p.gt_value_at_R;
                } else {
                    law.kind = HnLawKind::CriticalHankel;
                    c["theta_star"] = th;
                    c["theta_regular_at_R"] = p.theta_regular_at_R;
                }
                c["b2_R"] = rep.b2_at;
                return law;
            }
            if (p.sing_index && *p.sing_index > 1.0 && *p.sing_index < 2.0 && p.sing_coeff && *p.sing_coeff > 0.0) {
                law.kind = HnLawKind::CriticalStable;
                c["theta_star"] = th;
                c["theta_regular_at_R"] = p.theta_regular_at_R;
                c["s"] = *p.sing_index;
                c["a_s"] = *p.sing_coeff;
                return law;
            }
            law.reason = "critical with infinite g_kappa^{2}(R) is covered only for singularity index s in (1,2)";
            return law;
    }
    return law;
}

TnLaw select_tn_law(const WeightModel& m, const RegimeReport& rep) {
    const auto& p = m.profile();
    TnLaw law;
    law.center_slope = rep.g_kappa_at;
    const double g = rep.g_kappa_at;
    switch (rep.regime) {
        case Regime::Subcritical:
            law.kind = TnLawKind::NormalSubcritical;
            law.variance_slope = g - 1.0 / rep.b2_at;
            return law;
        case Regime::Supercritical:
            law.kind = TnLawKind::NormalSupercritical;
            law.variance_slope = g;
            return law;
        case Regime::Critical:
            if (std::isfinite(rep.b2_at)) {
                law.variance_slope = g - 1.0 / rep.b2_at;
                if (p.theta_star == 0.0) {
                    law.kind = TnLawKind::NormalCritical;
                    return law;
                }
                law.kind = TnLawKind::SkewCritical;
                law.theta_star = p.theta_star;
                law.skew_coeff = std::sqrt(2.0 / (g * rep.b2_at - 1.0));
                const double th = p.theta_star;
                const double e_sqrt_x = std::exp(std::lgamma(0.5 * (th + 1.0)) - std::lgamma(0.5 * th));
                law.limit_mean = -law.skew_coeff * e_sqrt_x;
                // Var(Z - c sqrt X) = 1 + c^2 (E X - (E sqrt X)^2)
                law.limit_variance = 1.0 + law.skew_coeff * law.skew_coeff * (0.5 * th - e_sqrt_x * e_sqrt_x);
                return law;
            }
            if (p.sing_index && *p.sing_index > 1.0 && *p.sing_index < 2.0) {
                law.kind = TnLawKind::NormalCriticalWide;
                law.variance_slope = g;
                return law;
            }
            law.reason = "critical with infinite g_kappa^{2}(R) is covered only for singularity index s in (1,2)";
            return law;
    }
    return law;
}

}  // namespace

std::string to_string(Regime r) {
    switch (r) {
        case Regime::Subcritical: return "Subcritical";
        case Regime::Critical: return "Critical";
        case Regime::Supercritical: return "Supercritical";
    }
    return "?";
}

std::string to_string(HnLawKind k) {
    switch (k) {
        case HnLawKind::SubcriticalSaddle: return "subcritical_saddle";
        case HnLawKind::SupercriticalLog: return "supercritical_log";
        case HnLawKind::SupercriticalPower: return "supercritical_power";
        case HnLawKind::CriticalSaddle: return "critical_saddle";
        case HnLawKind::CriticalHankel: return "critical_hankel";
        case HnLawKind::CriticalStable: return "critical_stable";
        case HnLawKind::Unsupported: return "unsupported";
    }
    return "?";
}

std::string to_string(TnLawKind k) {
    switch (k) {
        case TnLawKind::NormalSubcritical: return "normal_subcritical";
        case TnLawKind::NormalSupercritical: return "normal_supercritical";
        case TnLawKind::NormalCritical: return "normal_critical";
        case TnLawKind::NormalCriticalWide: return "normal_critical_wide";
        case TnLawKind::SkewCritical: return "skew_critical";
        case TnLawKind::Unsupported: return "unsupported";
    }
    return "?";
}

double solve_r_v(const WeightModel& model, double v) {
    if (!(v > 0.0)) throw DomainError("solve_r_v: v must be positive");
    const double target = 1.0 / v;
    const double R = model.radius();
    const double g1R = model.g_kappa_at_R(1);
    if (std::isfinite(g1R)) {
        if (std::abs(g1R - target) <= 1e-15 * target) return R;
        if (target > g1R)
            throw DomainError("solve_r_v: no root since v < 1/g_kappa^{1}(R) (supercritical side)");
    }
    auto f = [&](double r) { return model.g_kappa_mod_deriv(1, r) - target; };

    double lo = 1e-8;
    for (int k = 0; k < 200 && f(lo) > 0.0; ++k) lo *= 0.5;
    double hi;
    if (std::isfinite(R)) {
        hi = R * (1.0 - 1e-12);
        if (f(hi) < 0.0) return R;
    } else {
        hi = 1.0;
        for (int k = 0; k < 2000 && f(hi) < 0.0; ++k) hi *= 2.0;
    }
    std::uintmax_t iters = 200;
    auto tol = [](double a, double b) { return std::abs(b - a) <= 2.0 * std::numeric_limits<double>::epsilon() * std::abs(a); };
    auto [a, b] = boost::math::tools::toms748_solve(f, lo, hi, tol, iters);
    if (iters >= 200) throw DomainError("solve_r_v: root finder did not converge");
    return std::abs(f(a)) <= std::abs(f(b)) ? a : b;
}

RegimeReport classify(const WeightModel& model) {
    model.require_asymptotic_ready();
    RegimeReport rep;
    rep.radius = model.radius();
    rep.g1_at_R = model.g_kappa_at_R(1);
    const double g1 = rep.g1_at_R;
    if (std::isfinite(g1) && std::abs(g1 - 1.0) <= kCriticalBand) {
        rep.regime = Regime::Critical;
    } else if (g1 > 1.0) {
        rep.regime = Regime::Subcritical;
    } else {
        rep.regime = Regime::Supercritical;
    }
    if (rep.regime == Regime::Subcritical) {
        rep.r_1 = solve_r_v(model, 1.0);
        rep.r_star = *rep.r_1;
        rep.b1_at = model.b1(rep.r_star);
        rep.b2_at = model.b2(rep.r_star);
        rep.g_kappa_at = model.g_kappa(rep.r_star);
    } else {
        if (rep.regime == Regime::Critical) rep.r_1 = rep.radius;
        rep.r_star = rep.radius;
        rep.b1_at = g1;
        rep.b2_at = g1 + model.g_kappa_at_R(2);
        rep.g_kappa_at = model.g_kappa_at_R(0);
    }
    rep.nu_tilde = rep.regime == Regime::Supercritical ? 1.0 - g1 : 0.0;
    rep.rho_crit = critical_density(model);
    rep.hn_law = select_hn_law(model, rep);
    rep.tn_law = select_tn_law(model, rep);
    return rep;
}

double critical_density(const WeightModel& model) {
    // sum_j kappa_base_j R^j = rho * g_kappa^{1}(R)
    const double g1 = model.g_kappa_at_R(1);
    return std::isfinite(g1) ? model.rho() * g1 : kInf;
}

CycleFractionLimit limiting_cycle_fraction(const WeightModel& model, long j) {
    if (j < 1) throw DomainError("limiting_cycle_fraction: j must be >= 1");
    const double r = classify(model).r_star;
    const double rj = std::pow(r, static_cast<double>(j)) / static_cast<double>(j);
    const double kj = model.kappa(j);
    if (kj == 0.0 && model.theta(j) > 0.0) return {model.theta(j) * rj, true};
    return {kj * rj, false};
}

AsymptoticLogHN asymptotic_log_HN(const WeightModel& model, long n_points) {
    return asymptotic_log_HN(model, classify(model), n_points);
}

AsymptoticLogHN asymptotic_log_HN(const WeightModel& /*model*/, const RegimeReport& rep, long N_) {
    if (N_ < 1) throw DomainError("asymptotic_log_HN: N must be >= 1");
    const auto& law = rep.hn_law;
    if (law.kind == HnLawKind::Unsupported) throw UnsupportedRegime("asymptotic_log_HN: " + law.reason);
    const double N = static_cast<double>(N_);
    const double R = rep.radius;
    const double two_pi = 2.0 * std::numbers::pi;
    const auto& c = law.constants;
    double v = 0.0;
    switch (law.kind) {
        case HnLawKind::SubcriticalSaddle: {
            const double r1 = c.at("r_1");
            v = c.at("g_theta_r1") + N * c.at("g_kappa_r1") - N * std::log(r1) - 0.5 * std::log(two_pi * N * c.at("b2_r1"));
            break;
        }
        case HnLawKind::SupercriticalLog: {
            const double th = c.at("theta_star");
            v = c.at("theta_regular_at_R") + N * rep.g_kappa_at + (th - 1.0) * std::log(N * (1.0 - rep.g1_at_R)) -
                N * std::log(R) - std::lgamma(th);
            break;
        }
        case HnLawKind::SupercriticalPower: {
            const double s = c.at("s");
            const double ratio = c.at("a_s") * specialfn::rgamma(-s);
            if (!(ratio > 0.0)) throw UnsupportedRegime("asymptotic_log_HN: a_s / Gamma(-s) must be positive");
            const double gap = 1.0 - rep.g1_at_R;
            v = c.at("g_theta_R") + N * rep.g_kappa_at + std::log(ratio) - s * std::log(N * gap) - std::log(gap) -
                N * std::log(R);
            break;
        }
        case HnLawKind::CriticalSaddle:
            v = c.at("g_theta_R") + N * rep.g_kappa_at - N * std::log(R) - 0.5 * std::log(two_pi * N * c.at("b2_R"));
            break;
        case HnLawKind::CriticalHankel: {
            const double th = c.at("theta_star");
            v = c.at("theta_regular_at_R") + N * rep.g_kappa_at + 0.5 * (th - 1.0) * std::log(0.5 * N * c.at("b2_R")) -
                std::log(2.0) - N * std::log(R) - std::lgamma(0.5 * (1.0 + th));
            break;
        }
        case HnLawKind::CriticalStable: {
            const double th = c.at("theta_star");
            const double s = c.at("s");
            v = c.at("theta_regular_at_R") + N * rep.g_kappa_at + (th - 1.0) / s * std::log(N * c.at("a_s")) -
                std::log(s) - N * std::log(R) - std::lgamma((s - 1.0 + th) / s);
            break;
        }
        case HnLawKind::Unsupported: break;
    }
    return {v, law.kind};
}

TnLaw tn_limit_params(const WeightModel& model) {
    TnLaw law = classify(model).tn_law;
    if (law.kind == TnLawKind::Unsupported) throw UnsupportedRegime("tn_limit_params: " + law.reason);
    return law;
}

double sample_tn_limit(const TnLaw& law, Rng& rng) {
    std::normal_distribution<double> normal(0.0, 1.0);
    const double z = normal(rng);
    if (law.kind != TnLawKind::SkewCritical) return z;
    std::gamma_distribution<double> gamma(0.5 * law.theta_star, 1.0);
    return z - law.skew_coeff * std::sqrt(gamma(rng));
}

double nu_tilde_K(const WeightModel& model, long K) {
    if (K < 0) throw DomainError("nu_tilde_K: K must be >= 0");
    const double r = classify(model).r_star;
    double s = 0.0;
    double rj = 1.0;
    for (long j = 1; j <= K; ++j) {
        rj *= r;
        s += model.kappa(j) * rj;
    }
    return 1.0 - s;
}

}  // namespace permcycles
