#pragma once

#include <map>
#include <optional>
#include <string>

#include "permcycles/rng.hpp"
#include "permcycles/weights.hpp"

namespace permcycles {

enum class Regime { Subcritical, Critical, Supercritical };
std::string to_string(Regime r);

// Closed-form asymptotics of H_N, one per (regime, singularity type).
enum class HnLawKind {
    SubcriticalSaddle,       // saddle point at r_1 < R
    SupercriticalLog,        // g_theta ~ -theta* log(1 - z/R), theta* > 0
    SupercriticalPower,      // theta* = 0, g_kappa with non-integer power singularity s > 1
    CriticalSaddle,          // theta* = 0, g_theta(R) and g_kappa^{2}(R) finite
    CriticalHankel,          // theta* >= 0, g_kappa^{2}(R) finite
    CriticalStable,          // g_kappa^{2}(R) infinite, s in (1, 2)
    Unsupported,
};
std::string to_string(HnLawKind k);

// Limit laws of the number of cycles T_N, standardized as (T_N - N center) / sqrt(N variance).
enum class TnLawKind {
    NormalSubcritical,
    NormalSupercritical,
    NormalCritical,
    NormalCriticalWide,
    SkewCritical,  // Z - skew_coeff * sqrt(X), X ~ Gamma(theta*/2)
    Unsupported,
};
std::string to_string(TnLawKind k);

struct TnLaw {
    TnLawKind kind = TnLawKind::Unsupported;
    double center_slope = 0.0;
    double variance_slope = 0.0;
    double theta_star = 0.0;
    double skew_coeff = 0.0;   // sqrt(2 / (g_kappa(R) b_2(R) - 1)) for the skew law
    double limit_mean = 0.0;
    double limit_variance = 1.0;
    std::string reason;        // why the law is unsupported
};

struct HnLaw {
    HnLawKind kind = HnLawKind::Unsupported;
    std::map<std::string, double> constants;
    std::string reason;
};

struct RegimeReport {
    Regime regime = Regime::Subcritical;
    double radius = 1.0;
    double g1_at_R = 0.0;             // g_kappa^{1}(R-), possibly +inf
    double r_star = 0.0;
    std::optional<double> r_1;
    double b1_at = 0.0;
    double b2_at = 0.0;               // may be +inf at R
    double g_kappa_at = 0.0;          // g_kappa(r_*)
    double nu_tilde = 0.0;
    double rho_crit = 0.0;            // +inf when the base series diverges at R
    HnLaw hn_law;
    TnLaw tn_law;
};

constexpr double kCriticalBand = 1e-9;

double solve_r_v(const WeightModel& model, double v);
RegimeReport classify(const WeightModel& model);
double critical_density(const WeightModel& model);

struct CycleFractionLimit {
    double value = 0.0;
    bool poisson = false;  // value is the Poisson rate of C_j rather than the limit of C_j / N
};
CycleFractionLimit limiting_cycle_fraction(const WeightModel& model, long j);

struct AsymptoticLogHN {
    double log_value = 0.0;
    HnLawKind law = HnLawKind::Unsupported;
};
AsymptoticLogHN asymptotic_log_HN(const WeightModel& model, long n_points);
AsymptoticLogHN asymptotic_log_HN(const WeightModel& model, const RegimeReport& report, long n_points);

TnLaw tn_limit_params(const WeightModel& model);
double sample_tn_limit(const TnLaw& law, Rng& rng);

double nu_tilde_K(const WeightModel& model, long K);

}  // namespace permcycles
