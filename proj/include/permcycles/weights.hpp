#pragma once

#include <optional>
#include <string>
#include <vector>

namespace permcycles {

// Rule generating one coefficient sequence a_j, j >= 1.
//   Constant:  a_j = c
//   Power:     a_j = c j^-p
//   Polylog:   a_j = c j^-p      (same sequence as Power; kept separate for round-trips)
//   Perturbed: a_j = c (1 + j^-eps) j^-p
//   Table:     a_j = table[j-1], zero beyond the table
struct SeqRule {
    enum class Kind { Constant, Power, Polylog, Perturbed, Table };

    Kind kind = Kind::Constant;
    double c = 0.0;
    double exponent = 0.0;
    double eps = 0.0;
    std::vector<double> table;

    static SeqRule constant(double c);
    static SeqRule power(double c, double p);
    static SeqRule polylog(double kstar, double s);
    static SeqRule perturbed(double c, double p, double eps);
    static SeqRule from_table(std::vector<double> values);

    double value(long j) const;
    // True when the generating function is a polynomial (or identically zero).
    bool entire() const;

    // sum_j a_j r^j / j
    double gf(double r) const;
    // sum_j (j-1)_{n-1} a_j r^j for n >= 1; gf(r) for n = 0.
    double gf_mod_deriv(int n, double r) const;

    bool operator==(const SeqRule&) const = default;
};

std::string kind_name(SeqRule::Kind k);

struct GenFnProfile {
    double radius = 1.0;                 // +inf for polynomial generating functions
    double theta_star = 0.0;
    double theta_regular_at_R = 0.0;     // lim_{z->R} g_theta(z) + theta* log(1 - z/R)
    std::optional<double> sing_index;    // s > 1
    std::optional<double> sing_coeff;    // a_s
    std::vector<double> gk_derivs_at_R;  // g_kappa^{n}(R), n = 0, 1, ... while n < s
    std::optional<double> gt_value_at_R; // g_theta(R) when finite
    bool available = true;
    std::string unavailable_reason;

    bool operator==(const GenFnProfile&) const = default;
};

// Optional user-supplied profile fields; unset entries fall back to the derived profile.
struct ProfileOverride {
    std::optional<double> radius;
    std::optional<double> theta_star;
    std::optional<double> theta_regular_at_R;
    std::optional<double> sing_index;
    std::optional<double> sing_coeff;
    std::optional<std::vector<double>> gk_derivs_at_R;
    std::optional<double> gt_value_at_R;

    bool empty() const;
    bool operator==(const ProfileOverride&) const = default;
};

class WeightModel {
public:
    WeightModel(SeqRule theta, SeqRule kappa_base, double rho = 1.0,
                std::optional<ProfileOverride> user_profile = std::nullopt);

    const SeqRule& theta_rule() const { return theta_; }
    const SeqRule& kappa_base_rule() const { return kappa_; }
    double rho() const { return rho_; }
    const std::optional<ProfileOverride>& user_profile() const { return user_; }
    const GenFnProfile& profile() const { return profile_; }

    WeightModel with_rho(double rho) const;

    double theta(long j) const { return theta_.value(j); }
    double kappa_base(long j) const { return kappa_.value(j); }
    double kappa(long j) const { return kappa_.value(j) / rho_; }
    double weight(long j, long n_points) const;

    double radius() const { return profile_.radius; }
    double g_theta(double r) const;
    double g_kappa(double r) const;
    double g_kappa_mod_deriv(int n, double r) const;
    double b1(double r) const { return g_kappa_mod_deriv(1, r); }
    double b2(double r) const;

    // g_kappa^{n}(R-), taken from the profile when it lists the value.
    double g_kappa_at_R(int n) const;

    // Throws DomainError unless the model satisfies the hypotheses of the
    // asymptotic formulas (profile present, kappa_j > 0 for some j >= 2, non-arithmetic).
    void require_asymptotic_ready() const;

    bool operator==(const WeightModel& o) const {
        return theta_ == o.theta_ && kappa_ == o.kappa_ && rho_ == o.rho_ && user_ == o.user_;
    }

private:
    SeqRule theta_;
    SeqRule kappa_;
    double rho_;
    std::optional<ProfileOverride> user_;
    GenFnProfile profile_;

    GenFnProfile derive_profile() const;
    void check_radius(double r, const char* who) const;
};

}  // namespace permcycles
