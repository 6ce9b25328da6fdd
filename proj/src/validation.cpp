#include "permcycles/validation.hpp"

#include <cmath>
#include <complex>
#include <functional>
#include <numbers>

#include "permcycles/asymptotics.hpp"
#include "permcycles/error.hpp"
#include "permcycles/exact_stats.hpp"
#include "permcycles/sampler.hpp"
#include "permcycles/series.hpp"
#include "permcycles/spatial.hpp"
#include "permcycles/specialfn.hpp"

namespace permcycles::validation {

WeightModel constant_model() { return WeightModel(SeqRule::constant(1.0), SeqRule::constant(1.0)); }

WeightModel supercritical_model() {
    return WeightModel(SeqRule::constant(1.0), SeqRule::polylog(0.5 / specialfn::zeta_real(2.0), 2.0));
}

WeightModel giant_cycle_model() {
    return WeightModel(SeqRule::power(1.0, 0.5), SeqRule::polylog(1.0, 2.0), 2.0 * specialfn::zeta_real(2.0));
}

WeightModel critical_model() {
    return WeightModel(SeqRule::constant(1.0), SeqRule::polylog(1.0 / specialfn::zeta_real(2.5), 2.5));
}

std::vector<NamedModel> reference_models() {
    return {{"constant", constant_model()}, {"supercritical", supercritical_model()}, {"giant_cycle", giant_cycle_model()}};
}

namespace {

void enumerate_partitions(long remaining, long max_part, std::vector<long>& counts,
                          const std::function<void(const std::vector<long>&)>& visit) {
    if (remaining == 0) {
        visit(counts);
        return;
    }
    for (long p = std::min(remaining, max_part); p >= 1; --p) {
        ++counts[p];
        enumerate_partitions(remaining - p, p, counts, visit);
        --counts[p];
    }
}

double falling(long x, long m) {
    double v = 1.0;
    for (long i = 0; i < m; ++i) v *= static_cast<double>(x - i);
    return v;
}

}  // namespace

BruteForceLaw brute_force_oracle(const WeightModel& model, long N) {
    if (N < 1 || N > kBruteForceMax) throw DomainError("brute_force_oracle: N must lie in 1..9");
    BruteForceLaw law;
    law.n_points = N;
    std::vector<long> counts(N + 1, 0);
    std::vector<double> raw;
    enumerate_partitions(N, N, counts, [&](const std::vector<long>& c) {
        double w = 1.0;
        for (long j = 1; j <= N; ++j) {
            const double a = model.weight(j, N) / static_cast<double>(j);
            for (long k = 1; k <= c[j]; ++k) w *= a / static_cast<double>(k);
        }
        law.counts.push_back(c);
        raw.push_back(w);
    });
    double H = 0.0;
    for (double w : raw) H += w;
    law.H = H;
    for (double w : raw) law.prob.push_back(w / H);
    return law;
}

double BruteForceLaw::expected_count(long j) const {
    double s = 0.0;
    for (size_t t = 0; t < prob.size(); ++t) s += prob[t] * static_cast<double>(counts[t][j]);
    return s;
}

double BruteForceLaw::factorial_moment(const std::vector<std::pair<long, long>>& spec) const {
    double s = 0.0;
    for (size_t t = 0; t < prob.size(); ++t) {
        double v = prob[t];
        for (auto [j, nj] : spec) v *= j <= n_points ? falling(counts[t][j], nj) : 0.0;
        s += v;
    }
    return s;
}

std::vector<double> BruteForceLaw::l1_pmf() const {
    const double N = static_cast<double>(n_points);
    std::vector<double> out(n_points, 0.0);
    // Given the type, the cycle through point 1 has length l with probability l c_l / N.
    for (size_t t = 0; t < prob.size(); ++t)
        for (long l = 1; l <= n_points; ++l) out[l - 1] += prob[t] * l * counts[t][l] / N;
    return out;
}

double BruteForceLaw::joint_l12(long a, long b) const {
    const long N = n_points;
    if (a < 1 || a > N) return 0.0;
    if (b == 0 && a != N) return 0.0;
    if (b != 0 && a + b > N) return 0.0;
    double s = 0.0;
    for (size_t t = 0; t < prob.size(); ++t) {
        const auto& c = counts[t];
        double p = prob[t] * a * c[a] / static_cast<double>(N);
        if (p == 0.0) continue;
        if (b != 0) {
            const long cb = c[b] - (b == a ? 1 : 0);
            p *= b * cb / static_cast<double>(N - a);
        }
        s += p;
    }
    return s;
}

std::vector<double> BruteForceLaw::tn_pmf() const {
    std::vector<double> out(n_points + 1, 0.0);
    for (size_t t = 0; t < prob.size(); ++t) {
        long k = 0;
        for (long j = 1; j <= n_points; ++j) k += counts[t][j];
        out[k] += prob[t];
    }
    return out;
}

OracleResult compare(std::string name, double value, double oracle, double tolerance) {
    OracleResult r;
    r.name = std::move(name);
    r.value = value;
    r.oracle = oracle;
    const double scale = std::max(std::abs(oracle), 1e-300);
    r.rel_error = value == oracle ? 0.0 : std::abs(value - oracle) / scale;
    r.tolerance = tolerance;
    r.pass = r.rel_error <= tolerance;
    return r;
}

std::vector<ConvergenceRow> convergence_study(const WeightModel& model, Quantity q, const std::vector<long>& n_grid,
                                              long K) {
    const RegimeReport rep = classify(model);
    std::vector<ConvergenceRow> rows;
    for (long N : n_grid) {
        ConvergenceRow row{N, 0.0, 0.0, 0.0};
        switch (q) {
            case Quantity::PartitionFunction:
                row.exact = log_partition(model, N);
                row.asymptotic = asymptotic_log_HN(model, rep, N).log_value;
                row.ratio = std::exp(row.asymptotic - row.exact);
                break;
            case Quantity::FirstCycleCount: {
                const auto t = build_table(model, N);
                row.exact = expected_cycle_counts(t, 1)[0] / static_cast<double>(N);
                row.asymptotic = model.kappa(1) * rep.r_star;
                row.ratio = row.exact / row.asymptotic;
                break;
            }
            case Quantity::LongFraction: {
                const auto t = build_table(model, N);
                row.exact = expected_long_fraction(t, K);
                row.asymptotic = nu_tilde_K(model, K);
                row.ratio = row.exact / row.asymptotic;
                break;
            }
        }
        rows.push_back(row);
    }
    return rows;
}

bool SuiteReport::all_pass() const {
    for (const auto& r : results)
        if (!r.pass) return false;
    return true;
}

namespace {

// Largest relative deviation between library values and the partition oracle.
void brute_force_checks(const NamedModel& nm, long n_hi, std::vector<OracleResult>& out) {
    double worst_H = 0, worst_c = 0, worst_l1 = 0, worst_joint = 0, worst_tn = 0;
    auto rel = [](double a, double b) { return a == b ? 0.0 : std::abs(a - b) / std::max(std::abs(b), 1e-300); };
    for (long N = 1; N <= n_hi; ++N) {
        const auto bf = brute_force_oracle(nm.model, N);
        const auto t = build_table(nm.model, N);
        worst_H = std::max(worst_H, rel(std::exp(t.log_H()), bf.H));
        const auto ec = expected_cycle_counts(t, N);
        for (long j = 1; j <= N; ++j) worst_c = std::max(worst_c, rel(ec[j - 1], bf.expected_count(j)));
        const auto l1 = l1_pmf(t);
        const auto l1b = bf.l1_pmf();
        for (long l = 1; l <= N; ++l) worst_l1 = std::max(worst_l1, rel(l1[l - 1], l1b[l - 1]));
        for (long a = 1; a <= N; ++a) {
            if (a == N) {
                worst_joint = std::max(worst_joint, rel(joint_l_pmf(t, {a}).value, bf.joint_l12(a, 0)));
                continue;
            }
            for (long b = 1; a + b <= N; ++b)
                worst_joint = std::max(worst_joint, rel(joint_l_pmf(t, {a, b}).value, bf.joint_l12(a, b)));
        }
        const auto tn = tn_pmf(nm.model, N);
        const auto tnb = bf.tn_pmf();
        for (long k = 1; k <= N; ++k) worst_tn = std::max(worst_tn, rel(tn.pmf(k), tnb[k]));
    }
    const std::string p = "brute_force/" + nm.name + "/";
    out.push_back(compare(p + "H_N", worst_H, 0.0, 1e-10));
    out.push_back(compare(p + "E[C_j]", worst_c, 0.0, 1e-10));
    out.push_back(compare(p + "L1_pmf", worst_l1, 0.0, 1e-10));
    out.push_back(compare(p + "joint_L1_L2", worst_joint, 0.0, 1e-10));
    out.push_back(compare(p + "T_N_pmf", worst_tn, 0.0, 1e-10));
    for (size_t i = out.size() - 5; i < out.size(); ++i) {
        // value holds the worst relative deviation itself
        out[i].rel_error = out[i].value;
        out[i].pass = out[i].value <= out[i].tolerance;
    }
}

}  // namespace

SuiteReport run_suite(const std::string& suite) {
    if (suite != "quick" && suite != "full") throw DomainError("run_suite: suite must be quick or full");
    SuiteReport rep;
    rep.suite = suite;
    auto& R = rep.results;
    const long n_hi = suite == "full" ? kBruteForceMax : 7;
    for (const auto& nm : reference_models()) brute_force_checks(nm, n_hi, R);

    const auto cm = constant_model();
    const double lb = std::lgamma(201.0) - 2.0 * std::lgamma(101.0);
    R.push_back(compare("partition/constant/N=100", log_partition(cm, 100), lb, 1e-10));
    R.push_back(compare("regime/constant/r_star", classify(cm).r_star, 0.5, 1e-12));
    R.push_back(compare("regime/supercritical/nu_tilde", classify(supercritical_model()).nu_tilde, 0.5, 1e-12));
    R.push_back(compare("regime/supercritical/rho_crit", critical_density(WeightModel(SeqRule::constant(1.0), SeqRule::polylog(1.0, 2.0))),
                        std::numbers::pi * std::numbers::pi / 6.0, 1e-10));
    R.push_back(compare("specialfn/J_0(1)", specialfn::j_integral(0.0, 1.0).imag(), std::numbers::pi, 1e-10));
    R.push_back(compare("specialfn/Li_2(1)", specialfn::polylog(2.0, 1.0), std::numbers::pi * std::numbers::pi / 6.0, 1e-12));
    R.push_back(compare("specialfn/Li_1.5(0.99) dual", specialfn::polylog(1.5, 0.99), specialfn::polylog_series(1.5, 0.99), 1e-8));
    R.push_back(compare("spatial/poisson_identity/L=10,j=50", spatial::gaussian_lattice_direct(10.0, 50.0),
                        spatial::gaussian_lattice_dual(10.0, 50.0), 1e-10));

    if (suite == "full") {
        const auto rows = convergence_study(cm, Quantity::PartitionFunction, {512, 1024, 2048, 4096});
        R.push_back(compare("convergence/constant/H_N ratio N=4096", rows.back().ratio, 1.0, 0.01));
        const auto fc = convergence_study(cm, Quantity::FirstCycleCount, {4096});
        R.push_back(compare("convergence/constant/E[C_1]/N N=4096", fc.back().exact, 0.5, 1e-3));
        McOptions opt;
        opt.n_samples = 100000;
        opt.seed = 12345;
        const auto t2 = build_table(cm, 2);
        const auto mc = run_monte_carlo(t2, opt);
        const double se = std::sqrt(mc.c_var[0] / opt.n_samples);
        auto r = compare("monte_carlo/constant/N=2 mean C_1", mc.c_mean[0], 1.5, 0.0);
        r.tolerance = 4.0 * se / 1.5;
        r.pass = r.rel_error <= r.tolerance;
        R.push_back(r);
    }
    return rep;
}

}  // namespace permcycles::validation
