// Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <functional>
#include <map>
#include <numbers>
#include <string>
#include <thread>
#include <vector>

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/special_functions/expint.hpp>
#include <boost/multiprecision/cpp_int.hpp>

#include "permcycles/asymptotics.hpp"
#include "permcycles/exact_stats.hpp"
#include "permcycles/limitlaws.hpp"
#include "permcycles/sampler.hpp"
#include "permcycles/series.hpp"
#include "permcycles/spatial.hpp"
#include "permcycles/specialfn.hpp"
#include "permcycles/stats.hpp"
#include "permcycles/validation.hpp"

using namespace permcycles;
using boost::multiprecision::cpp_int;

namespace {

constexpr double kPi = std::numbers::pi;

struct Outcome {
    bool pass = true;
    std::string detail;
};

class Timer {
public:
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    }

private:
    std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

std::string fmt(const char* f, auto... args) {
    char buf[512];
    std::snprintf(buf, sizeof buf, f, args...);
    return buf;
}

unsigned workers() { return std::max(1u, std::thread::hardware_concurrency()); }

McSummary simulate(const WeightModel& m, long n, long samples, std::uint64_t seed) {
    McOptions o;
    o.n_samples = samples;
    o.seed = seed;
    o.threads = workers();
    o.top_k = 2;
    return run_monte_carlo(m, n, o);
}

double log_big(const cpp_int& x) {
    const long bits = static_cast<long>(boost::multiprecision::msb(x)) + 1;
    const long shift = std::max(0L, bits - 60);
    const double head = static_cast<double>(static_cast<unsigned long long>(x >> shift));
    return std::log(head) + static_cast<double>(shift) * std::log(2.0);
}

Outcome c1_partition_closed_form() {
    Timer t;
    const auto m = validation::constant_model();
    cpp_int binom = 1;  // C(2N, N)
    double worst = 0.0;
    for (long N = 1; N <= 1000; ++N) {
        binom = binom * (2 * N) * (2 * N - 1) / (N * N);
        const double oracle = log_big(binom);
        worst = std::max(worst, std::abs(log_partition(m, N) - oracle) / oracle);
    }
    const double secs = t.seconds();
    return {worst <= 1e-9 && secs < 5.0, fmt("worst rel %.3g, %.2f s", worst, secs)};
}

Outcome c2_asymptotic_partition() {
    Timer t;
    const auto m = validation::constant_model();
    const auto rep = classify(m);
    double prev = 1e300, last = 0.0;
    bool mono = true;
    std::string trail;
    for (long N : {512L, 1024L, 2048L, 4096L, 5000L}) {
        const double dev = std::abs(std::exp(asymptotic_log_HN(m, rep, N).log_value - log_partition(m, N)) - 1.0);
        mono = mono && dev < prev;
        prev = last = dev;
        trail += fmt(" %.2e", dev);
    }
    const double secs = t.seconds();
    return {mono && last < 0.01 && secs < 60.0, fmt("|ratio-1|:%s, %.2f s", trail.c_str(), secs)};
}

Outcome c3_brute_force() {
    const auto models = validation::reference_models();
    auto rel = [](double a, double b) { return a == b ? 0.0 : std::abs(a - b) / std::max(std::abs(b), 1e-300); };
    double worst = 0.0;
    for (const auto& nm : models) {
        for (long N = 1; N <= 9; ++N) {
            const auto bf = validation::brute_force_oracle(nm.model, N);
            const auto t = build_table(nm.model, N);
            worst = std::max(worst, rel(std::exp(t.log_H()), bf.H));
            const auto ec = expected_cycle_counts(t, N);
            const auto l1 = l1_pmf(t);
            const auto l1b = bf.l1_pmf();
            for (long j = 1; j <= N; ++j) {
                worst = std::max(worst, rel(ec[j - 1], bf.expected_count(j)));
                worst = std::max(worst, rel(l1[j - 1], l1b[j - 1]));
            }
            worst = std::max(worst, rel(joint_l_pmf(t, {N}).value, bf.joint_l12(N, 0)));
            for (long a = 1; a < N; ++a)
                for (long b = 1; a + b <= N; ++b) worst = std::max(worst, rel(joint_l_pmf(t, {a, b}).value, bf.joint_l12(a, b)));
            const auto tn = tn_pmf(nm.model, N);
            const auto tnb = bf.tn_pmf();
            for (long k = 0; k <= N; ++k) worst = std::max(worst, rel(tn.pmf(k), tnb[k]));
        }
    }
    return {worst <= 1e-10, fmt("%zu models, N<=9, worst rel %.3g", models.size(), worst)};
}

Outcome c4_sampler_law() {
    const long N = 6, n = 1000000;
    const auto m = validation::supercritical_model();
    const auto t = build_table(m, N);
    double step_dev = 0.0;
    for (long k = 1; k <= N; ++k) step_dev = std::max(step_dev, std::abs(step_pmf_total(t, k) - 1.0));

    std::map<std::pair<long, long>, std::size_t> cell;
    std::vector<double> prob;
    auto add = [&](long a, long b, double p) {
        cell[{a, b}] = prob.size();
        prob.push_back(p);
    };
    add(N, 0, joint_l_pmf(t, {N}).value);
    for (long a = 1; a < N; ++a)
        for (long b = 1; a + b <= N; ++b) add(a, b, joint_l_pmf(t, {a, b}).value);

    McOptions o;
    o.n_samples = n;
    o.seed = 4;
    o.threads = workers();
    const auto s = run_monte_carlo(t, o);
    std::vector<double> obs(prob.size(), 0.0);
    for (const auto& ab : s.first_two) obs[cell.at(ab)] += 1.0;
    const auto chi = stats::chi_square_test(obs, prob, static_cast<double>(n));
    return {chi.p_value > 0.001 && step_dev <= 1e-12,
            fmt("chi2 %.2f on %.0f dof, p %.3f; step pmf dev %.2e", chi.statistic, chi.dof, chi.p_value, step_dev)};
}

Outcome c5_cycle_counts() {
    const long N = 2000, n = 20000;
    const auto m = validation::constant_model();
    const auto s = simulate(m, N, n, 5);
    const double r1 = 0.5;
    bool ok = true;
    std::string d;
    for (long j = 1; j <= 3; ++j) {
        const double target = m.kappa(j) * std::pow(r1, double(j)) / double(j);
        const double mean = s.c_mean[j - 1] / N;
        const double se = std::sqrt(s.c_var[j - 1] / n) / N;
        const double z = (mean - target) / se;
        ok = ok && std::abs(z) < 4.0;
        d += fmt(" j=%ld z=%.2f", j, z);
    }
    return {ok, "C_j/N vs kappa_j r^j/j:" + d};
}

std::vector<double> standardized_tn(const McSummary& s, long N, double center, double var) {
    std::vector<double> z;
    z.reserve(s.t_values.size());
    for (long t : s.t_values) z.push_back((static_cast<double>(t) - N * center) / std::sqrt(N * var));
    return z;
}

Outcome c6_clt() {
    const long N = 4096;
    const auto m = validation::constant_model();
    const auto s = simulate(m, N, 20000, 6);
    const auto z = standardized_tn(s, N, std::log(2.0), std::log(2.0) - 0.5);
    const double mu = stats::mean(z), var = stats::variance(z);
    const double ks = stats::ks_one_sample(z, stats::normal_cdf);
    return {std::abs(mu) < 0.05 && std::abs(var - 1.0) < 0.1 && ks < 0.03,
            fmt("mean %.4f, var %.4f, KS %.4f", mu, var, ks)};
}

Outcome c7_skew_limit() {
    const long N = 4096;
    const auto m = validation::critical_model();
    const TnLaw law = tn_limit_params(m);
    if (law.kind != TnLawKind::SkewCritical) return {false, "law is " + to_string(law.kind)};
    const double oracle_mean = -std::sqrt(2.0 / (classify(m).g_kappa_at * classify(m).b2_at - 1.0)) * std::tgamma(1.0) /
                               std::tgamma(0.5);
    const auto s = simulate(m, N, 20000, 7);
    const auto z = standardized_tn(s, N, law.center_slope, law.variance_slope);
    std::vector<double> lim(100000);
    Rng rng = make_stream(7, 1);
    for (auto& v : lim) v = sample_tn_limit(law, rng);
    const double mu = stats::mean(z);
    const double ks = stats::ks_two_sample(z, lim);
    const bool ok = mu < 0.0 && std::abs(mu - law.limit_mean) <= 0.15 &&
                    std::abs(law.limit_mean - oracle_mean) <= 1e-12 * std::abs(oracle_mean) && ks < 0.08;
    return {ok, fmt("mean %.4f vs limit %.4f, KS %.4f", mu, law.limit_mean, ks)};
}

Outcome c8_poisson_dirichlet() {
    const long N = 10000;
    const auto m = validation::supercritical_model();
    const double nu = classify(m).nu_tilde;
    const auto s = simulate(m, N, 10000, 8);
    std::vector<double> x;
    for (const auto& top : s.top_lengths) x.push_back(static_cast<double>(top[0]) / (N * nu));
    std::vector<double> pd(100000);
    Rng rng = make_stream(8, 1);
    for (auto& v : pd) v = sample_pd(1.0, kDefaultTerms, rng)[0];
    boost::math::quadrature::exp_sinh<double> q;
    const double gd = q.integrate([](double t) { return std::exp(-t - boost::math::expint(1, t)); });
    const double ks = stats::ks_two_sample(x, pd);
    const double mu = stats::mean(x), mu_pd = stats::mean(pd);
    const double se_pd = std::sqrt(stats::variance(pd) / pd.size());
    const bool ok = ks < 0.05 && std::abs(mu - gd) < 0.02 && std::abs(mu_pd - gd) < 4.0 * se_pd;
    return {ok, fmt("KS %.4f, mean %.4f vs %.4f (PD sampler %.4f)", ks, mu, gd, mu_pd)};
}

Outcome c9_giant_cycle() {
    const long N = 10000;
    const auto m = validation::giant_cycle_model();
    const double nu = classify(m).nu_tilde;
    const auto s = simulate(m, N, 1000, 9);
    std::vector<double> a, b;
    for (const auto& top : s.top_lengths) {
        a.push_back(static_cast<double>(top[0]) / (N * nu));
        b.push_back(static_cast<double>(top[1]) / (N * nu));
    }
    const double ma = stats::median(a), mb = stats::median(b);
    return {ma > 0.9 && mb < 0.1, fmt("median L(1)/(N nu) %.4f, L(2)/(N nu) %.4f", ma, mb)};
}

Outcome c10_special_functions() {
    Timer t;
    using specialfn::j_integral;
    double worst = 0.0;
    auto track = [&](std::complex<double> v, std::complex<double> ref) {
        worst = std::max(worst, std::abs(v - ref) / std::max(1.0, std::abs(ref)));
    };
    bool ok = true;
    track(j_integral(0.0, 1.0), {0.0, kPi});
    track(j_integral(0.0, -1.0), 0.0);
    for (double xi : {-3.0, -1.0, 0.0, 2.0, 4.0}) track(j_integral(xi, 0.0), {0.0, std::sqrt(kPi) * std::exp(-xi * xi / 4)});
    for (double sigma : {-0.5, 0.0, 0.5, 1.0, 2.0}) track(specialfn::j_tilde(sigma, 2.0), j_integral(0.0, sigma));
    ok = worst <= 1e-10;

    double quad = 0.0;
    for (double xi : {-2.0, 0.0, 2.0})
        for (double sigma : {-1.5, 0.0, 0.5, 1.0, 2.7}) {
            const auto cf = j_integral(xi, sigma);
            for (double phi : {0.9, 1.2, 1.5})
                quad = std::max(quad, std::abs(specialfn::j_integral_quadrature(xi, sigma, phi, 0.5) - cf) /
                                          std::max(1.0, std::abs(cf)));
        }
    const double direct = specialfn::polylog_series(1.5, 0.99);
    const double expanded = specialfn::evaluate(specialfn::polylog_singular_expansion(1.5), 0.99);
    const double li = std::abs(direct - expanded) / std::abs(direct);
    const double secs = t.seconds();
    ok = ok && quad <= 1e-8 && li <= 1e-8 && secs < 10.0;
    return {ok, fmt("identities %.2e, quadrature %.2e, Li dual %.2e, %.2f s", worst, quad, li, secs)};
}

Outcome c11_stick_breaking() {
    bool ok = true;
    double ident = 0.0;
    Rng rng = make_stream(11, 0);
    for (int i = 0; i < 2000; ++i) {
        const auto p = sample_stick(0.4, 1.3, 64, rng);
        double sum = 0.0, eta = 1.0;
        for (std::size_t n = 0; n < p.X.size(); ++n) {
            sum += p.X[n];
            ident = std::max(ident, std::abs(p.X[n] - eta * p.D[n]));
            eta = p.eta[n];
            ident = std::max(ident, std::abs(sum + eta - 1.0));
        }
    }
    ok = ident <= 1e-14;

    double zmax = 0.0, ksmax = 0.0;
    for (auto [nu, th] : {std::pair{0.3, 0.5}, std::pair{0.7, 2.0}}) {
        Rng r = make_stream(11, nu < 0.5 ? 1 : 2);
        std::vector<double> a, b, c;
        for (int i = 0; i < 1000000; ++i) {
            const auto p = sample_stick(nu, th, 2, r);
            const double x1 = p.X[0], x2 = p.X[1];
            a.push_back(x1 * x1);
            b.push_back(x1 * x2 * x2 * (1 - nu * x1));
            c.push_back(x2 * (1 - nu * x1));
        }
        const double exp_a = stick_moments(nu, th, 2, 0), exp_b = stick_moments(nu, th, 1, 2), exp_c = stick_moments(nu, th, 0, 1);
        for (auto [v, e] : {std::pair{&a, exp_a}, std::pair{&b, exp_b}, std::pair{&c, exp_c}}) {
            const double se = std::sqrt(stats::variance(*v) / v->size());
            zmax = std::max(zmax, std::abs(stats::mean(*v) - e) / se);
        }
        std::vector<double> st, pd;
        for (int i = 0; i < 50000; ++i) {
            st.push_back(ordered(sample_stick(nu, th, kDefaultTerms, r).X)[0]);
            pd.push_back(sample_pd(th, kDefaultTerms, r)[0]);
        }
        ksmax = std::max(ksmax, stats::ks_two_sample(st, pd));
    }
    ok = ok && zmax < 4.0 && ksmax < 0.02;
    return {ok, fmt("identity dev %.2e, moment max |z| %.2f, order-statistics KS %.4f", ident, zmax, ksmax)};
}

Outcome c12_spatial() {
    using namespace spatial;
    double poisson = 0.0;
    for (double L = 1.0; L <= 50.0; L += 1.0)
        for (double j = 1.0; j <= 100.0; j += 1.0) {
            const double a = gaussian_lattice_direct(L, j), b = gaussian_lattice_dual(L, j);
            poisson = std::max(poisson, std::abs(a - b) / b);
        }
    std::vector<double> lx, ly;
    for (double L : {50.0, 100.0, 200.0, 400.0}) {
        lx.push_back(std::log(L));
        ly.push_back(std::log(delta_correction({Family::Stable, 3, 1.0, L}, 4.0)));
    }
    const double mx = stats::mean(lx), my = stats::mean(ly);
    double sxy = 0.0, sxx = 0.0;
    for (std::size_t i = 0; i < lx.size(); ++i) {
        sxy += (lx[i] - mx) * (ly[i] - my);
        sxx += (lx[i] - mx) * (lx[i] - mx);
    }
    const double slope = sxy / sxx;
    const bool tail = check_universal_tail({Family::Gaussian, 3, 2.0, 1.0}, {20.0, 40.0, 80.0}, 2.0).decreasing &&
                      check_universal_tail({Family::Stable, 2, 1.0, 1.0}, {20.0, 40.0, 80.0}, 1.0).decreasing;
    return {poisson <= 1e-10 && std::abs(slope - 1.0) <= 0.1 && tail,
            fmt("Poisson summation %.2e, stable slope %.4f, universal tail %s", poisson, slope, tail ? "yes" : "no")};
}

Outcome c13_density() {
    const double nu = classify(validation::supercritical_model()).nu_tilde;
    const WeightModel base(SeqRule::constant(1.0), SeqRule::polylog(1.0, 2.0), 1.0);
    const double rc = critical_density(base);
    const double z2 = kPi * kPi / 6.0;
    bool flip = true;
    for (int k = 1; k <= 8; ++k) {
        const double e = std::pow(10.0, -k);
        flip = flip && classify(base.with_rho(rc * (1.0 - e))).regime == Regime::Subcritical;
        flip = flip && classify(base.with_rho(rc * (1.0 + e))).regime == Regime::Supercritical;
    }
    flip = flip && classify(base.with_rho(rc)).regime == Regime::Critical;
    const bool ok = std::abs(nu - 0.5) <= 1e-12 && std::abs(rc - z2) <= 1e-10 * z2 && flip;
    return {ok, fmt("nu_tilde %.15f, rho_c %.15f, flip %s", nu, rc, flip ? "yes" : "no")};
}

}  // namespace

int main() {
    const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
        {"exact partition vs binomial oracle", c1_partition_closed_form},
        {"asymptotic partition function", c2_asymptotic_partition},
        {"brute-force equivalence", c3_brute_force},
        {"sampler law", c4_sampler_law},
        {"cycle counts", c5_cycle_counts},
        {"number of cycles CLT", c6_clt},
        {"skew critical limit", c7_skew_limit},
        {"Poisson-Dirichlet limit", c8_poisson_dirichlet},
        {"giant cycle", c9_giant_cycle},
        {"special functions", c10_special_functions},
        {"stick-breaking", c11_stick_breaking},
        {"spatial bridge", c12_spatial},
        {"long fraction and critical density", c13_density},
    };
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception& e) {
            o = {false, std::string("threw: ") + e.what()};
        }
        if (!o.pass) ++failed;
        std::printf("%s %2zu %s: %s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first, o.detail.c_str());
        std::fflush(stdout);
    }
    return failed == 0 ? 0 : 1;
}
