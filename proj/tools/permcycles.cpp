// permcycles command-line front end.
//
// Exit codes: 0 ok, 2 parse or usage error, 3 domain error, 4 unsupported regime,
// 5 validation failure.

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "permcycles/asymptotics.hpp"
#include "permcycles/error.hpp"
#include "permcycles/exact_stats.hpp"
#include "permcycles/limitlaws.hpp"
#include "permcycles/model_io.hpp"
#include "permcycles/sampler.hpp"
#include "permcycles/series.hpp"
#include "permcycles/spatial.hpp"
#include "permcycles/validation.hpp"

using namespace permcycles;
using nlohmann::json;

namespace {

constexpr long kExactCap = 100000;

struct Opts {
    std::string model;
    long n = 0;
    std::string n_grid;
    long samples = 1000;
    std::uint64_t seed = 0;
    std::string out;
    std::string format = "csv";
    unsigned threads = 0;
    std::string what;
    long k = 1;
    std::string suite = "quick";
    bool dump_model = false;
    double theta = 1.0;
    double nu = 1.0;
    int n1 = 1;
    int n2 = 0;
    std::string family = "gaussian";
    int d = 1;
    double gamma = 2.0;
    std::vector<double> L{10.0};
    std::vector<double> j{1.0};
};

std::string num(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    std::string s(buf);
    if (s.find_first_of(".e") == std::string::npos) s += ".0";
    return s;
}

// Non-finite numbers become null plus a string flag, so the output stays valid JSON.
void put(json& j, const std::string& key, double v) {
    if (std::isfinite(v)) {
        j[key] = v;
        return;
    }
    j[key] = nullptr;
    j[key + "_flag"] = std::isnan(v) ? "nan" : (v > 0 ? "inf" : "-inf");
}

std::vector<long> parse_grid(const std::string& g) {
    long a = 0, b = 0, step = 0;
    char c1 = 0, c2 = 0;
    std::istringstream in(g);
    if (!(in >> a >> c1 >> b >> c2 >> step) || c1 != ':' || c2 != ':' || !in.eof())
        throw ParseError("--n-grid must look like a:b:step");
    if (a < 1 || b < a || step < 1) throw DomainError("--n-grid needs 1 <= a <= b and step >= 1");
    std::vector<long> out;
    for (long n = a; n <= b; n += step) out.push_back(n);
    return out;
}

std::vector<long> n_values(const Opts& o) {
    if (!o.n_grid.empty()) return parse_grid(o.n_grid);
    if (o.n < 1) throw DomainError("--n must be >= 1");
    return {o.n};
}

unsigned thread_count(const Opts& o) {
    if (o.threads > 0) return o.threads;
    if (const char* env = std::getenv("PERMCYCLES_THREADS")) {
        const long v = std::atol(env);
        if (v > 0) return static_cast<unsigned>(v);
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

class Output {
public:
    explicit Output(const std::string& path) {
        if (!path.empty()) {
            file_.open(path, std::ios::binary);
            if (!file_) throw DomainError("cannot open output file '" + path + "'");
        }
    }
    std::ostream& os() { return file_.is_open() ? file_ : std::cout; }

private:
    std::ofstream file_;
};

void write_json(const Opts& o, const json& j) {
    Output out(o.out);
    out.os() << j.dump(2) << '\n';
}

void cmd_exact(const Opts& o) {
    const WeightModel model = load_model(o.model);
    const auto ns = n_values(o);
    for (long n : ns)
        if (n > kExactCap) throw DomainError("exact: N exceeds the cap of " + std::to_string(kExactCap));
    const bool as_json = o.format == "json";
    Output out(o.out);
    auto& os = out.os();
    json doc = json::array();

    auto scalar = [&](const std::string& name, auto fn) {
        if (ns.size() == 1 && !as_json) {
            os << "quantity,value\n" << name << ',' << num(fn(ns[0])) << '\n';
            return;
        }
        if (!as_json) os << "n," << name << '\n';
        for (long n : ns) {
            const double v = fn(n);
            if (as_json) {
                json row{{"n", n}};
                put(row, name, v);
                doc.push_back(row);
            } else {
                os << n << ',' << num(v) << '\n';
            }
        }
    };
    auto series = [&](const std::string& idx, const std::string& col, auto fn) {
        if (ns.size() != 1) throw DomainError("exact: --what " + o.what + " takes a single --n");
        const std::vector<double> v = fn(ns[0]);
        const long offset = o.what == "tn-dist" ? 0 : 1;
        if (!as_json) os << idx << ',' << col << '\n';
        for (std::size_t i = 0; i < v.size(); ++i) {
            if (as_json) {
                json row{{idx, static_cast<long>(i) + offset}};
                put(row, col, v[i]);
                doc.push_back(row);
            } else {
                os << static_cast<long>(i) + offset << ',' << num(v[i]) << '\n';
            }
        }
    };

    if (o.what == "partition") {
        scalar("log_HN", [&](long n) { return log_partition(model, n); });
    } else if (o.what == "long-fraction") {
        if (o.k < 0) throw DomainError("exact: --k must be >= 0");
        scalar("long_fraction", [&](long n) { return expected_long_fraction(build_table(model, n), o.k); });
    } else if (o.what == "cycle-counts") {
        series("j", "expected_count", [&](long n) { return expected_cycle_counts(build_table(model, n), n); });
    } else if (o.what == "l1") {
        series("l", "probability", [&](long n) { return l1_pmf(build_table(model, n)); });
    } else if (o.what == "tn-dist") {
        series("k", "probability", [&](long n) {
            const auto d = tn_pmf(model, n);
            std::vector<double> p(n + 1);
            for (long k = 0; k <= n; ++k) p[k] = d.pmf(k);
            return p;
        });
    } else {
        throw ParseError("exact: --what must be partition, cycle-counts, l1, tn-dist or long-fraction");
    }
    if (as_json) os << doc.dump(2) << '\n';
}

void cmd_sample(const Opts& o) {
    const WeightModel model = load_model(o.model);
    if (o.n < 1 || o.n > kExactCap) throw DomainError("sample: --n must lie in 1.." + std::to_string(kExactCap));
    if (o.samples < 1) throw DomainError("sample: --samples must be >= 1");
    McOptions mo;
    mo.n_samples = o.samples;
    mo.seed = o.seed;
    mo.threads = thread_count(o);
    mo.keep_samples = o.format != "json";
    mo.top_k = 3;
    const McSummary s = run_monte_carlo(model, o.n, mo);

    const double N = static_cast<double>(o.n);
    json summary;
    summary["n"] = o.n;
    summary["samples"] = o.samples;
    summary["seed"] = o.seed;
    summary["sum_lengths_ok"] = s.sum_lengths_ok;
    double t_mean = 0.0;
    for (long t : s.t_values) t_mean += static_cast<double>(t);
    put(summary, "mean_num_cycles", t_mean / o.samples);
    json ordered = json::array();
    for (int r = 0; r < mo.top_k; ++r) {
        double m1 = 0.0, m2 = 0.0;
        for (const auto& top : s.top_lengths) {
            const double x = static_cast<double>(top[r]) / N;
            m1 += x;
            m2 += x * x;
        }
        json row{{"rank", r + 1}};
        put(row, "mean", m1 / o.samples);
        put(row, "second_moment", m2 / o.samples);
        ordered.push_back(row);
    }
    summary["ordered_length_fraction"] = ordered;
    json counts = json::array();
    for (long jj = 1; jj <= std::min<long>(o.n, 5); ++jj) {
        json row{{"j", jj}};
        put(row, "mean_count", s.c_mean[jj - 1]);
        put(row, "var_count", s.c_var[jj - 1]);
        counts.push_back(row);
    }
    summary["cycle_counts"] = counts;

    if (o.format == "json") {
        write_json(o, summary);
        return;
    }
    Output out(o.out);
    auto& os = out.os();
    os << "lengths\n";
    for (const auto& ct : s.samples) {
        for (std::size_t i = 0; i < ct.lengths.size(); ++i) os << (i ? " " : "") << ct.lengths[i];
        os << '\n';
    }
    std::cerr << summary.dump() << '\n';
}

json tn_law_json(const TnLaw& t) {
    json j{{"kind", to_string(t.kind)}};
    if (t.kind == TnLawKind::Unsupported) {
        j["reason"] = t.reason;
        return j;
    }
    put(j, "center_slope", t.center_slope);
    put(j, "variance_slope", t.variance_slope);
    put(j, "theta_star", t.theta_star);
    put(j, "skew_coeff", t.skew_coeff);
    put(j, "limit_mean", t.limit_mean);
    put(j, "limit_variance", t.limit_variance);
    return j;
}

void cmd_asymp(const Opts& o) {
    const WeightModel model = load_model(o.model);
    if (!o.n_grid.empty()) {
        const auto rows = validation::convergence_study(model, validation::Quantity::PartitionFunction, parse_grid(o.n_grid));
        Output out(o.out);
        out.os() << "n,exact_log_HN,asymptotic_log_HN,ratio\n";
        for (const auto& r : rows)
            out.os() << r.n_points << ',' << num(r.exact) << ',' << num(r.asymptotic) << ',' << num(r.ratio) << '\n';
        return;
    }
    const RegimeReport rep = classify(model);
    json j;
    j["regime"] = to_string(rep.regime);
    put(j, "radius", rep.radius);
    put(j, "r_star", rep.r_star);
    if (rep.r_1) put(j, "r_1", *rep.r_1);
    put(j, "g1_at_R", rep.g1_at_R);
    put(j, "b1", rep.b1_at);
    put(j, "b2", rep.b2_at);
    put(j, "g_kappa", rep.g_kappa_at);
    put(j, "nu_tilde", rep.nu_tilde);
    put(j, "rho_crit", rep.rho_crit);
    json hn{{"kind", to_string(rep.hn_law.kind)}};
    if (rep.hn_law.kind == HnLawKind::Unsupported) hn["reason"] = rep.hn_law.reason;
    for (const auto& [k, v] : rep.hn_law.constants) put(hn, k, v);
    j["hn_law"] = hn;
    j["tn_law"] = tn_law_json(rep.tn_law);
    if (o.n > 0) {
        j["n"] = o.n;
        put(j, "log_HN", asymptotic_log_HN(model, rep, o.n).log_value);
    }
    write_json(o, j);
}

void cmd_limitlaws(const Opts& o) {
    const std::string what = o.what.empty() ? "pd" : o.what;
    if (what == "moments") {
        Output out(o.out);
        out.os() << "quantity,value\n"
                 << "moment_" << o.n1 << '_' << o.n2 << ',' << num(stick_moments(o.nu, o.theta, o.n1, o.n2)) << '\n';
        return;
    }
    if (o.samples < 1) throw DomainError("limitlaws: --samples must be >= 1");
    const long terms = std::max<long>(o.k, 1);
    Output out(o.out);
    auto& os = out.os();
    os << "sample,index,value\n";
    for (long s = 0; s < o.samples; ++s) {
        Rng rng = make_stream(o.seed, static_cast<std::uint64_t>(s));
        std::vector<double> v;
        if (what == "gem") {
            v = sample_gem(o.theta, kDefaultTerms, rng);
        } else if (what == "pd") {
            v = sample_pd(o.theta, kDefaultTerms, rng);
        } else if (what == "stick") {
            v = sample_stick(o.nu, o.theta, kDefaultTerms, rng).X;
        } else if (what == "stick-ordered") {
            v = ordered(sample_stick(o.nu, o.theta, kDefaultTerms, rng).X);
        } else if (what == "degenerate") {
            v = sample_stick_degenerate(o.nu, kDefaultTerms, rng).X;
        } else {
            throw ParseError("limitlaws: --what must be gem, pd, stick, stick-ordered, degenerate or moments");
        }
        for (long i = 0; i < std::min<long>(terms, static_cast<long>(v.size())); ++i)
            os << s << ',' << i + 1 << ',' << num(v[i]) << '\n';
    }
}

void cmd_spatial(const Opts& o) {
    spatial::SpatialConfig cfg;
    if (o.family == "gaussian") {
        cfg.family = spatial::Family::Gaussian;
    } else if (o.family == "stable") {
        cfg.family = spatial::Family::Stable;
    } else {
        throw ParseError("spatial: --family must be gaussian or stable");
    }
    cfg.d = o.d;
    cfg.gamma = o.gamma;
    Output out(o.out);
    auto& os = out.os();
    os << "family,d,gamma,L,j,sum,integral_term,delta\n";
    for (double L : o.L) {
        cfg.L = L;
        spatial::validate(cfg);
        for (double jj : o.j) {
            const auto r = spatial::spatial_row(cfg, jj);
            os << spatial::to_string(r.family) << ',' << r.d << ',' << num(r.gamma) << ',' << num(r.L) << ','
               << num(r.j) << ',' << num(r.sum) << ',' << num(r.integral_term) << ',' << num(r.delta) << '\n';
        }
    }
}

int cmd_validate(const Opts& o) {
    const auto rep = validation::run_suite(o.suite);
    json j;
    j["suite"] = rep.suite;
    j["all_pass"] = rep.all_pass();
    json rs = json::array();
    for (const auto& r : rep.results) {
        json row{{"name", r.name}, {"pass", r.pass}};
        put(row, "value", r.value);
        put(row, "oracle", r.oracle);
        put(row, "rel_error", r.rel_error);
        put(row, "tolerance", r.tolerance);
        rs.push_back(row);
    }
    j["results"] = rs;
    write_json(o, j);
    return rep.all_pass() ? 0 : static_cast<int>(ExitCode::ValidationFail);
}

void add_model(CLI::App* sub, Opts& o) {
    sub->add_option("--model", o.model, "JSON model file")->required();
    sub->add_flag("--dump-model", o.dump_model, "Print the parsed model as canonical JSON and exit");
}

void add_output(CLI::App* sub, Opts& o) {
    sub->add_option("--out", o.out, "Output path (default stdout)");
    sub->add_option("--format", o.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Cycle statistics of random permutations with weights theta_j + N kappa_j"};
    app.require_subcommand(1);
    Opts o;

    auto* exact = app.add_subcommand("exact", "Exact finite-N statistics");
    add_model(exact, o);
    add_output(exact, o);
    exact->add_option("--n", o.n, "Number of points");
    exact->add_option("--n-grid", o.n_grid, "Grid a:b:step of N values");
    exact->add_option("--what", o.what, "partition, cycle-counts, l1, tn-dist or long-fraction")->required();
    exact->add_option("--k", o.k, "Cutoff K for long-fraction");

    auto* sample = app.add_subcommand("sample", "Exact sampling of cycle types");
    add_model(sample, o);
    add_output(sample, o);
    sample->add_option("--n", o.n, "Number of points")->required();
    sample->add_option("--samples", o.samples, "Number of samples");
    sample->add_option("--seed", o.seed, "Random seed")->required();
    sample->add_option("--threads", o.threads, "Worker threads (default PERMCYCLES_THREADS or all cores)");

    auto* asymp = app.add_subcommand("asymp", "Regime classification and asymptotics");
    add_model(asymp, o);
    add_output(asymp, o);
    asymp->add_option("--n", o.n, "Also evaluate the asymptotic log H_N at this N");
    asymp->add_option("--n-grid", o.n_grid, "Emit a convergence table over a:b:step instead");

    auto* limit = app.add_subcommand("limitlaws", "Stick-breaking and Poisson-Dirichlet samplers");
    add_output(limit, o);
    limit->add_option("--what", o.what, "gem, pd, stick, stick-ordered, degenerate or moments");
    limit->add_option("--theta", o.theta, "theta*");
    limit->add_option("--nu", o.nu, "nu~ in (0, 1]");
    limit->add_option("--samples", o.samples, "Number of paths");
    limit->add_option("--seed", o.seed, "Random seed");
    limit->add_option("--k", o.k, "Terms printed per path");
    limit->add_option("--n1", o.n1, "First moment order");
    limit->add_option("--n2", o.n2, "Second moment order");

    auto* spat = app.add_subcommand("spatial", "Lattice sums and their continuum corrections");
    add_output(spat, o);
    spat->add_option("--family", o.family, "gaussian or stable");
    spat->add_option("--d", o.d, "Dimension");
    spat->add_option("--gamma", o.gamma, "Stable index in (0, 2)");
    spat->add_option("--L", o.L, "Box sizes")->delimiter(',');
    spat->add_option("--j", o.j, "Cycle lengths")->delimiter(',');

    auto* valid = app.add_subcommand("validate", "Run the cross-validation suite");
    add_output(valid, o);
    valid->add_option("--suite", o.suite, "quick or full")->check(CLI::IsMember({"quick", "full"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : static_cast<int>(ExitCode::Parse);
    }

    try {
        if (o.dump_model) {
            Output out(o.out);
            out.os() << dump_model(load_model(o.model)) << '\n';
            return 0;
        }
        if (*exact) cmd_exact(o);
        if (*sample) cmd_sample(o);
        if (*asymp) cmd_asymp(o);
        if (*limit) cmd_limitlaws(o);
        if (*spat) cmd_spatial(o);
        if (*valid) return cmd_validate(o);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return static_cast<int>(e.code());
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return static_cast<int>(ExitCode::Domain);
    }
    return 0;
}
