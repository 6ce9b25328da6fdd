#include <algorithm>
#include <cmath>
#include <vector>

#include "doctest.h"
#include "permcycles/error.hpp"
#include "permcycles/limitlaws.hpp"
#include "permcycles/stats.hpp"

using namespace permcycles;
using doctest::Approx;

namespace {

struct Mc {
    double mean;
    double se;
};

Mc summarize(const std::vector<double>& v) {
    return {stats::mean(v), std::sqrt(stats::variance(v) / v.size())};
}

}  // namespace

TEST_CASE("stick breaking arithmetic") {
    const auto y = gem_from_breaks({0.3, 0.5});
    CHECK(y[0] == Approx(0.3));
    CHECK(y[1] == Approx(0.35));
    CHECK(break_probability(1.0, 0.37) == 1.0);
    CHECK(break_probability(0.5, 1.0) == 0.5);
}

TEST_CASE("GEM samples") {
    Rng rng = make_stream(1, 0);
    std::vector<double> first;
    int covered = 0;
    const int n = 20000;
    for (int i = 0; i < n; ++i) {
        const auto y = sample_gem(1.0, 200, rng);
        first.push_back(y[0]);
        double s = 0.0;
        for (double v : y) s += v;
        CHECK(s < 1.0 + 1e-12);
        covered += s > 1.0 - 1e-6;
    }
    const auto m = summarize(first);
    CHECK(std::abs(m.mean - 0.5) < 3 * m.se);
    CHECK(covered >= 0.99 * n);
}

TEST_CASE("Poisson-Dirichlet samples") {
    Rng rng = make_stream(2, 0);
    std::vector<double> top, small;
    for (int i = 0; i < 20000; ++i) {
        const auto x = sample_pd(1.0, kDefaultTerms, rng);
        CHECK(std::is_sorted(x.begin(), x.end(), std::greater<double>()));
        top.push_back(x[0]);
    }
    CHECK(stats::mean(top) == Approx(0.6243299885).epsilon(0.01 / 0.6243));
    for (int i = 0; i < 2000; ++i) small.push_back(sample_pd(0.05, kDefaultTerms, rng)[0]);
    CHECK(stats::median(small) > 0.95);
}

TEST_CASE("delayed stick breaking") {
    // nu = 1 replays GEM on the same stream
    Rng a = make_stream(3, 7), b = make_stream(3, 7);
    CHECK(sample_stick(1.0, 1.7, 100, a).X == sample_gem(1.7, 100, b));

    Rng rng = make_stream(4, 0);
    int first_break = 0;
    const int n = 40000;
    for (int i = 0; i < n; ++i) {
        const auto p = sample_stick(0.3, 0.5, 64, rng);
        first_break += p.xi[0];
        double s = 0.0;
        double prev_eta = 1.0;
        for (size_t k = 0; k < p.X.size(); ++k) {
            s += p.X[k];
            CHECK(std::abs(s + p.eta[k] - 1.0) < 1e-14);
            CHECK(p.eta[k] <= prev_eta);
            CHECK(p.eta[k] > 0.0);
            prev_eta = p.eta[k];
        }
    }
    const double se = std::sqrt(0.3 * 0.7 / n);
    CHECK(std::abs(first_break / double(n) - 0.3) < 4 * se);
    CHECK_THROWS_AS(sample_stick(0.0, 1.0, 10, rng), DomainError);
    CHECK_THROWS_AS(sample_stick(0.5, 0.0, 10, rng), DomainError);
}

TEST_CASE("stick moments") {
    CHECK(stick_moments(0.5, 1.0, 1, 0) == Approx(0.25).epsilon(1e-14));
    CHECK(stick_moments(0.5, 1.0, 1, 1) == Approx(0.25 / 24.0).epsilon(1e-14));
    CHECK_THROWS_AS(stick_moments(0.5, 1.0, 0, 0), DomainError);

    for (auto [nu, th] : {std::pair{0.3, 0.5}, std::pair{0.7, 2.0}}) {
        Rng rng = make_stream(5, 0);
        std::vector<double> m1, m2, m3;
        for (int i = 0; i < 100000; ++i) {
            const auto p = sample_stick(nu, th, 2, rng);
            const double x1 = p.X[0], x2 = p.X[1];
            m1.push_back(x1 * x1);
            m2.push_back(x1 * x2 * x2 * (1 - nu * x1));
            m3.push_back(x2 * (1 - nu * x1));
        }
        const auto a = summarize(m1), b = summarize(m2), c = summarize(m3);
        CAPTURE(nu);
        CHECK(std::abs(a.mean - stick_moments(nu, th, 2, 0)) < 4 * a.se);
        CHECK(std::abs(b.mean - stick_moments(nu, th, 1, 2)) < 4 * b.se);
        CHECK(std::abs(c.mean - stick_moments(nu, th, 0, 1)) < 4 * c.se);
    }
}

TEST_CASE("first stick piece law") {
    // Atom 1 - nu at zero, otherwise Beta(1, theta*).
    const double nu = 0.6, th = 1.5;
    Rng rng = make_stream(6, 0);
    const int n = 50000;
    std::vector<double> pos;
    for (int i = 0; i < n; ++i) {
        const double x = sample_stick(nu, th, 1, rng).X[0];
        if (x > 0.0) pos.push_back(x);
    }
    const double p0 = 1.0 - static_cast<double>(pos.size()) / n;
    CHECK(std::abs(p0 - (1.0 - nu)) < 4.0 * std::sqrt(nu * (1.0 - nu) / n));
    const double ks = stats::ks_one_sample(pos, [&](double x) {
        if (x <= 0.0) return 0.0;
        if (x >= 1.0) return 1.0;
        return 1.0 - std::pow(1.0 - x, th);
    });
    CHECK(ks < 0.02);
}

TEST_CASE("ordered stick pieces follow Poisson-Dirichlet") {
    Rng rng = make_stream(7, 0);
    std::vector<double> a, b;
    for (int i = 0; i < 20000; ++i) {
        a.push_back(ordered(sample_stick(0.5, 1.0, kDefaultTerms, rng).X)[0]);
        b.push_back(sample_pd(1.0, kDefaultTerms, rng)[0]);
    }
    CHECK(stats::ks_two_sample(a, b) < 0.02);
}

TEST_CASE("degenerate stick") {
    Rng rng = make_stream(8, 0);
    for (int i = 0; i < 10; ++i) {
        const auto p = sample_stick_degenerate(1.0, 5, rng);
        CHECK(p.X == std::vector<double>{1, 0, 0, 0, 0});
    }
    std::vector<double> tau;
    for (int i = 0; i < 20000; ++i) {
        const auto p = sample_stick_degenerate(0.25, 400, rng);
        int nonzero = 0;
        for (double x : p.X) {
            if (x != 0.0) {
                ++nonzero;
                CHECK(x == 1.0);
            }
        }
        CHECK(nonzero <= 1);
        REQUIRE(!p.tau.empty());
        tau.push_back(double(p.tau[0]));
        CHECK(ordered(p.X)[0] == (p.tau[0] <= 400 ? 1.0 : 0.0));
    }
    const auto m = summarize(tau);
    CHECK(std::abs(m.mean - 4.0) < 3 * m.se);
}
