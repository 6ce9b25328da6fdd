#include <cmath>

#include "doctest.h"
#include "permcycles/exact_stats.hpp"
#include "permcycles/validation.hpp"

using namespace permcycles;
using doctest::Approx;

namespace {
WeightModel c11() { return WeightModel(SeqRule::constant(1.0), SeqRule::constant(1.0)); }
}

TEST_CASE("factorial moments") {
    const auto t = build_table(c11(), 2);
    CHECK(factorial_moment(t, {{1, 1}}).value == Approx(1.5).epsilon(1e-14));
    CHECK(factorial_moment(t, {{2, 1}}).value == Approx(0.25).epsilon(1e-14));
    const auto out = factorial_moment(t, {{1, 3}});
    CHECK(out.out_of_support);
    CHECK(out.value == 0.0);
    CHECK(std::isinf(out.log_value));
    // (C_1)_2 at N = 2: identity only, 2 * 1 * 9/12
    CHECK(factorial_moment(t, {{1, 2}}).value == Approx(1.5).epsilon(1e-14));
}

TEST_CASE("expected cycle counts") {
    const auto t = build_table(c11(), 3);
    const auto ec = expected_cycle_counts(t, 3);
    CHECK(ec[0] == Approx(2.0).epsilon(1e-14));
    CHECK(ec[2] == Approx((4.0 / 3.0) / 20.0).epsilon(1e-14));
    CHECK(ec[0] + 2 * ec[1] + 3 * ec[2] == Approx(3.0).epsilon(1e-14));
    for (const auto& nm : validation::reference_models()) {
        const long N = 200;
        const auto tt = build_table(nm.model, N);
        const auto e = expected_cycle_counts(tt, N);
        double s = 0.0;
        for (long j = 1; j <= N; ++j) {
            s += j * e[j - 1];
            if (j <= 5) CHECK(factorial_moment(tt, {{j, 1}}).value == Approx(e[j - 1]).epsilon(1e-14));
        }
        CHECK(s == Approx(double(N)).epsilon(1e-10));
    }
}

TEST_CASE("first cycle length") {
    const auto p2 = l1_pmf(build_table(c11(), 2));
    CHECK(p2[0] == Approx(0.75).epsilon(1e-14));
    CHECK(p2[1] == Approx(0.25).epsilon(1e-14));
    CHECK(l1_pmf(build_table(c11(), 1))[0] == Approx(1.0));
    const auto p3 = l1_pmf(build_table(c11(), 3));
    CHECK(p3[0] == Approx(4.0 * 10 / 60).epsilon(1e-14));
    CHECK(p3[1] == Approx(4.0 * 4 / 60).epsilon(1e-14));
    CHECK(p3[2] == Approx(4.0 / 60).epsilon(1e-14));
    for (const auto& nm : validation::reference_models()) {
        double s = 0.0;
        for (double v : l1_pmf(build_table(nm.model, 500))) s += v;
        CHECK(s == Approx(1.0).epsilon(1e-10));
    }
}

TEST_CASE("joint law of the first cycles") {
    const auto t = build_table(c11(), 2);
    CHECK(joint_l_pmf(t, {1, 1}).value == Approx(0.75).epsilon(1e-14));
    CHECK(joint_l_pmf(t, {2}).value == Approx(0.25).epsilon(1e-14));
    const auto out = joint_l_pmf(t, {2, 1});
    CHECK(out.out_of_support);
    CHECK(out.value == 0.0);

    for (const auto& nm : validation::reference_models()) {
        const long N = 64;
        const auto tt = build_table(nm.model, N);
        const auto l1 = l1_pmf(tt);
        for (long a = 1; a <= N; ++a) {
            double m = a == N ? joint_l_pmf(tt, {a}).value : 0.0;
            for (long b = 1; a + b <= N; ++b) m += joint_l_pmf(tt, {a, b}).value;
            CHECK(m == Approx(l1[a - 1]).epsilon(1e-10));
        }
        CHECK(joint_l_pmf(tt, {N}).value == Approx(l1[N - 1]).epsilon(1e-14));
    }
}

TEST_CASE("long fraction") {
    const auto t = build_table(c11(), 3);
    CHECK(expected_long_fraction(t, 0) == 1.0);
    CHECK(expected_long_fraction(t, 1) == Approx(1.0 / 3.0).epsilon(1e-14));
    CHECK(expected_long_fraction(t, 2) == Approx(expected_cycle_counts(t, 3)[2]).epsilon(1e-13));
}
