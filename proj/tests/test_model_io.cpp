#include <string>

#include "doctest.h"
#include "permcycles/error.hpp"
#include "permcycles/model_io.hpp"

using namespace permcycles;

TEST_CASE("parsing model files") {
    const auto m = parse_model(R"({"theta":{"kind":"constant","c":1},"kappa":{"kind":"polylog","kstar":0.5,"s":2}})");
    CHECK(m.theta_rule() == SeqRule::constant(1.0));
    CHECK(m.kappa_base_rule() == SeqRule::polylog(0.5, 2.0));
    CHECK(m.rho() == 1.0);
    const auto p = parse_model(R"({"theta":{"kind":"power","c":1,"gamma0":0.5},"kappa":{"kind":"constant","kstar":2},"rho":3})");
    CHECK(p.theta_rule() == SeqRule::power(1.0, 0.5));
    CHECK(p.kappa(1) == 2.0 / 3.0);
}

TEST_CASE("malformed input reports its position") {
    try {
        parse_model("{\n  \"theta\": {,}\n}");
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(std::string(e.what()).find("line 2") != std::string::npos);
        CHECK(e.code() == ExitCode::Parse);
    }
    CHECK_THROWS_AS(parse_model(R"({"theta":{"kind":"constant","c":1}})"), ParseError);
    CHECK_THROWS_AS(parse_model(R"({"theta":{"kind":"spline"},"kappa":{"kind":"constant","c":1}})"), ParseError);
    CHECK_THROWS_AS(parse_model(R"({"theta":{"kind":"constant","c":"x"},"kappa":{"kind":"constant","c":1}})"), ParseError);
    CHECK_THROWS_AS(parse_model(R"({"theta":{"kind":"constant","c":-1},"kappa":{"kind":"constant","c":1}})"), DomainError);
    CHECK_THROWS_AS(load_model("/nonexistent/model.json"), ParseError);
}

TEST_CASE("dumped models parse back to the same model") {
    ProfileOverride u;
    u.radius = 1.5;
    u.theta_star = 0.25;
    u.gk_derivs_at_R = std::vector<double>{0.1, 0.2};
    const WeightModel models[] = {
        WeightModel(SeqRule::constant(1.0), SeqRule::constant(1.0)),
        WeightModel(SeqRule::power(0.3, 0.7), SeqRule::polylog(0.1 / 3.0, 2.5), 1.0 / 7.0),
        WeightModel(SeqRule::perturbed(1.0, 0.5, 0.25), SeqRule::perturbed(0.2, 2.5, 0.5)),
        WeightModel(SeqRule::from_table({0.1, 0.2, 1.0 / 3.0}), SeqRule::from_table({0.0, 0.5, 0.25}), 2.0, u),
    };
    for (const auto& m : models) {
        const std::string text = dump_model(m);
        CAPTURE(text);
        const auto back = parse_model(text);
        CHECK(back == m);
        CHECK(dump_model(back) == text);
    }
}
