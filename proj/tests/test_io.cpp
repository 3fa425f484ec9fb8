#include <doctest.h>

#include "support.hpp"
#include "tsv/errors.hpp"
#include "tsv/io.hpp"

using namespace tsv;

TEST_CASE("polynomial grammar accepts '*' and juxtaposition") {
    CHECK(parse_poly("3/2 s t^2") == parse_poly("3/2 * s * t^2"));
    CHECK(parse_poly("lam^-2 * a * v") == parse_poly("lam^-2 a v"));
    CHECK(parse_poly("- s + 2") == parse_poly("2 - s"));
}

TEST_CASE("parse rejects malformed input") {
    CHECK_THROWS_AS(parse_poly(""), ParseError);
    CHECK_THROWS_AS(parse_poly("s +"), ParseError);
    CHECK_THROWS_AS(parse_poly("x^2"), ParseError);
    CHECK_THROWS_AS(parse_poly("s^-1"), ParseError);
    CHECK_THROWS_AS(parse_poly("1/0"), ParseError);
    CHECK_THROWS_AS(parse_scalar("s + 1"), ParseError);
}

TEST_CASE("print-parse round trip on random polynomials") {
    testing::Sampler sampler(0x10);
    for (int trial = 0; trial < 40; ++trial) {
        CarrierPoly f = sampler.rand_poly();
        // coefficients with symbols too
        f += CarrierPoly::monomial({1, 0, 2}, sampler.rand_scalar());
        CHECK(parse_poly(f.str()) == f);
    }
}

TEST_CASE("generator literals") {
    CHECK(parse_generator("L[3]") == Generator{Family::L, 3});
    CHECK(parse_generator("Y[-12]") == Generator{Family::Y, -12});
    CHECK(parse_generator(" M[0] ") == Generator{Family::M, 0});
    CHECK_THROWS_AS(parse_generator("Q[1]"), ParseError);
    CHECK_THROWS_AS(parse_generator("L[1] extra"), ParseError);
}

TEST_CASE("params JSON round trip") {
    testing::Sampler sampler(0x11);
    for (int trial = 0; trial < 10; ++trial) {
        PhiParams p = sampler.sample_params(trial % 2 == 0, trial % 2 == 1, 3);
        PhiParams back = params_from_json(params_to_json(p));
        CHECK(back == p);
    }
}

TEST_CASE("params JSON validates invariants") {
    std::string bad_tau = R"({"schema":1,"lambda":"sym","a":"0","b":"0","q":0,
                              "tau":[[[0,"1"]]],"gamma":{}})";
    CHECK_THROWS_AS(params_from_json(bad_tau), InvalidParams);
    std::string bad_schema = R"({"lambda":"sym","a":"0","b":"0","q":0,"tau":[[]]})";
    CHECK_THROWS_AS(params_from_json(bad_schema), ParseError);
    std::string bad_lambda = R"({"schema":1,"lambda":"0","a":"0","b":"0","q":0,"tau":[[]]})";
    CHECK_THROWS_AS(params_from_json(bad_lambda), InvalidParams);
}

TEST_CASE("window JSON round trip") {
    testing::Sampler sampler(0x12);
    PhiParams p = sampler.sample_params(true, true, 2);
    ActionWindow window = export_window(p, 2);
    ActionWindow back = window_from_json(window_to_json(window));
    CHECK(back == window);
}

TEST_CASE("window JSON requires the anchor") {
    std::string doc = R"({"schema":1,"N":0,"entries":{"0":{"g":"s + t","a":"t","p":"v"}}})";
    CHECK_THROWS_AS(window_from_json(doc), MalformedWindow);
}

TEST_CASE("serialization is deterministic") {
    testing::Sampler sampler(0x13);
    PhiParams p = sampler.sample_params(true, true, 3);
    CHECK(params_to_json(p) == params_to_json(p));
    ActionWindow w = export_window(p, 2);
    CHECK(window_to_json(w) == window_to_json(w));
}
