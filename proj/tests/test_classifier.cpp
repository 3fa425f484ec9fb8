#include <doctest.h>

#include "support.hpp"
#include "tsv/classifier.hpp"
#include "tsv/io.hpp"

using namespace tsv;

namespace {

PhiParams law_params(testing::Sampler& sampler, bool symbolic_lambda, bool symbolic_ab) {
    // gamma support within the window radius used below (3)
    return sampler.sample_params(symbolic_lambda, symbolic_ab, 3);
}

} // namespace

TEST_CASE("round trip: params -> window -> recognize -> same canonical params") {
    testing::Sampler sampler(0x207A1);
    for (int trial = 0; trial < 8; ++trial) {
        PhiParams p = law_params(sampler, trial % 2 == 0, trial % 3 == 0);
        ActionWindow window = export_window(p, 3);
        RecognitionReport report = recognize(window);
        REQUIRE(report.ok());
        IsoResult iso = iso_check(*report.fitted, p.canonical());
        CHECK(iso.isomorphic);
    }
}

TEST_CASE("planted violation: a_3 = 0 fails stage L3.2") {
    testing::Sampler sampler(0x1);
    PhiParams p = law_params(sampler, true, false);
    ActionWindow window = export_window(p, 3);
    window.entries[3].a = CarrierPoly::zero();
    RecognitionReport report = recognize(window);
    CHECK_FALSE(report.ok());
    const StageResult* stage = report.stage("L3.2");
    REQUIRE(stage != nullptr);
    CHECK_FALSE(stage->pass);
    CHECK(stage->detail.find("m = 3") != std::string::npos);
}

TEST_CASE("planted violation: a_1 = t + t^2 fails stage L3.6") {
    testing::Sampler sampler(0x2);
    PhiParams p = law_params(sampler, true, false);
    ActionWindow window = export_window(p, 2);
    window.entries[1].a = parse_poly("t + t^2");
    RecognitionReport report = recognize(window);
    CHECK_FALSE(report.ok());
    const StageResult* stage = report.stage("L3.6");
    REQUIRE(stage != nullptr);
    CHECK_FALSE(stage->pass);
}

TEST_CASE("planted violation: p_2 perturbed by lam^2 v^2 fails the p-fit at m = 2") {
    testing::Sampler sampler(0x3);
    PhiParams p = law_params(sampler, true, false);
    ActionWindow window = export_window(p, 2);
    window.entries[2].p += parse_poly("lam^2*v^2");
    RecognitionReport report = recognize(window);
    CHECK_FALSE(report.ok());
    const StageResult* stage = report.stage("L3.9");
    REQUIRE(stage != nullptr);
    CHECK_FALSE(stage->pass);
    CHECK(report.residuals.count(2) == 1);
}

TEST_CASE("tau data with a constant term is rejected") {
    // window built directly from the closed forms with a bad tau_0
    ParamScalar lam = ParamScalar::lambda();
    CarrierPoly bad_tau = parse_poly("1 + t"); // constant term breaks t*Q[t]
    ActionWindow window;
    window.radius = 2;
    for (int m = -2; m <= 2; ++m) {
        WindowEntry e;
        e.a = parse_poly("t").scaled(lam.pow(m));
        e.g = parse_poly("s").scaled(lam.pow(m));
        e.p = parse_poly("v").scaled(lam.pow(m));
        if (m != 0) e.p += bad_tau.scaled(lam.pow(m) * ParamScalar::rational(Rat(m)));
        window.entries.emplace(m, e);
    }
    RecognitionReport report = recognize(window);
    CHECK_FALSE(report.ok());
    const StageResult* stage = report.stage("L3.9");
    REQUIRE(stage != nullptr);
    CHECK_FALSE(stage->pass);
    CHECK(stage->detail.find("t*Q[t]") != std::string::npos);
}

TEST_CASE("planted violation: g_1 += lam*v fails the g-fit") {
    testing::Sampler sampler(0x4);
    PhiParams p = law_params(sampler, true, false);
    ActionWindow window = export_window(p, 2);
    window.entries[1].g += parse_poly("lam*v");
    RecognitionReport report = recognize(window);
    CHECK_FALSE(report.ok());
    const StageResult* stage = report.stage("L3.10");
    REQUIRE(stage != nullptr);
    CHECK_FALSE(stage->pass);
}

TEST_CASE("gamma recovery") {
    PhiParams p;
    p.lambda = ParamScalar::lambda();
    p.tau = {CarrierPoly::zero()};
    p.gamma[2] = parse_poly("t^3");
    // fit_g recovers the planted gamma even though the instance is not
    // bracket-compatible; the final verify stage is what rejects it
    ActionWindow window = export_window(p, 2);
    ShapeOutcome shapes = check_shapes(window);
    REQUIRE(shapes.lambda.has_value());
    FitError error;
    auto pfit = fit_p(window, *shapes.lambda, error);
    REQUIRE(pfit.has_value());
    auto gamma = fit_g(window, *shapes.lambda, *pfit, error);
    REQUIRE(gamma.has_value());
    CHECK(gamma->at(2) == parse_poly("t^3"));
    CHECK(gamma->size() == 1);

    RecognitionReport report = recognize(window);
    CHECK_FALSE(report.ok());
    const StageResult* verify = report.stage("verify");
    REQUIRE(verify != nullptr);
    CHECK_FALSE(verify->pass);
    CHECK(verify->detail.find("[L,L]") != std::string::npos);
}

TEST_CASE("all-zero gamma fits to an empty gamma map") {
    testing::Sampler sampler(0x5);
    PhiParams p = sampler.sample_params(true, false, 0); // no gamma support
    p.a = ParamScalar::zero(); // zero gamma is only compatible with a = 0
    p.gamma.clear();
    ActionWindow window = export_window(p, 2);
    RecognitionReport report = recognize(window);
    REQUIRE(report.ok());
    CHECK(report.fitted->gamma.empty());
}

TEST_CASE("case-(a) shaped window is rejected") {
    // p_n = ((m0 - n)/m0) lam^n v with m0 = 1
    ParamScalar lam = ParamScalar::lambda();
    ActionWindow window;
    window.radius = 2;
    for (int n = -2; n <= 2; ++n) {
        WindowEntry e;
        e.a = parse_poly("t").scaled(lam.pow(n));
        e.g = parse_poly("s").scaled(lam.pow(n));
        e.p = parse_poly("v").scaled(lam.pow(n) * ParamScalar::rational(Rat(1 - n)));
        window.entries.emplace(n, e);
    }
    RecognitionReport report = recognize(window);
    CHECK_FALSE(report.ok());
    CHECK_FALSE(report.fitted.has_value());
}

TEST_CASE("iso_check") {
    testing::Sampler sampler(0x6);
    PhiParams p = law_params(sampler, true, true);

    SUBCASE("equal params are isomorphic") {
        IsoResult iso = iso_check(p, p);
        CHECK(iso.isomorphic);
        CHECK(iso.raw_equal);
    }

    SUBCASE("difference in gamma is witnessed by index") {
        PhiParams q = p;
        q.gamma[5] = parse_poly("t^2");
        IsoResult iso = iso_check(p, q);
        CHECK_FALSE(iso.isomorphic);
        CHECK(iso.witness == "gamma[5]");
    }

    SUBCASE("trailing zero tau entries compare equal with a raw note") {
        PhiParams q = p;
        q.q += 1;
        q.tau.push_back(CarrierPoly::zero());
        IsoResult iso = iso_check(p, q);
        CHECK(iso.isomorphic);
        CHECK_FALSE(iso.raw_equal);
    }

    SUBCASE("each component difference is detected with its witness") {
        PhiParams q = p;
        q.lambda = ParamScalar::rational(Rat(2));
        CHECK(iso_check(p, q).witness == "lambda");

        q = p;
        q.a = q.a + ParamScalar::one();
        CHECK(iso_check(p, q).witness == "a");

        q = p;
        q.b = q.b - ParamScalar::rational(Rat(1, 2));
        CHECK(iso_check(p, q).witness == "b");

        q = p;
        q.tau[0] += parse_poly("t");
        CHECK(iso_check(p, q).witness == "tau[0]");
    }
}

TEST_CASE("single-component mutations never round-trip to the original") {
    testing::Sampler sampler(0x7);
    PhiParams p = law_params(sampler, false, true);
    PhiParams mutated = p;
    mutated.tau[0] += parse_poly("t");
    ActionWindow window = export_window(mutated, 3);
    RecognitionReport report = recognize(window);
    // tau is free, so the mutated set is still a module; recognition must
    // return the mutated parameters, never the original
    REQUIRE(report.ok());
    CHECK(iso_check(*report.fitted, mutated.canonical()).isomorphic);
    CHECK_FALSE(iso_check(*report.fitted, p.canonical()).isomorphic);

    PhiParams broken = p;
    broken.a = broken.a + ParamScalar::one(); // gamma no longer matches a
    ActionWindow window2 = export_window(broken, 3);
    RecognitionReport report2 = recognize(window2);
    CHECK_FALSE(report2.ok()); // caught by the final verify stage
}

TEST_CASE("degree bookkeeping on valid windows") {
    testing::Sampler sampler(0x8);
    PhiParams p = law_params(sampler, true, false);
    ActionWindow window = export_window(p, 3);
    for (const auto& [m, entry] : window.entries) {
        CHECK(entry.a.degree_in(Var::t) == 1);
        CHECK(entry.g.degree_in(Var::s) == 1);
    }
}

TEST_CASE("fit requires window radius at least 2") {
    PhiParams p = PhiParams::symbolic();
    p.a = ParamScalar::zero();
    p.b = ParamScalar::zero();
    ActionWindow window = export_window(p, 1);
    RecognitionReport report = recognize(window);
    CHECK_FALSE(report.ok());
    const StageResult* stage = report.stage("L3.9");
    REQUIRE(stage != nullptr);
    CHECK(stage->detail.find("radius") != std::string::npos);
}
