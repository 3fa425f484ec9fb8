#include <doctest.h>

#include <algorithm>
#include <string>

#include "support.hpp"
#include "tsv/errors.hpp"
#include "tsv/io.hpp"
#include "tsv/phi_module.hpp"

using namespace tsv;

namespace {

PhiParams tau_gamma_params(const char* tau0, const char* tau1 = nullptr,
                           const char* gamma1 = nullptr) {
    PhiParams p = PhiParams::symbolic();
    p.tau = {parse_poly(tau0)};
    if (tau1) {
        p.q = 1;
        p.tau.push_back(parse_poly(tau1));
    }
    if (gamma1) p.gamma[1] = parse_poly(gamma1);
    return p;
}

} // namespace

TEST_CASE("M action") {
    PhiParams p = PhiParams::symbolic();
    CHECK(act_M(p, 0, parse_poly("s*v + t")) == parse_poly("s*t*v + t^2"));
    CHECK(act_M(p, 1, parse_poly("s")) == parse_poly("lam*t*s + lam*t"));
    PhiParams concrete = p;
    concrete.lambda = ParamScalar::rational(Rat(2));
    CHECK(act_M(concrete, -1, CarrierPoly::one()) == parse_poly("1/2*t"));
}

TEST_CASE("Y action") {
    PhiParams p = PhiParams::symbolic();
    CarrierPoly f = parse_poly("s + v^2");
    CHECK(act_Y(p, 0, f) == parse_poly("v") * f);

    CHECK(act_Y(tau_gamma_params("t", "0"), 1, CarrierPoly::one()) ==
          parse_poly("lam*t + lam*v + lam*a*t + lam*b"));
    CHECK(act_Y(tau_gamma_params("0", "t"), 1, parse_poly("v")) ==
          parse_poly("lam*t*v^2 + lam*v^2 + lam*a*t*v + lam*b*v + lam*t"));
}

TEST_CASE("L action") {
    PhiParams p = PhiParams::symbolic();
    CarrierPoly f = parse_poly("t*v + s^2");
    CHECK(act_L(p, 0, f) == parse_poly("s") * f);

    // frozen from an independent symbolic expansion of the defining formula
    CHECK(act_L(p, 1, parse_poly("v")) ==
          parse_poly("lam*s*v + 3*a*lam*v^2 - lam*v - a*lam*t - b*lam"));
    CHECK(act_L(tau_gamma_params("t", "0", "t^2"), 1, CarrierPoly::one()) ==
          parse_poly("lam*s - lam*v + 1/2*lam*t + 3*a*lam*v - a*lam*t - b*lam"));
}

TEST_CASE("freeness anchor: index-0 actions multiply by s, t, v") {
    testing::Sampler sampler(0xF0E);
    for (int trial = 0; trial < 10; ++trial) {
        PhiParams p = sampler.sample_params(trial % 2 == 0, trial % 3 == 0, 3);
        CarrierPoly f = sampler.rand_poly();
        CHECK(act_L(p, 0, f) == parse_poly("s") * f);
        CHECK(act_M(p, 0, f) == parse_poly("t") * f);
        CHECK(act_Y(p, 0, f) == parse_poly("v") * f);
    }
}

TEST_CASE("invalid tau and gamma are rejected") {
    PhiParams p = PhiParams::symbolic();
    p.tau = {parse_poly("1 + t")};
    try {
        p.validate();
        FAIL("expected InvalidParams");
    } catch (const InvalidParams& e) {
        CHECK(std::string(e.what()).find("t*Q[t]") != std::string::npos);
    }

    PhiParams p2 = PhiParams::symbolic();
    p2.gamma[1] = parse_poly("1");
    CHECK_THROWS_AS(p2.validate(), InvalidParams);

    // constant term in gamma surfaces as a failed division inside act_L
    CHECK_THROWS_AS(act_L(p2, 1, CarrierPoly::one()), NotDivisibleByT);
}

TEST_CASE("generic engine agrees with the direct actions") {
    testing::Sampler sampler(0xE7617E);
    for (int trial = 0; trial < 6; ++trial) {
        PhiParams p = sampler.sample_params(trial % 2 == 0, trial % 2 == 1, 2);
        ActionWindow window = export_window(p, 2);
        for (int m = -2; m <= 2; ++m)
            for (int i = 0; i <= 2; ++i)
                for (int j = 0; j <= 2; ++j)
                    for (int k = 0; k <= 2; ++k) {
                        CarrierPoly u = CarrierPoly::monomial({i, j, k}, ParamScalar::one());
                        CHECK(act_generic(window, {Family::L, m}, u) == act_L(p, m, u));
                        CHECK(act_generic(window, {Family::M, m}, u) == act_M(p, m, u));
                        CHECK(act_generic(window, {Family::Y, m}, u) == act_Y(p, m, u));
                    }
    }
}

TEST_CASE("generic engine examples") {
    PhiParams p = PhiParams::symbolic();
    ActionWindow window = export_window(p, 2);
    CHECK(act_generic(window, {Family::M, 1}, parse_poly("s^2")) ==
          parse_poly("lam*t*s^2 + 2*lam*t*s + lam*t"));
    // L_m on t: -3m*a_m + t*g_m; Y_m on v: m*a_m + v*p_m
    for (int m : {-2, 1}) {
        const WindowEntry& e = window.at(m);
        CHECK(act_generic(window, {Family::L, m}, parse_poly("t")) ==
              e.a.scaled(ParamScalar::rational(Rat(-3 * m))) + parse_poly("t") * e.g);
        CHECK(act_generic(window, {Family::Y, m}, parse_poly("v")) ==
              e.a.scaled(ParamScalar::rational(Rat(m))) + parse_poly("v") * e.p);
    }
    CHECK_THROWS_AS(act_generic(window, {Family::L, 3}, parse_poly("t")), IndexOutsideWindow);
}

TEST_CASE("window anchor is validated") {
    PhiParams p = PhiParams::symbolic();
    ActionWindow window = export_window(p, 1);
    window.entries[0].g = parse_poly("s + t");
    CHECK_THROWS_AS(window.validate(), MalformedWindow);
    ActionWindow missing;
    missing.radius = 1;
    CHECK_THROWS_AS(missing.validate(), MalformedWindow);
}

TEST_CASE("verify_module passes on bracket-compatible parameter sets") {
    testing::Sampler sampler(0x7E57);
    PhiParams p = sampler.sample_params(true, true, 3);
    VerifyReport report = verify_module(p, 2, 1);
    CHECK(report.ok());
    CHECK(report.pairs_checked == 9 * 25);
    // partitioned run gives the same result
    VerifyReport parallel = verify_module(p, 2, 1, Mutation::none, 4);
    CHECK(parallel.ok());
}

TEST_CASE("arbitrary gamma fails the [L,L] family") {
    // gamma_1 = t^2 alone: the L-bracket relations among gamma indices fail
    PhiParams p;
    p.lambda = ParamScalar::one();
    p.tau = {CarrierPoly::zero()};
    p.gamma[1] = parse_poly("t^2");
    VerifyReport report = verify_module(p, 1, 0);
    REQUIRE_FALSE(report.ok());
    CHECK(report.failing_families() == std::vector<std::string>{"[L,L]"});
    for (const auto& f : report.failures) {
        if (f.m == 1 && f.n == -1) CHECK(f.residual == parse_poly("-2*t"));
        if (f.m == -1 && f.n == 1) CHECK(f.residual == parse_poly("2*t"));
    }
}

TEST_CASE("gamma = 0 with symbolic a, b fails the [L,L] family") {
    VerifyReport report = verify_module(PhiParams::symbolic(), 2, 0);
    REQUIRE_FALSE(report.ok());
    CHECK(report.failing_families() == std::vector<std::string>{"[L,L]"});
    bool found = false;
    for (const auto& f : report.failures)
        if (f.m == 1 && f.n == 2 && f.monomial == Mono{0, 0, 0}) {
            CHECK(f.residual == parse_poly("12*a^2*lam^3*t - 6*a*b*lam^3"));
            found = true;
        }
    CHECK(found);
}

TEST_CASE("every named mutation is killed") {
    testing::Sampler sampler(0x3u);
    PhiParams p = sampler.sample_params(true, true, 3);
    for (Mutation mutation : {Mutation::drop_dt, Mutation::drop_d2v, Mutation::flip_sign_yy,
                              Mutation::perturb_gamma}) {
        VerifyReport report = verify_module(p, 2, 2, mutation);
        CHECK_FALSE(report.ok());
        CHECK_FALSE(report.failing_families().empty());
    }
}

TEST_CASE("drop-dt breaks the [L,M] family") {
    testing::Sampler sampler(0x4u);
    PhiParams p = sampler.sample_params(true, false, 3);
    VerifyReport report = verify_module(p, 2, 1, Mutation::drop_dt);
    REQUIRE_FALSE(report.ok());
    auto fams = report.failing_families();
    CHECK(std::find(fams.begin(), fams.end(), "[L,M]") != fams.end());
}

TEST_CASE("submodule closure for t^k") {
    testing::Sampler sampler(0x5u);
    PhiParams p = sampler.sample_params(false, true, 3);
    for (int k = 0; k <= 2; ++k) CHECK(submodule_check(p, k, 2, 1).ok());
    // act_M lands one level deeper
    CarrierPoly image = act_M(p, 2, parse_poly("t*s"));
    CHECK(image.divisible_by_t_pow(2));
}

TEST_CASE("quotient action") {
    testing::Sampler sampler(0x6u);
    PhiParams p = sampler.sample_params(true, true, 3);
    CHECK(act_quotient(p, 2, {Family::M, 5}, parse_poly("s*v")).is_zero());
    CHECK(act_quotient(p, 1, {Family::Y, 0}, parse_poly("s + v")) ==
          parse_poly("v") * parse_poly("s + v"));
    CHECK_THROWS_AS(act_quotient(p, 1, {Family::L, 1}, parse_poly("t*v")), TDependentInput);
}

TEST_CASE("quotient action equals the induced-action route") {
    testing::Sampler sampler(0x7u);
    for (int trial = 0; trial < 4; ++trial) {
        PhiParams p = sampler.sample_params(trial % 2 == 0, true, 3);
        for (int k = 0; k <= 2; ++k)
            for (Family fam : {Family::L, Family::Y, Family::M})
                for (int m = -2; m <= 2; ++m)
                    for (int i = 0; i <= 2; ++i)
                        for (int j = 0; j <= 2; ++j) {
                            CarrierPoly f =
                                CarrierPoly::monomial({i, 0, j}, ParamScalar::one());
                            CHECK(act_quotient(p, k, {fam, m}, f) ==
                                  act_quotient_oracle(p, k, {fam, m}, f));
                        }
    }
}

TEST_CASE("filtration closure for (v+b)^j") {
    testing::Sampler sampler(0x8u);
    PhiParams p = sampler.sample_params(true, true, 3);
    for (int k = 0; k <= 1; ++k)
        for (int j = 0; j <= 2; ++j) CHECK(filtration_check(p, k, j, 2, 1).ok());
    // Y_m output carries a clean (v+b) factor for m != 0
    CarrierPoly image = act_quotient(p, 0, {Family::Y, 2},
                                     parse_poly("v") + CarrierPoly::constant(p.b));
    auto [quot, rem] = image.divmod_v_plus(p.b);
    CHECK(rem.is_zero());
    auto [quot2, rem2] = quot.divmod_v_plus(p.b);
    CHECK(rem2.is_zero());
}

TEST_CASE("submodule chain: t^(k+1) inside t^k") {
    testing::Sampler sampler(0x9u);
    PhiParams p = sampler.sample_params(true, true, 3);
    CHECK(submodule_check(p, 2, 2, 1).ok());
    CHECK(submodule_check(p, 3, 2, 1).ok());
}

TEST_CASE("canonical trims trailing zero tau and zero gamma") {
    PhiParams p = PhiParams::symbolic();
    p.q = 2;
    p.tau = {parse_poly("t"), CarrierPoly::zero(), CarrierPoly::zero()};
    p.gamma[4] = CarrierPoly::zero();
    PhiParams c = p.canonical();
    CHECK(c.q == 0);
    CHECK(c.tau.size() == 1);
    CHECK(c.gamma.empty());
}
