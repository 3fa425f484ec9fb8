#pragma once

#include <random>

#include "tsv/phi_module.hpp"

namespace tsv::testing {

// Deterministic generators for property tests and the acceptance sweeps.
struct Sampler {
    std::mt19937_64 rng;

    explicit Sampler(uint64_t seed) : rng(seed) {}

    int pick(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

    Rat rand_rat(bool nonzero = false) {
        int num = pick(-4, 4);
        if (nonzero && num == 0) num = pick(1, 4);
        int den = pick(1, 3);
        return Rat(num, den);
    }

    ParamScalar rand_scalar(int max_terms = 3) {
        ParamScalar out;
        int terms = pick(0, max_terms);
        for (int i = 0; i < terms; ++i)
            out += ParamScalar::term(rand_rat(),
                                     {int32_t(pick(-3, 3)), int32_t(pick(0, 2)),
                                      int32_t(pick(0, 2))});
        return out;
    }

    // element of t*Q[t] with degree <= max_deg (possibly zero)
    CarrierPoly rand_t_poly(int max_deg) {
        CarrierPoly out;
        for (int d = 1; d <= max_deg; ++d) {
            Rat c = rand_rat();
            if (c != 0)
                out += CarrierPoly::monomial({0, d, 0}, ParamScalar::rational(c));
        }
        return out;
    }

    CarrierPoly rand_poly(int max_deg = 3, int max_terms = 4) {
        CarrierPoly out;
        int terms = pick(0, max_terms);
        for (int i = 0; i < terms; ++i) {
            Rat c = rand_rat();
            if (c == 0) continue;
            out += CarrierPoly::monomial({int32_t(pick(0, max_deg)), int32_t(pick(0, max_deg)),
                                          int32_t(pick(0, max_deg))},
                                         ParamScalar::rational(c));
        }
        return out;
    }

    // Bracket-compatible module parameters. gamma is populated on
    // [-gamma_support, gamma_support] from the compatible family, so the
    // instance verifies cleanly on any window whose bracket checks stay
    // inside that support.
    PhiParams sample_params(bool symbolic_lambda, bool symbolic_ab, int gamma_support,
                            int max_q = 3, int max_deg = 3) {
        PhiParams params;
        params.lambda = symbolic_lambda ? ParamScalar::lambda()
                                        : ParamScalar::rational(rand_rat(true));
        if (symbolic_ab) {
            params.a = ParamScalar::sym_a();
            params.b = ParamScalar::sym_b();
        } else {
            params.a = ParamScalar::rational(rand_rat());
            params.b = ParamScalar::rational(rand_rat());
        }
        params.q = pick(0, max_q);
        params.tau.clear();
        for (int i = 0; i <= params.q; ++i) params.tau.push_back(rand_t_poly(max_deg));
        CarrierPoly g = rand_t_poly(max_deg);
        for (int j = -gamma_support; j <= gamma_support; ++j) {
            if (j == 0) continue;
            CarrierPoly gamma_j = bracket_compatible_gamma(params.a, params.b, g, j);
            if (!gamma_j.is_zero()) params.gamma.emplace(j, gamma_j);
        }
        params.validate();
        return params;
    }
};

} // namespace tsv::testing
