#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "tsv/phi_module.hpp"

namespace tsv {

struct StageResult {
    std::string tag;  // "L3.2" .. "L3.10", "verify"
    bool pass = false;
    std::string detail;
};

struct RecognitionReport {
    std::vector<StageResult> stages;
    std::optional<PhiParams> fitted; // present iff every stage passed
    std::map<int, CarrierPoly> residuals; // per-m leftovers from failed fits
    int verify_radius = 0;

    bool ok() const { return fitted.has_value(); }
    const StageResult* stage(const std::string& tag) const;
};

struct ShapeOutcome {
    std::vector<StageResult> stages;
    std::optional<ParamScalar> lambda; // set when all stages pass
};

// Necessary shape conditions, stage by stage, each over every window index:
//   L3.2  a_m != 0
//   L3.3  a_m free of s
//   L3.4  a_m free of v and p_m free of s
//   L3.5  g_m of s-degree exactly 1 with v-free leading coefficient
//   L3.6  a_m = lambda^m * t, lambda extracted from a_1
ShapeOutcome check_shapes(const ActionWindow& window);

struct PFit {
    int q = 0;
    std::vector<CarrierPoly> tau; // tau_0..tau_q in t only
    ParamScalar a, b;
};

struct FitError {
    std::string message;
    std::map<int, CarrierPoly> residuals;
};

// Splits p_m / lambda^m - v into the odd part (the tau data) and the even
// part (a*t + b) using m = +-1, cross-checks at +-2, then re-verifies the
// closed form at every window index. Window radius must be >= 2.
std::optional<PFit> fit_p(const ActionWindow& window, const ParamScalar& lambda,
                          FitError& error);

// Recovers gamma_m from g_m by subtracting lambda^m * (s + tau-part) and
// clearing the common denominator; each gamma_m must be t-only with zero
// constant term and gamma_0 = 0.
std::optional<std::map<int, CarrierPoly>> fit_g(const ActionWindow& window,
                                                const ParamScalar& lambda, const PFit& pfit,
                                                FitError& error);

// Full pipeline: shapes -> fit_p -> fit_g -> assemble -> re-verify.
// Re-verification runs at radius floor((N+1)/2): bracket checks at radius r
// consult gamma indices up to 2r-1, and the window determines gamma only up
// to N. verify_degree is the monomial degree for the final stage.
RecognitionReport recognize(const ActionWindow& window, int verify_degree = 2);

struct IsoResult {
    bool isomorphic = false;
    std::string witness;  // first differing component, e.g. "gamma[5]"
    bool raw_equal = false; // raw tuples equal before canonicalization
};

// Componentwise equality of canonicalized parameter tuples.
IsoResult iso_check(const PhiParams& x, const PhiParams& y);

} // namespace tsv
