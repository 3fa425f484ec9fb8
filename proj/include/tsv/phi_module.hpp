#pragma once

#include <array>
#include <map>
#include <string>
#include <vector>

#include "tsv/algebra.hpp"
#include "tsv/carrier_poly.hpp"

namespace tsv {

// Parameters of one rank-1 free module on C[s,t,v]. tau_i and gamma_j are
// polynomials in t with zero constant term; gamma is finitely supported
// with gamma_0 = 0. Coefficients are ParamScalars: rationals in the common
// case, elements of Q[a,b] where bracket compatibility requires them (see
// bracket_compatible_gamma).
struct PhiParams {
    ParamScalar lambda = ParamScalar::lambda(); // invertible scalar
    ParamScalar a;
    ParamScalar b;
    int q = 0;
    std::vector<CarrierPoly> tau;  // tau_0..tau_q, polynomials in t only
    std::map<int, CarrierPoly> gamma; // index != 0 -> polynomial in t only

    static PhiParams symbolic();

    // Throws InvalidParams naming the violated invariant.
    void validate() const;

    CarrierPoly gamma_at(int m) const;
    CarrierPoly tau_sum() const; // sum_i tau_i * v^i

    // Trailing zero tau entries trimmed, zero gamma entries dropped.
    PhiParams canonical() const;

    bool operator==(const PhiParams&) const = default;
};

// Named formula mutations for the negative-test suite: each breaks the
// action engine in a specific way so the verifier must report failures.
enum class Mutation { none, drop_dt, drop_d2v, flip_sign_yy, perturb_gamma };

const char* mutation_name(Mutation m);
Mutation parse_mutation(const std::string& name); // throws ParseError

CarrierPoly act_L(const PhiParams& params, int m, const CarrierPoly& f,
                  Mutation mutation = Mutation::none);
CarrierPoly act_M(const PhiParams& params, int m, const CarrierPoly& f);
CarrierPoly act_Y(const PhiParams& params, int m, const CarrierPoly& f,
                  Mutation mutation = Mutation::none);
CarrierPoly act(const PhiParams& params, Generator gen, const CarrierPoly& f,
                Mutation mutation = Mutation::none);
CarrierPoly act(const PhiParams& params, const LieElement& x, const CarrierPoly& f,
                Mutation mutation = Mutation::none);

// The gamma family for which the actions are bracket-compatible:
//   gamma_j = j*g + 3ab*j^2*t - (3/2)a^2*j^4*t^2,   g in t*Q[t] free.
// Arbitrary gamma choices (and gamma = 0 with a != 0) fail the [L,L]
// relations; verify_module exposes this.
CarrierPoly bracket_compatible_gamma(const ParamScalar& a, const ParamScalar& b,
                                     const CarrierPoly& g, int index);

// Candidate rank-1 action data: m -> (g_m, a_m, p_m) = images of 1 under
// L_m, M_m, Y_m. Entry 0 must be the anchor (s, t, v).
struct WindowEntry {
    CarrierPoly g, a, p;
    bool operator==(const WindowEntry&) const = default;
};

struct ActionWindow {
    int radius = 0;
    std::map<int, WindowEntry> entries;

    void validate() const; // throws MalformedWindow
    const WindowEntry& at(int m) const;
    bool operator==(const ActionWindow&) const = default;
};

ActionWindow export_window(const PhiParams& params, int radius);

// Action reconstructed from the window data alone:
//   M_m.u = u(s+m) a_m
//   Y_m.u = m (d/dv u)(s+m) a_m + u(s+m) p_m
//   L_m.u = -3m (d/dt u)(s+m) a_m + u(s+m) g_m - m (d/dv u)(s+m) p_m
//           - m^2/2 (d^2/dv^2 u)(s+m) a_m
CarrierPoly act_generic(const ActionWindow& window, Generator gen, const CarrierPoly& u);

struct VerifyFailure {
    Family x, z;
    int m, n;
    Mono monomial;
    CarrierPoly residual;
};

struct VerifyReport {
    int radius = 0;
    int degree = 0;
    long pairs_checked = 0;
    long evaluations = 0;
    std::vector<VerifyFailure> failures;
    bool ok() const { return failures.empty(); }
    std::vector<std::string> failing_families() const; // e.g. "[L,M]", sorted unique
};

// For every ordered generator pair X_m, Z_n with |m|,|n| <= radius and every
// monomial s^i t^j v^k with i,j,k <= degree, checks
//   X_m.(Z_n.f) - Z_n.(X_m.f) = [X_m,Z_n].f
// Failures are report content, not faults.
VerifyReport verify_module(const PhiParams& params, int radius, int degree,
                           Mutation mutation = Mutation::none, int workers = 1);

struct ClosureFailure {
    Generator gen;
    Mono monomial;
    CarrierPoly image;
};

struct ClosureReport {
    long checks = 0;
    std::vector<ClosureFailure> failures;
    bool ok() const { return failures.empty(); }
};

// t^k C[s,t,v] closed under the action: every image of t^k * f is divisible
// by t^k.
ClosureReport submodule_check(const PhiParams& params, int k, int radius, int degree);

// Action on the quotient t^k C[s,t,v] / t^(k+1) C[s,t,v], identified with
// polynomials in s,v. f must be t-free.
CarrierPoly act_quotient(const PhiParams& params, int k, Generator gen, const CarrierPoly& f);

// Independent route for the same action: act on t^k f, reduce mod t^(k+1),
// divide by t^k. Throws if the full action leaks below t^k.
CarrierPoly act_quotient_oracle(const PhiParams& params, int k, Generator gen,
                                const CarrierPoly& f);

// t^k (v+b)^j C[s,v] closed under the quotient action: images of
// (v+b)^j * h are divisible by (v+b)^j.
ClosureReport filtration_check(const PhiParams& params, int k, int j, int radius, int degree);

} // namespace tsv
