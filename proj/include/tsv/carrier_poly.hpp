#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>

#include "tsv/param_scalar.hpp"

namespace tsv {

// Carrier variables. s, t, v are identified with L_0, M_0, Y_0 throughout;
// this enum is the single alias table, every other module speaks s/t/v.
enum class Var { s, t, v };

const char* var_name(Var var);

struct Mono {
    int32_t s = 0;
    int32_t t = 0;
    int32_t v = 0;

    auto operator<=>(const Mono&) const = default;
    int64_t total_degree() const { return int64_t(s) + t + v; }
};

// Sparse polynomial in s, t, v over ParamScalar. Exponents are
// non-negative; canonical form stores no zero coefficients.
class CarrierPoly {
public:
    CarrierPoly() = default;

    static CarrierPoly zero() { return {}; }
    static CarrierPoly one() { return constant(ParamScalar::one()); }
    static CarrierPoly constant(const ParamScalar& c);
    static CarrierPoly rational(const Rat& c) { return constant(ParamScalar::rational(c)); }
    static CarrierPoly variable(Var var);
    static CarrierPoly monomial(const Mono& m, const ParamScalar& c);

    bool is_zero() const { return terms_.empty(); }
    size_t term_count() const { return terms_.size(); }
    const std::map<Mono, ParamScalar>& terms() const { return terms_; }

    CarrierPoly operator-() const;
    CarrierPoly& operator+=(const CarrierPoly& rhs);
    CarrierPoly& operator-=(const CarrierPoly& rhs);
    friend CarrierPoly operator+(CarrierPoly lhs, const CarrierPoly& rhs) { return lhs += rhs; }
    friend CarrierPoly operator-(CarrierPoly lhs, const CarrierPoly& rhs) { return lhs -= rhs; }
    friend CarrierPoly operator*(const CarrierPoly& lhs, const CarrierPoly& rhs);
    CarrierPoly& operator*=(const CarrierPoly& rhs) { return *this = *this * rhs; }
    CarrierPoly scaled(const ParamScalar& c) const;
    CarrierPoly pow(int n) const;

    bool operator==(const CarrierPoly&) const = default;

    // f(s+m, t, v), expanded binomially.
    CarrierPoly shift_s(int m) const;

    CarrierPoly d_dt() const;
    CarrierPoly d_dv() const;

    // f/t; throws NotDivisibleByT (with the offending term) if any term has
    // t-exponent zero.
    CarrierPoly exact_div_t() const;

    CarrierPoly mul_var_pow(Var var, int k) const;

    // Max exponent of var across terms; nullopt is the zero polynomial's
    // degree (NegInfinity).
    std::optional<int> degree_in(Var var) const;

    bool depends_on(Var var) const;
    bool divisible_by_t_pow(int k) const;

    // Coefficient of var^k, as a polynomial in the other two variables.
    CarrierPoly coeff_of(Var var, int k) const;

    // Scalar coefficient of the pure-t monomial t^k; the polynomial must not
    // be consulted this way unless it is t-only (callers check).
    ParamScalar coeff_of_t_monomial(int k) const;

    // Division by (v + c): returns {quotient, remainder}, remainder free of v.
    std::pair<CarrierPoly, CarrierPoly> divmod_v_plus(const ParamScalar& c) const;

    // Deterministic rendering: terms in descending graded-lex order on
    // (s,t,v); each term "coeff * s^i * t^j * v^k" with unit factors omitted
    // and multi-term scalar coefficients parenthesized.
    std::string str() const;

private:
    void add_term(const Mono& m, const ParamScalar& c);

    std::map<Mono, ParamScalar> terms_;
};

} // namespace tsv
