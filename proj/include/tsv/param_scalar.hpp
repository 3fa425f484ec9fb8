#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <string>

#include "tsv/rational.hpp"

namespace tsv {

// Exponent vector of one scalar term: lam may be negative (lambda is
// invertible), a and b may not.
struct ScalarExp {
    int32_t lam = 0;
    int32_t a = 0;
    int32_t b = 0;

    auto operator<=>(const ScalarExp&) const = default;
};

// Exact coefficient ring Q[lam, lam^-1, a, b]. Canonical form: no stored
// zero coefficients; equality is structural.
class ParamScalar {
public:
    ParamScalar() = default;

    static ParamScalar zero() { return {}; }
    static ParamScalar one() { return rational(Rat(1)); }
    static ParamScalar rational(const Rat& c);
    static ParamScalar term(const Rat& c, const ScalarExp& e);
    static ParamScalar lambda(int power = 1) { return term(Rat(1), {power, 0, 0}); }
    static ParamScalar sym_a() { return term(Rat(1), {0, 1, 0}); }
    static ParamScalar sym_b() { return term(Rat(1), {0, 0, 1}); }

    bool is_zero() const { return terms_.empty(); }
    bool is_one() const;
    // Exactly one term c*lam^k with no a/b factors; such scalars (and only
    // such) have inverses in the ring.
    bool invertible() const;
    ParamScalar inverse() const;
    std::optional<Rat> as_rational() const;
    size_t term_count() const { return terms_.size(); }
    const std::map<ScalarExp, Rat>& terms() const { return terms_; }

    ParamScalar operator-() const;
    ParamScalar& operator+=(const ParamScalar& rhs);
    ParamScalar& operator-=(const ParamScalar& rhs);
    friend ParamScalar operator+(ParamScalar lhs, const ParamScalar& rhs) { return lhs += rhs; }
    friend ParamScalar operator-(ParamScalar lhs, const ParamScalar& rhs) { return lhs -= rhs; }
    friend ParamScalar operator*(const ParamScalar& lhs, const ParamScalar& rhs);
    ParamScalar& operator*=(const ParamScalar& rhs) { return *this = *this * rhs; }

    // n may be negative only for invertible scalars.
    ParamScalar pow(int n) const;

    bool operator==(const ParamScalar&) const = default;

    // Evaluation at lam=lam0, a=a0, b=b0; throws ZeroLambda if lam0 == 0.
    Rat specialize(const Rat& lam0, const Rat& a0, const Rat& b0) const;

    // "c * lam^i * a^j * b^k" terms joined by " + " / " - ", ascending
    // lexicographic in (e_lam, e_a, e_b); "0" for the zero scalar.
    std::string str() const;

private:
    void add_term(const ScalarExp& e, const Rat& c);

    std::map<ScalarExp, Rat> terms_;
};

} // namespace tsv
