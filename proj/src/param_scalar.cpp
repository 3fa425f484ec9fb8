#include "tsv/param_scalar.hpp"

#include <limits>
#include <sstream>

#include "tsv/errors.hpp"

namespace tsv {

namespace {

int32_t checked_exp_add(int32_t x, int32_t y) {
    int64_t sum = int64_t(x) + int64_t(y);
    if (sum > std::numeric_limits<int32_t>::max() || sum < std::numeric_limits<int32_t>::min())
        throw OverflowError("scalar exponent overflow");
    return int32_t(sum);
}

} // namespace

ParamScalar ParamScalar::rational(const Rat& c) {
    ParamScalar s;
    s.add_term({0, 0, 0}, c);
    return s;
}

ParamScalar ParamScalar::term(const Rat& c, const ScalarExp& e) {
    if (e.a < 0 || e.b < 0)
        throw InvalidParams("scalar exponents of a and b must be non-negative");
    ParamScalar s;
    s.add_term(e, c);
    return s;
}

void ParamScalar::add_term(const ScalarExp& e, const Rat& c) {
    if (c == 0) return;
    auto [it, inserted] = terms_.emplace(e, c);
    if (!inserted) {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

bool ParamScalar::is_one() const {
    return terms_.size() == 1 && terms_.begin()->first == ScalarExp{} &&
           terms_.begin()->second == 1;
}

bool ParamScalar::invertible() const {
    return terms_.size() == 1 && terms_.begin()->first.a == 0 && terms_.begin()->first.b == 0;
}

ParamScalar ParamScalar::inverse() const {
    if (!invertible())
        throw InvalidParams("scalar not invertible: " + str());
    const auto& [e, c] = *terms_.begin();
    return term(Rat(1) / c, {-e.lam, 0, 0});
}

std::optional<Rat> ParamScalar::as_rational() const {
    if (terms_.empty()) return Rat(0);
    if (terms_.size() == 1 && terms_.begin()->first == ScalarExp{})
        return terms_.begin()->second;
    return std::nullopt;
}

ParamScalar ParamScalar::operator-() const {
    ParamScalar out;
    for (const auto& [e, c] : terms_) out.terms_.emplace(e, -c);
    return out;
}

ParamScalar& ParamScalar::operator+=(const ParamScalar& rhs) {
    for (const auto& [e, c] : rhs.terms_) add_term(e, c);
    return *this;
}

ParamScalar& ParamScalar::operator-=(const ParamScalar& rhs) {
    for (const auto& [e, c] : rhs.terms_) add_term(e, -c);
    return *this;
}

ParamScalar operator*(const ParamScalar& lhs, const ParamScalar& rhs) {
    ParamScalar out;
    for (const auto& [el, cl] : lhs.terms_)
        for (const auto& [er, cr] : rhs.terms_)
            out.add_term({checked_exp_add(el.lam, er.lam), checked_exp_add(el.a, er.a),
                          checked_exp_add(el.b, er.b)},
                         cl * cr);
    return out;
}

ParamScalar ParamScalar::pow(int n) const {
    if (n == 0) return one();
    if (n < 0) return inverse().pow(-n);
    ParamScalar result = one();
    ParamScalar acc = *this;
    for (int e = n; e > 0; e >>= 1) {
        if (e & 1) result *= acc;
        if (e > 1) acc *= acc;
    }
    return result;
}

Rat ParamScalar::specialize(const Rat& lam0, const Rat& a0, const Rat& b0) const {
    if (lam0 == 0) throw ZeroLambda();
    Rat out = 0;
    for (const auto& [e, c] : terms_) {
        Rat v = c;
        if (e.lam >= 0) {
            v *= Rat(int_pow(numerator(lam0), e.lam), int_pow(denominator(lam0), e.lam));
        } else {
            v *= Rat(int_pow(denominator(lam0), -e.lam), int_pow(numerator(lam0), -e.lam));
        }
        v *= Rat(int_pow(numerator(a0), e.a), int_pow(denominator(a0), e.a));
        v *= Rat(int_pow(numerator(b0), e.b), int_pow(denominator(b0), e.b));
        out += v;
    }
    return out;
}

std::string ParamScalar::str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [e, c] : terms_) {
        Rat mag = c < 0 ? Rat(-c) : c;
        if (first) {
            if (c < 0) os << "-";
            first = false;
        } else {
            os << (c < 0 ? " - " : " + ");
        }
        bool has_sym = e.lam != 0 || e.a != 0 || e.b != 0;
        bool printed = false;
        if (!has_sym || mag != 1) {
            os << mag.str();
            printed = true;
        }
        auto factor = [&](const char* name, int32_t exp) {
            if (exp == 0) return;
            if (printed) os << " * ";
            os << name;
            if (exp != 1) os << "^" << exp;
            printed = true;
        };
        factor("lam", e.lam);
        factor("a", e.a);
        factor("b", e.b);
    }
    return os.str();
}

} // namespace tsv
