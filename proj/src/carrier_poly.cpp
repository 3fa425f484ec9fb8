#include "tsv/carrier_poly.hpp"

#include <algorithm>
#include <limits>
#include <sstream>
#include <vector>

#include "tsv/errors.hpp"

namespace tsv {

namespace {

int32_t checked_exp_add(int32_t x, int32_t y) {
    int64_t sum = int64_t(x) + int64_t(y);
    if (sum > std::numeric_limits<int32_t>::max())
        throw OverflowError("carrier exponent overflow");
    return int32_t(sum);
}

int32_t& mono_exp(Mono& m, Var var) {
    switch (var) {
        case Var::s: return m.s;
        case Var::t: return m.t;
        default: return m.v;
    }
}

int32_t mono_exp(const Mono& m, Var var) {
    switch (var) {
        case Var::s: return m.s;
        case Var::t: return m.t;
        default: return m.v;
    }
}

} // namespace

const char* var_name(Var var) {
    switch (var) {
        case Var::s: return "s";
        case Var::t: return "t";
        default: return "v";
    }
}

CarrierPoly CarrierPoly::constant(const ParamScalar& c) {
    CarrierPoly p;
    p.add_term({0, 0, 0}, c);
    return p;
}

CarrierPoly CarrierPoly::variable(Var var) {
    Mono m;
    mono_exp(m, var) = 1;
    return monomial(m, ParamScalar::one());
}

CarrierPoly CarrierPoly::monomial(const Mono& m, const ParamScalar& c) {
    if (m.s < 0 || m.t < 0 || m.v < 0)
        throw InvalidParams("carrier exponents must be non-negative");
    CarrierPoly p;
    p.add_term(m, c);
    return p;
}

void CarrierPoly::add_term(const Mono& m, const ParamScalar& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.emplace(m, c);
    if (!inserted) {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

CarrierPoly CarrierPoly::operator-() const {
    CarrierPoly out;
    for (const auto& [m, c] : terms_) out.terms_.emplace(m, -c);
    return out;
}

CarrierPoly& CarrierPoly::operator+=(const CarrierPoly& rhs) {
    for (const auto& [m, c] : rhs.terms_) add_term(m, c);
    return *this;
}

CarrierPoly& CarrierPoly::operator-=(const CarrierPoly& rhs) {
    for (const auto& [m, c] : rhs.terms_) add_term(m, -c);
    return *this;
}

CarrierPoly operator*(const CarrierPoly& lhs, const CarrierPoly& rhs) {
    CarrierPoly out;
    for (const auto& [ml, cl] : lhs.terms_)
        for (const auto& [mr, cr] : rhs.terms_)
            out.add_term({checked_exp_add(ml.s, mr.s), checked_exp_add(ml.t, mr.t),
                          checked_exp_add(ml.v, mr.v)},
                         cl * cr);
    return out;
}

CarrierPoly CarrierPoly::scaled(const ParamScalar& c) const {
    CarrierPoly out;
    for (const auto& [m, coef] : terms_) out.add_term(m, coef * c);
    return out;
}

CarrierPoly CarrierPoly::pow(int n) const {
    if (n < 0) throw InvalidParams("negative polynomial power");
    CarrierPoly result = one();
    for (int i = 0; i < n; ++i) result *= *this;
    return result;
}

CarrierPoly CarrierPoly::shift_s(int m) const {
    if (m == 0) return *this;
    CarrierPoly out;
    for (const auto& [mono, c] : terms_) {
        // (s+m)^k = sum_j C(k,j) m^(k-j) s^j
        for (int32_t j = 0; j <= mono.s; ++j) {
            Rat factor(binomial(mono.s, j) * int_pow(Int(m), mono.s - j));
            out.add_term({j, mono.t, mono.v}, c * ParamScalar::rational(factor));
        }
    }
    return out;
}

CarrierPoly CarrierPoly::d_dt() const {
    CarrierPoly out;
    for (const auto& [m, c] : terms_) {
        if (m.t == 0) continue;
        out.add_term({m.s, m.t - 1, m.v}, c * ParamScalar::rational(Rat(m.t)));
    }
    return out;
}

CarrierPoly CarrierPoly::d_dv() const {
    CarrierPoly out;
    for (const auto& [m, c] : terms_) {
        if (m.v == 0) continue;
        out.add_term({m.s, m.t, m.v - 1}, c * ParamScalar::rational(Rat(m.v)));
    }
    return out;
}

CarrierPoly CarrierPoly::exact_div_t() const {
    CarrierPoly out;
    for (const auto& [m, c] : terms_) {
        if (m.t < 1)
            throw NotDivisibleByT(monomial(m, c).str());
        out.terms_.emplace(Mono{m.s, m.t - 1, m.v}, c);
    }
    return out;
}

CarrierPoly CarrierPoly::mul_var_pow(Var var, int k) const {
    if (k < 0) throw InvalidParams("negative monomial multiplier");
    CarrierPoly out;
    for (const auto& [m, c] : terms_) {
        Mono shifted = m;
        mono_exp(shifted, var) = checked_exp_add(mono_exp(m, var), k);
        out.terms_.emplace(shifted, c);
    }
    return out;
}

std::optional<int> CarrierPoly::degree_in(Var var) const {
    if (terms_.empty()) return std::nullopt;
    int32_t deg = 0;
    for (const auto& [m, c] : terms_) deg = std::max(deg, mono_exp(m, var));
    return int(deg);
}

bool CarrierPoly::depends_on(Var var) const {
    for (const auto& [m, c] : terms_)
        if (mono_exp(m, var) > 0) return true;
    return false;
}

bool CarrierPoly::divisible_by_t_pow(int k) const {
    for (const auto& [m, c] : terms_)
        if (m.t < k) return false;
    return true;
}

CarrierPoly CarrierPoly::coeff_of(Var var, int k) const {
    CarrierPoly out;
    for (const auto& [m, c] : terms_) {
        if (mono_exp(m, var) != k) continue;
        Mono rest = m;
        mono_exp(rest, var) = 0;
        out.add_term(rest, c);
    }
    return out;
}

ParamScalar CarrierPoly::coeff_of_t_monomial(int k) const {
    auto it = terms_.find(Mono{0, int32_t(k), 0});
    return it == terms_.end() ? ParamScalar::zero() : it->second;
}

std::pair<CarrierPoly, CarrierPoly> CarrierPoly::divmod_v_plus(const ParamScalar& c) const {
    // Horner in v: f = sum_k c_k(s,t) v^k; quotient coefficients
    // q_{k-1} = c_k - c*q_k from the top down, remainder is the final fold.
    auto vdeg = degree_in(Var::v);
    if (!vdeg || *vdeg == 0) return {CarrierPoly::zero(), *this};
    CarrierPoly quotient;
    CarrierPoly carry; // q_k while descending
    for (int k = *vdeg; k >= 1; --k) {
        CarrierPoly qk = coeff_of(Var::v, k) - carry.scaled(c);
        quotient += qk.mul_var_pow(Var::v, k - 1);
        carry = qk;
    }
    CarrierPoly remainder = coeff_of(Var::v, 0) - carry.scaled(c);
    return {quotient, remainder};
}

std::string CarrierPoly::str() const {
    if (terms_.empty()) return "0";
    std::vector<const std::pair<const Mono, ParamScalar>*> order;
    order.reserve(terms_.size());
    for (const auto& term : terms_) order.push_back(&term);
    std::sort(order.begin(), order.end(), [](const auto* x, const auto* y) {
        if (x->first.total_degree() != y->first.total_degree())
            return x->first.total_degree() > y->first.total_degree();
        return x->first > y->first;
    });
    std::ostringstream os;
    bool first = true;
    for (const auto* term : order) {
        const auto& [m, c] = *term;
        std::string cs = c.str();
        bool negated = false;
        if (c.term_count() == 1 && cs.size() > 1 && cs[0] == '-') {
            negated = true;
            cs = cs.substr(1);
        }
        if (first) {
            if (negated) os << "-";
            first = false;
        } else {
            os << (negated ? " - " : " + ");
        }
        bool unit_coeff = (cs == "1");
        bool has_vars = m.s != 0 || m.t != 0 || m.v != 0;
        bool printed = false;
        if (!unit_coeff || !has_vars) {
            if (c.term_count() > 1)
                os << "(" << cs << ")";
            else
                os << cs;
            printed = true;
        }
        auto factor = [&](const char* name, int32_t exp) {
            if (exp == 0) return;
            if (printed) os << " * ";
            os << name;
            if (exp != 1) os << "^" << exp;
            printed = true;
        };
        factor("s", m.s);
        factor("t", m.t);
        factor("v", m.v);
    }
    return os.str();
}

} // namespace tsv
