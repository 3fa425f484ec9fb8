#include "tsv/straighten.hpp"

#include <sstream>

#include "tsv/errors.hpp"

namespace tsv {

StraightenedElem& StraightenedElem::operator+=(const StraightenedElem& rhs) {
    coef_L += rhs.coef_L;
    coef_Y += rhs.coef_Y;
    coef_M += rhs.coef_M;
    return *this;
}

std::string StraightenedElem::str() const {
    std::ostringstream os;
    auto piece = [&](const CarrierPoly& coef, Family fam) {
        if (coef.is_zero()) return;
        if (os.tellp() > 0) os << " + ";
        os << "(" << coef.str() << ") * " << Generator{fam, index}.str();
    };
    piece(coef_L, Family::L);
    piece(coef_Y, Family::Y);
    piece(coef_M, Family::M);
    if (os.tellp() == 0) return "0";
    return os.str();
}

namespace {

CarrierPoly carrier_monomial(int i, int j, int k, const ParamScalar& c) {
    // zero convention for negative exponents
    if (i < 0 || j < 0 || k < 0) return CarrierPoly::zero();
    return CarrierPoly::monomial({int32_t(i), int32_t(j), int32_t(k)}, c);
}

CarrierPoly shifted_monomial(int m, int i, int j, int k, const ParamScalar& c) {
    return carrier_monomial(i, j, k, c).shift_s(m);
}

ParamScalar rat(long num, long den = 1) {
    return ParamScalar::rational(Rat(num, den));
}

// Single closed-form term: gen * (c * L0^i M0^j Y0^k).
StraightenedElem straighten_term(Generator gen, int i, int j, int k, const ParamScalar& c) {
    const int m = gen.index;
    StraightenedElem out;
    out.index = m;
    switch (gen.family) {
        case Family::M:
            // M_m L0^i M0^j Y0^k = (L0+m)^i M0^j Y0^k M_m
            out.coef_M = shifted_monomial(m, i, j, k, c);
            break;
        case Family::Y:
            // Y_m past Y0^k picks up m*k Y0^(k-1) M_m
            out.coef_Y = shifted_monomial(m, i, j, k, c);
            out.coef_M = shifted_monomial(m, i, j, k - 1, c * rat(long(m) * k));
            break;
        case Family::L:
            out.coef_L = shifted_monomial(m, i, j, k, c);
            out.coef_Y = shifted_monomial(m, i, j, k - 1, c * rat(-long(m) * k));
            out.coef_M = shifted_monomial(m, i, j, k - 2,
                                          c * rat(-long(k) * (k - 1) * m * m, 2)) +
                         shifted_monomial(m, i, j - 1, k, c * rat(-3L * m * j));
            break;
    }
    return out;
}

// One-variable-at-a-time peeling. Uses only the degree-1 steps:
//   X_m L0 = (L0 + m) X_m                 (all families)
//   L_m M0 = M0 L_m - 3m M_m,  L_m Y0 = Y0 L_m - m Y_m
//   Y_m Y0 = Y0 Y_m + m M_m
StraightenedElem oracle_term(Family fam, int m, int i, int j, int k) {
    StraightenedElem out;
    out.index = m;
    if (i > 0) {
        StraightenedElem rest = oracle_term(fam, m, i - 1, j, k);
        CarrierPoly mult = CarrierPoly::variable(Var::s) + CarrierPoly::rational(Rat(m));
        out.coef_L = mult * rest.coef_L;
        out.coef_Y = mult * rest.coef_Y;
        out.coef_M = mult * rest.coef_M;
        return out;
    }
    if (j > 0) {
        StraightenedElem rest = oracle_term(fam, m, 0, j - 1, k);
        CarrierPoly t = CarrierPoly::variable(Var::t);
        out.coef_L = t * rest.coef_L;
        out.coef_Y = t * rest.coef_Y;
        out.coef_M = t * rest.coef_M;
        if (fam == Family::L) {
            StraightenedElem corr = oracle_term(Family::M, m, 0, j - 1, k);
            out.coef_M += corr.coef_M.scaled(rat(-3L * m));
        }
        return out;
    }
    if (k > 0) {
        StraightenedElem rest = oracle_term(fam, m, 0, 0, k - 1);
        CarrierPoly v = CarrierPoly::variable(Var::v);
        out.coef_L = v * rest.coef_L;
        out.coef_Y = v * rest.coef_Y;
        out.coef_M = v * rest.coef_M;
        if (fam == Family::L) {
            StraightenedElem corr = oracle_term(Family::Y, m, 0, 0, k - 1);
            out.coef_Y += corr.coef_Y.scaled(rat(-m));
            out.coef_M += corr.coef_M.scaled(rat(-m));
        } else if (fam == Family::Y) {
            StraightenedElem corr = oracle_term(Family::M, m, 0, 0, k - 1);
            out.coef_M += corr.coef_M.scaled(rat(m));
        }
        return out;
    }
    switch (fam) {
        case Family::L: out.coef_L = CarrierPoly::one(); break;
        case Family::Y: out.coef_Y = CarrierPoly::one(); break;
        case Family::M: out.coef_M = CarrierPoly::one(); break;
    }
    return out;
}

} // namespace

StraightenedElem straighten(Generator gen, const CarrierPoly& f) {
    StraightenedElem out;
    out.index = gen.index;
    for (const auto& [mono, c] : f.terms())
        out += straighten_term(gen, mono.s, mono.t, mono.v, c);
    return out;
}

StraightenedElem straighten_oracle(Generator gen, const CarrierPoly& f) {
    StraightenedElem out;
    out.index = gen.index;
    for (const auto& [mono, c] : f.terms()) {
        StraightenedElem piece = oracle_term(gen.family, gen.index, mono.s, mono.t, mono.v);
        out.coef_L += piece.coef_L.scaled(c);
        out.coef_Y += piece.coef_Y.scaled(c);
        out.coef_M += piece.coef_M.scaled(c);
    }
    return out;
}

} // namespace tsv
