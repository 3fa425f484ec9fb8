#pragma once

#include <string>

#include "tsv/algebra.hpp"
#include "tsv/carrier_poly.hpp"

namespace tsv {

// Normal form of X_m * (polynomial in L_0, M_0, Y_0) inside the enveloping
// algebra: one carrier-polynomial coefficient per generator family, all at
// the input index. Carrier variables s,t,v stand for L_0,M_0,Y_0.
struct StraightenedElem {
    int index = 0;
    CarrierPoly coef_L;
    CarrierPoly coef_Y;
    CarrierPoly coef_M;

    bool operator==(const StraightenedElem&) const = default;
    StraightenedElem& operator+=(const StraightenedElem& rhs);
    std::string str() const; // "poly * L[m] + poly * Y[m] + poly * M[m]"
};

// Closed-form rewrite of gen * f into normal order, extended linearly over
// the terms of f. Negative intermediate exponents follow the zero
// convention.
StraightenedElem straighten(Generator gen, const CarrierPoly& f);

// Independent check: peels one variable power at a time using only the
// degree-1 commutation steps (e.g. Y_m Y_0 = Y_0 Y_m + m M_m) and
// bilinearity.
StraightenedElem straighten_oracle(Generator gen, const CarrierPoly& f);

} // namespace tsv
