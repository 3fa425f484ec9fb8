#pragma once

#include <compare>
#include <map>
#include <string>
#include <vector>

#include "tsv/param_scalar.hpp"

namespace tsv {

enum class Family { L, Y, M };

const char* family_name(Family f);

struct Generator {
    Family family;
    int index;

    auto operator<=>(const Generator&) const = default;
    std::string str() const; // "L[m]" / "Y[m]" / "M[m]"
};

// Finite linear combination of basis generators over ParamScalar.
class LieElement {
public:
    LieElement() = default;
    LieElement(Generator g) { terms_.emplace(g, ParamScalar::one()); }

    static LieElement zero() { return {}; }
    static LieElement term(Generator g, const ParamScalar& c);

    bool is_zero() const { return terms_.empty(); }
    const std::map<Generator, ParamScalar>& terms() const { return terms_; }

    LieElement operator-() const;
    LieElement& operator+=(const LieElement& rhs);
    LieElement& operator-=(const LieElement& rhs);
    friend LieElement operator+(LieElement lhs, const LieElement& rhs) { return lhs += rhs; }
    friend LieElement operator-(LieElement lhs, const LieElement& rhs) { return lhs -= rhs; }
    LieElement scaled(const ParamScalar& c) const;

    bool operator==(const LieElement&) const = default;
    std::string str() const;

private:
    void add_term(Generator g, const ParamScalar& c);

    std::map<Generator, ParamScalar> terms_;
};

// [L_m,L_n]=(m-n)L_{m+n}, [L_m,Y_n]=-(m+n)Y_{m+n}, [L_m,M_n]=-(3m+n)M_{m+n},
// [Y_m,Y_n]=(m-n)M_{m+n}, [Y_m,M_n]=[M_m,M_n]=0, antisymmetric.
LieElement bracket(Generator x, Generator y);
LieElement bracket(const LieElement& x, const LieElement& y);

struct JacobiFailure {
    Generator x, y, z;
    LieElement cyclic_sum;
};

struct JacobiReport {
    int radius = 0;
    long triples_checked = 0;
    std::vector<JacobiFailure> failures;
    bool ok() const { return failures.empty(); }
};

// Exhaustive cyclic-sum sweep over all basis triples with indices in
// [-radius, radius], all three families each.
JacobiReport jacobi_check(int radius, int workers = 1);

} // namespace tsv
