#include "tsv/algebra.hpp"

#include <sstream>
#include <thread>

namespace tsv {

const char* family_name(Family f) {
    switch (f) {
        case Family::L: return "L";
        case Family::Y: return "Y";
        default: return "M";
    }
}

std::string Generator::str() const {
    std::ostringstream os;
    os << family_name(family) << "[" << index << "]";
    return os.str();
}

LieElement LieElement::term(Generator g, const ParamScalar& c) {
    LieElement e;
    e.add_term(g, c);
    return e;
}

void LieElement::add_term(Generator g, const ParamScalar& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.emplace(g, c);
    if (!inserted) {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

LieElement LieElement::operator-() const {
    LieElement out;
    for (const auto& [g, c] : terms_) out.terms_.emplace(g, -c);
    return out;
}

LieElement& LieElement::operator+=(const LieElement& rhs) {
    for (const auto& [g, c] : rhs.terms_) add_term(g, c);
    return *this;
}

LieElement& LieElement::operator-=(const LieElement& rhs) {
    for (const auto& [g, c] : rhs.terms_) add_term(g, -c);
    return *this;
}

LieElement LieElement::scaled(const ParamScalar& c) const {
    LieElement out;
    for (const auto& [g, coef] : terms_) out.add_term(g, coef * c);
    return out;
}

std::string LieElement::str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [g, c] : terms_) {
        if (!first) os << " + ";
        first = false;
        if (c.is_one())
            os << g.str();
        else if (c.term_count() == 1)
            os << c.str() << " * " << g.str();
        else
            os << "(" << c.str() << ") * " << g.str();
    }
    return os.str();
}

LieElement bracket(Generator x, Generator y) {
    const int m = x.index, n = y.index;
    auto result = [&](long coeff, Family fam) {
        return LieElement::term({fam, m + n}, ParamScalar::rational(Rat(coeff)));
    };
    switch (x.family) {
        case Family::L:
            switch (y.family) {
                case Family::L: return result(m - n, Family::L);
                case Family::Y: return result(-(m + n), Family::Y);
                case Family::M: return result(-(3L * m + n), Family::M);
            }
            break;
        case Family::Y:
            switch (y.family) {
                case Family::L: return result(m + n, Family::Y); // -[L_n, Y_m]
                case Family::Y: return result(m - n, Family::M);
                case Family::M: return LieElement::zero();
            }
            break;
        case Family::M:
            switch (y.family) {
                case Family::L: return result(3L * n + m, Family::M); // -[L_n, M_m]
                default: return LieElement::zero();
            }
    }
    return LieElement::zero();
}

LieElement bracket(const LieElement& x, const LieElement& y) {
    LieElement out;
    for (const auto& [gx, cx] : x.terms())
        for (const auto& [gy, cy] : y.terms())
            out += bracket(gx, gy).scaled(cx * cy);
    return out;
}

namespace {

LieElement cyclic_jacobi_sum(Generator x, Generator y, Generator z) {
    return bracket(LieElement(x), bracket(y, z)) + bracket(LieElement(y), bracket(z, x)) +
           bracket(LieElement(z), bracket(x, y));
}

} // namespace

JacobiReport jacobi_check(int radius, int workers) {
    JacobiReport report;
    report.radius = radius;
    const Family fams[] = {Family::L, Family::Y, Family::M};

    std::vector<Generator> basis;
    for (Family f : fams)
        for (int m = -radius; m <= radius; ++m) basis.push_back({f, m});
    const size_t n = basis.size();
    report.triples_checked = long(n) * long(n) * long(n);

    if (workers < 1) workers = 1;
    std::vector<std::vector<JacobiFailure>> partial(static_cast<size_t>(workers));
    auto run = [&](int w) {
        for (size_t i = size_t(w); i < n; i += size_t(workers))
            for (size_t j = 0; j < n; ++j)
                for (size_t k = 0; k < n; ++k) {
                    LieElement sum = cyclic_jacobi_sum(basis[i], basis[j], basis[k]);
                    if (!sum.is_zero())
                        partial[size_t(w)].push_back({basis[i], basis[j], basis[k], sum});
                }
    };
    if (workers == 1) {
        run(0);
    } else {
        std::vector<std::thread> pool;
        for (int w = 0; w < workers; ++w) pool.emplace_back(run, w);
        for (auto& th : pool) th.join();
    }
    for (auto& part : partial)
        report.failures.insert(report.failures.end(), part.begin(), part.end());
    return report;
}

} // namespace tsv
