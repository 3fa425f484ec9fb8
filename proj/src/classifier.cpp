#include "tsv/classifier.hpp"

#include <limits>
#include <sstream>

#include "tsv/errors.hpp"

namespace tsv {

namespace {

ParamScalar rat(long num, long den = 1) {
    return ParamScalar::rational(Rat(num, den));
}

CarrierPoly t_poly() { return CarrierPoly::variable(Var::t); }
CarrierPoly v_poly() { return CarrierPoly::variable(Var::v); }
CarrierPoly s_poly() { return CarrierPoly::variable(Var::s); }

std::string at_m(int m) { return " at m = " + std::to_string(m); }

} // namespace

const StageResult* RecognitionReport::stage(const std::string& tag) const {
    for (const auto& s : stages)
        if (s.tag == tag) return &s;
    return nullptr;
}

ShapeOutcome check_shapes(const ActionWindow& window) {
    window.validate();
    ShapeOutcome out;
    auto stage = [&](const char* tag, auto&& condition) -> bool {
        for (const auto& [m, entry] : window.entries) {
            std::string why = condition(m, entry);
            if (!why.empty()) {
                out.stages.push_back({tag, false, why});
                return false;
            }
        }
        out.stages.push_back({tag, true, ""});
        return true;
    };

    bool ok = stage("L3.2", [](int m, const WindowEntry& e) -> std::string {
        if (e.a.is_zero()) return "a_m vanishes" + at_m(m);
        return "";
    });
    ok = ok && stage("L3.3", [](int m, const WindowEntry& e) -> std::string {
        if (e.a.depends_on(Var::s)) return "a_m depends on s" + at_m(m);
        return "";
    });
    ok = ok && stage("L3.4", [](int m, const WindowEntry& e) -> std::string {
        if (e.a.depends_on(Var::v)) return "a_m depends on v" + at_m(m);
        if (e.p.depends_on(Var::s)) return "p_m depends on s" + at_m(m);
        return "";
    });
    ok = ok && stage("L3.5", [](int m, const WindowEntry& e) -> std::string {
        auto deg = e.g.degree_in(Var::s);
        if (!deg || *deg != 1) return "g_m is not degree 1 in s" + at_m(m);
        if (e.g.coeff_of(Var::s, 1).depends_on(Var::v))
            return "s-coefficient of g_m depends on v" + at_m(m);
        return "";
    });
    if (!ok) return out;

    // lambda from a_1 = lambda * t
    const CarrierPoly& a1 = window.at(1).a;
    ParamScalar lambda;
    bool lambda_ok = false;
    if (a1.term_count() == 1) {
        const auto& [mono, c] = *a1.terms().begin();
        if (mono == Mono{0, 1, 0} && c.invertible()) {
            lambda = c;
            lambda_ok = true;
        }
    }
    if (!lambda_ok) {
        out.stages.push_back({"L3.6", false, "a_1 is not an invertible multiple of t: " + a1.str()});
        return out;
    }
    for (const auto& [m, entry] : window.entries) {
        if (entry.a != t_poly().scaled(lambda.pow(m))) {
            out.stages.push_back(
                {"L3.6", false, "a_m differs from lambda^m * t" + at_m(m) + ": " + entry.a.str()});
            return out;
        }
    }
    out.stages.push_back({"L3.6", true, ""});
    out.lambda = lambda;
    return out;
}

std::optional<PFit> fit_p(const ActionWindow& window, const ParamScalar& lambda,
                          FitError& error) {
    if (window.radius < 2) {
        error.message = "window radius must be at least 2 to fit the p data";
        return std::nullopt;
    }
    auto reduced = [&](int m) {
        return window.at(m).p.scaled(lambda.pow(-m)) - v_poly();
    };
    CarrierPoly r1 = reduced(1), r_1 = reduced(-1);
    CarrierPoly tau_total = (r1 - r_1).scaled(rat(1, 2));
    CarrierPoly even = (r1 + r_1).scaled(rat(1, 2));

    if (tau_total.depends_on(Var::s)) {
        error.message = "odd part of p depends on s";
        error.residuals[1] = tau_total;
        return std::nullopt;
    }
    if (!tau_total.divisible_by_t_pow(1) && !tau_total.is_zero()) {
        error.message = "tau data escapes t*Q[t] (constant term in t)";
        error.residuals[1] = tau_total;
        return std::nullopt;
    }
    if (even.depends_on(Var::s) || even.depends_on(Var::v) ||
        even.degree_in(Var::t).value_or(0) > 1) {
        error.message = "even part of p is not of the form a*t + b";
        error.residuals[1] = even;
        return std::nullopt;
    }
    PFit fit;
    fit.a = even.coeff_of_t_monomial(1);
    fit.b = even.coeff_of_t_monomial(0);

    CarrierPoly even2 = (reduced(2) + reduced(-2)).scaled(rat(1, 2));
    CarrierPoly expected2 = t_poly().scaled(fit.a * rat(4)) + CarrierPoly::constant(fit.b);
    if (even2 != expected2) {
        error.message = "cross-check at m = +-2 fails for a*t + b";
        error.residuals[2] = even2 - expected2;
        return std::nullopt;
    }

    int q = tau_total.degree_in(Var::v).value_or(0);
    fit.q = q;
    fit.tau.resize(size_t(q) + 1);
    for (int i = 0; i <= q; ++i) fit.tau[size_t(i)] = tau_total.coeff_of(Var::v, i);

    // closed form must hold at every window index
    for (const auto& [m, entry] : window.entries) {
        CarrierPoly expected;
        if (m != 0)
            expected = tau_total.scaled(rat(m)) + t_poly().scaled(fit.a * rat(long(m) * m)) +
                       CarrierPoly::constant(fit.b);
        CarrierPoly residual = reduced(m) - expected;
        if (!residual.is_zero()) {
            error.message = "p_m deviates from the fitted closed form" + at_m(m);
            error.residuals[m] = residual;
            return std::nullopt;
        }
    }
    return fit;
}

std::optional<std::map<int, CarrierPoly>> fit_g(const ActionWindow& window,
                                                const ParamScalar& lambda, const PFit& pfit,
                                                FitError& error) {
    PhiParams shape;
    shape.lambda = lambda;
    shape.a = pfit.a;
    shape.b = pfit.b;
    shape.q = pfit.q;
    shape.tau = pfit.tau;

    std::map<int, CarrierPoly> gamma;
    for (const auto& [m, entry] : window.entries) {
        // predicted g_m with gamma_m = 0; the leftover times t is gamma_m
        CarrierPoly predicted = act_L(shape, m, CarrierPoly::one());
        CarrierPoly leftover = entry.g.scaled(lambda.pow(-m)) - predicted.scaled(lambda.pow(-m));
        if (leftover.depends_on(Var::s) || leftover.depends_on(Var::v)) {
            error.message = "g_m residual is not a polynomial in t alone" + at_m(m);
            error.residuals[m] = leftover;
            return std::nullopt;
        }
        CarrierPoly gamma_m = leftover.mul_var_pow(Var::t, 1);
        if (m == 0 && !gamma_m.is_zero()) {
            error.message = "gamma_0 must vanish";
            error.residuals[0] = gamma_m;
            return std::nullopt;
        }
        if (!gamma_m.is_zero()) gamma.emplace(m, gamma_m);
    }
    return gamma;
}

RecognitionReport recognize(const ActionWindow& window, int verify_degree) {
    RecognitionReport report;
    ShapeOutcome shapes = check_shapes(window);
    report.stages = shapes.stages;
    if (!shapes.lambda) return report;

    FitError error;
    auto pfit = fit_p(window, *shapes.lambda, error);
    if (!pfit) {
        report.stages.push_back({"L3.9", false, error.message});
        report.residuals = error.residuals;
        return report;
    }
    report.stages.push_back({"L3.9", true, ""});

    auto gamma = fit_g(window, *shapes.lambda, *pfit, error);
    if (!gamma) {
        report.stages.push_back({"L3.10", false, error.message});
        report.residuals = error.residuals;
        return report;
    }
    report.stages.push_back({"L3.10", true, ""});

    PhiParams params;
    params.lambda = *shapes.lambda;
    params.a = pfit->a;
    params.b = pfit->b;
    params.q = pfit->q;
    params.tau = pfit->tau;
    params.gamma = *gamma;
    params = params.canonical();

    report.verify_radius = (window.radius + 1) / 2;
    VerifyReport verify = verify_module(params, report.verify_radius, verify_degree);
    if (!verify.ok()) {
        std::ostringstream os;
        os << verify.failures.size() << " bracket failure(s), families:";
        for (const auto& fam : verify.failing_families()) os << " " << fam;
        report.stages.push_back({"verify", false, os.str()});
        for (const auto& f : verify.failures)
            report.residuals.emplace(f.m, f.residual);
        return report;
    }
    report.stages.push_back({"verify", true, ""});
    report.fitted = std::move(params);
    return report;
}

IsoResult iso_check(const PhiParams& x, const PhiParams& y) {
    IsoResult out;
    out.raw_equal = (x == y);
    PhiParams cx = x.canonical(), cy = y.canonical();
    auto differ = [&](const std::string& witness) {
        out.isomorphic = false;
        out.witness = witness;
        return out;
    };
    if (cx.lambda != cy.lambda) return differ("lambda");
    if (cx.a != cy.a) return differ("a");
    if (cx.b != cy.b) return differ("b");
    if (cx.q != cy.q) return differ("q");
    for (int i = 0; i <= cx.q; ++i)
        if (cx.tau[size_t(i)] != cy.tau[size_t(i)])
            return differ("tau[" + std::to_string(i) + "]");
    // union of supported gamma indices, in order
    auto itx = cx.gamma.begin();
    auto ity = cy.gamma.begin();
    while (itx != cx.gamma.end() || ity != cy.gamma.end()) {
        int jx = itx != cx.gamma.end() ? itx->first : std::numeric_limits<int>::max();
        int jy = ity != cy.gamma.end() ? ity->first : std::numeric_limits<int>::max();
        if (jx < jy) return differ("gamma[" + std::to_string(jx) + "]");
        if (jy < jx) return differ("gamma[" + std::to_string(jy) + "]");
        if (itx->second != ity->second) return differ("gamma[" + std::to_string(jx) + "]");
        ++itx;
        ++ity;
    }
    out.isomorphic = true;
    return out;
}

} // namespace tsv
