#include "tsv/phi_module.hpp"

#include <algorithm>
#include <set>
#include <thread>
#include <tuple>

#include "tsv/errors.hpp"

namespace tsv {

namespace {

CarrierPoly t_poly() { return CarrierPoly::variable(Var::t); }
CarrierPoly v_poly() { return CarrierPoly::variable(Var::v); }
CarrierPoly s_poly() { return CarrierPoly::variable(Var::s); }

ParamScalar rat(long num, long den = 1) {
    return ParamScalar::rational(Rat(num, den));
}

void require_t_only(const CarrierPoly& p, const char* what, const std::string& where) {
    if (p.depends_on(Var::s) || p.depends_on(Var::v))
        throw InvalidParams(std::string(what) + " must be a polynomial in t only: " + where);
    if (!p.divisible_by_t_pow(1) && !p.is_zero())
        throw InvalidParams(std::string(what) + " must lie in t*Q[t] (zero constant term): " +
                            where);
}

} // namespace

PhiParams PhiParams::symbolic() {
    PhiParams p;
    p.lambda = ParamScalar::lambda();
    p.a = ParamScalar::sym_a();
    p.b = ParamScalar::sym_b();
    p.q = 0;
    p.tau = {CarrierPoly::zero()};
    return p;
}

void PhiParams::validate() const {
    if (!lambda.invertible() || lambda.is_zero())
        throw InvalidParams("lambda must be a nonzero invertible scalar");
    if (q < 0 || tau.size() != size_t(q) + 1)
        throw InvalidParams("tau must hold entries tau_0..tau_q");
    for (size_t i = 0; i < tau.size(); ++i)
        require_t_only(tau[i], "tau in t*Q[t]: tau", "tau[" + std::to_string(i) + "]");
    for (const auto& [j, poly] : gamma) {
        if (j == 0 && !poly.is_zero())
            throw InvalidParams("gamma_0 must be zero");
        require_t_only(poly, "gamma in t*Q[t]: gamma", "gamma[" + std::to_string(j) + "]");
    }
}

CarrierPoly PhiParams::gamma_at(int m) const {
    auto it = gamma.find(m);
    return it == gamma.end() ? CarrierPoly::zero() : it->second;
}

CarrierPoly PhiParams::tau_sum() const {
    CarrierPoly sum;
    for (size_t i = 0; i < tau.size(); ++i) sum += tau[i].mul_var_pow(Var::v, int(i));
    return sum;
}

PhiParams PhiParams::canonical() const {
    PhiParams out = *this;
    while (out.q > 0 && out.tau.back().is_zero()) {
        out.tau.pop_back();
        --out.q;
    }
    for (auto it = out.gamma.begin(); it != out.gamma.end();)
        it = it->second.is_zero() ? out.gamma.erase(it) : std::next(it);
    return out;
}

const char* mutation_name(Mutation m) {
    switch (m) {
        case Mutation::none: return "none";
        case Mutation::drop_dt: return "drop-dt";
        case Mutation::drop_d2v: return "drop-d2v";
        case Mutation::flip_sign_yy: return "flip-sign-YY";
        default: return "perturb-gamma";
    }
}

Mutation parse_mutation(const std::string& name) {
    for (Mutation m : {Mutation::none, Mutation::drop_dt, Mutation::drop_d2v,
                       Mutation::flip_sign_yy, Mutation::perturb_gamma})
        if (name == mutation_name(m)) return m;
    throw ParseError("unknown mutation: '" + name + "'");
}

namespace {

// The part of the L_m shift multiplier that still carries the common
// denominator t: m * [ sum_i (-tau_i + 3/(i+1) tau_i - 3t/(i+1) tau_i')
// v^(i+1) - m/2 t sum_i i tau_i v^(i-1) - m/2 (sum tau_i v^i)^2 + 3amtv
// - (am^2 t + b) sum tau_i v^i ].
CarrierPoly shift_numerator(const PhiParams& params, int m) {
    CarrierPoly sum;
    for (size_t i = 0; i < params.tau.size(); ++i) {
        CarrierPoly piece = params.tau[i].scaled(rat(-1) + rat(3, long(i) + 1)) -
                            (t_poly() * params.tau[i].d_dt()).scaled(rat(3, long(i) + 1));
        sum += piece.mul_var_pow(Var::v, int(i) + 1);
    }
    CarrierPoly dv_tau;
    for (size_t i = 1; i < params.tau.size(); ++i)
        dv_tau += params.tau[i].scaled(rat(long(i))).mul_var_pow(Var::v, int(i) - 1);
    sum -= (t_poly() * dv_tau).scaled(rat(m, 2));
    CarrierPoly tau_total = params.tau_sum();
    sum -= (tau_total * tau_total).scaled(rat(m, 2));
    sum += (t_poly() * v_poly()).scaled(params.a * rat(3 * long(m)));
    sum -= tau_total * (t_poly().scaled(params.a * rat(long(m) * m)) +
                        CarrierPoly::constant(params.b));
    return sum.scaled(rat(m));
}

} // namespace

CarrierPoly bracket_compatible_gamma(const ParamScalar& a, const ParamScalar& b,
                                     const CarrierPoly& g, int index) {
    long j = index;
    CarrierPoly out = g.scaled(rat(j));
    out += t_poly().scaled(a * b * rat(3 * j * j));
    out -= t_poly().mul_var_pow(Var::t, 1).scaled(a * a * rat(3 * j * j * j * j, 2));
    return out;
}

CarrierPoly act_M(const PhiParams& params, int m, const CarrierPoly& f) {
    return (t_poly() * f.shift_s(m)).scaled(params.lambda.pow(m));
}

CarrierPoly act_Y(const PhiParams& params, int m, const CarrierPoly& f, Mutation mutation) {
    CarrierPoly shifted = f.shift_s(m);
    CarrierPoly mult = params.tau_sum().scaled(rat(m)) + v_poly() +
                       t_poly().scaled(params.a * rat(long(m) * m));
    if (m != 0) mult += CarrierPoly::constant(params.b);
    CarrierPoly deriv = (t_poly() * shifted.d_dv()).scaled(rat(m));
    if (mutation == Mutation::flip_sign_yy) deriv = -deriv;
    return (mult * shifted + deriv).scaled(params.lambda.pow(m));
}

CarrierPoly act_L(const PhiParams& params, int m, const CarrierPoly& f, Mutation mutation) {
    CarrierPoly gamma_m = params.gamma_at(m);
    if (mutation == Mutation::perturb_gamma && m > 0)
        gamma_m += t_poly().mul_var_pow(Var::t, 1);
    CarrierPoly numerator = shift_numerator(params, m) + gamma_m;
    CarrierPoly mult = s_poly() + numerator.exact_div_t();

    CarrierPoly shifted = f.shift_s(m);
    CarrierPoly out = mult * shifted;
    if (mutation != Mutation::drop_dt)
        out -= (t_poly() * shifted.d_dt()).scaled(rat(3L * m));
    CarrierPoly dv_mult = params.tau_sum().scaled(rat(m)) + v_poly() +
                          t_poly().scaled(params.a * rat(long(m) * m)) +
                          CarrierPoly::constant(params.b);
    out -= (dv_mult * shifted.d_dv()).scaled(rat(m));
    if (mutation != Mutation::drop_d2v)
        out -= (t_poly() * shifted.d_dv().d_dv()).scaled(rat(long(m) * m, 2));
    return out.scaled(params.lambda.pow(m));
}

CarrierPoly act(const PhiParams& params, Generator gen, const CarrierPoly& f,
                Mutation mutation) {
    switch (gen.family) {
        case Family::L: return act_L(params, gen.index, f, mutation);
        case Family::Y: return act_Y(params, gen.index, f, mutation);
        default: return act_M(params, gen.index, f);
    }
}

CarrierPoly act(const PhiParams& params, const LieElement& x, const CarrierPoly& f,
                Mutation mutation) {
    CarrierPoly out;
    for (const auto& [gen, c] : x.terms()) out += act(params, gen, f, mutation).scaled(c);
    return out;
}

void ActionWindow::validate() const {
    auto it = entries.find(0);
    if (it == entries.end())
        throw MalformedWindow("window is missing the m = 0 anchor entry");
    if (it->second.g != s_poly() || it->second.a != t_poly() || it->second.p != v_poly())
        throw MalformedWindow("window anchor at m = 0 must be (s, t, v)");
    for (const auto& [m, entry] : entries)
        if (m < -radius || m > radius)
            throw MalformedWindow("window entry index " + std::to_string(m) +
                                  " outside radius " + std::to_string(radius));
    for (int m = -radius; m <= radius; ++m)
        if (!entries.contains(m))
            throw MalformedWindow("window has no entry for m = " + std::to_string(m));
}

const WindowEntry& ActionWindow::at(int m) const {
    auto it = entries.find(m);
    if (it == entries.end()) throw IndexOutsideWindow(m, radius);
    return it->second;
}

ActionWindow export_window(const PhiParams& params, int radius) {
    ActionWindow window;
    window.radius = radius;
    CarrierPoly unit = CarrierPoly::one();
    for (int m = -radius; m <= radius; ++m)
        window.entries.emplace(
            m, WindowEntry{act_L(params, m, unit), act_M(params, m, unit),
                           act_Y(params, m, unit)});
    return window;
}

CarrierPoly act_generic(const ActionWindow& window, Generator gen, const CarrierPoly& u) {
    const int m = gen.index;
    if (m < -window.radius || m > window.radius) throw IndexOutsideWindow(m, window.radius);
    const WindowEntry& e = window.at(m);
    CarrierPoly shifted = u.shift_s(m);
    switch (gen.family) {
        case Family::M:
            return shifted * e.a;
        case Family::Y:
            return shifted.d_dv().scaled(rat(m)) * e.a + shifted * e.p;
        default:
            return shifted.d_dt().scaled(rat(-3L * m)) * e.a + shifted * e.g -
                   shifted.d_dv().scaled(rat(m)) * e.p -
                   shifted.d_dv().d_dv().scaled(rat(long(m) * m, 2)) * e.a;
    }
}

std::vector<std::string> VerifyReport::failing_families() const {
    std::set<std::string> names;
    for (const auto& f : failures)
        names.insert(std::string("[") + family_name(f.x) + "," + family_name(f.z) + "]");
    return {names.begin(), names.end()};
}

VerifyReport verify_module(const PhiParams& params, int radius, int degree, Mutation mutation,
                           int workers) {
    VerifyReport report;
    report.radius = radius;
    report.degree = degree;

    const Family fams[] = {Family::L, Family::Y, Family::M};
    struct Pair {
        Generator x, z;
    };
    std::vector<Pair> pairs;
    for (Family fx : fams)
        for (Family fz : fams)
            for (int m = -radius; m <= radius; ++m)
                for (int n = -radius; n <= radius; ++n)
                    pairs.push_back({{fx, m}, {fz, n}});
    report.pairs_checked = long(pairs.size());

    std::vector<Mono> monos;
    for (int i = 0; i <= degree; ++i)
        for (int j = 0; j <= degree; ++j)
            for (int k = 0; k <= degree; ++k) monos.push_back({i, j, k});
    report.evaluations = report.pairs_checked * long(monos.size());

    if (workers < 1) workers = 1;
    std::vector<std::vector<VerifyFailure>> partial(static_cast<size_t>(workers));
    auto run = [&](int w) {
        for (size_t idx = size_t(w); idx < pairs.size(); idx += size_t(workers)) {
            const auto& [x, z] = pairs[idx];
            LieElement br = bracket(x, z);
            for (const Mono& mono : monos) {
                CarrierPoly f = CarrierPoly::monomial(mono, ParamScalar::one());
                CarrierPoly lhs = act(params, x, act(params, z, f, mutation), mutation) -
                                  act(params, z, act(params, x, f, mutation), mutation);
                CarrierPoly rhs = act(params, br, f, mutation);
                CarrierPoly residual = lhs - rhs;
                if (!residual.is_zero())
                    partial[size_t(w)].push_back(
                        {x.family, z.family, x.index, z.index, mono, residual});
            }
        }
    };
    if (workers == 1) {
        run(0);
    } else {
        std::vector<std::thread> pool;
        for (int w = 0; w < workers; ++w) pool.emplace_back(run, w);
        for (auto& th : pool) th.join();
    }
    // deterministic order regardless of partitioning
    for (auto& part : partial)
        report.failures.insert(report.failures.end(), part.begin(), part.end());
    std::sort(report.failures.begin(), report.failures.end(), [](const auto& x, const auto& y) {
        return std::tuple(x.x, x.m, x.z, x.n, x.monomial) <
               std::tuple(y.x, y.m, y.z, y.n, y.monomial);
    });
    return report;
}

ClosureReport submodule_check(const PhiParams& params, int k, int radius, int degree) {
    ClosureReport report;
    const Family fams[] = {Family::L, Family::Y, Family::M};
    for (Family fam : fams)
        for (int m = -radius; m <= radius; ++m)
            for (int i = 0; i <= degree; ++i)
                for (int j = 0; j <= degree; ++j)
                    for (int kk = 0; kk <= degree; ++kk) {
                        Mono mono{i, j, kk};
                        CarrierPoly f =
                            CarrierPoly::monomial(mono, ParamScalar::one()).mul_var_pow(Var::t, k);
                        CarrierPoly image = act(params, {fam, m}, f);
                        ++report.checks;
                        if (!image.divisible_by_t_pow(k))
                            report.failures.push_back({{fam, m}, mono, image});
                    }
    return report;
}

CarrierPoly act_quotient(const PhiParams& params, int k, Generator gen, const CarrierPoly& f) {
    if (f.depends_on(Var::t))
        throw TDependentInput("quotient representative must be t-free: " + f.str());
    const int m = gen.index;
    CarrierPoly shifted = f.shift_s(m);
    switch (gen.family) {
        case Family::M:
            return CarrierPoly::zero();
        case Family::Y: {
            CarrierPoly mult = v_poly();
            if (m != 0) mult += CarrierPoly::constant(params.b);
            return (mult * shifted).scaled(params.lambda.pow(m));
        }
        default: {
            CarrierPoly v_plus_b = v_poly() + CarrierPoly::constant(params.b);
            // t-linear coefficients of tau_i and gamma_m drive the quotient
            CarrierPoly tau1_sum;
            for (size_t i = 0; i < params.tau.size(); ++i)
                tau1_sum += CarrierPoly::constant(params.tau[i].coeff_of_t_monomial(1))
                                .mul_var_pow(Var::v, int(i));
            ParamScalar gamma1 = params.gamma_at(m).coeff_of_t_monomial(1);
            CarrierPoly mult = s_poly() +
                               (v_poly().scaled(params.a * rat(3L * m)) - tau1_sum * v_plus_b)
                                   .scaled(rat(m)) +
                               CarrierPoly::constant(gamma1) + CarrierPoly::rational(Rat(-3L * m * k));
            CarrierPoly out = mult * shifted - (v_plus_b * shifted.d_dv()).scaled(rat(m));
            return out.scaled(params.lambda.pow(m));
        }
    }
}

CarrierPoly act_quotient_oracle(const PhiParams& params, int k, Generator gen,
                                const CarrierPoly& f) {
    if (f.depends_on(Var::t))
        throw TDependentInput("quotient representative must be t-free: " + f.str());
    CarrierPoly full = act(params, gen, f.mul_var_pow(Var::t, k));
    if (!full.divisible_by_t_pow(k))
        throw Error("action leaked below t^k; submodule closure violated: " + full.str());
    return full.coeff_of(Var::t, k);
}

ClosureReport filtration_check(const PhiParams& params, int k, int j, int radius, int degree) {
    ClosureReport report;
    CarrierPoly v_plus_b = v_poly() + CarrierPoly::constant(params.b);
    CarrierPoly power = v_plus_b.pow(j);
    const Family fams[] = {Family::L, Family::Y, Family::M};
    for (Family fam : fams)
        for (int m = -radius; m <= radius; ++m)
            for (int i = 0; i <= degree; ++i)
                for (int kk = 0; kk <= degree; ++kk) {
                    Mono mono{i, 0, kk};
                    CarrierPoly h = CarrierPoly::monomial(mono, ParamScalar::one());
                    CarrierPoly image = act_quotient(params, k, {fam, m}, power * h);
                    ++report.checks;
                    CarrierPoly rest = image;
                    bool divisible = true;
                    for (int step = 0; step < j && divisible; ++step) {
                        auto [quot, rem] = rest.divmod_v_plus(params.b);
                        if (!rem.is_zero())
                            divisible = false;
                        else
                            rest = quot;
                    }
                    if (!divisible) report.failures.push_back({{fam, m}, mono, image});
                }
    return report;
}

} // namespace tsv
