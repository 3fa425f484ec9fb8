// Batch command-line surface for the tsv toolkit.
//
// Exit codes: 0 = all checks pass, 1 = a mathematical check failed,
// 2 = input/usage error.

#include <CLI11.hpp>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>

#include "tsv/classifier.hpp"
#include "tsv/errors.hpp"
#include "tsv/io.hpp"
#include "tsv/phi_module.hpp"
#include "tsv/straighten.hpp"

namespace {

constexpr int kExitPass = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitUsage = 2;

int worker_count() {
    if (const char* env = std::getenv("TSV_WORKERS")) {
        int n = std::atoi(env);
        if (n >= 1) return n;
    }
    return 1;
}

struct ModeOptions {
    std::string lambda0, a0, b0;

    bool concrete() const { return !lambda0.empty() || !a0.empty() || !b0.empty(); }

    tsv::PhiParams apply(tsv::PhiParams params) const {
        using tsv::ParamScalar;
        auto specialize_poly = [&](const tsv::CarrierPoly& p, const tsv::Rat& l0,
                                   const tsv::Rat& a0r, const tsv::Rat& b0r) {
            tsv::CarrierPoly out;
            for (const auto& [m, c] : p.terms())
                out += tsv::CarrierPoly::monomial(
                    m, ParamScalar::rational(c.specialize(l0, a0r, b0r)));
            return out;
        };
        if (!concrete()) return params;
        tsv::Rat l0 = lambda0.empty() ? tsv::Rat(1) : tsv::parse_rational(lambda0);
        tsv::Rat a0r = a0.empty() ? tsv::Rat(0) : tsv::parse_rational(a0);
        tsv::Rat b0r = b0.empty() ? tsv::Rat(0) : tsv::parse_rational(b0);
        if (l0 == 0) throw tsv::ZeroLambda();
        if (!lambda0.empty()) params.lambda = ParamScalar::rational(l0);
        if (!a0.empty()) params.a = ParamScalar::rational(params.a.specialize(l0, a0r, b0r));
        if (!b0.empty()) params.b = ParamScalar::rational(params.b.specialize(l0, a0r, b0r));
        for (auto& tau : params.tau) tau = specialize_poly(tau, l0, a0r, b0r);
        for (auto& [j, poly] : params.gamma) poly = specialize_poly(poly, l0, a0r, b0r);
        return params;
    }
};

void add_mode_options(CLI::App* cmd, ModeOptions& mode) {
    cmd->add_option("--lambda0", mode.lambda0, "specialize lambda to a nonzero rational");
    cmd->add_option("--a0", mode.a0, "specialize a to a rational");
    cmd->add_option("--b0", mode.b0, "specialize b to a rational");
}

std::string poly_argument(const std::string& text) {
    if (!text.empty() && text[0] == '@') return tsv::read_file(text.substr(1));
    return text;
}

void print_verify_text(const tsv::VerifyReport& report) {
    std::cout << "bracket check: radius " << report.radius << ", degree " << report.degree
              << ", " << report.pairs_checked << " ordered pairs, " << report.evaluations
              << " evaluations\n";
    for (const auto& f : report.failures) {
        tsv::CarrierPoly mono = tsv::CarrierPoly::monomial(f.monomial, tsv::ParamScalar::one());
        std::cout << "FAIL [" << tsv::family_name(f.x) << "," << tsv::family_name(f.z) << "] m="
                  << f.m << " n=" << f.n << " on " << mono.str() << ": residual "
                  << f.residual.str() << "\n";
    }
    std::cout << (report.ok() ? "verify: PASS" : "verify: FAIL") << "\n";
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact computations in a twisted Schroedinger-Virasoro algebra"};
    app.require_subcommand(1);

    // act
    auto* act_cmd = app.add_subcommand("act", "apply a generator to a polynomial");
    std::string act_params, act_gen, act_poly;
    ModeOptions act_mode;
    act_cmd->add_option("--params", act_params, "params document (JSON)")->required();
    act_cmd->add_option("--gen", act_gen, "generator literal, e.g. L[1]")->required();
    act_cmd->add_option("--f", act_poly, "polynomial (inline text or @file)")->required();
    add_mode_options(act_cmd, act_mode);

    // straighten
    auto* str_cmd = app.add_subcommand("straighten", "normal-order a generator past a monomial");
    std::string str_gen, str_poly;
    str_cmd->add_option("--gen", str_gen, "generator literal")->required();
    str_cmd->add_option("--mono", str_poly, "monomial or polynomial in s,t,v")->required();

    // verify
    auto* verify_cmd = app.add_subcommand("verify", "bracket-compatibility verification");
    std::string verify_params, verify_mutate;
    int verify_radius = 3, verify_degree = 2, verify_jacobi = 0;
    int verify_submodule = -1, verify_filtration = -1;
    ModeOptions verify_mode;
    verify_cmd->add_option("--params", verify_params, "params document (JSON)");
    verify_cmd->add_option("--radius", verify_radius, "window radius (default 3)");
    verify_cmd->add_option("--degree", verify_degree, "max test-monomial degree (default 2)");
    verify_cmd->add_option("--mutate", verify_mutate,
                           "named formula mutation: drop-dt | drop-d2v | flip-sign-YY | "
                           "perturb-gamma");
    verify_cmd->add_option("--jacobi", verify_jacobi, "also sweep the Jacobi identity at radius N");
    verify_cmd->add_option("--submodule", verify_submodule, "also check t^k closure for this k");
    verify_cmd->add_option("--filtration", verify_filtration,
                           "also check (v+b)^j closure for this j (k from --submodule, default 0)");
    add_mode_options(verify_cmd, verify_mode);

    // jacobi
    auto* jacobi_cmd = app.add_subcommand("jacobi", "exhaustive Jacobi-identity sweep");
    int jacobi_radius = 5;
    jacobi_cmd->add_option("--radius", jacobi_radius, "index window radius (default 5)");

    // classify
    auto* classify_cmd = app.add_subcommand("classify", "recognize a candidate action window");
    std::string classify_window, classify_format = "text";
    classify_cmd->add_option("--window", classify_window, "window document (JSON)")->required();
    classify_cmd->add_option("--format", classify_format, "text | json");

    // iso
    auto* iso_cmd = app.add_subcommand("iso", "decide isomorphism of two parameter sets");
    std::string iso_left, iso_right;
    iso_cmd->add_option("left", iso_left, "first params document")->required();
    iso_cmd->add_option("right", iso_right, "second params document")->required();

    // quotient
    auto* quot_cmd = app.add_subcommand("quotient", "action on t^k C[s,v]");
    std::string quot_params, quot_gen, quot_poly;
    int quot_k = 0;
    bool quot_oracle = false;
    quot_cmd->add_option("--params", quot_params, "params document (JSON)")->required();
    quot_cmd->add_option("--k", quot_k, "power of t defining the layer");
    quot_cmd->add_option("--gen", quot_gen, "generator literal")->required();
    quot_cmd->add_option("--f", quot_poly, "polynomial in s,v (inline or @file)")->required();
    quot_cmd->add_flag("--oracle-check", quot_oracle,
                       "also compare with the induced-action route");

    // export-window
    auto* export_cmd = app.add_subcommand("export-window", "action-on-1 data of a params set");
    std::string export_params, export_out;
    int export_radius = 3;
    export_cmd->add_option("--params", export_params, "params document (JSON)")->required();
    export_cmd->add_option("--radius", export_radius, "window radius (default 3)");
    export_cmd->add_option("--out", export_out, "output path (stdout when omitted)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kExitPass : kExitUsage;
    }

    try {
        if (*act_cmd) {
            tsv::PhiParams params =
                act_mode.apply(tsv::params_from_json(tsv::read_file(act_params)));
            tsv::Generator gen = tsv::parse_generator(act_gen);
            tsv::CarrierPoly f = tsv::parse_poly(poly_argument(act_poly));
            std::cout << tsv::act(params, gen, f).str() << "\n";
            return kExitPass;
        }
        if (*str_cmd) {
            tsv::Generator gen = tsv::parse_generator(str_gen);
            tsv::CarrierPoly f = tsv::parse_poly(poly_argument(str_poly));
            std::cout << tsv::straighten(gen, f).str() << "\n";
            return kExitPass;
        }
        if (*verify_cmd) {
            bool all_ok = true;
            bool ran_any = false;
            if (verify_jacobi > 0) {
                tsv::JacobiReport jr = tsv::jacobi_check(verify_jacobi, worker_count());
                std::cout << "jacobi: radius " << jr.radius << ", " << jr.triples_checked
                          << " triples, " << jr.failures.size() << " failure(s)\n";
                all_ok = all_ok && jr.ok();
                ran_any = true;
            }
            if (!verify_params.empty()) {
                tsv::PhiParams params =
                    verify_mode.apply(tsv::params_from_json(tsv::read_file(verify_params)));
                tsv::Mutation mutation = verify_mutate.empty()
                                             ? tsv::Mutation::none
                                             : tsv::parse_mutation(verify_mutate);
                tsv::VerifyReport report = tsv::verify_module(params, verify_radius,
                                                              verify_degree, mutation,
                                                              worker_count());
                print_verify_text(report);
                all_ok = all_ok && report.ok();
                ran_any = true;
                if (verify_submodule >= 0) {
                    tsv::ClosureReport cr = tsv::submodule_check(params, verify_submodule,
                                                                 verify_radius, verify_degree);
                    std::cout << "submodule t^" << verify_submodule << ": " << cr.checks
                              << " checks, " << cr.failures.size() << " failure(s)\n";
                    all_ok = all_ok && cr.ok();
                }
                if (verify_filtration >= 0) {
                    int k = verify_submodule >= 0 ? verify_submodule : 0;
                    tsv::ClosureReport cr = tsv::filtration_check(
                        params, k, verify_filtration, verify_radius, verify_degree);
                    std::cout << "filtration (v+b)^" << verify_filtration << " over t^" << k
                              << ": " << cr.checks << " checks, " << cr.failures.size()
                              << " failure(s)\n";
                    all_ok = all_ok && cr.ok();
                }
            }
            if (!ran_any) {
                std::cerr << "verify: nothing to do (give --params and/or --jacobi)\n";
                return kExitUsage;
            }
            return all_ok ? kExitPass : kExitCheckFailed;
        }
        if (*jacobi_cmd) {
            tsv::JacobiReport report = tsv::jacobi_check(jacobi_radius, worker_count());
            std::cout << "jacobi: radius " << report.radius << ", " << report.triples_checked
                      << " triples, " << report.failures.size() << " failure(s)\n";
            for (const auto& f : report.failures)
                std::cout << "FAIL (" << f.x.str() << ", " << f.y.str() << ", " << f.z.str()
                          << "): " << f.cyclic_sum.str() << "\n";
            return report.ok() ? kExitPass : kExitCheckFailed;
        }
        if (*classify_cmd) {
            tsv::ActionWindow window = tsv::window_from_json(tsv::read_file(classify_window));
            tsv::RecognitionReport report = tsv::recognize(window);
            if (classify_format == "json") {
                std::cout << tsv::recognition_to_json(report);
            } else {
                for (const auto& stage : report.stages)
                    std::cout << stage.tag << ": " << (stage.pass ? "pass" : "FAIL")
                              << (stage.detail.empty() ? "" : "  (" + stage.detail + ")") << "\n";
                if (report.fitted) {
                    std::cout << "fitted parameters:\n" << tsv::params_to_json(*report.fitted);
                } else {
                    std::cout << "window rejected\n";
                    for (const auto& [m, poly] : report.residuals)
                        std::cout << "residual at m=" << m << ": " << poly.str() << "\n";
                }
            }
            return report.ok() ? kExitPass : kExitCheckFailed;
        }
        if (*iso_cmd) {
            tsv::PhiParams left = tsv::params_from_json(tsv::read_file(iso_left));
            tsv::PhiParams right = tsv::params_from_json(tsv::read_file(iso_right));
            tsv::IsoResult result = tsv::iso_check(left, right);
            if (result.isomorphic) {
                std::cout << "isomorphic\n";
                if (!result.raw_equal)
                    std::cout << "note: raw tuples differ (trailing zero tau entries or zero "
                                 "gamma entries)\n";
                return kExitPass;
            }
            std::cout << "not isomorphic, witness: " << result.witness << "\n";
            return kExitCheckFailed;
        }
        if (*quot_cmd) {
            tsv::PhiParams params = tsv::params_from_json(tsv::read_file(quot_params));
            tsv::Generator gen = tsv::parse_generator(quot_gen);
            tsv::CarrierPoly f = tsv::parse_poly(poly_argument(quot_poly));
            tsv::CarrierPoly result = tsv::act_quotient(params, quot_k, gen, f);
            std::cout << result.str() << "\n";
            if (quot_oracle) {
                tsv::CarrierPoly expected = tsv::act_quotient_oracle(params, quot_k, gen, f);
                if (result != expected) {
                    std::cout << "oracle mismatch: " << expected.str() << "\n";
                    return kExitCheckFailed;
                }
                std::cout << "oracle-check: PASS\n";
            }
            return kExitPass;
        }
        if (*export_cmd) {
            tsv::PhiParams params = tsv::params_from_json(tsv::read_file(export_params));
            tsv::ActionWindow window = tsv::export_window(params, export_radius);
            std::string doc = tsv::window_to_json(window);
            if (export_out.empty())
                std::cout << doc;
            else
                tsv::write_file(export_out, doc);
            return kExitPass;
        }
    } catch (const tsv::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}
