#include "tsv/io.hpp"

#include <cctype>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "tsv/errors.hpp"

namespace tsv {

namespace {

using nlohmann::json;

struct Lexer {
    std::string_view text;
    size_t pos = 0;

    void skip_ws() {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    }
    bool done() {
        skip_ws();
        return pos >= text.size();
    }
    char peek() {
        skip_ws();
        return pos < text.size() ? text[pos] : '\0';
    }
    bool consume(char c) {
        if (peek() == c) {
            ++pos;
            return true;
        }
        return false;
    }
};

long parse_integer(Lexer& lex) {
    lex.skip_ws();
    size_t start = lex.pos;
    if (lex.pos < lex.text.size() && (lex.text[lex.pos] == '-' || lex.text[lex.pos] == '+'))
        ++lex.pos;
    while (lex.pos < lex.text.size() && std::isdigit(static_cast<unsigned char>(lex.text[lex.pos])))
        ++lex.pos;
    if (lex.pos == start || (lex.pos == start + 1 && !std::isdigit(static_cast<unsigned char>(
                                                         lex.text[start]))))
        throw ParseError("expected integer at position " + std::to_string(start));
    return std::stol(std::string(lex.text.substr(start, lex.pos - start)));
}

Rat parse_number(Lexer& lex) {
    Int num(parse_integer(lex));
    if (lex.consume('/')) {
        Int den(parse_integer(lex));
        if (den == 0) throw ParseError("zero denominator");
        return Rat(num, den);
    }
    return Rat(num);
}

// one multiplicative factor onto the accumulating monomial
void parse_factor(Lexer& lex, Rat& coeff, ScalarExp& scalar, Mono& mono) {
    char c = lex.peek();
    if (std::isdigit(static_cast<unsigned char>(c))) {
        coeff *= parse_number(lex);
        return;
    }
    std::string name;
    while (lex.pos < lex.text.size() &&
           std::isalpha(static_cast<unsigned char>(lex.text[lex.pos])))
        name.push_back(lex.text[lex.pos++]);
    if (name.empty()) throw ParseError("expected factor at position " + std::to_string(lex.pos));
    long exp = 1;
    if (lex.consume('^')) exp = parse_integer(lex);
    auto bump = [&](int32_t& slot, bool allow_negative) {
        if (!allow_negative && exp < 0)
            throw ParseError("negative exponent on '" + name + "'");
        int64_t next = int64_t(slot) + exp;
        if (next > INT32_MAX || next < INT32_MIN) throw OverflowError("exponent overflow");
        slot = int32_t(next);
    };
    if (name == "lam")
        bump(scalar.lam, true);
    else if (name == "a")
        bump(scalar.a, false);
    else if (name == "b")
        bump(scalar.b, false);
    else if (name == "s")
        bump(mono.s, false);
    else if (name == "t")
        bump(mono.t, false);
    else if (name == "v")
        bump(mono.v, false);
    else
        throw ParseError("unknown symbol '" + name + "'");
}

CarrierPoly parse_expression(Lexer& lex) {
    CarrierPoly out;
    bool first = true;
    while (!lex.done()) {
        bool negative = false;
        if (!first) {
            if (lex.consume('+'))
                negative = false;
            else if (lex.consume('-'))
                negative = true;
            else
                throw ParseError("expected '+' or '-' at position " + std::to_string(lex.pos));
        } else {
            if (lex.consume('-')) negative = true;
            first = false;
        }
        Rat coeff(1);
        ScalarExp scalar;
        Mono mono;
        parse_factor(lex, coeff, scalar, mono);
        while (!lex.done() && lex.peek() != '+' && lex.peek() != '-') {
            lex.consume('*');
            if (lex.done()) break;
            parse_factor(lex, coeff, scalar, mono);
        }
        if (negative) coeff = -coeff;
        out += CarrierPoly::monomial(mono, ParamScalar::term(coeff, scalar));
    }
    return out;
}

json poly_terms_json(const CarrierPoly& p) {
    // univariate-in-t term list: [[exp, "coeff"], ...]
    json arr = json::array();
    for (const auto& [m, c] : p.terms()) arr.push_back({m.t, c.str()});
    return arr;
}

CarrierPoly poly_from_terms_json(const json& arr, const std::string& where) {
    if (!arr.is_array()) throw ParseError(where + ": expected a term list");
    CarrierPoly out;
    for (const auto& item : arr) {
        if (!item.is_array() || item.size() != 2 || !item[0].is_number_integer() ||
            !item[1].is_string())
            throw ParseError(where + ": each term must be [exponent, \"coefficient\"]");
        int exp = item[0].get<int>();
        if (exp < 0) throw ParseError(where + ": negative t exponent");
        ParamScalar c = parse_scalar(item[1].get<std::string>());
        out += CarrierPoly::monomial({0, exp, 0}, c);
    }
    return out;
}

ParamScalar scalar_field_from_json(const json& value, const std::string& where) {
    if (!value.is_string()) throw ParseError(where + ": expected a string");
    std::string text = value.get<std::string>();
    if (text == "sym") {
        if (where == "lambda") return ParamScalar::lambda();
        if (where == "a") return ParamScalar::sym_a();
        if (where == "b") return ParamScalar::sym_b();
    }
    return parse_scalar(text);
}

std::string scalar_field_to_json(const ParamScalar& value, const std::string& name) {
    if (name == "lambda" && value == ParamScalar::lambda()) return "sym";
    if (name == "a" && value == ParamScalar::sym_a()) return "sym";
    if (name == "b" && value == ParamScalar::sym_b()) return "sym";
    return value.str();
}

void require_schema(const json& doc, const std::string& what) {
    if (!doc.is_object() || !doc.contains("schema") || doc["schema"] != 1)
        throw ParseError(what + ": missing or unsupported \"schema\" (expected 1)");
}

} // namespace

CarrierPoly parse_poly(std::string_view text) {
    Lexer lex{text};
    if (lex.done()) throw ParseError("empty polynomial");
    CarrierPoly out = parse_expression(lex);
    return out;
}

ParamScalar parse_scalar(std::string_view text) {
    CarrierPoly p = parse_poly(text);
    ParamScalar out;
    for (const auto& [m, c] : p.terms()) {
        if (m != Mono{0, 0, 0})
            throw ParseError("carrier variables not allowed in scalar: '" + std::string(text) +
                             "'");
        out += c;
    }
    return out;
}

Generator parse_generator(std::string_view text) {
    Lexer lex{text};
    char fam = lex.peek();
    Family family;
    if (fam == 'L')
        family = Family::L;
    else if (fam == 'Y')
        family = Family::Y;
    else if (fam == 'M')
        family = Family::M;
    else
        throw ParseError("generator must be one of L[m], Y[m], M[m]");
    ++lex.pos;
    if (!lex.consume('[')) throw ParseError("expected '[' in generator literal");
    long index = parse_integer(lex);
    if (!lex.consume(']')) throw ParseError("expected ']' in generator literal");
    if (!lex.done()) throw ParseError("trailing input after generator literal");
    if (index > INT32_MAX || index < INT32_MIN) throw OverflowError("generator index overflow");
    return {family, int(index)};
}

std::string params_to_json(const PhiParams& params) {
    json doc;
    doc["schema"] = 1;
    doc["lambda"] = scalar_field_to_json(params.lambda, "lambda");
    doc["a"] = scalar_field_to_json(params.a, "a");
    doc["b"] = scalar_field_to_json(params.b, "b");
    doc["q"] = params.q;
    json taus = json::array();
    for (const auto& tau : params.tau) taus.push_back(poly_terms_json(tau));
    doc["tau"] = taus;
    json gammas = json::object();
    for (const auto& [j, poly] : params.gamma) gammas[std::to_string(j)] = poly_terms_json(poly);
    doc["gamma"] = gammas;
    return doc.dump(2) + "\n";
}

PhiParams params_from_json(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::exception& e) {
        throw ParseError(std::string("params document: ") + e.what());
    }
    require_schema(doc, "params document");
    PhiParams params;
    params.lambda = scalar_field_from_json(doc.at("lambda"), "lambda");
    params.a = scalar_field_from_json(doc.at("a"), "a");
    params.b = scalar_field_from_json(doc.at("b"), "b");
    params.q = doc.at("q").get<int>();
    params.tau.clear();
    for (const auto& item : doc.at("tau"))
        params.tau.push_back(poly_from_terms_json(item, "tau"));
    if (doc.contains("gamma"))
        for (const auto& [key, value] : doc.at("gamma").items()) {
            int j = 0;
            try {
                j = std::stoi(key);
            } catch (const std::exception&) {
                throw ParseError("gamma index must be an integer, got '" + key + "'");
            }
            CarrierPoly poly = poly_from_terms_json(value, "gamma[" + key + "]");
            if (!poly.is_zero()) params.gamma.emplace(j, poly);
        }
    params.validate();
    return params;
}

std::string window_to_json(const ActionWindow& window) {
    json doc;
    doc["schema"] = 1;
    doc["N"] = window.radius;
    json entries = json::object();
    for (const auto& [m, entry] : window.entries)
        entries[std::to_string(m)] = {
            {"g", entry.g.str()}, {"a", entry.a.str()}, {"p", entry.p.str()}};
    doc["entries"] = entries;
    return doc.dump(2) + "\n";
}

ActionWindow window_from_json(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::exception& e) {
        throw ParseError(std::string("window document: ") + e.what());
    }
    require_schema(doc, "window document");
    ActionWindow window;
    window.radius = doc.at("N").get<int>();
    for (const auto& [key, value] : doc.at("entries").items()) {
        int m = 0;
        try {
            m = std::stoi(key);
        } catch (const std::exception&) {
            throw ParseError("window index must be an integer, got '" + key + "'");
        }
        WindowEntry entry;
        entry.g = parse_poly(value.at("g").get<std::string>());
        entry.a = parse_poly(value.at("a").get<std::string>());
        entry.p = parse_poly(value.at("p").get<std::string>());
        window.entries.emplace(m, std::move(entry));
    }
    window.validate();
    return window;
}

std::string recognition_to_json(const RecognitionReport& report) {
    json doc;
    doc["schema"] = 1;
    json stages = json::array();
    for (const auto& s : report.stages)
        stages.push_back({{"tag", s.tag}, {"pass", s.pass}, {"detail", s.detail}});
    doc["stages"] = stages;
    doc["verify_radius"] = report.verify_radius;
    if (report.fitted)
        doc["fitted"] = json::parse(params_to_json(*report.fitted));
    else
        doc["fitted"] = nullptr;
    json residuals = json::object();
    for (const auto& [m, poly] : report.residuals) residuals[std::to_string(m)] = poly.str();
    doc["residuals"] = residuals;
    return doc.dump(2) + "\n";
}

std::string verify_to_json(const VerifyReport& report) {
    json doc;
    doc["schema"] = 1;
    doc["radius"] = report.radius;
    doc["degree"] = report.degree;
    doc["pairs_checked"] = report.pairs_checked;
    doc["evaluations"] = report.evaluations;
    doc["ok"] = report.ok();
    json failures = json::array();
    for (const auto& f : report.failures) {
        CarrierPoly mono = CarrierPoly::monomial(f.monomial, ParamScalar::one());
        failures.push_back({{"x", std::string(family_name(f.x)) + "[" + std::to_string(f.m) + "]"},
                            {"z", std::string(family_name(f.z)) + "[" + std::to_string(f.n) + "]"},
                            {"monomial", mono.str()},
                            {"residual", f.residual.str()}});
    }
    doc["failures"] = failures;
    return doc.dump(2) + "\n";
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open file: " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write file: " + path);
    out << content;
}

} // namespace tsv
