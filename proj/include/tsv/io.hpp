#pragma once

#include <string>
#include <string_view>

#include "tsv/classifier.hpp"
#include "tsv/phi_module.hpp"

namespace tsv {

// Linear expression grammar shared by scalars and carrier polynomials:
//   expr   := ['-'] term (('+'|'-') term)*
//   term   := factor (('*' | whitespace) factor)*
//   factor := rational | name ['^' integer]
//   name   := "lam" | "a" | "b" | "s" | "t" | "v"
// lam may carry negative exponents; a, b, s, t, v may not.
CarrierPoly parse_poly(std::string_view text);
ParamScalar parse_scalar(std::string_view text); // rejects s, t, v
Generator parse_generator(std::string_view text); // "L[m]" / "Y[m]" / "M[m]"

// JSON documents, all carrying "schema": 1.
std::string params_to_json(const PhiParams& params);
PhiParams params_from_json(const std::string& text);

std::string window_to_json(const ActionWindow& window);
ActionWindow window_from_json(const std::string& text);

std::string recognition_to_json(const RecognitionReport& report);
std::string verify_to_json(const VerifyReport& report);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

} // namespace tsv
