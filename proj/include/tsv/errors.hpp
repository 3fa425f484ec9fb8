#pragma once

#include <stdexcept>
#include <string>

namespace tsv {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ParseError : Error {
    using Error::Error;
};

// A 1/t factor failed to cancel; carries the offending term. Signals an
// invalid parameter set (tau_i or gamma_j outside t*Q[t]).
struct NotDivisibleByT : Error {
    explicit NotDivisibleByT(const std::string& term)
        : Error("not divisible by t, offending term: " + term), offending_term(term) {}
    std::string offending_term;
};

struct ZeroLambda : Error {
    ZeroLambda() : Error("lambda must be nonzero") {}
};

struct TDependentInput : Error {
    explicit TDependentInput(const std::string& what) : Error(what) {}
};

struct IndexOutsideWindow : Error {
    explicit IndexOutsideWindow(int index, int radius)
        : Error("generator index " + std::to_string(index) +
                " outside window radius " + std::to_string(radius)) {}
};

struct InvalidParams : Error {
    using Error::Error;
};

struct MalformedWindow : Error {
    using Error::Error;
};

struct OverflowError : Error {
    using Error::Error;
};

} // namespace tsv
