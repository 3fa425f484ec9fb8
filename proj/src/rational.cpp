#include "tsv/rational.hpp"

#include "tsv/errors.hpp"

namespace tsv {

std::string to_string(const Rat& r) {
    return r.str();
}

Rat parse_rational(std::string_view text) {
    size_t begin = text.find_first_not_of(" \t");
    size_t end = text.find_last_not_of(" \t");
    if (begin == std::string_view::npos)
        throw ParseError("empty rational");
    std::string body(text.substr(begin, end - begin + 1));
    try {
        Rat r(body);
        return r;
    } catch (const std::exception&) {
        throw ParseError("bad rational: '" + body + "'");
    }
}

Int binomial(int n, int k) {
    if (k < 0 || k > n) return 0;
    if (k > n - k) k = n - k;
    Int result = 1;
    for (int i = 1; i <= k; ++i) {
        result *= (n - k + i);
        result /= i;
    }
    return result;
}

Int int_pow(const Int& base, int exp) {
    Int result = 1;
    Int acc = base;
    for (int e = exp; e > 0; e >>= 1) {
        if (e & 1) result *= acc;
        if (e > 1) acc *= acc;
    }
    return result;
}

} // namespace tsv
