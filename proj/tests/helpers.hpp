#pragma once

#include <random>

#include "folia/parse.hpp"
#include "folia/poly.hpp"

namespace folia::testing {

inline Poly P(const std::string& expr, const VarList& vars = {"x", "y", "z"}) { return parse_poly(expr, vars); }

/// Random polynomial with small Gaussian-rational coefficients.
inline Poly random_poly(std::mt19937& rng, const VarList& vars, int max_degree, int terms = 6,
                        bool complex_coeffs = true) {
    std::uniform_int_distribution<int> deg(0, max_degree), num(-5, 5), den(1, 4), coin(0, 3);
    Poly p(vars);
    for (int t = 0; t < terms; ++t) {
        Exponent e{0, 0, 0};
        int budget = deg(rng);
        for (int k = 0; k < budget; ++k) e[std::uniform_int_distribution<int>(0, int(vars.size()) - 1)(rng)]++;
        GaussianRational c = GaussianRational::fraction(num(rng), den(rng));
        if (complex_coeffs && coin(rng) == 0) c += GaussianRational::i() * GaussianRational::fraction(num(rng), den(rng));
        p += Poly::monomial(vars, e, c);
    }
    return p;
}

} // namespace folia::testing
