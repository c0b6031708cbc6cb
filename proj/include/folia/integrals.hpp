#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "folia/fields.hpp"

namespace folia {

/// Exact test X.F == 0. X must be holomorphic (PoleError otherwise).
bool verify_first_integral(const VectorField& X, const Poly& F);

struct JetSolutionSpace {
    int degree = 0;
    /// Polys of degree <= N, zero constant term, with jet_N(X.F) == 0.
    /// Reduced echelon form; the pivot of each element is its lowest monomial
    /// (degree ascending, graded-lex inside a degree).
    std::vector<Poly> basis;
    /// Entry d-1 is the dimension of the truncated problem at order d, d = 1..N.
    std::vector<int> dims_by_degree;
};

/// Monomials of degree 1..N in pivot order.
std::vector<Exponent> jet_monomials(int nvars, int N);

JetSolutionSpace formal_first_integral(const VectorField& X, int N = 8);

/// Exact residual check of one basis element.
bool jet_residual_zero(const VectorField& X, const Poly& F, int N);

/// dF ^ dG has a nonzero coefficient.
bool independence_check(const Poly& F, const Poly& G);

struct FactoredFunction {
    std::vector<std::pair<Poly, int>> factors;

    FactoredFunction() = default;
    /// Merges repeated factors and sorts canonically; exponents must be >= 1.
    explicit FactoredFunction(std::vector<std::pair<Poly, int>> fs);
    Poly expand() const;
    /// Exponent of `f` (0 when absent).
    int exponent_of(const Poly& f) const;
};

struct MeromorphicQuotient {
    Poly numerator, denominator;
    int power_f = 0;   // F is raised to this power
    int power_g = 0;   // G is raised to this power
    /// Numerator and denominator with the shared factor's coordinate set to 0,
    /// present when the shared factor is a coordinate (up to a constant).
    std::optional<int> restricted_var;
    std::optional<std::pair<Poly, Poly>> restricted;
};

/// F^p / G^q with the shared factor cancelled, p and q minimal.
/// Throws NotApplicableError when `shared` is not a factor of both.
MeromorphicQuotient meromorphic_quotient(const FactoredFunction& F, const FactoredFunction& G, const Poly& shared);
/// Same with the shared factor given by its index in F.factors.
MeromorphicQuotient meromorphic_quotient(const FactoredFunction& F, const FactoredFunction& G, int shared_index);

} // namespace folia
