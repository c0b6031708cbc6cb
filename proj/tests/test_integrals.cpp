#include <doctest.h>

#include <random>

#include "folia/classify.hpp"
#include "folia/errors.hpp"
#include "folia/integrals.hpp"
#include "helpers.hpp"

using namespace folia;
using folia::testing::P;

namespace {

const VarList xyz{"x", "y", "z"};
const VarList xy{"x", "y"};

VectorField field(const std::vector<std::string>& comps, const VarList& vars = xyz) {
    std::vector<Poly> ps;
    for (auto& c : comps) ps.push_back(P(c, vars));
    return VectorField::from_polys(vars, ps);
}

VectorField two_integral_field() { return field({"2*x*y", "x^3 + 2*y^2", "-2*y*z"}); }

VectorField xabc(const std::string& a, const std::string& b, const std::string& c) {
    return field({"x^2", "(1 + " + a + "*x)*y + " + b + "*x*z", "-(1 + " + a + "*x)*z + " + c + "*x*y"});
}

} // namespace

TEST_CASE("first integrals of the two-integral field") {
    auto X = two_integral_field();
    auto F = P("x*z"), G = P("(y^2 - x^3)*z^2");
    CHECK(verify_first_integral(X, F));
    CHECK(verify_first_integral(X, G));
    CHECK(independence_check(F, G));
    CHECK(verify_first_integral(X, F * G));
    CHECK(verify_first_integral(X, F.pow(3) - G * GaussianRational(5)));
    CHECK_FALSE(verify_first_integral(X, P("x")));
}

TEST_CASE("verify_first_integral small cases") {
    CHECK_FALSE(verify_first_integral(field({"x", "y"}, xy), P("x*y", xy)));
    CHECK(verify_first_integral(field({"x", "-y"}, xy), P("x*y", xy)));
    CHECK(verify_first_integral(field({"2*y", "3*x^2"}, xy), P("y^2 - x^3", xy)));
    CHECK_THROWS_AS(verify_first_integral(field({"x", "y"}, xy), P("x")), StructuralError);
}

TEST_CASE("independence_check") {
    CHECK_FALSE(independence_check(P("x*y", xy), P("x^2*y^2", xy)));
    CHECK(independence_check(P("x", xy), P("y", xy)));
    CHECK_FALSE(independence_check(P("x*z"), P("x^3*z^3 + 2*x*z")));
    CHECK(independence_check(P("x*y"), P("x*z")));
}

TEST_CASE("jet solver: diagonal saddle") {
    auto J = formal_first_integral(field({"x", "-y"}, xy), 4);
    REQUIRE(J.basis.size() == 2);
    CHECK(J.basis[0] == P("x*y", xy));
    CHECK(J.basis[1] == P("x^2*y^2", xy));
    CHECK(J.dims_by_degree == std::vector<int>{0, 1, 1, 2});
}

TEST_CASE("jet solver: radial field has only constants") {
    auto J = formal_first_integral(field({"x", "y"}, xy), 5);
    CHECK(J.basis.empty());
    CHECK(J.dims_by_degree == std::vector<int>(5, 0));
}

TEST_CASE("jet solver: monomial oracle for diagonal fields") {
    // X = sum l_i x_i d/dx_i acts on monomials by <l, e>; the kernel is spanned by resonant monomials.
    std::vector<std::vector<int>> lambdas{{1, -1, 0}, {2, -1, -1}, {1, 2, -3}, {1, 1, -2}};
    for (auto& l : lambdas) {
        std::vector<Poly> comps;
        for (int i = 0; i < 3; ++i) comps.push_back(Poly::variable(xyz, i) * GaussianRational(l[i]));
        auto X = VectorField::from_polys(xyz, comps);
        int N = 5;
        auto J = formal_first_integral(X, N);
        size_t expected = 0;
        for (auto& e : jet_monomials(3, N))
            if (l[0] * e[0] + l[1] * e[1] + l[2] * e[2] == 0) ++expected;
        CHECK(J.basis.size() == expected);
        for (auto& F : J.basis) {
            CHECK(F.terms().size() == 1);
            CHECK(verify_first_integral(X, F));
        }
    }
}

TEST_CASE("jet solver: X_{1,1,1}") {
    auto X = xabc("1", "1", "1");
    auto rep = classify_singularity(X);
    CHECK(rep.cls == SingularClass::SaddleNode);
    CHECK(rep.saddle_node_rank == 1);
    std::vector<int> prev;
    for (int N = 2; N <= 8; ++N) {
        auto J = formal_first_integral(X, N);
        CHECK_FALSE(J.basis.empty());
        CHECK(J.dims_by_degree.size() == static_cast<size_t>(N));
        for (auto& F : J.basis) {
            CHECK(F.constant_term().is_zero());
            CHECK(F.degree() <= N);
            CHECK(jet_residual_zero(X, F, N));
        }
        for (size_t k = 1; k < J.dims_by_degree.size(); ++k) CHECK(J.dims_by_degree[k] >= J.dims_by_degree[k - 1]);
        // Lower truncations are reproduced as prefixes.
        for (size_t k = 0; k < prev.size(); ++k) CHECK(J.dims_by_degree[k] == prev[k]);
        prev = J.dims_by_degree;
    }
}

TEST_CASE("jet solver: the two-integral field keeps its integrals") {
    auto X = two_integral_field();
    auto J = formal_first_integral(X, 6);
    // xz and (y^2 - x^3) z^2 and their products/powers up to degree 6 live in the space.
    CHECK(J.basis.size() >= 3);
    for (auto& F : J.basis) CHECK(jet_residual_zero(X, F, 6));
    // Membership: xz reduces to zero against the echelon basis.
    auto in_span = [&](Poly F) {
        for (auto& b : J.basis) {
            auto lead = jet_monomials(3, 6);
            for (auto& e : lead) {
                if (!b.coeff(e).is_zero()) {
                    F -= b * (F.coeff(e) / b.coeff(e));
                    break;
                }
            }
        }
        return F.is_zero();
    };
    CHECK(in_span(P("x*z")));
    CHECK(in_span(P("y^2*z^2 - x^3*z^2")));
    CHECK_FALSE(in_span(P("x")));
}

TEST_CASE("jet solver preconditions") {
    CHECK_THROWS_AS(formal_first_integral(field({"1", "x"}, xy), 3), NotApplicableError);
    CHECK_THROWS_AS(formal_first_integral(field({"x", "y"}, xy), 0), NotApplicableError);
}

TEST_CASE("factored functions") {
    FactoredFunction F({{P("y"), 1}, {P("x"), 1}, {P("x"), 1}});
    REQUIRE(F.factors.size() == 2);
    CHECK(F.factors[0].first == P("x"));
    CHECK(F.factors[0].second == 2);
    CHECK(F.expand() == P("x^2*y"));
    CHECK_THROWS_AS(FactoredFunction({{P("x"), 0}}), DegenerateInputError);
}

TEST_CASE("meromorphic quotient") {
    SUBCASE("equal exponents") {
        FactoredFunction F({{P("x"), 1}, {P("y"), 1}}), G({{P("x"), 1}, {P("z"), 1}});
        auto q = meromorphic_quotient(F, G, P("x"));
        CHECK(q.numerator == P("y"));
        CHECK(q.denominator == P("z"));
        CHECK(q.power_f == 1);
        CHECK(q.power_g == 1);
        REQUIRE(q.restricted_var);
        CHECK(*q.restricted_var == 0);
    }
    SUBCASE("minimal cancelling powers") {
        FactoredFunction F({{P("x"), 2}, {P("y"), 1}}), G({{P("x"), 1}, {P("z"), 1}});
        auto q = meromorphic_quotient(F, G, 0);
        CHECK(q.power_f == 1);
        CHECK(q.power_g == 2);
        CHECK(q.numerator == P("y"));
        CHECK(q.denominator == P("z^2"));
    }
    SUBCASE("no shared factor") {
        FactoredFunction F({{P("x"), 1}, {P("y"), 1}}), G({{P("z"), 1}});
        CHECK_THROWS_AS(meromorphic_quotient(F, G, P("x")), NotApplicableError);
    }
}

TEST_CASE("meromorphic quotient restricts to a first integral on the shared hyperplane") {
    struct Case {
        VectorField X;
        FactoredFunction F, G;
        Poly shared;
    };
    std::vector<Case> cases{
        {field({"x", "-y", "-z"}), FactoredFunction({{P("x"), 1}, {P("y"), 1}}),
         FactoredFunction({{P("x"), 1}, {P("z"), 1}}), P("x")},
        {field({"x", "-y", "-2*z"}), FactoredFunction({{P("x"), 2}, {P("z"), 1}}),
         FactoredFunction({{P("x"), 1}, {P("y"), 1}}), P("x")},
        {field({"2*x*y", "x^3 + 2*y^2", "-2*y*z"}), FactoredFunction({{P("x"), 1}, {P("z"), 1}}),
         FactoredFunction({{P("z"), 2}, {P("y^2 - x^3"), 1}}), P("z")},
    };
    std::mt19937 rng(91);
    std::uniform_real_distribution<double> u(-1, 1);
    for (auto& c : cases) {
        CHECK(verify_first_integral(c.X, c.F.expand()));
        CHECK(verify_first_integral(c.X, c.G.expand()));
        auto q = meromorphic_quotient(c.F, c.G, c.shared);
        REQUIRE(q.restricted);
        int v = *q.restricted_var;
        auto [num, den] = *q.restricted;
        std::vector<Poly> comps = c.X.polys();
        for (auto& p : comps) p = p.restrict_to(v, 0);
        CHECK(comps[v].is_zero());  // the hyperplane is invariant
        auto Xr = VectorField::from_polys(xyz, comps);
        Poly dn = directional_derivative(Xr, num), dd = directional_derivative(Xr, den);
        for (int k = 0; k < 20; ++k) {
            std::vector<std::complex<double>> pt(3);
            for (int i = 0; i < 3; ++i) pt[i] = i == v ? 0.0 : std::complex<double>(u(rng), u(rng));
            auto D = den.eval(pt);
            if (std::abs(D) < 1e-3) continue;
            auto deriv = (dn.eval(pt) * D - num.eval(pt) * dd.eval(pt)) / (D * D);
            CHECK(std::abs(deriv) < 1e-9);
        }
    }
}
