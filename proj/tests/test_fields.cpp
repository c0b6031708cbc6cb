#include <doctest.h>

#include <random>

#include "folia/errors.hpp"
#include "folia/fields.hpp"
#include "helpers.hpp"

using namespace folia;
using folia::testing::P;

namespace {

const VarList xyz{"x", "y", "z"};

VectorField F(const std::vector<std::string>& comps, const VarList& vars = xyz) {
    std::vector<Poly> ps;
    for (auto& c : comps) ps.push_back(P(c, vars));
    return VectorField::from_polys(vars, ps);
}

OneForm omega_n(int n) {
    std::string s = std::to_string(n), s1 = std::to_string(n + 1);
    return OneForm::from_polys(xyz, {P("y*x^" + s + " - z^" + s1), P("z*y^" + s + " - x^" + s1),
                                     P("x*z^" + s + " - y^" + s1)});
}

VectorField zjou(int n) {
    std::string s = std::to_string(n);
    return F({"y^" + s, "z^" + s, "x^" + s});
}

VectorField random_field(std::mt19937& rng, int deg, const VarList& vars = xyz) {
    std::vector<Poly> ps;
    for (size_t i = 0; i < vars.size(); ++i) ps.push_back(folia::testing::random_poly(rng, vars, deg, 4));
    return VectorField::from_polys(vars, ps);
}

} // namespace

TEST_CASE("directional derivative examples") {
    VectorField X = F({"2*x*y", "x^3 + 2*y^2", "-2*y*z"});
    CHECK(directional_derivative(X, P("x*z")).is_zero());
    CHECK(directional_derivative(X, P("(y^2 - x^3)*z^2")).is_zero());
    CHECK(directional_derivative(F({"x", "-y", "-z"}), P("x*y")).is_zero());
    CHECK_THROWS_AS(directional_derivative(X, P("x", {"x", "y"})), StructuralError);
}

TEST_CASE("lie bracket examples") {
    for (auto a : {GaussianRational(1), GaussianRational(2), GaussianRational(mpq_class(1), mpq_class(1))}) {
        VectorField X = F({"0", "z*y", "z^2"});
        VectorField Y = VectorField::from_polys(xyz, {P("x^2"), P("x*y") * a, P("0")});
        CHECK(lie_bracket(X, Y).is_zero());
    }
    VarList x{"x"};
    CHECK(lie_bracket(F({"1"}, x), F({"x"}, x)) == F({"1"}, x));
    // [R, Z] = (d-1) Z computed by hand for Z = (y^2, z^2, x^2): R(y^2) - Z(y) = 2y^2 - z^2 ... componentwise.
    VectorField Z = zjou(2);
    VectorField br = lie_bracket(radial_field(xyz), Z);
    // Oracle: each component of [R,Z] is R(Z^i) - Z(x_i) = 2 Z^i - Z^i.
    CHECK(br == F({"y^2", "z^2", "x^2"}));
}

TEST_CASE("linear parts") {
    VectorField xabc = F({"x^2", "(1 + x)*y", "-(1 + x)*z"});
    LinearPart L = linear_part(xabc);
    Matrix expect{{0, 0, 0}, {0, 1, 0}, {0, 0, -1}};
    CHECK(L.entries == expect);
    VectorField ss = F({"x^2", "x*(z - y)", "y - x*z"});
    LinearPart S = linear_part(ss);
    Matrix nil{{0, 0, 0}, {0, 0, 0}, {0, 1, 0}};
    CHECK(S.entries == nil);
    Matrix id{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}};
    CHECK(linear_part(radial_field(xyz)).entries == id);
    VectorField mero(Chart(xyz), {ChartFunction::monomial(xyz, {-1, 0, 0}), ChartFunction::zero(xyz),
                                  ChartFunction::zero(xyz)});
    CHECK_THROWS_AS(linear_part(mero), PoleError);
}

TEST_CASE("contraction") {
    CHECK(contract(omega_n(2), radial_field(xyz)).is_zero());
    VarList x{"x"};
    CHECK(contract(OneForm::from_polys(x, {P("1", x)}), F({"1"}, x)) == ChartFunction::constant(x, 1));
    CHECK(contract(omega_n(1), F({"1", "0", "0"})) == ChartFunction(P("y*x - z^2")));
}

TEST_CASE("integrability") {
    for (int n = 1; n <= 3; ++n) CHECK(integrability_check(omega_n(n)));
    OneForm w = OneForm::from_polys(xyz, {P("z"), P("1"), P("0")});
    CHECK(!integrability_check(w));
    CHECK(integrability_coefficient(w) == ChartFunction::constant(xyz, 1));
    CHECK(integrability_check(OneForm::exact(P("x*y*z"))));
    CHECK(integrability_check(OneForm::from_polys({"x", "y"}, {P("y", {"x", "y"}), P("x^2", {"x", "y"})})));
}

TEST_CASE("Euler test") {
    CHECK(euler_test(zjou(3)) == 3);
    CHECK(euler_test(radial_field(xyz)) == 1);
    CHECK(euler_test(F({"x^2", "y^2"}, {"x", "y"})) == 2);
    CHECK_THROWS_AS(euler_test(F({"x^2 + x", "y^2"}, {"x", "y"})), NotApplicableError);
}

TEST_CASE("randomized bracket identities") {
    std::mt19937 rng(99);
    for (int k = 0; k < 40; ++k) {
        VectorField X = random_field(rng, 3), Y = random_field(rng, 3);
        REQUIRE((lie_bracket(X, Y) + lie_bracket(Y, X)).is_zero());
        VectorField A = random_field(rng, 2), B = random_field(rng, 2), C = random_field(rng, 2);
        VectorField jac = lie_bracket(A, lie_bracket(B, C)) + lie_bracket(B, lie_bracket(C, A)) +
                          lie_bracket(C, lie_bracket(A, B));
        REQUIRE(jac.is_zero());
        Poly f = folia::testing::random_poly(rng, xyz, 3), g = folia::testing::random_poly(rng, xyz, 3);
        REQUIRE(directional_derivative(X, f * g) ==
                f * directional_derivative(X, g) + g * directional_derivative(X, f));
        OneForm w = OneForm::from_polys(xyz, {f, g, f * g});
        ChartFunction h(folia::testing::random_poly(rng, xyz, 2));
        std::vector<ChartFunction> hx;
        for (auto& c : X.components()) hx.push_back(h * c);
        REQUIRE(contract(w, VectorField(X.chart(), hx)) == h * contract(w, X));
    }
    for (int k = 0; k < 50; ++k) {
        Poly f = folia::testing::random_poly(rng, xyz, 4);
        REQUIRE(integrability_check(OneForm::exact(f)));
    }
}

TEST_CASE("Euler degree matches the algebraic degree on homogeneous fields") {
    std::mt19937 rng(5);
    for (int d = 1; d <= 4; ++d) {
        std::vector<Poly> ps;
        for (int i = 0; i < 3; ++i) {
            Poly p = folia::testing::random_poly(rng, xyz, 6, 6).homogeneous_component(d);
            if (p.is_zero()) p = Poly::monomial(xyz, {d, 0, 0});
            ps.push_back(p);
        }
        VectorField Z = VectorField::from_polys(xyz, ps);
        CHECK(euler_test(Z) == d);
        VectorField R = radial_field(xyz);
        for (auto& p : ps) CHECK(directional_derivative(R, p) == p * GaussianRational(d));
    }
}
