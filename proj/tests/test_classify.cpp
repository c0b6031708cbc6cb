#include <doctest.h>

#include <cmath>
#include <random>

#include "folia/classify.hpp"
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

VectorField xabc(int a, int b, int c) {
    std::string A = std::to_string(a), B = std::to_string(b), C = std::to_string(c);
    return F({"x^2", "(1 + " + A + "*x)*y + " + B + "*x*z", "-(1 + " + A + "*x)*z + " + C + "*x*y"});
}

GaussianRational G(long re, long im = 0) { return GaussianRational(mpq_class(re), mpq_class(im)); }

// Independent characteristic polynomial of a 3x3 matrix by cofactor expansion.
UPoly charpoly_oracle(const Matrix& A) {
    auto e = [&](int i, int j) { return UPoly::constant(-A[i][j]) + (i == j ? UPoly::x() : UPoly{}); };
    return e(0, 0) * (e(1, 1) * e(2, 2) - e(1, 2) * e(2, 1)) - e(0, 1) * (e(1, 0) * e(2, 2) - e(1, 2) * e(2, 0)) +
           e(0, 2) * (e(1, 0) * e(2, 1) - e(1, 1) * e(2, 0));
}

} // namespace

TEST_CASE("characteristic polynomials") {
    UPoly t = UPoly::x();
    VectorField ss = F({"x^2", "x*(z - y)", "y - x*z"});
    CHECK(char_poly(linear_part(ss)) == t * t * t);
    LinearPart d{{{1, 0}, {0, -3}}};
    CHECK(char_poly(d) == (t - UPoly::constant(1)) * (t + UPoly::constant(3)));
    CHECK(char_poly(linear_part(xabc(1, 1, 1))) == t * (t - UPoly::constant(1)) * (t + UPoly::constant(1)));
    std::mt19937 rng(11);
    std::uniform_int_distribution<int> dist(-4, 4);
    for (int k = 0; k < 50; ++k) {
        LinearPart L;
        L.entries.assign(3, std::vector<GaussianRational>(3));
        for (auto& row : L.entries)
            for (auto& v : row) v = G(dist(rng), dist(rng) / 3);
        REQUIRE(char_poly(L) == charpoly_oracle(L.entries));
    }
}

TEST_CASE("eigenvalue solving") {
    UPoly t = UPoly::x();
    auto e = eigen_solve(t * (t - UPoly::constant(1)) * (t + UPoly::constant(1)));
    CHECK(e.all_exact());
    CHECK(e.exact_values() == std::vector<GaussianRational>{-1, 0, 1});
    auto z = eigen_solve(t * t * t);
    CHECK(z.exact_values() == std::vector<GaussianRational>{0, 0, 0});
    auto s = eigen_solve(t * t - UPoly::constant(2));
    CHECK(!s.all_exact());
    for (auto& r : s.roots) {
        CHECK(r.box.width() <= 1e-10);
        CHECK(std::abs(std::abs(r.approx.real()) - std::sqrt(2.0)) < 1e-15);
    }
    // Certified boxes really contain a sign change of the real polynomial.
    for (auto& r : s.roots) {
        double a = r.box.lo_re, b = r.box.hi_re;
        CHECK((a * a - 2) * (b * b - 2) <= 0);
    }
}

TEST_CASE("classification examples") {
    auto rep = classify_singularity(xabc(1, 1, 1));
    CHECK(rep.cls == SingularClass::SaddleNode);
    CHECK(rep.saddle_node_rank == 1);
    CHECK(rep.eigen.exact_values() == std::vector<GaussianRational>{-1, 0, 1});
    CHECK(rep.tag() == "saddle_node(1)");

    auto ss = classify_singularity(F({"x^2", "x*(z - y)", "y - x*z"}));
    CHECK(ss.cls == SingularClass::Nilpotent);
    CHECK(!ss.elementary());

    auto one = classify_singularity(F({"x^2"}, {"x"}));
    CHECK(one.eigen.exact_values() == std::vector<GaussianRational>{0});
    CHECK(!one.elementary());
    CHECK(one.second_jet_nonzero);
    CHECK(one.cls == SingularClass::ZeroLinearPart);

    CHECK(classify_singularity(F({"1 + x", "y"}, {"x", "y"})).cls == SingularClass::Regular);
    CHECK(classify_singularity(F({"x", "-y"}, {"x", "y"})).cls == SingularClass::ElementaryNondegenerate);
}

TEST_CASE("resonance") {
    CHECK(resonance_rank({G(1), G(-1)}) == 1);
    CHECK(resonance_rank({G(1), G(1, 1), G(-2, -1)}) == 1);
    UPoly t = UPoly::x();
    auto e = eigen_solve((t - UPoly::constant(1)) * (t * t - UPoly::constant(2)));
    CHECK(!resonance_rank(e).has_value());

    auto r12 = resonant_relations({G(1), G(2)});
    CHECK(std::find(r12.begin(), r12.end(), ResonantRelation{2, {2, 0}}) != r12.end());
    auto r1m1 = resonant_relations({G(1), G(-1)});
    CHECK(std::find(r1m1.begin(), r1m1.end(), ResonantRelation{1, {2, 1}}) != r1m1.end());
    auto r13 = resonant_relations({G(1), G(-3)});
    CHECK(std::find(r13.begin(), r13.end(), ResonantRelation{1, {4, 1}}) != r13.end());
    // Oracle: every reported relation holds, and brute force finds no others.
    for (auto& rel : r13) {
        GaussianRational s = G(rel.I[0]) * G(1) + G(rel.I[1]) * G(-3);
        CHECK(s == (rel.index == 1 ? G(1) : G(-3)));
    }
    int brute = 0;
    for (int a = 0; a <= 6; ++a)
        for (int b = 0; a + b <= 6; ++b) {
            if (a + b < 2) continue;
            if (a - 3 * b == 1) ++brute;
            if (a - 3 * b == -3) ++brute;
        }
    CHECK(static_cast<int>(r13.size()) == brute);
}

TEST_CASE("Siegel and Poincare domains") {
    CHECK(siegel_test({G(1), G(1, 1), G(-2, -1)}) == DomainPosition::Siegel);
    CHECK(siegel_test({G(1), G(1), G(1)}) == DomainPosition::Poincare);
    CHECK(siegel_test({G(1), G(-3)}) == DomainPosition::Siegel);
    CHECK(siegel_test({G(0), G(1)}) == DomainPosition::SiegelBoundary);
    CHECK(siegel_test({G(1, 1), G(-1, 1), G(0, -1)}) == DomainPosition::Siegel);
    CHECK(siegel_test({G(1, 1), G(-1, 1), G(0, 1)}) == DomainPosition::Poincare);
}

TEST_CASE("scale invariance properties") {
    std::mt19937 rng(17);
    std::uniform_int_distribution<int> d(-3, 3);
    std::vector<VectorField> fields{xabc(1, 1, 1), F({"x^2", "x*(z - y)", "y - x*z"}), F({"x", "-3*y"}, {"x", "y"}),
                                    F({"y", "x^2"}, {"x", "y"}), F({"x + y^2", "2*y", "-z"})};
    for (auto& X : fields) {
        auto base = classify_singularity(X);
        for (auto c : {G(2), G(-1, 3), G(0, 1), G(1, 1)}) {
            auto sc = classify_singularity(X * c);
            CHECK(sc.tag() == base.tag());
        }
        if (base.eigen.all_exact()) {
            auto lam = base.eigen.exact_values();
            std::vector<GaussianRational> scaled;
            for (auto& l : lam) scaled.push_back(l * GaussianRational::fraction(3, 7));
            CHECK(resonance_rank(scaled) == resonance_rank(lam));
            CHECK(siegel_test(scaled) == siegel_test(lam));
        }
        // Exact roots annihilate the characteristic polynomial.
        for (auto& r : base.eigen.roots)
            if (r.exact) CHECK(base.eigen.char_poly.eval(r.value).is_zero());
        bool elementary = base.eigen.char_poly != UPoly::x() * (X.dim() >= 2 ? UPoly::x() : UPoly::constant(1)) *
                                                       (X.dim() >= 3 ? UPoly::x() : UPoly::constant(1));
        CHECK(base.elementary() == elementary);
    }
}

TEST_CASE("second jet") {
    CHECK(!second_jet_check(F({"x^3", "y^3 + x*y^2"}, {"x", "y"})));
    CHECK(second_jet_check(F({"2*y", "3*x^2"}, {"x", "y"})));
    CHECK(second_jet_check(F({"x*(x - 2*y)", "y*(y - 2*x)"}, {"x", "y"})));
}
