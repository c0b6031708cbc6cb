#include <doctest.h>

#include <random>
#include <set>

#include "folia/errors.hpp"
#include "folia/generators.hpp"
#include "folia/resolve.hpp"
#include "helpers.hpp"

using namespace folia;
using folia::testing::P;

namespace {

const VarList kXY{"x", "y"};
const VarList kXYZ{"x", "y", "z"};

VectorField field2(const std::string& a, const std::string& b) {
    return VectorField::from_polys(kXY, {P(a, kXY), P(b, kXY)});
}

VectorField field3(const std::string& a, const std::string& b, const std::string& c) {
    return VectorField::from_polys(kXYZ, {P(a), P(b), P(c)});
}

VectorField sancho_sanz() { return field3("x^2", "x*z - x*y", "y - x*z"); }

const LocatedPoint* point_on(const ResolutionTree& t, std::vector<int> comps) {
    for (auto& p : t.singular_points)
        if (p.components == comps) return &p;
    return nullptr;
}

GaussianRational cs_of(const LocatedPoint& p, int label) {
    for (auto& c : p.cs)
        if (c.label == label) return c.value;
    FAIL("missing Camacho-Sad index");
    return {};
}

// Ratio of the two eigenvalues, smaller modulus over larger.
GaussianRational eigen_ratio(const LocatedPoint& p) {
    auto ev = p.report.eigen.exact_values();
    REQUIRE(ev.size() == 2);
    auto a = ev[0], b = ev[1];
    if (a.norm() > b.norm()) std::swap(a, b);
    return a / b;
}

// Weight of each component recomputed from the centres: -1, minus one for
// every later centre lying on it.
std::map<int, int> weights_from_centres(const ResolutionTree& t) {
    std::map<int, int> w;
    for (auto& c : t.centres) {
        const TreeNode& n = t.nodes[c.node];
        for (int i = 0; i < 2; ++i) {
            auto l = n.field.chart().divisor_labels[i];
            if (l && c.at[i].is_zero()) w[*l] -= 1;
        }
        w[c.label] = -1;
    }
    return w;
}

void check_leaves_elementary(const ResolutionTree& t) {
    for (auto& p : t.singular_points) {
        REQUIRE(p.exact);
        std::vector<Poly> shifted;
        for (auto& q : t.nodes[p.node].field.polys()) shifted.push_back(q.translate(p.coords));
        auto rep = classify_singularity(VectorField::from_polys(t.nodes[p.node].field.vars(), shifted));
        CHECK(rep.elementary());
    }
}

} // namespace

TEST_CASE("divisor scan after one blow-up") {
    SUBCASE("cusp: only the tangency point") {
        auto rs = blowup_all_charts(field2("2*y", "3*x^2"), BlowupSpec::point(0));
        TreeNode a, b;
        a.field = rs[0].representative;
        a.scan_vars = {1};
        b.field = rs[1].representative;
        auto pa = singular_points_on_divisor(a);
        REQUIRE(pa.size() == 1);
        CHECK(pa[0].coords == std::vector<GaussianRational>{0, 0});
        CHECK(singular_points_on_divisor(b).empty());
    }
    SUBCASE("saddle: both charts") {
        auto rs = blowup_all_charts(field2("x", "-y"), BlowupSpec::point(0));
        TreeNode a, b;
        a.field = rs[0].representative;
        a.scan_vars = {1};
        b.field = rs[1].representative;
        CHECK(singular_points_on_divisor(a).size() == 1);
        CHECK(singular_points_on_divisor(b).size() == 1);
    }
    SUBCASE("radial: dicritical, nothing on the divisor") {
        auto rs = blowup_all_charts(field2("x", "y"), BlowupSpec::point(0));
        CHECK(rs[0].dicritical);
        TreeNode a;
        a.field = rs[0].representative;
        a.scan_vars = {1};
        CHECK(singular_points_on_divisor(a).empty());
    }
}

TEST_CASE("A3 cusp resolution") {
    auto t = seidenberg_resolve(field2("2*y", "3*x^2"), 40);
    CHECK(t.status == TreeStatus::Resolved);
    CHECK(t.blowups() == 3);
    REQUIRE(t.components.size() == 3);
    CHECK(t.component(1).weight == -3);
    CHECK(t.component(2).weight == -2);
    CHECK(t.component(3).weight == -1);

    auto s1 = point_on(t, {1, 3});
    auto s2 = point_on(t, {2, 3});
    auto s0 = point_on(t, {3});
    REQUIRE(s1);
    REQUIRE(s2);
    REQUIRE(s0);
    // Eigenvalue pairs (1, -3) and (1, -2) up to a common factor.
    CHECK(eigen_ratio(*s1) == GaussianRational::fraction(-1, 3));
    CHECK(eigen_ratio(*s2) == GaussianRational::fraction(-1, 2));
    CHECK(cs_of(*s1, 3) == GaussianRational::fraction(-1, 3));
    CHECK(cs_of(*s2, 3) == GaussianRational::fraction(-1, 2));
    CHECK(cs_of(*s0, 3) == GaussianRational::fraction(-1, 6));
    auto sums = camacho_sad_sums(t);
    CHECK(sums.at(3) == GaussianRational(-1));
    for (auto& [l, s] : sums) CHECK(s == GaussianRational(*t.component(l).weight));
    check_leaves_elementary(t);

    std::string dot = emit_tree(t, TreeFormat::Dot);
    CHECK(dot.find("weight -3") != std::string::npos);
    CHECK(dot.find("weight -2") != std::string::npos);
    CHECK(dot.find("weight -1") != std::string::npos);
}

TEST_CASE("A5 cusp resolution chain") {
    auto t = seidenberg_resolve(field2("2*y", "5*x^4"), 40);
    CHECK(t.status == TreeStatus::Resolved);
    CHECK(t.blowups() == 4);
    // Dual graph: corners are edges; it must be a chain with one -1 vertex carrying the separatrix.
    std::map<int, std::set<int>> adj;
    int minus_one = -1;
    for (auto& c : t.components)
        if (c.weight == -1) {
            CHECK(minus_one < 0);
            minus_one = c.label;
        }
    std::set<int> orders;
    for (auto& p : t.singular_points) {
        if (p.components.size() == 2) {
            adj[p.components[0]].insert(p.components[1]);
            adj[p.components[1]].insert(p.components[0]);
            if (p.components[0] == minus_one || p.components[1] == minus_one) {
                // Local holonomy order is the denominator of the index on the -1 component.
                orders.insert(static_cast<int>(cs_of(p, minus_one).re().get_den().get_si()));
            }
        }
    }
    int ends = 0;
    for (auto& [l, nb] : adj) {
        CHECK(nb.size() <= 2);
        if (nb.size() == 1) ++ends;
    }
    CHECK(ends == 2);
    CHECK(adj.size() == 4);
    CHECK(adj[minus_one].size() == 2);
    CHECK(point_on(t, {minus_one}) != nullptr);
    CHECK(orders == std::set<int>{2, 5});
    for (auto& [l, s] : camacho_sad_sums(t)) CHECK(s == GaussianRational(*t.component(l).weight));
}

TEST_CASE("already elementary: no blow-up") {
    auto t = seidenberg_resolve(field2("x", "-y"), 40);
    CHECK(t.status == TreeStatus::Resolved);
    CHECK(t.blowups() == 0);
    CHECK(t.nodes.size() == 1);
    std::string dot = emit_tree(t, TreeFormat::Dot);
    CHECK(dot.find("origin") != std::string::npos);
    CHECK(dot.find("E1") == std::string::npos);
}

TEST_CASE("budget exhaustion is reported, not thrown") {
    auto t = seidenberg_resolve(field2("2*y", "3*x^2"), 1);
    CHECK(t.status == TreeStatus::BudgetExhausted);
    CHECK(t.blowups() == 1);
    auto j = emit_tree(t, TreeFormat::Json);
    CHECK(j.find("\"status\": \"budget_exhausted\"") != std::string::npos);
    CHECK_THROWS_AS(seidenberg_resolve(field2("2*y", "3*x^2"), 0), NotApplicableError);
    CHECK_THROWS_AS(seidenberg_resolve(field2("1 + x", "y"), 5), NotApplicableError);
}

TEST_CASE("irrational singular points are diagnosed") {
    // Tangent cone 2x^3 - y^3: one real and two complex irrational directions.
    auto t = seidenberg_resolve(field2("x^2 + y^2", "x*y + 2*x^2"), 10);
    bool boxes = std::any_of(t.singular_points.begin(), t.singular_points.end(),
                             [](const LocatedPoint& p) { return !p.exact; });
    CHECK(boxes);
    for (auto& p : t.singular_points)
        if (!p.exact) {
            CHECK(p.boxes.size() == 2);
            for (auto& b : p.boxes) CHECK(b.width() <= 1e-10);
        }
}

TEST_CASE("Seidenberg property: random rational fields resolve") {
    std::mt19937_64 rng(7001);
    for (int k = 0; k < 100; ++k) {
        auto g = random_seidenberg_field(rng);
        auto t = seidenberg_resolve(g.field, 40);
        INFO(g.family << ": " << g.field.str());
        REQUIRE(t.status == TreeStatus::Resolved);
        CHECK(t.blowups() <= 40);
        check_leaves_elementary(t);
        auto w = weights_from_centres(t);
        for (auto& c : t.components) CHECK(c.weight == w[c.label]);
        for (auto& [l, s] : camacho_sad_sums(t)) CHECK(s == GaussianRational(*t.component(l).weight));
        CHECK(emit_tree(t, TreeFormat::Json) == emit_tree(seidenberg_resolve(g.field, 40), TreeFormat::Json));
    }
}

TEST_CASE("normal-form matcher") {
    SUBCASE("synthetic model, relaxed order check") {
        auto X = field3("y + z^3", "x^2", "z^2");
        auto w = match_normal_form(X, 2);
        REQUIRE(w);
        CHECK(w->n == 2);
        CHECK(w->ord_fz == 3);
        CHECK_FALSE(w->strict);
        CHECK(verify_witness(*w));
        CHECK_FALSE(match_normal_form(X, 0));
        auto r = detect_persistent_nilpotent(X, 6);
        CHECK(r.matched);
        CHECK(r.n == 2);
    }
    SUBCASE("Sancho-Sanz matches under a permutation") {
        auto r = detect_persistent_nilpotent(sancho_sanz(), 6);
        REQUIRE(r.matched);
        CHECK(r.n >= 2);
        REQUIRE(r.witness);
        CHECK(verify_witness(*r.witness));
        CHECK(r.witness->var_z == 0);
    }
    SUBCASE("witness tampering is caught") {
        auto w = *match_normal_form(field3("y + z^5", "x^2", "z^2"), 0);
        CHECK(verify_witness(w));
        w.ord_fz = 2;
        CHECK_FALSE(verify_witness(w));
    }
    SUBCASE("non-nilpotent input") {
        CHECK_THROWS_AS(detect_persistent_nilpotent(field3("x", "2*y", "3*z"), 6), NotApplicableError);
    }
    SUBCASE("no match is a non-verdict") {
        auto r = detect_persistent_nilpotent(field3("y", "x^2", "x*z"), 2);
        CHECK_FALSE(r.matched);
        CHECK_FALSE(r.note.empty());
    }
}

TEST_CASE("three-dimensional driver") {
    SUBCASE("Sancho-Sanz needs exactly one weight-2 blow-up") {
        auto t = resolve3(sancho_sanz(), 40);
        CHECK(t.status == TreeStatus::Resolved);
        CHECK(t.weighted_blowups() == 1);
        CHECK(t.blowups() == 1);
        bool two = false;
        for (int w : t.centres[0].weights) two = two || w == 2;
        CHECK(two);
        for (auto& p : t.singular_points) CHECK(p.report.elementary());
        for (auto& c : t.components) CHECK_FALSE(c.weight);
    }
    SUBCASE("standard blow-ups alone run out") {
        Resolve3Options o;
        o.max_steps = 12;
        o.allow_weighted = false;
        auto t = resolve3(sancho_sanz(), o);
        CHECK(t.status == TreeStatus::BudgetExhausted);
        CHECK(t.blowups() == 12);
        CHECK(t.weighted_blowups() == 0);
        bool nilpotent = false;
        for (auto& p : t.singular_points) nilpotent = nilpotent || (p.pending && p.report.cls == SingularClass::Nilpotent);
        CHECK(nilpotent);
    }
    SUBCASE("linear diagonal field") {
        auto t = resolve3(field3("x", "2*y", "3*z"), 40);
        CHECK(t.status == TreeStatus::Resolved);
        CHECK(t.blowups() == 0);
    }
    SUBCASE("radial field is already elementary") {
        auto t = resolve3(field3("x", "y", "z"), 40);
        CHECK(t.status == TreeStatus::Resolved);
        CHECK(t.blowups() == 0);
        auto rs = blowup_all_charts(t.nodes[0].field, BlowupSpec::point(0));
        CHECK(rs[0].dicritical);
        TreeNode n;
        n.field = rs[0].representative;
        n.scan_vars = {1, 2};
        CHECK(singular_points_on_divisor(n).empty());
    }
    SUBCASE("deterministic output") {
        CHECK(emit_tree(resolve3(sancho_sanz(), 40), TreeFormat::Json) ==
              emit_tree(resolve3(sancho_sanz(), 40), TreeFormat::Json));
    }
}

TEST_CASE("weight-2 blow-up of the Sancho-Sanz field") {
    BlowupSpec spec = BlowupSpec::curve(2, 0);
    spec.weights = {2, 1};
    for (auto& r : blowup_all_charts(sancho_sanz(), spec)) {
        TreeNode n;
        n.field = r.representative;
        n.scan_vars = r.divisor_var == 0 ? std::vector<int>{1} : std::vector<int>{};
        for (auto& p : singular_points_on_divisor(n)) CHECK(p.report.elementary());
    }
}
