// Acceptance run: one PASS/FAIL line per criterion. Usage: folia_acceptance <corpus dir>
#include <chrono>
#include <cmath>
#include <functional>
#include <iostream>
#include <map>
#include <numbers>
#include <random>
#include <set>

#include "folia/blowup.hpp"
#include "folia/corpus.hpp"
#include "folia/generators.hpp"
#include "folia/integrals.hpp"
#include "folia/resolve.hpp"
#include "folia/serialize.hpp"

using namespace folia;

namespace {

constexpr double kPi = std::numbers::pi;

const VarList X1{"x"};
const VarList XY{"x", "y"};
const VarList XYZ{"x", "y", "z"};

Poly P(const std::string& s, const VarList& v = XYZ) { return parse_poly(s, v); }

VectorField field(const std::vector<std::string>& comps, const VarList& v) {
    std::vector<Poly> ps;
    for (auto& c : comps) ps.push_back(P(c, v));
    return VectorField::from_polys(v, ps);
}

// Collects the reasons a criterion failed.
struct Check {
    std::vector<std::string> failures;
    void operator()(bool ok, const std::string& what) {
        if (!ok) failures.push_back(what);
    }
};

const LocatedPoint* point_on(const ResolutionTree& t, std::vector<int> comps) {
    for (auto& p : t.singular_points)
        if (p.components == comps) return &p;
    return nullptr;
}

std::optional<GaussianRational> eigen_ratio(const LocatedPoint* p) {
    if (!p || !p->report.eigen.all_exact()) return std::nullopt;
    auto ev = p->report.eigen.exact_values();
    if (ev.size() != 2 || (ev[0].is_zero() && ev[1].is_zero())) return std::nullopt;
    auto a = ev[0], b = ev[1];
    if (a.norm() > b.norm()) std::swap(a, b);
    return a / b;
}

std::optional<GaussianRational> cs_of(const LocatedPoint* p, int label) {
    if (!p) return std::nullopt;
    for (auto& c : p->cs)
        if (c.label == label) return c.value;
    return std::nullopt;
}

bool leaves_elementary(const ResolutionTree& t) {
    for (auto& p : t.singular_points) {
        if (!p.exact) return false;
        std::vector<Poly> shifted;
        for (auto& q : t.nodes[p.node].field.polys()) shifted.push_back(q.translate(p.coords));
        if (!classify_singularity(VectorField::from_polys(t.nodes[p.node].field.vars(), shifted)).elementary()) return false;
    }
    return true;
}

void c1(Check& ck) {
    auto X = field({"2*x*y", "x^3 + 2*y^2", "-2*y*z"}, XYZ);
    Poly F = P("x*z"), G = P("(y^2 - x^3)*z^2");
    ck(directional_derivative(X, F).is_zero(), "X(xz) != 0");
    ck(directional_derivative(X, G).is_zero(), "X((y^2-x^3)z^2) != 0");
    ck(verify_first_integral(X, F) && verify_first_integral(X, G), "verify_first_integral");
    ck(independence_check(F, G), "independence");
}

void c2(Check& ck) {
    for (int n = 1; n <= 4; ++n) {
        std::string s = std::to_string(n), s1 = std::to_string(n + 1), tag = " (n=" + s + ")";
        auto omega = OneForm::from_polys(XYZ, {P("y*x^" + s + " - z^" + s1), P("z*y^" + s + " - x^" + s1), P("x*z^" + s + " - y^" + s1)});
        auto Z = field({"y^" + s, "z^" + s, "x^" + s}, XYZ);
        ck(integrability_check(omega), "integrability" + tag);
        ck(contract(omega, radial_field(XYZ)).is_zero(), "radial contraction" + tag);
        ck(euler_test(Z) == n, "euler_test" + tag);
        ck(lie_bracket(radial_field(XYZ), Z) == Z * GaussianRational(n - 1), "bracket identity" + tag);
    }
}

void c3(Check& ck) {
    for (std::string a : {"1", "2", "1 + i"}) {
        auto X = field({"0", "z*y", "z^2"}, XYZ);
        auto Y = VectorField::from_polys(XYZ, {P("x^2"), P("x*y") * P(a).constant_term(), Poly(XYZ)});
        ck(lie_bracket(X, Y).is_zero(), "bracket for a = " + a);
    }
}

void c4(Check& ck) {
    auto t = seidenberg_resolve(field({"2*y", "3*x^2"}, XY), 40);
    ck(t.status == TreeStatus::Resolved, "A3 status");
    ck(t.blowups() == 3, "A3 blow-up count");
    std::vector<std::optional<int>> w;
    for (auto& c : t.components) w.push_back(c.weight);
    ck(w == std::vector<std::optional<int>>{-3, -2, -1}, "A3 weights");
    ck(eigen_ratio(point_on(t, {1, 3})) == GaussianRational::fraction(-1, 3), "A3 ratio at s1");
    ck(eigen_ratio(point_on(t, {2, 3})) == GaussianRational::fraction(-1, 2), "A3 ratio at s2");
    ck(eigen_ratio(point_on(t, {3})) == GaussianRational::fraction(-1, 6), "A3 ratio at s0");
    auto sums = camacho_sad_sums(t);
    ck(sums.count(3) && sums.at(3) == GaussianRational(-1), "A3 index sum on the -1 component");
    ck(cs_of(point_on(t, {3}), 3) == GaussianRational::fraction(-1, 6), "A3 index at s0");

    auto t5 = seidenberg_resolve(field({"2*y", "5*x^4"}, XY), 40);
    ck(t5.status == TreeStatus::Resolved && t5.blowups() == 4, "A5 blow-up count");
    int minus_one = -1, count = 0;
    for (auto& c : t5.components)
        if (c.weight == -1) minus_one = c.label, ++count;
    ck(count == 1, "A5 single -1 component");
    std::map<int, std::set<int>> adj;
    std::set<long> orders;
    for (auto& p : t5.singular_points)
        if (p.components.size() == 2) {
            adj[p.components[0]].insert(p.components[1]);
            adj[p.components[1]].insert(p.components[0]);
            if (auto v = cs_of(&p, minus_one); v && v->is_real()) orders.insert(v->re().get_den().get_si());
        }
    int ends = 0;
    bool branching = false;
    for (auto& [l, nb] : adj) {
        ends += nb.size() == 1;
        branching = branching || nb.size() > 2;
    }
    ck(adj.size() == 4 && ends == 2 && !branching, "A5 dual graph is a chain");
    ck(adj[minus_one].size() == 2 && point_on(t5, {minus_one}), "A5 -1 component in the middle carrying the separatrix");
    ck(orders == std::set<long>{2, 5}, "A5 holonomy orders");
    for (auto& [l, s] : camacho_sad_sums(t5)) ck(s == GaussianRational(*t5.component(l).weight), "A5 index sums");
}

void c5(Check& ck) {
    std::mt19937_64 rng(20240);
    for (int k = 0; k < 100; ++k) {
        auto g = random_seidenberg_field(rng);
        auto t = seidenberg_resolve(g.field, 40);
        std::string tag = " (" + g.family + ": " + g.field.str() + ")";
        ck(t.status == TreeStatus::Resolved && t.blowups() <= 40, "not resolved" + tag);
        ck(leaves_elementary(t), "non-elementary leaf" + tag);
    }
}

void c6(Check& ck) {
    auto half = PathSpec::arc(0, 0.1, 0, kPi);
    auto cube = time_form_integral(P("x^3", X1), half);
    ck(std::abs(cube.value) < 1e-9, "x^3 half-circle integral");
    auto sq = time_form_integral(P("x^2", X1), half);
    ck(std::abs(sq.value - 20.0) / 20.0 < 1e-6, "x^2 half-circle integral equals 4/eps");
    std::map<int, SemicompleteVerdict> want{{1, SemicompleteVerdict::Semicomplete},
                                            {2, SemicompleteVerdict::Semicomplete},
                                            {3, SemicompleteVerdict::NotSemicomplete},
                                            {4, SemicompleteVerdict::NotSemicomplete}};
    for (auto& [k, v] : want) {
        auto r = semicomplete_order_test(P("x^" + std::to_string(k), X1));
        ck(r.order == k && r.verdict == v, "order rule k = " + std::to_string(k));
    }
}

void c7(Check& ck) {
    auto h3 = holonomy(field({"x", "-3*y"}, XY), 1);
    ck(!h3.ratio.empty() && std::abs(h3.ratio[0] - std::polar(1.0, -2 * kPi / 3)) < 1e-4, "(1, -3) saddle");
    auto h2 = holonomy(field({"x", "-2*y"}, XY), 1);
    ck(!h2.ratio.empty() && std::abs(h2.ratio[0] - std::polar(1.0, -kPi)) < 1e-4, "(1, -2) saddle");
}

void c8(Check& ck) {
    auto X = field({"x^2", "(1 + x)*y + x*z", "-(1 + x)*z + x*y"}, XYZ);
    auto r = classify_singularity(X);
    ck(r.cls == SingularClass::SaddleNode && r.saddle_node_rank == 1, "saddle-node rank 1");
    bool exact = r.eigen.all_exact();
    ck(exact, "exact eigenvalues");
    if (exact) {
        std::multiset<std::string> ev;
        for (auto& e : r.eigen.exact_values()) ev.insert(e.str());
        ck(ev == std::multiset<std::string>{"0", "1", "-1"}, "eigenvalues (0, 1, -1)");
    }
    std::vector<int> prev;
    for (int N = 2; N <= 8; ++N) {
        auto J = formal_first_integral(X, N);
        std::string tag = " (N=" + std::to_string(N) + ")";
        ck(!J.basis.empty(), "nonzero space" + tag);
        for (auto& F : J.basis) ck(jet_residual_zero(X, F, N), "residual" + tag);
        for (size_t k = 1; k < J.dims_by_degree.size(); ++k) ck(J.dims_by_degree[k] >= J.dims_by_degree[k - 1], "monotone" + tag);
        for (size_t k = 0; k < prev.size(); ++k) ck(J.dims_by_degree[k] == prev[k], "consistent with N-1" + tag);
        prev = J.dims_by_degree;
    }
}

void c9(Check& ck) {
    auto X = field({"y", "x", "x*z"}, XYZ);
    BlowupSpec s{CenterKind::Curve, 2, {2, 1}, 0, -1};
    auto r = weighted_blowup(X, s);
    ck(r.pole_order == 1, "pole order 1");
    ck(!r.field.is_holomorphic() && r.representative.is_holomorphic(), "meromorphic transform, holomorphic representative");
    for (int c : {0, 1}) {
        BlowupSpec u{CenterKind::Curve, 2, {1, 1}, c, -1};
        auto a = weighted_blowup(X, u);
        u.weights.clear();
        auto b = blowup_curve(X, u);
        ck(to_json(a).dump() == to_json(b).dump(), "weight (1, 1) equals the standard blow-up, chart " + std::to_string(c));
    }
}

void c10(Check& ck) {
    auto X = field({"x^2", "x*(z - y)", "y - x*z"}, XYZ);
    Resolve3Options standard;
    standard.max_steps = 12;
    standard.allow_weighted = false;
    auto t = resolve3(X, standard);
    bool nilpotent = false;
    for (auto& p : t.singular_points) nilpotent = nilpotent || (p.pending && p.report.cls == SingularClass::Nilpotent);
    ck(t.status == TreeStatus::BudgetExhausted && nilpotent, "standard-only run ends at a pending nilpotent point");
    auto d = detect_persistent_nilpotent(X, 6);
    ck(d.matched && d.witness && verify_witness(*d.witness), "persistent-nilpotent detection");
    auto w = resolve3(X, 40);
    int two = 0;
    for (auto& c : w.centres)
        if (std::count(c.weights.begin(), c.weights.end(), 2)) ++two;
    ck(w.status == TreeStatus::Resolved && w.weighted_blowups() == 1 && two == 1, "one weight-2 blow-up resolves");
}

void c11(Check& ck, const std::filesystem::path& data) {
    // (file, degree, radial type)
    std::vector<std::tuple<std::string, int, bool>> cases{
        {"saddle13", 1, false}, {"radial2", 1, true},      {"homogeneous2", 2, false},
        {"radial_type2", 2, true}, {"homogeneous3", 3, false}, {"radial_type3", 3, true}};
    for (auto& [name, k, radial] : cases) {
        auto s = load_system_file(data / (name + ".field"));
        auto X = VectorField::from_polys(s.vars, s.components);
        for (int c = 0; c < X.dim(); ++c) {
            auto r = blowup_point(X, BlowupSpec::point(c));
            ck(r.dicritical == radial, name + " dicritical verdict");
            ck(r.divisor_multiplicity == (radial ? k : k - 1), name + " multiplicity");
        }
    }
}

Json run_group(const std::vector<Fixture>& fixtures, const std::string& group) {
    std::vector<Fixture> sel;
    for (auto& f : fixtures)
        if (f.group == group) sel.push_back(f);
    CorpusOptions o;
    return run_corpus(sel, o);
}

void c12(Check& ck, const std::vector<Fixture>& fixtures) {
    auto r = run_group(fixtures, "omega1");
    int synthetic = 0;
    for (auto& f : r["fixtures"]) {
        if (f["check"] != "omega1_lift") continue;
        ++synthetic;
        ck(f["status"] == "pass", f["name"].get<std::string>() + ": " + f["message"].get<std::string>());
    }
    ck(synthetic >= 10, "fewer than 10 synthetic fixtures");
}

void c13(Check& ck) {
    auto X = field({"x", "(1 + i)*y", "(-2 - i)*z"}, XYZ);
    cplx v = spiral_direction({1.0, {1, 1}, {-2, -1}});
    DynamicsConfig spiral_cfg;
    spiral_cfg.min_samples = 256;
    for (double y : {0.0, 1.0, -2.5}) {
        auto r = lift_path(X, 0, PathSpec::ray(std::polar(0.1, y), 5), {0.01, 0.01});
        bool dec = true;
        for (size_t k = 0; k + 1 < r.samples.size(); ++k)
            dec = dec && std::abs(r.samples[k + 1].point[1]) < std::abs(r.samples[k].point[1]);
        ck(dec, "radial lift |x2| decreasing, y = " + std::to_string(y));
        auto s = lift_path(X, 0, PathSpec::log_spiral(0.1, y, v, 0, -10), {0.01, 0.01}, spiral_cfg);
        bool inc = !s.escaped && s.samples.size() >= 256;
        for (size_t k = 0; k + 1 < s.samples.size(); ++k)
            for (int i = 1; i < 3; ++i) inc = inc && std::abs(s.samples[k + 1].point[i]) > std::abs(s.samples[k].point[i]);
        ck(inc, "spiral lift |x2|, |x3| increasing, y = " + std::to_string(y));
    }
}

void c14(Check& ck, const std::vector<Fixture>& fixtures) {
    CorpusOptions o;
    std::string a = run_corpus(fixtures, o).dump(2), b = run_corpus(fixtures, o).dump(2);
    ck(a == b, "reports differ");
    ck(fixtures.size() >= 20, "fewer than 20 fixtures");
}

} // namespace

int main(int argc, char** argv) {
    if (argc != 2) {
        std::cerr << "usage: folia_acceptance <corpus dir>\n";
        return 2;
    }
    std::filesystem::path corpus = argv[1];
    std::vector<Fixture> fixtures;
    try {
        fixtures = load_corpus(corpus);
    } catch (const std::exception& e) {
        std::cerr << "load error: " << e.what() << "\n";
        return 2;
    }
    auto data = corpus.parent_path() / "data" / "fields";

    std::vector<std::pair<std::string, std::function<void(Check&)>>> criteria{
        {"exact first integrals of the three-dimensional field", c1},
        {"Jouanolou forms and fields, n = 1..4", c2},
        {"commuting pair for a in {1, 2, 1+i}", c3},
        {"A3 and A5 cusp resolutions", c4},
        {"100 random planar fields resolve to elementary points", c5},
        {"one-dimensional time integrals and order rule", c6},
        {"saddle holonomy estimates", c7},
        {"X_abc saddle-node and formal first integrals", c8},
        {"weighted blow-up pole and unit-weight degeneration", c9},
        {"nilpotent pipeline: standard, detection, weight 2", c10},
        {"multiplicity rule on homogeneous fields", [&](Check& ck) { c11(ck, data); }},
        {"lift and quadrature agreement", [&](Check& ck) { c12(ck, fixtures); }},
        {"radial and spiral lifts for eigenvalues (1, 1+i, -2-i)", c13},
        {"corpus report determinism", [&](Check& ck) { c14(ck, fixtures); }},
    };
    int failed = 0;
    for (size_t k = 0; k < criteria.size(); ++k) {
        Check ck;
        auto t0 = std::chrono::steady_clock::now();
        try {
            criteria[k].second(ck);
        } catch (const std::exception& e) {
            ck.failures.push_back(std::string("exception: ") + e.what());
        }
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        bool ok = ck.failures.empty();
        failed += !ok;
        std::printf("[%s] %2zu %s (%.2f s)\n", ok ? "PASS" : "FAIL", k + 1, criteria[k].first.c_str(), secs);
        for (auto& f : ck.failures) std::printf("       %s\n", f.c_str());
    }
    std::fflush(stdout);
    return failed ? 1 : 0;
}
