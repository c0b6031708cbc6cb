#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "folia/dynamics.hpp"
#include "folia/errors.hpp"
#include "helpers.hpp"

using namespace folia;
using folia::testing::P;

namespace {

constexpr double pi = std::numbers::pi;
const VarList X1{"x"};
const VarList xy{"x", "y"};
const VarList xyz{"x", "y", "z"};

VectorField field(const std::vector<std::string>& comps, const VarList& vars) {
    std::vector<Poly> ps;
    for (auto& c : comps) ps.push_back(P(c, vars));
    return VectorField::from_polys(vars, ps);
}

PathSpec half_circle() { return PathSpec::arc(0, 0.1, 0, pi); }

// lambda = (1, 1+i, -2-i), optionally with higher-order terms x_i (1 + f_i).
VectorField siegel_field(bool perturbed) {
    if (!perturbed) return field({"x", "(1+i)*y", "(-2-i)*z"}, xyz);
    return field({"x", "(1+i)*y*(1 + x + 1/2*x*z)", "(-2-i)*z*(1 + x + 1/4*y^2)"}, xyz);
}

} // namespace

TEST_CASE("time form integrals") {
    auto cube = time_form_integral(P("x^3", X1), half_circle());
    CHECK(std::abs(cube.value) < 1e-9);
    auto sq = time_form_integral(P("x^2", X1), half_circle());
    CHECK(std::abs(sq.value - 20.0) / 20.0 < 1e-6);
    auto lin = time_form_integral(P("x", X1), PathSpec::arc(0, 0.1, 0, 2 * pi));
    CHECK(std::abs(lin.value - cplx(0, 2 * pi)) < 1e-9);
    CHECK_THROWS_AS(time_form_integral(P("x", X1), PathSpec::segment(-1, 1)), SingularPathError);
    CHECK_THROWS_AS(time_form_integral(P("x - 1/2", X1), PathSpec::segment(0.25, cplx(0.75, 0))), SingularPathError);
    CHECK_THROWS_AS(time_form_integral(P("x*y", xy), half_circle()), StructuralError);
}

TEST_CASE("time form integral of a meromorphic field") {
    // X = 1/x: the time form is x dx, an exact form.
    ChartFunction X(P("1", X1), {-1, 0, 0});
    auto r = time_form_integral(X, PathSpec::segment(0, cplx(1, 1)));
    CHECK(std::abs(r.value - cplx(0, 1)) < 1e-12);
}

TEST_CASE("time form: additivity and homotopy invariance") {
    auto f = P("x^2 + 1/3*x^3", X1);
    auto whole = time_form_integral(f, PathSpec::arc(0, 0.3, 0.2, 2.9));
    auto a = time_form_integral(f, PathSpec::arc(0, 0.3, 0.2, 1.1));
    auto b = time_form_integral(f, PathSpec::arc(0, 0.3, 1.1, 2.9));
    CHECK(std::abs(whole.value - (a.value + b.value)) <= 2 * (whole.error + a.error + b.error) + 1e-12);

    auto arc = time_form_integral(P("x^2", X1), half_circle());
    auto poly = time_form_integral(P("x^2", X1), PathSpec::polyline({0.1, cplx(0.1, 0.2), cplx(-0.1, 0.2), -0.1}));
    CHECK(std::abs(arc.value - poly.value) < 1e-6);
    // Reversing orientation negates.
    auto rev = time_form_integral(P("x^2", X1), PathSpec::arc(0, 0.1, pi, 0));
    CHECK(std::abs(rev.value + arc.value) < 1e-9);
}

TEST_CASE("semicompleteness order rule") {
    for (int k = 1; k <= 4; ++k) {
        auto r = semicomplete_order_test(P("x^" + std::to_string(k), X1));
        CHECK(r.order == k);
        CHECK(r.verdict == (k <= 2 ? SemicompleteVerdict::Semicomplete : SemicompleteVerdict::NotSemicomplete));
        CHECK(r.evidence.has_value() == (k >= 3));
        if (r.evidence) CHECK(std::abs(r.evidence->value) < 1e-9);
    }
    CHECK(semicomplete_order_test(P("x^2 + x^5", X1)).verdict == SemicompleteVerdict::Semicomplete);
    CHECK_THROWS_AS(semicomplete_order_test(P("0", X1)), DegenerateInputError);
    CHECK_THROWS_AS(semicomplete_order_test(P("1 + x", X1)), NotApplicableError);
}

TEST_CASE("loop holonomy of linear saddles") {
    auto h3 = holonomy(field({"x", "-3*y"}, xy), 1);
    REQUIRE(h3.ratio.size() == 1);
    CHECK(std::abs(h3.ratio[0] - std::polar(1.0, -2 * pi / 3)) < 1e-4);
    CHECK(h3.lift.samples.size() >= 64);
    CHECK(h3.lift.est_error < 1e-6);
    CHECK_FALSE(h3.lift.escaped);

    auto h2 = holonomy(field({"x", "-2*y"}, xy), 1);
    CHECK(std::abs(h2.ratio[0] - std::polar(1.0, -pi)) < 1e-4);
}

TEST_CASE("holonomy iterates return for finite-order saddles") {
    std::vector<std::pair<std::string, int>> cases{{"-3*y", 3}, {"-2*y", 2}, {"-3/2*y", 3}, {"-5/2*y", 5}};
    for (auto& [comp, q] : cases) {
        auto X = field({"x", comp}, xy);
        auto back = holonomy_iterate(X, 1, q);
        CHECK(std::abs(back[0] / 0.01 - 1.0) < 1e-3);
    }
}

TEST_CASE("lift errors and escape") {
    auto X = field({"x", "-3*y"}, xy);
    CHECK_THROWS_AS(lift_path(X, 1, PathSpec::segment(-0.1, 0.1), {0.01}), SingularPathError);
    CHECK_THROWS_AS(lift_path(X, 1, half_circle(), {0.01, 0.02}), StructuralError);
    DynamicsConfig cfg;
    cfg.domain_radius = 0.05;
    // x = x0 (y/y0)^{-1/3} grows as y shrinks.
    auto r = lift_path(X, 1, PathSpec::segment(0.1, 1e-6), {0.01}, cfg);
    CHECK(r.escaped);
    CHECK(std::abs(r.final[0]) <= 0.05);
}

TEST_CASE("lift samples keep argument increments small") {
    // x rotates 3 times per loop in the base: the grid must refine.
    auto X = field({"3*x", "y"}, xy);
    auto r = lift_path(X, 1, PathSpec::arc(0, 0.1, 0, 2 * pi), {0.01});
    for (size_t k = 0; k + 1 < r.samples.size(); ++k)
        CHECK(std::abs(std::arg(r.samples[k + 1].point[0] / r.samples[k].point[0])) < pi / 4);
    CHECK(std::abs(r.final[0] - 0.01) < 1e-6);
}

TEST_CASE("omega1 quadrature agrees with lifts") {
    struct Fixture {
        std::string F, H;
        PathSpec path;
    };
    std::vector<Fixture> fx{
        {"1 + 1/4*x", "1", PathSpec::arc(0, 0.5, 0, 2)},
        {"1", "1", PathSpec::segment(0, 1.5)},
        {"1", "-1", PathSpec::segment(0, cplx(1, 1))},
        {"1 + x^2", "x", PathSpec::arc(0, 0.4, -1, 3)},
        {"2 - x", "i", PathSpec::segment(cplx(0, -0.5), cplx(0.5, 0.5))},
        {"x", "1", PathSpec::arc(0, 0.3, 0, 2 * pi)},
        {"x^2", "1 + x", PathSpec::arc(0, 0.5, 0, pi)},
        {"1 - 1/3*x", "x^2 - 1", PathSpec::polyline({0, cplx(0.5, 0.2), cplx(1, -0.3)})},
        {"3 + x^3", "(1+i)*x", PathSpec::log_spiral(0.8, 0.3, cplx(0.6, -0.8), 0, -3)},
        {"1", "0", PathSpec::segment(0, 2)},
    };
    for (auto& f : fx) {
        auto F = P(f.F, X1), H = P(f.H, X1);
        auto w = omega1_integral(F, H, f.path);
        auto X = omega1_field(F, H);
        cplx z0(0.3, -0.2);
        auto lift = lift_path(X, 0, f.path, {z0});
        cplx predicted = z0 * std::exp(w.value);
        CHECK(std::abs(lift.final[1] - predicted) / std::abs(z0) <= 1e-6);
        bool shrinks = std::abs(lift.final[1]) < std::abs(z0);
        if (std::abs(w.value.real()) > 1e-9) CHECK(contraction_check(w) == shrinks);
    }
    auto len = omega1_integral(P("1", X1), P("1", X1), PathSpec::segment(0, 2.5));
    CHECK(std::abs(len.value - 2.5) < 1e-12);
    CHECK(omega1_integral(P("1", X1), P("0", X1), PathSpec::segment(0, 2.5)).value == cplx(0));
    CHECK_THROWS_AS(omega1_integral(P("x", X1), P("1", X1), PathSpec::segment(-1, 1)), SingularPathError);
}

TEST_CASE("contraction is monotone decay along segments") {
    // H/F = -1 on a segment of length L: |z| = e^{-L} |z0|, decreasing along the way.
    auto F = P("1", X1), H = P("-1", X1);
    auto path = PathSpec::segment(0, 2);
    CHECK(contraction_check(F, H, path));
    auto lift = lift_path(omega1_field(F, H), 0, path, {cplx(1, 0)});
    for (size_t k = 0; k + 1 < lift.samples.size(); ++k)
        CHECK(std::abs(lift.samples[k + 1].point[1]) < std::abs(lift.samples[k].point[1]));
    CHECK(std::abs(std::abs(lift.final[1]) - std::exp(-2.0)) < 1e-8);
}

TEST_CASE("trace_descent") {
    SUBCASE("dx/x, theta 0: radial ray") {
        auto tr = trace_descent(P("x", X1), P("1", X1), 0, cplx(0.3, 0.4), 2);
        CHECK(tr.stop == "t_max");
        for (auto& x : tr.x) CHECK(std::abs((x * std::conj(tr.x.front())).imag()) / std::abs(x) < 1e-8);
        CHECK(std::abs(tr.x.back()) > std::abs(tr.x.front()));
    }
    SUBCASE("dx/x, theta pi/4: logarithmic spiral") {
        auto tr = trace_descent(P("x", X1), P("1", X1), pi / 4, cplx(0.5, 0), 3);
        // d log x = e^{i pi/4} dt / |x|: arg x - log|x| stays constant.
        double c0 = std::arg(tr.x.front()) - std::log(std::abs(tr.x.front()));
        double prev = std::arg(tr.x.front());
        double unwrapped = prev;
        for (auto& x : tr.x) {
            double a = std::arg(x), d = std::remainder(a - prev, 2 * pi);
            unwrapped += d;
            prev = a;
            CHECK(std::abs(unwrapped - std::log(std::abs(x)) - c0) < 1e-6);
        }
    }
    SUBCASE("dx, theta 0: horizontal line") {
        auto tr = trace_descent(P("1", X1), P("1", X1), 0, cplx(0.1, 0.2), 1.5);
        for (auto& x : tr.x) CHECK(std::abs(x.imag() - 0.2) < 1e-12);
        CHECK(std::abs(tr.x.back().real() - 1.6) < 1e-8);
    }
    SUBCASE("reaching the singular point stops") {
        // dx/x with theta 0 run from the opposite orientation: -dx/x points inwards.
        auto tr = trace_descent(P("-x", X1), P("1", X1), 0, cplx(0.5, 0), 2);
        CHECK(tr.stop == "singular");
    }
    CHECK_THROWS_AS(trace_descent(P("x", X1), P("1", X1), pi / 2, 1, 1), NotApplicableError);
    CHECK_THROWS_AS(trace_descent(P("x", X1), P("1", X1), 0, 0, 1), SingularPathError);
}

TEST_CASE("spiral direction") {
    auto v = spiral_direction({1, cplx(1, 1), cplx(-2, -1)});
    double phi = std::arg(v);
    CHECK(phi > -std::atan(2.0));
    CHECK(phi < -pi / 4);
    CHECK(std::abs(phi - (-std::atan(2.0) - pi / 4) / 2) < 1e-12);
    CHECK_THROWS_AS(spiral_direction({1, cplx(1, 0)}), NotApplicableError);
}

TEST_CASE("saddle behaviour of the (1, 1+i, -2-i) field") {
    for (bool perturbed : {false, true}) {
        auto X = siegel_field(perturbed);
        // Radial lifts: |x2| decreases.
        for (double y : {0.0, 1.0, -2.5}) {
            auto r = lift_path(X, 0, PathSpec::ray(std::polar(0.1, y), 5), {0.01, 0.01});
            for (size_t k = 0; k + 1 < r.samples.size(); ++k)
                CHECK(std::abs(r.samples[k + 1].point[1]) < std::abs(r.samples[k].point[1]));
        }
        // Spiral lifts: |x2| and |x3| increase as t runs from 0 to -10.
        cplx v = spiral_direction({1, cplx(1, 1), cplx(-2, -1)});
        DynamicsConfig cfg;
        cfg.min_samples = 256;
        for (double y : {0.0, 1.0, -2.5}) {
            auto r = lift_path(X, 0, PathSpec::log_spiral(0.1, y, v, 0, -10), {0.01, 0.01}, cfg);
            REQUIRE_FALSE(r.escaped);
            CHECK(r.samples.size() >= 256);
            for (size_t k = 0; k + 1 < r.samples.size(); ++k) {
                CHECK(std::abs(r.samples[k + 1].point[0]) < std::abs(r.samples[k].point[0]));
                CHECK(std::abs(r.samples[k + 1].point[1]) > std::abs(r.samples[k].point[1]));
                CHECK(std::abs(r.samples[k + 1].point[2]) > std::abs(r.samples[k].point[2]));
            }
        }
    }
}

TEST_CASE("parallel lifts match serial lifts") {
    auto X = field({"x + y^2", "-3*y"}, xy);
    std::vector<LiftJob> jobs;
    for (int k = 0; k < 8; ++k) jobs.push_back({PathSpec::arc(0, 0.1, 0, 2 * pi * (k + 1) / 8), {cplx(0.01 * k, 0.005)}});
    auto a = lift_paths_serial(X, 1, jobs), b = lift_paths_parallel(X, 1, jobs);
    REQUIRE(a.size() == b.size());
    for (size_t k = 0; k < a.size(); ++k) {
        CHECK(a[k].final == b[k].final);
        CHECK(a[k].samples.size() == b[k].samples.size());
    }
}

TEST_CASE("csv output") {
    auto r = lift_path(field({"x", "-2*y"}, xy), 1, PathSpec::arc(0, 0.1, 0, 1), {0.01});
    std::ostringstream os;
    write_csv(os, xy, r.samples);
    std::istringstream is(os.str());
    std::string line;
    std::getline(is, line);
    CHECK(line == "t,re_x,im_x,re_y,im_y");
    int rows = 0;
    while (std::getline(is, line)) {
        ++rows;
        CHECK(std::count(line.begin(), line.end(), ',') == 4);
    }
    CHECK(rows == static_cast<int>(r.samples.size()));
}
