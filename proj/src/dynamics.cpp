#include "folia/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <iomanip>
#include <numbers>
#include <ostream>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/numeric/odeint.hpp>

#include "folia/errors.hpp"

namespace folia {

namespace {

constexpr double kPi = std::numbers::pi;

// Double-precision copy of a chart function for repeated evaluation.
class NumericFunction {
public:
    NumericFunction() = default;
    explicit NumericFunction(const ChartFunction& f) : mono_(f.exponents()), n_(f.nvars()) {
        for (auto& [e, c] : f.numerator().terms()) terms_.emplace_back(e, c.to_complex());
    }
    explicit NumericFunction(const Poly& p) : NumericFunction(ChartFunction(p)) {}

    cplx operator()(const cplx* x) const {
        cplx pw[kMaxVars][32];
        int maxdeg[kMaxVars] = {0, 0, 0};
        for (auto& [e, c] : terms_)
            for (int i = 0; i < n_; ++i) maxdeg[i] = std::max(maxdeg[i], e[i]);
        for (int i = 0; i < n_; ++i) {
            pw[i][0] = 1;
            for (int k = 1; k <= maxdeg[i] && k < 32; ++k) pw[i][k] = pw[i][k - 1] * x[i];
        }
        cplx acc = 0;
        for (auto& [e, c] : terms_) {
            cplx t = c;
            for (int i = 0; i < n_; ++i)
                if (e[i]) t *= e[i] < 32 ? pw[i][e[i]] : std::pow(x[i], e[i]);
            acc += t;
        }
        for (int i = 0; i < n_; ++i)
            if (mono_[i]) acc *= std::pow(x[i], mono_[i]);
        return acc;
    }
    cplx operator()(cplx x) const { return (*this)(&x); }

private:
    std::vector<std::pair<Exponent, cplx>> terms_;
    SignedExponent mono_{0, 0, 0};
    int n_ = 0;
};

struct Escaped {};

void require_univariate(const VarList& v, const char* what) {
    if (v.size() != 1) throw StructuralError(std::string(what) + " must be a function of one variable");
}

// Approximate zeros of a univariate chart function.
std::vector<cplx> zeros_of(const ChartFunction& f) {
    std::vector<cplx> out;
    if (f.is_zero()) throw DegenerateInputError("identically zero function");
    if (f.exponents()[0] > 0) out.push_back(0);
    UPoly u = UPoly::from_poly(f.numerator(), 0);
    if (u.degree() > 0)
        for (auto& r : solve_roots(u)) out.emplace_back(static_cast<double>(r.approx.real()), static_cast<double>(r.approx.imag()));
    return out;
}

double distance_to_chord(cplx p, cplx a, cplx b) {
    cplx d = b - a;
    double len2 = std::norm(d);
    if (len2 == 0) return std::abs(p - a);
    double t = std::clamp(((p - a) * std::conj(d)).real() / len2, 0.0, 1.0);
    return std::abs(p - (a + t * d));
}

void check_path_avoids(const PathSpec& path, const std::vector<cplx>& zeros, const std::string& what) {
    if (zeros.empty()) return;
    auto pieces = path.pieces();
    for (size_t k = 0; k + 1 < pieces.size(); ++k) {
        const int m = 2048;
        cplx prev = path.point(pieces[k]);
        for (int j = 1; j <= m; ++j) {
            cplx cur = path.point(pieces[k] + (pieces[k + 1] - pieces[k]) * j / m);
            for (auto& z : zeros)
                if (distance_to_chord(z, prev, cur) < 1e-10 * (1 + std::abs(z)))
                    throw SingularPathError("path passes through a zero of " + what);
            prev = cur;
        }
    }
}

// Adaptive GK15 of g(s) ds along every smooth piece.
template <class G>
QuadResult integrate_path(const PathSpec& path, G&& g, const Tolerances& tol) {
    using boost::math::quadrature::gauss_kronrod;
    auto pieces = path.pieces();
    QuadResult out;
    for (size_t k = 0; k + 1 < pieces.size(); ++k) {
        double a = pieces[k], b = pieces[k + 1];
        if (a == b) continue;
        double err = 0;
        out.value += gauss_kronrod<double, 15>::integrate([&](double s) { return cplx(g(s)); }, a, b, 20, tol.rel, &err);
        out.error += err;
    }
    if (!std::isfinite(out.value.real()) || !std::isfinite(out.value.imag()))
        throw SingularPathError("integral diverges along the path");
    return out;
}

using State = std::vector<double>;

// Controlled dopri5 from t to t_end, first trial step (t_end - t) / split.
// False when the step size collapses below min_dt.
template <class Sys>
bool advance(Sys&& sys, State& st, double t, double t_end, const Tolerances& tol, double min_dt, int split = 4) {
    namespace ode = boost::numeric::odeint;
    auto stepper = ode::make_controlled(tol.abs, tol.rel, ode::runge_kutta_dopri5<State>());
    double dt = (t_end - t) / split;
    for (long steps = 0; steps < 100000; ++steps) {
        double rest = t_end - t;
        if (std::abs(rest) <= 1e-15 * std::max(1.0, std::abs(t_end))) return true;
        if (std::abs(dt) > std::abs(rest)) dt = rest;
        if (stepper.try_step(sys, st, t, dt) == ode::fail && std::abs(dt) < min_dt) return false;
    }
    return false;
}

struct LiftRun {
    std::vector<LiftSample> samples;
    bool escaped = false;
};

LiftRun run_lift(const std::vector<NumericFunction>& comps, int base, const PathSpec& path, const std::vector<cplx>& fiber,
                 const std::vector<double>& grid, const Tolerances& tol, double domain, int split = 4) {
    const int n = static_cast<int>(comps.size());
    std::vector<int> fib;
    for (int i = 0; i < n; ++i)
        if (i != base) fib.push_back(i);
    const int m = static_cast<int>(fib.size());

    auto full_point = [&](const State& st, double s) {
        std::vector<cplx> x(n);
        x[base] = path.point(s);
        for (int j = 0; j < m; ++j) x[fib[j]] = cplx(st[2 * j], st[2 * j + 1]);
        return x;
    };
    auto rhs = [&](const State& st, State& dst, double s) {
        auto x = full_point(st, s);
        for (int j = 0; j < m; ++j)
            if (!std::isfinite(st[2 * j]) || !std::isfinite(st[2 * j + 1]) || std::abs(x[fib[j]]) > 10 * domain)
                throw Escaped{};
        cplx xb = comps[base](x.data());
        double scale = 1;
        for (auto& c : comps) scale = std::max(scale, std::abs(c(x.data())));
        if (std::abs(xb) < 1e-13 * scale) throw SingularPathError("base component vanishes along the lift");
        cplx w = path.velocity(s) / xb;
        for (int j = 0; j < m; ++j) {
            cplx d = comps[fib[j]](x.data()) * w;
            dst[2 * j] = d.real();
            dst[2 * j + 1] = d.imag();
        }
    };

    State st(2 * m);
    for (int j = 0; j < m; ++j) {
        st[2 * j] = fiber[j].real();
        st[2 * j + 1] = fiber[j].imag();
    }
    auto breaks = path.pieces();
    LiftRun run;
    run.samples.push_back({grid.front(), full_point(st, grid.front())});
    const double min_dt = 1e-13 * std::abs(grid.back() - grid.front());
    for (size_t k = 0; k + 1 < grid.size(); ++k) {
        double a = grid[k], b = grid[k + 1];
        std::vector<double> stops{a};
        for (double br : breaks)
            if ((br - a) * (br - b) < 0) stops.push_back(br);
        stops.push_back(b);
        try {
            for (size_t q = 0; q + 1 < stops.size(); ++q)
                if (!advance(rhs, st, stops[q], stops[q + 1], tol, min_dt, split))
                    throw SingularPathError("lift step size collapsed near s = " + std::to_string(stops[q]));
        } catch (const Escaped&) {
            run.escaped = true;
            return run;
        }
        auto x = full_point(st, b);
        for (int j = 0; j < m; ++j)
            if (std::abs(x[fib[j]]) > domain) {
                run.escaped = true;
                return run;
            }
        run.samples.push_back({b, std::move(x)});
    }
    return run;
}

bool increments_ok(const std::vector<LiftSample>& samples) {
    for (size_t k = 0; k + 1 < samples.size(); ++k)
        for (size_t i = 0; i < samples[k].point.size(); ++i) {
            cplx p = samples[k].point[i], q = samples[k + 1].point[i];
            if (std::abs(p) < 1e-300 || std::abs(q) < 1e-300) continue;
            if (std::abs(std::arg(q / p)) >= kPi / 4) return false;
        }
    return true;
}

std::vector<double> uniform_grid(double s0, double s1, int points) {
    std::vector<double> g(points);
    for (int k = 0; k < points; ++k) g[k] = s0 + (s1 - s0) * k / (points - 1);
    g.back() = s1;
    return g;
}

} // namespace

// ---------------------------------------------------------------- paths

PathSpec PathSpec::segment(cplx from, cplx to) {
    PathSpec p;
    p.kind = Kind::Segment;
    p.a = from;
    p.b = to;
    return p;
}

PathSpec PathSpec::arc(cplx centre, double r, double theta0, double theta1) {
    if (!(r > 0)) throw DegenerateInputError("arc radius must be positive");
    PathSpec p;
    p.kind = Kind::Arc;
    p.a = centre;
    p.radius = r;
    p.s0 = theta0;
    p.s1 = theta1;
    return p;
}

PathSpec PathSpec::log_spiral(double eps, double y, cplx v, double t0, double t1) {
    if (!(eps > 0) || v == cplx(0)) throw DegenerateInputError("spiral needs eps > 0 and v != 0");
    PathSpec p;
    p.kind = Kind::LogSpiral;
    p.radius = eps;
    p.angle = y;
    p.v = v;
    p.s0 = t0;
    p.s1 = t1;
    return p;
}

PathSpec PathSpec::ray(cplx A, double T) { return log_spiral(std::abs(A), std::arg(A), cplx(-1, 0), 0, T); }

PathSpec PathSpec::polyline(std::vector<cplx> pts) {
    if (pts.size() < 2) throw DegenerateInputError("polyline needs two points");
    PathSpec p;
    p.kind = Kind::Polyline;
    p.points = std::move(pts);
    p.s0 = 0;
    p.s1 = static_cast<double>(p.points.size() - 1);
    return p;
}

cplx PathSpec::point(double s) const {
    switch (kind) {
    case Kind::Segment: return a + (b - a) * ((s - s0) / (s1 - s0));
    case Kind::Arc: return a + std::polar(radius, s);
    case Kind::LogSpiral: return radius * std::exp(cplx(0, angle) + s / v);
    case Kind::Polyline: {
        int k = std::clamp(static_cast<int>(std::floor(s)), 0, static_cast<int>(points.size()) - 2);
        return points[k] + (points[k + 1] - points[k]) * (s - k);
    }
    }
    return {};
}

cplx PathSpec::velocity(double s) const {
    switch (kind) {
    case Kind::Segment: return (b - a) / (s1 - s0);
    case Kind::Arc: return cplx(0, 1) * std::polar(radius, s);
    case Kind::LogSpiral: return point(s) / v;
    case Kind::Polyline: {
        int k = std::clamp(static_cast<int>(std::floor(s)), 0, static_cast<int>(points.size()) - 2);
        // At an interior vertex, use the piece being entered in the travel direction.
        if (s1 < s0 && s == std::floor(s) && k > 0) --k;
        return points[k + 1] - points[k];
    }
    }
    return {};
}

std::vector<double> PathSpec::pieces() const {
    std::vector<double> out{s0};
    if (kind == Kind::Polyline)
        for (size_t k = 1; k + 1 < points.size(); ++k) out.push_back(static_cast<double>(k));
    out.push_back(s1);
    if (s1 < s0) std::sort(out.begin(), out.end(), std::greater<>());
    return out;
}

// ---------------------------------------------------------------- time form

QuadResult time_form_integral(const ChartFunction& X, const PathSpec& path, const Tolerances& tol) {
    require_univariate(X.vars(), "time form field");
    check_path_avoids(path, zeros_of(X), "the field");
    NumericFunction f(X);
    return integrate_path(path, [&](double s) { return path.velocity(s) / f(path.point(s)); }, tol);
}

QuadResult time_form_integral(const Poly& X, const PathSpec& path, const Tolerances& tol) {
    return time_form_integral(ChartFunction(X), path, tol);
}

std::string to_string(SemicompleteVerdict v) {
    return v == SemicompleteVerdict::Semicomplete ? "semicomplete" : "not_semicomplete";
}

SemicompleteReport semicomplete_order_test(const UPoly& X, const Tolerances& tol) {
    if (X.is_zero()) throw DegenerateInputError("zero field");
    int k = 0;
    while (X.coeff(k).is_zero()) ++k;
    if (k == 0) throw NotApplicableError("field does not vanish at 0");
    SemicompleteReport r;
    r.order = k;
    r.verdict = k <= 2 ? SemicompleteVerdict::Semicomplete : SemicompleteVerdict::NotSemicomplete;
    if (k >= 3) {
        // x^k: the time form -x^{1-k}/(k-1) returns to its start after the angle 2 pi/(k-1).
        auto path = PathSpec::arc(0, 0.1, 0, 2 * kPi / (k - 1));
        try {
            r.evidence = time_form_integral(X.to_poly({"x"}, 0), path, tol);
        } catch (const SingularPathError&) {
        }
    }
    return r;
}

SemicompleteReport semicomplete_order_test(const Poly& X, const Tolerances& tol) {
    require_univariate(X.vars(), "field");
    return semicomplete_order_test(UPoly::from_poly(X, 0), tol);
}

// ---------------------------------------------------------------- lifts

LiftResult lift_path(const VectorField& X, int base_var, const PathSpec& path, const std::vector<cplx>& fiber,
                     const DynamicsConfig& cfg) {
    int n = X.dim();
    if (n < 2 || n > 3) throw NotApplicableError("lifts are defined for fields in dimension 2 or 3");
    if (base_var < 0 || base_var >= n) throw StructuralError("base variable out of range");
    if (static_cast<int>(fiber.size()) != n - 1) throw StructuralError("fiber needs one value per non-base variable");
    std::vector<NumericFunction> comps;
    for (auto& c : X.components()) comps.emplace_back(c);

    int points = std::max(cfg.min_samples, 2);
    LiftRun run;
    for (;;) {
        auto grid = uniform_grid(path.s0, path.s1, points);
        run = run_lift(comps, base_var, path, fiber, grid, cfg.tol, cfg.domain_radius);
        if (run.escaped || increments_ok(run.samples) || points >= (1 << 16)) break;
        points = 2 * (points - 1) + 1;
    }
    LiftResult out;
    out.escaped = run.escaped;
    out.final = run.samples.back().point;
    // A-posteriori estimate: the same grid at tolerances 2^-5 smaller (one halving of a fifth-order
    // step) and half the initial trial steps, so the reference never retraces the same steps.
    Tolerances fine{cfg.tol.abs / 32, cfg.tol.rel / 32};
    auto grid = uniform_grid(path.s0, path.s1, points);
    auto ref = run_lift(comps, base_var, path, fiber, grid, fine, cfg.domain_radius, 8);
    size_t common = std::min(ref.samples.size(), run.samples.size());
    for (size_t k = 0; k < common; ++k)
        for (int i = 0; i < n; ++i)
            out.est_error = std::max(out.est_error, std::abs(ref.samples[k].point[i] - run.samples[k].point[i]));
    out.samples = std::move(run.samples);
    return out;
}

std::vector<LiftResult> lift_paths_serial(const VectorField& X, int base_var, const std::vector<LiftJob>& jobs,
                                          const DynamicsConfig& cfg) {
    std::vector<LiftResult> out;
    out.reserve(jobs.size());
    for (auto& j : jobs) out.push_back(lift_path(X, base_var, j.path, j.fiber, cfg));
    return out;
}

std::vector<LiftResult> lift_paths_parallel(const VectorField& X, int base_var, const std::vector<LiftJob>& jobs,
                                            const DynamicsConfig& cfg) {
    const int n = static_cast<int>(jobs.size());
    std::vector<LiftResult> out(n);
    std::vector<std::exception_ptr> err(n);
#pragma omp parallel for schedule(dynamic)
    for (int k = 0; k < n; ++k) {
        try {
            out[k] = lift_path(X, base_var, jobs[k].path, jobs[k].fiber, cfg);
        } catch (...) {
            err[k] = std::current_exception();
        }
    }
    for (auto& e : err)
        if (e) std::rethrow_exception(e);
    return out;
}

// ---------------------------------------------------------------- omega_1

QuadResult omega1_integral(const Poly& F, const Poly& H, const PathSpec& path, const Tolerances& tol) {
    require_univariate(F.vars(), "F");
    if (F.vars() != H.vars()) throw StructuralError("F and H on different charts");
    check_path_avoids(path, zeros_of(ChartFunction(F)), "F");
    if (H.is_zero()) return {};
    NumericFunction f(F), h(H);
    return integrate_path(path, [&](double s) { cplx x = path.point(s); return h(x) / f(x) * path.velocity(s); }, tol);
}

bool contraction_check(const QuadResult& omega1) { return omega1.value.real() < 0; }

bool contraction_check(const Poly& F, const Poly& H, const PathSpec& path, const Tolerances& tol) {
    return contraction_check(omega1_integral(F, H, path, tol));
}

VectorField omega1_field(const Poly& F, const Poly& H) {
    require_univariate(F.vars(), "F");
    if (F.vars() != H.vars()) throw StructuralError("F and H on different charts");
    VarList vars{F.vars()[0], F.vars()[0] == "z" ? "w" : "z"};
    std::vector<MonomialImage> img{{1, {1, 0, 0}}};
    Poly f = F.substitute_monomials(vars, img), h = H.substitute_monomials(vars, img);
    return VectorField::from_polys(vars, {f, h * Poly::variable(vars, 1)});
}

Trajectory trace_descent(const Poly& F, const Poly& H, double theta, cplx start, double t_max, int samples,
                         const DynamicsConfig& cfg) {
    require_univariate(F.vars(), "F");
    if (F.vars() != H.vars()) throw StructuralError("F and H on different charts");
    if (!(std::abs(theta) < kPi / 2)) throw NotApplicableError("theta must lie in (-pi/2, pi/2)");
    if (samples < 2) throw NotApplicableError("need at least two samples");
    NumericFunction f(F), h(H);
    auto singular = [&](cplx x) {
        cplx fx = f(x), hx = h(x);
        if (std::abs(fx) < 1e-12 || std::abs(hx) < 1e-12) return true;
        // Within about 1e-8 of a zero or a simple pole of H/F.
        double r = std::abs(hx / fx);
        return !std::isfinite(r) || r > 1e8 || r < 1e-8;
    };
    if (singular(start)) throw SingularPathError("omega1 is singular at the start point");
    const cplx rot = std::polar(1.0, theta);
    auto rhs = [&](const State& st, State& dst, double) {
        cplx x(st[0], st[1]);
        if (singular(x)) throw Escaped{};
        cplx w = f(x) == cplx(0) ? cplx(0) : h(x) / f(x);
        cplx d = rot * std::conj(w) / std::abs(w);
        dst[0] = d.real();
        dst[1] = d.imag();
    };
    Trajectory tr;
    tr.stop = "t_max";
    State st{start.real(), start.imag()};
    tr.t.push_back(0);
    tr.x.push_back(start);
    auto grid = uniform_grid(0, t_max, samples);
    for (size_t k = 0; k + 1 < grid.size(); ++k) {
        try {
            if (!advance(rhs, st, grid[k], grid[k + 1], cfg.tol, 1e-13 * std::abs(t_max))) throw Escaped{};
        } catch (const Escaped&) {
            tr.stop = "singular";
            return tr;
        }
        cplx x(st[0], st[1]);
        if (std::abs(x) > cfg.domain_radius) {
            tr.stop = "domain";
            return tr;
        }
        tr.t.push_back(grid[k + 1]);
        tr.x.push_back(x);
    }
    return tr;
}

cplx spiral_direction(const std::vector<cplx>& lambda) {
    if (lambda.size() < 2 || lambda[0] == cplx(0)) throw NotApplicableError("need a nonzero first eigenvalue and others");
    // Directions phi with Re(w conj(e^{i phi})) > 0 form the open arc of width pi around arg w.
    double lo = -kPi / 2, hi = kPi / 2;
    for (size_t j = 1; j < lambda.size(); ++j) {
        double c = std::arg(-lambda[j] / lambda[0]);
        lo = std::max(lo, c - kPi / 2);
        hi = std::min(hi, c + kPi / 2);
    }
    if (!(lo < hi)) throw NotApplicableError("no line separates the first eigenvalue from the others");
    return std::polar(1.0, (lo + hi) / 2);
}

// ---------------------------------------------------------------- holonomy

HolonomyEstimate holonomy(const VectorField& X, int base_var, const DynamicsConfig& cfg) {
    auto path = PathSpec::arc(0, cfg.loop_radius, 0, 2 * kPi);
    std::vector<cplx> fiber(X.dim() - 1, cplx(cfg.fiber_seed));
    HolonomyEstimate h;
    h.lift = lift_path(X, base_var, path, fiber, cfg);
    if (h.lift.escaped) return h;
    for (int i = 0, j = 0; i < X.dim(); ++i)
        if (i != base_var) h.ratio.push_back(h.lift.final[i] / fiber[j++]);
    return h;
}

std::vector<cplx> holonomy_iterate(const VectorField& X, int base_var, int times, const DynamicsConfig& cfg) {
    auto path = PathSpec::arc(0, cfg.loop_radius, 0, 2 * kPi);
    std::vector<cplx> fiber(X.dim() - 1, cplx(cfg.fiber_seed));
    for (int t = 0; t < times; ++t) {
        auto r = lift_path(X, base_var, path, fiber, cfg);
        if (r.escaped) throw SingularPathError("loop lift left the domain");
        fiber.clear();
        for (int i = 0; i < X.dim(); ++i)
            if (i != base_var) fiber.push_back(r.final[i]);
    }
    return fiber;
}

// ---------------------------------------------------------------- CSV

void write_csv(std::ostream& os, const VarList& vars, const std::vector<LiftSample>& samples) {
    os << "t";
    for (auto& v : vars) os << ",re_" << v << ",im_" << v;
    os << "\n" << std::setprecision(17);
    for (auto& s : samples) {
        os << s.s;
        for (auto& c : s.point) os << "," << c.real() << "," << c.imag();
        os << "\n";
    }
}

void write_csv(std::ostream& os, const std::string& var, const Trajectory& tr) {
    os << "t,re_" << var << ",im_" << var << "\n" << std::setprecision(17);
    for (size_t k = 0; k < tr.t.size(); ++k) os << tr.t[k] << "," << tr.x[k].real() << "," << tr.x[k].imag() << "\n";
}

} // namespace folia
