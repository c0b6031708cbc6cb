#pragma once

#include <complex>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "folia/fields.hpp"
#include "folia/upoly.hpp"

namespace folia {

using cplx = std::complex<double>;

struct Tolerances {
    double abs = 1e-10;
    double rel = 1e-8;
};

struct DynamicsConfig {
    Tolerances tol;
    double loop_radius = 0.1;
    double fiber_seed = 0.01;
    int min_samples = 64;          // recorded points along a lift, endpoints included
    double domain_radius = 1e6;    // fiber polydisc; leaving it stops a lift
};

/// Parametrized path in one complex coordinate. The parameter runs from s0
/// to s1 (either order), which fixes the orientation.
struct PathSpec {
    enum class Kind { Segment, Arc, LogSpiral, Polyline };
    Kind kind = Kind::Segment;
    double s0 = 0, s1 = 1;
    cplx a, b;                       // segment endpoints; arc centre in a
    double radius = 0;               // arc radius; spiral scale epsilon
    double angle = 0;                // spiral: y in eps * exp(i y + t / v)
    cplx v{1, 0};                    // spiral direction
    std::vector<cplx> points;        // polyline vertices, s in [0, n-1]

    static PathSpec segment(cplx from, cplx to);
    /// centre + r e^{i theta}, theta from theta0 to theta1.
    static PathSpec arc(cplx centre, double r, double theta0, double theta1);
    /// eps * exp(i y + t / v), t from t0 to t1.
    static PathSpec log_spiral(double eps, double y, cplx v, double t0, double t1);
    /// A * exp(-t), t from 0 to T.
    static PathSpec ray(cplx A, double T);
    static PathSpec polyline(std::vector<cplx> pts);

    cplx point(double s) const;
    cplx velocity(double s) const;
    /// Parameter values where the path may fail to be smooth, s0 and s1 included, in travel order.
    std::vector<double> pieces() const;
};

struct QuadResult {
    cplx value;
    double error = 0;
};

/// Integral of dx / X(x) along the path; X univariate (one variable).
QuadResult time_form_integral(const ChartFunction& X, const PathSpec& path, const Tolerances& tol = {});
QuadResult time_form_integral(const Poly& X, const PathSpec& path, const Tolerances& tol = {});

enum class SemicompleteVerdict { Semicomplete, NotSemicomplete };
std::string to_string(SemicompleteVerdict v);

struct SemicompleteReport {
    SemicompleteVerdict verdict = SemicompleteVerdict::Semicomplete;
    int order = 0;
    /// Time integral along the arc of radius 0.1 and angle 2 pi / (order - 1)
    /// starting at 0.1; present for order >= 3 (zero for a pure power).
    std::optional<QuadResult> evidence;
};

/// Exact vanishing-order rule, order <= 2 semicomplete.
SemicompleteReport semicomplete_order_test(const UPoly& X, const Tolerances& tol = {});
SemicompleteReport semicomplete_order_test(const Poly& X, const Tolerances& tol = {});

struct LiftSample {
    double s = 0;
    std::vector<cplx> point;         // all coordinates, base included
};

struct LiftResult {
    std::vector<LiftSample> samples;
    std::vector<cplx> final;
    double est_error = 0;
    bool escaped = false;
};

/// Lift of `path` (in the coordinate `base_var`) to the leaf through the
/// point whose other coordinates are `fiber` (dim - 1 values, in variable order).
LiftResult lift_path(const VectorField& X, int base_var, const PathSpec& path, const std::vector<cplx>& fiber,
                     const DynamicsConfig& cfg = {});

struct LiftJob {
    PathSpec path;
    std::vector<cplx> fiber;
};
/// Many independent lifts; the parallel kernel returns exactly the serial results.
std::vector<LiftResult> lift_paths_serial(const VectorField& X, int base_var, const std::vector<LiftJob>& jobs,
                                          const DynamicsConfig& cfg = {});
std::vector<LiftResult> lift_paths_parallel(const VectorField& X, int base_var, const std::vector<LiftJob>& jobs,
                                            const DynamicsConfig& cfg = {});

/// Integral of (H / F) dx along the path; F and H univariate over the same variable.
QuadResult omega1_integral(const Poly& F, const Poly& H, const PathSpec& path, const Tolerances& tol = {});
/// z = z0 exp(integral): the transverse coordinate shrinks when the real part is negative.
bool contraction_check(const QuadResult& omega1);
bool contraction_check(const Poly& F, const Poly& H, const PathSpec& path, const Tolerances& tol = {});
/// The field F d/dx + z H d/dz whose lifts realise z = z0 exp(integral of H/F dx).
VectorField omega1_field(const Poly& F, const Poly& H);

struct Trajectory {
    std::vector<double> t;
    std::vector<cplx> x;
    std::string stop;                // "t_max", "singular", "domain"
};

/// Unit-speed curve with tangent e^{i theta} conj(h)/|h|, h = H/F: theta = 0
/// follows {Im omega1 = 0} in the direction Re(omega1 . tangent) > 0.
Trajectory trace_descent(const Poly& F, const Poly& H, double theta, cplx start, double t_max, int samples = 256,
                         const DynamicsConfig& cfg = {});

/// Direction v (|v| = 1, Re v > 0) of the spiral eps * exp(i y + t / v) whose
/// lifts separate lambda[0] from the other eigenvalues: Re(lambda_j / (lambda_0 v)) < 0
/// for j >= 1. Takes the middle of the admissible angular range; NotApplicableError
/// when no line separates them.
cplx spiral_direction(const std::vector<cplx>& lambda);

struct HolonomyEstimate {
    std::vector<cplx> ratio;         // final / initial, per fiber coordinate
    LiftResult lift;
};

/// Lift of the positive circle of radius cfg.loop_radius in `base_var`,
/// started at fiber value cfg.fiber_seed in every other coordinate.
HolonomyEstimate holonomy(const VectorField& X, int base_var, const DynamicsConfig& cfg = {});
/// Iterate the loop map `times` times from the seed; returns the fiber point reached.
std::vector<cplx> holonomy_iterate(const VectorField& X, int base_var, int times, const DynamicsConfig& cfg = {});

/// CSV with columns t, re_<v>, im_<v> for every variable.
void write_csv(std::ostream& os, const VarList& vars, const std::vector<LiftSample>& samples);
void write_csv(std::ostream& os, const std::string& var, const Trajectory& tr);

} // namespace folia
