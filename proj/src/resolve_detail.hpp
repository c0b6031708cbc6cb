#pragma once

#include <string>
#include <vector>

#include "folia/resolve.hpp"

namespace folia::detail {

using Point = std::vector<GaussianRational>;

struct Site {
    Point at;
    int axis = -1;  // >= 0: generically non-elementary singular line through `at` along this variable
};

struct Scan {
    std::vector<Site> sites;  // exact, canonical order
    std::vector<LocatedPoint> approx;
    std::vector<ElementaryCurve> curves;
    std::vector<std::string> diagnostics;
};

bool point_less(const Point& a, const Point& b);
VectorField translated(const VectorField& X, const Point& p);
std::vector<int> labels_through(const VectorField& Y);
/// Sums of principal minors of the Jacobian, by size: the characteristic
/// polynomial is t^n - s1 t^(n-1) + s2 t^(n-2) - ...
std::vector<Poly> minor_sums(const std::vector<Poly>& P);
Scan scan_chart(const VectorField& rep, const std::vector<int>& scan_vars);
/// Coordinate axes through the origin contained in the singular set.
std::vector<int> singular_axes(const VectorField& Y, bool nonelementary_only);
/// Coordinate axes through the origin left invariant by Y.
std::vector<int> invariant_axes(const VectorField& Y);
std::vector<int> scan_vars_for(const BlowupSpec& spec, int dim, int chart_var, bool whole_axis);
std::string describe(const Point& p);

} // namespace folia::detail
