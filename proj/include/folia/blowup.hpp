#pragma once

#include <optional>
#include <vector>

#include "folia/fields.hpp"

namespace folia {

struct BlowupSpec {
    CenterKind center = CenterKind::Point;
    /// Variable left free by a curve center (ignored for points).
    int free_var = -1;
    /// One weight per blown-up variable, in variable order; empty means all 1.
    std::vector<int> weights;
    /// Index of the divisor coordinate among the variables of the chart.
    int chart_var = 0;
    /// Label for the new exceptional component; -1 picks max(existing) + 1.
    int label = -1;

    static BlowupSpec point(int chart_var) { return {CenterKind::Point, -1, {}, chart_var, -1}; }
    static BlowupSpec curve(int free_var, int chart_var) { return {CenterKind::Curve, free_var, {}, chart_var, -1}; }
};

struct TransformResult {
    VectorField field;           // transform, possibly meromorphic
    int divisor_multiplicity = 0;  // exponent of the divisor coordinate in the monomial content
    VectorField representative;  // field divided by its full monomial content
    bool dicritical = false;
    int pole_order = 0;
    int divisor_var = 0;
    int label = 0;
};

/// Blown-up variable indices for a spec on a chart of the given dimension.
std::vector<int> blown_variables(const BlowupSpec& spec, int dim);

TransformResult blowup_point(const VectorField& X, const BlowupSpec& spec);
TransformResult blowup_curve(const VectorField& X, const BlowupSpec& spec);
TransformResult weighted_blowup(const VectorField& X, const BlowupSpec& spec);
/// All charts of one blow-up, chart_var ranging over the blown variables.
std::vector<TransformResult> blowup_all_charts(const VectorField& X, BlowupSpec spec);

bool dicritical_test(const TransformResult& r);

/// Pull back a 1-form along the chart map of `spec` (weights honoured).
OneForm pullback_form(const OneForm& w, const BlowupSpec& spec);
/// Pull back a function along the chart map.
Poly pullback_function(const Poly& f, const BlowupSpec& spec);

/// Divide a field by the monomial content of its components.
struct Saturation {
    SignedExponent content{0, 0, 0};
    VectorField field;
};
Saturation saturate(const VectorField& X);

} // namespace folia
