#pragma once

#include <optional>
#include <string>
#include <vector>

#include "folia/chart_function.hpp"
#include "folia/linalg.hpp"

namespace folia {

enum class CenterKind { Point, Curve };

/// One blow-up step in a chart's history.
struct BlowupRecord {
    CenterKind center = CenterKind::Point;
    std::vector<int> blown;     // indices of the blown-up variables
    std::vector<int> weights;   // one per blown-up variable
    int chart_var = 0;          // index (into the variable list) of the divisor coordinate
    int label = 0;              // exceptional component created
    std::vector<GaussianRational> recentre;  // translation applied before the blow-up
};

struct Chart {
    int dim = 0;
    VarList var_names;
    std::vector<BlowupRecord> history;
    std::vector<std::optional<int>> divisor_labels;

    Chart() = default;
    explicit Chart(VarList names);
    bool same_coordinates(const Chart& o) const { return var_names == o.var_names; }
};

class VectorField {
public:
    VectorField() = default;
    VectorField(Chart chart, std::vector<ChartFunction> components);
    static VectorField from_polys(const VarList& vars, const std::vector<Poly>& components);
    static VectorField from_polys(const Chart& chart, const std::vector<Poly>& components);

    const Chart& chart() const { return chart_; }
    Chart& chart() { return chart_; }
    int dim() const { return chart_.dim; }
    const VarList& vars() const { return chart_.var_names; }
    const std::vector<ChartFunction>& components() const { return comps_; }
    const ChartFunction& operator[](int i) const { return comps_[i]; }

    bool is_holomorphic() const;
    bool is_zero() const;
    /// Components as polynomials; throws PoleError for meromorphic fields.
    std::vector<Poly> polys() const;
    /// True when the components have no common monomial factor.
    bool singular_set_codim2() const;

    VectorField jet(int n) const;
    VectorField homogeneous_component(int d) const;
    /// Lowest total degree among components (-1 for the zero field).
    int order() const;

    VectorField operator*(const GaussianRational& c) const;
    VectorField operator+(const VectorField& o) const;
    VectorField operator-(const VectorField& o) const;
    friend bool operator==(const VectorField& a, const VectorField& b) {
        return a.chart_.var_names == b.chart_.var_names && a.comps_ == b.comps_;
    }

    std::string str() const;

private:
    Chart chart_;
    std::vector<ChartFunction> comps_;
};

class OneForm {
public:
    OneForm() = default;
    OneForm(Chart chart, std::vector<ChartFunction> coefficients);
    static OneForm from_polys(const VarList& vars, const std::vector<Poly>& coefficients);
    /// dF
    static OneForm exact(const Poly& f);

    const Chart& chart() const { return chart_; }
    int dim() const { return chart_.dim; }
    const VarList& vars() const { return chart_.var_names; }
    const std::vector<ChartFunction>& coefficients() const { return coeffs_; }
    const ChartFunction& operator[](int i) const { return coeffs_[i]; }
    std::string str() const;

private:
    Chart chart_;
    std::vector<ChartFunction> coeffs_;
};

struct LinearPart {
    Matrix entries;
    int dim() const { return static_cast<int>(entries.size()); }
    bool is_zero() const;
};

VectorField radial_field(const VarList& vars);

ChartFunction directional_derivative(const VectorField& X, const ChartFunction& f);
Poly directional_derivative(const VectorField& X, const Poly& f);
VectorField lie_bracket(const VectorField& X, const VectorField& Y);
LinearPart linear_part(const VectorField& X);
ChartFunction contract(const OneForm& w, const VectorField& X);
/// Coefficient of dx^dy^dz in w ^ dw (zero outside dimension 3).
ChartFunction integrability_coefficient(const OneForm& w);
bool integrability_check(const OneForm& w);
/// Degree d of a homogeneous field with [R,Z] = (d-1)Z verified exactly.
int euler_test(const VectorField& Z);

} // namespace folia
