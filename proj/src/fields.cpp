#include "folia/fields.hpp"

#include <algorithm>

#include "folia/errors.hpp"

namespace folia {

Chart::Chart(VarList names) : dim(static_cast<int>(names.size())), var_names(std::move(names)) {
    if (dim < 1 || dim > kMaxVars) throw StructuralError("charts have one to three coordinates");
    divisor_labels.assign(dim, std::nullopt);
}

namespace {

void check_components(const Chart& chart, const std::vector<ChartFunction>& comps) {
    if (static_cast<int>(comps.size()) != chart.dim)
        throw StructuralError("need one component per chart coordinate");
    for (auto& c : comps)
        if (c.vars() != chart.var_names) throw StructuralError("component over a different variable list");
}

void check_same_chart(const Chart& a, const Chart& b) {
    if (!a.same_coordinates(b)) throw StructuralError("operands live on different charts");
}

} // namespace

VectorField::VectorField(Chart chart, std::vector<ChartFunction> components)
    : chart_(std::move(chart)), comps_(std::move(components)) {
    check_components(chart_, comps_);
}

VectorField VectorField::from_polys(const VarList& vars, const std::vector<Poly>& components) {
    return from_polys(Chart(vars), components);
}

VectorField VectorField::from_polys(const Chart& chart, const std::vector<Poly>& components) {
    std::vector<ChartFunction> c;
    for (auto& p : components) c.emplace_back(p);
    return VectorField(chart, std::move(c));
}

bool VectorField::is_holomorphic() const {
    return std::all_of(comps_.begin(), comps_.end(), [](const ChartFunction& f) { return f.is_holomorphic(); });
}

bool VectorField::is_zero() const {
    return std::all_of(comps_.begin(), comps_.end(), [](const ChartFunction& f) { return f.is_zero(); });
}

std::vector<Poly> VectorField::polys() const {
    std::vector<Poly> out;
    for (auto& c : comps_) out.push_back(c.to_poly());
    return out;
}

bool VectorField::singular_set_codim2() const {
    if (is_zero()) return false;
    SignedExponent m{0, 0, 0};
    bool first = true;
    for (auto& c : comps_) {
        if (c.is_zero()) continue;
        for (int i = 0; i < kMaxVars; ++i) m[i] = first ? c.exponents()[i] : std::min(m[i], c.exponents()[i]);
        first = false;
    }
    return m == SignedExponent{0, 0, 0};
}

VectorField VectorField::jet(int n) const {
    std::vector<ChartFunction> c;
    for (auto& p : polys()) c.emplace_back(p.jet(n));
    return VectorField(chart_, std::move(c));
}

VectorField VectorField::homogeneous_component(int d) const {
    std::vector<ChartFunction> c;
    for (auto& p : polys()) c.emplace_back(p.homogeneous_component(d));
    return VectorField(chart_, std::move(c));
}

int VectorField::order() const {
    int o = -1;
    for (auto& p : polys())
        if (!p.is_zero()) o = o < 0 ? p.order() : std::min(o, p.order());
    return o;
}

VectorField VectorField::operator*(const GaussianRational& c) const {
    std::vector<ChartFunction> r;
    for (auto& f : comps_) r.push_back(f * c);
    return VectorField(chart_, std::move(r));
}

VectorField VectorField::operator+(const VectorField& o) const {
    check_same_chart(chart_, o.chart_);
    std::vector<ChartFunction> r;
    for (int i = 0; i < dim(); ++i) r.push_back(comps_[i] + o.comps_[i]);
    return VectorField(chart_, std::move(r));
}

VectorField VectorField::operator-(const VectorField& o) const { return *this + o * GaussianRational(-1); }

std::string VectorField::str() const {
    std::string s;
    for (int i = 0; i < dim(); ++i) {
        if (comps_[i].is_zero()) continue;
        if (!s.empty()) s += " + ";
        s += "(" + comps_[i].str() + ")*d/d" + vars()[i];
    }
    return s.empty() ? "0" : s;
}

OneForm::OneForm(Chart chart, std::vector<ChartFunction> coefficients)
    : chart_(std::move(chart)), coeffs_(std::move(coefficients)) {
    check_components(chart_, coeffs_);
}

OneForm OneForm::from_polys(const VarList& vars, const std::vector<Poly>& coefficients) {
    std::vector<ChartFunction> c;
    for (auto& p : coefficients) c.emplace_back(p);
    return OneForm(Chart(vars), std::move(c));
}

OneForm OneForm::exact(const Poly& f) {
    std::vector<Poly> c;
    for (int i = 0; i < f.nvars(); ++i) c.push_back(f.derivative(i));
    return from_polys(f.vars(), c);
}

std::string OneForm::str() const {
    std::string s;
    for (int i = 0; i < dim(); ++i) {
        if (coeffs_[i].is_zero()) continue;
        if (!s.empty()) s += " + ";
        s += "(" + coeffs_[i].str() + ")*d" + vars()[i];
    }
    return s.empty() ? "0" : s;
}

bool LinearPart::is_zero() const {
    for (auto& row : entries)
        for (auto& e : row)
            if (!e.is_zero()) return false;
    return true;
}

VectorField radial_field(const VarList& vars) {
    std::vector<Poly> c;
    for (int i = 0; i < static_cast<int>(vars.size()); ++i) c.push_back(Poly::variable(vars, i));
    return VectorField::from_polys(vars, c);
}

ChartFunction directional_derivative(const VectorField& X, const ChartFunction& f) {
    if (f.vars() != X.vars()) throw StructuralError("function and field on different charts");
    ChartFunction acc = ChartFunction::zero(X.vars());
    for (int i = 0; i < X.dim(); ++i)
        if (!X[i].is_zero()) acc += X[i] * f.derivative(i);
    return acc;
}

Poly directional_derivative(const VectorField& X, const Poly& f) {
    if (f.vars() != X.vars()) throw StructuralError("function and field on different charts");
    auto xs = X.polys();
    Poly acc(X.vars());
    for (int i = 0; i < X.dim(); ++i)
        if (!xs[i].is_zero()) acc += xs[i] * f.derivative(i);
    return acc;
}

VectorField lie_bracket(const VectorField& X, const VectorField& Y) {
    check_same_chart(X.chart(), Y.chart());
    std::vector<ChartFunction> c;
    for (int i = 0; i < X.dim(); ++i) c.push_back(directional_derivative(X, Y[i]) - directional_derivative(Y, X[i]));
    return VectorField(X.chart(), std::move(c));
}

LinearPart linear_part(const VectorField& X) {
    if (!X.is_holomorphic()) throw PoleError("linear part of a field with a pole at the origin");
    LinearPart L;
    int n = X.dim();
    L.entries.assign(n, std::vector<GaussianRational>(n));
    auto ps = X.polys();
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            Exponent e{0, 0, 0};
            e[j] = 1;
            L.entries[i][j] = ps[i].coeff(e);
        }
    return L;
}

ChartFunction contract(const OneForm& w, const VectorField& X) {
    check_same_chart(w.chart(), X.chart());
    ChartFunction acc = ChartFunction::zero(X.vars());
    for (int i = 0; i < X.dim(); ++i) acc += w[i] * X[i];
    return acc;
}

ChartFunction integrability_coefficient(const OneForm& w) {
    if (w.dim() != 3) return ChartFunction::zero(w.vars());
    const ChartFunction &a = w[0], &b = w[1], &c = w[2];
    // w = a dx + b dy + c dz
    ChartFunction t1 = a * (c.derivative(1) - b.derivative(2));
    ChartFunction t2 = b * (a.derivative(2) - c.derivative(0));
    ChartFunction t3 = c * (b.derivative(0) - a.derivative(1));
    return t1 + t2 + t3;
}

bool integrability_check(const OneForm& w) { return integrability_coefficient(w).is_zero(); }

int euler_test(const VectorField& Z) {
    if (!Z.is_holomorphic()) throw NotApplicableError("Euler test needs a polynomial field");
    if (Z.is_zero()) throw NotApplicableError("Euler test of the zero field");
    int d = -1;
    for (auto& p : Z.polys()) {
        if (p.is_zero()) continue;
        if (!p.is_homogeneous()) throw NotApplicableError("field is not homogeneous");
        if (d >= 0 && p.degree() != d) throw NotApplicableError("components have different degrees");
        d = p.degree();
    }
    VectorField R = radial_field(Z.vars());
    R.chart() = Z.chart();
    if (!(lie_bracket(R, Z) == Z * GaussianRational(d - 1)))
        throw NotApplicableError("bracket identity failed");  // cannot happen for homogeneous input
    return d;
}

} // namespace folia
