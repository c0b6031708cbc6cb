#include "folia/blowup.hpp"

#include <algorithm>

#include "folia/errors.hpp"

namespace folia {

std::vector<int> blown_variables(const BlowupSpec& spec, int dim) {
    std::vector<int> b;
    for (int i = 0; i < dim; ++i)
        if (spec.center == CenterKind::Point || i != spec.free_var) b.push_back(i);
    return b;
}

namespace {

struct ChartMap {
    std::vector<int> blown;
    std::vector<int> w;  // weight per variable (0 = not blown)
    int c = 0;
};

ChartMap make_map(const BlowupSpec& spec, int dim) {
    ChartMap m;
    if (spec.center == CenterKind::Curve) {
        if (dim != 3) throw InvalidCenterError("curve centers need a three-dimensional chart");
        if (spec.free_var < 0 || spec.free_var >= dim) throw InvalidCenterError("curve center needs a free coordinate");
    }
    m.blown = blown_variables(spec, dim);
    if (m.blown.size() < 2) throw InvalidCenterError("a blow-up needs at least two blown-up coordinates");
    if (!spec.weights.empty() && spec.weights.size() != m.blown.size())
        throw InvalidCenterError("one weight per blown-up coordinate is required");
    m.w.assign(dim, 0);
    for (size_t k = 0; k < m.blown.size(); ++k) {
        int wk = spec.weights.empty() ? 1 : spec.weights[k];
        if (wk < 1) throw InvalidCenterError("weights must be positive");
        m.w[m.blown[k]] = wk;
    }
    if (std::find(m.blown.begin(), m.blown.end(), spec.chart_var) == m.blown.end())
        throw InvalidCenterError("chart coordinate must be one of the blown-up coordinates");
    m.c = spec.chart_var;
    return m;
}

std::vector<ChartFunction::LaurentImage> images(const ChartMap& m, int dim) {
    std::vector<ChartFunction::LaurentImage> img(dim);
    for (int i = 0; i < dim; ++i) {
        img[i].exps = {0, 0, 0};
        if (m.w[i] == 0) {
            img[i].exps[i] = 1;
        } else if (i == m.c) {
            img[i].exps[i] = m.w[i];
        } else {
            img[i].exps[m.c] = m.w[i];
            img[i].exps[i] = 1;
        }
    }
    return img;
}

void check_center(const VectorField& X, const ChartMap& m, const BlowupSpec& spec) {
    if (!X.is_holomorphic()) throw NotApplicableError("blow-up needs a holomorphic field");
    auto ps = X.polys();
    if (spec.center == CenterKind::Point) {
        for (auto& p : ps)
            if (!p.constant_term().is_zero()) throw NotApplicableError("blow-up centre is a regular point");
        return;
    }
    // Curve: the transverse components vanish identically on the axis.
    for (int b : m.blown) {
        Poly r = ps[b];
        for (int k : m.blown) r = r.restrict_to(k, 0);
        if (!r.is_zero()) throw InvalidCenterError("centre curve is not invariant by the field");
    }
}

int next_label(const Chart& chart) {
    int mx = 0;
    for (auto& l : chart.divisor_labels)
        if (l) mx = std::max(mx, *l);
    for (auto& h : chart.history) mx = std::max(mx, h.label);
    return mx + 1;
}

Chart child_chart(const Chart& parent, const ChartMap& m, const BlowupSpec& spec, int label) {
    Chart c = parent;
    BlowupRecord rec;
    rec.center = spec.center;
    rec.blown = m.blown;
    for (int b : m.blown) rec.weights.push_back(m.w[b]);
    rec.chart_var = m.c;
    rec.label = label;
    c.history.push_back(rec);
    c.divisor_labels[m.c] = label;
    return c;
}

TransformResult finish(VectorField field, int c, int label) {
    TransformResult r;
    Saturation s = saturate(field);
    r.field = std::move(field);
    r.representative = std::move(s.field);
    r.divisor_multiplicity = s.content[c];
    int lowest = 0;
    bool any = false;
    for (auto& f : r.field.components()) {
        if (f.is_zero()) continue;
        lowest = any ? std::min(lowest, f.exponents()[c]) : f.exponents()[c];
        any = true;
    }
    r.pole_order = std::max(0, -lowest);
    r.divisor_var = c;
    r.label = label;
    r.dicritical = dicritical_test(r);
    return r;
}

// Weighted chain rule: v' = X^c / (w_c v^(w_c-1)),
// u_b' = X^b / v^(w_b) - (w_b / w_c) u_b X^c / v^(w_c).
VectorField weighted_transform(const VectorField& X, const ChartMap& m, const Chart& chart) {
    int n = X.dim();
    const VarList& V = X.vars();
    auto img = images(m, n);
    std::vector<ChartFunction> pulled;
    for (auto& f : X.components()) pulled.push_back(f.substitute(V, img));
    std::vector<ChartFunction> out(n, ChartFunction::zero(V));
    int c = m.c;
    int wc = m.w[c];
    for (int i = 0; i < n; ++i) {
        if (m.w[i] == 0) {
            out[i] = pulled[i];
        } else if (i == c) {
            SignedExponent e{0, 0, 0};
            e[c] = -(wc - 1);
            out[i] = ChartFunction::monomial(V, e, GaussianRational::fraction(1, wc)) * pulled[c];
        } else {
            SignedExponent eb{0, 0, 0}, ec{0, 0, 0};
            eb[c] = -m.w[i];
            ec[c] = -wc;
            ec[i] = 1;
            out[i] = ChartFunction::monomial(V, eb) * pulled[i] -
                     ChartFunction::monomial(V, ec, GaussianRational::fraction(m.w[i], wc)) * pulled[c];
        }
    }
    return VectorField(chart, std::move(out));
}

// Standard chart formulas: v' = X^c, u_b' = (X^b - u_b X^c) / v.
VectorField standard_transform(const VectorField& X, const ChartMap& m, const Chart& chart) {
    int n = X.dim();
    const VarList& V = X.vars();
    auto img = images(m, n);
    std::vector<ChartFunction> pulled;
    for (auto& f : X.components()) pulled.push_back(f.substitute(V, img));
    std::vector<ChartFunction> out(n, ChartFunction::zero(V));
    int c = m.c;
    SignedExponent inv_v{0, 0, 0};
    inv_v[c] = -1;
    for (int i = 0; i < n; ++i) {
        if (m.w[i] == 0 || i == c) {
            out[i] = pulled[i];
        } else {
            out[i] = (pulled[i] - ChartFunction(Poly::variable(V, i)) * pulled[c]).shifted(inv_v);
        }
    }
    return VectorField(chart, std::move(out));
}

TransformResult run(const VectorField& X, const BlowupSpec& spec, bool standard) {
    ChartMap m = make_map(spec, X.dim());
    check_center(X, m, spec);
    int label = spec.label >= 0 ? spec.label : next_label(X.chart());
    Chart chart = child_chart(X.chart(), m, spec, label);
    VectorField t = standard ? standard_transform(X, m, chart) : weighted_transform(X, m, chart);
    return finish(std::move(t), m.c, label);
}

bool all_ones(const std::vector<int>& w) {
    return std::all_of(w.begin(), w.end(), [](int x) { return x == 1; });
}

} // namespace

Saturation saturate(const VectorField& X) {
    Saturation s;
    if (X.is_zero()) throw DegenerateInputError("saturation of the zero field");
    bool first = true;
    for (auto& f : X.components()) {
        if (f.is_zero()) continue;
        for (int i = 0; i < kMaxVars; ++i)
            s.content[i] = first ? f.exponents()[i] : std::min(s.content[i], f.exponents()[i]);
        first = false;
    }
    SignedExponent neg{-s.content[0], -s.content[1], -s.content[2]};
    std::vector<ChartFunction> comps;
    for (auto& f : X.components()) comps.push_back(f.shifted(neg));
    s.field = VectorField(X.chart(), std::move(comps));
    return s;
}

TransformResult blowup_point(const VectorField& X, const BlowupSpec& spec) {
    if (spec.center != CenterKind::Point) throw InvalidCenterError("blowup_point needs a point centre");
    if (!all_ones(spec.weights)) throw InvalidCenterError("blowup_point is the unweighted blow-up");
    return run(X, spec, true);
}

TransformResult blowup_curve(const VectorField& X, const BlowupSpec& spec) {
    if (spec.center != CenterKind::Curve) throw InvalidCenterError("blowup_curve needs a curve centre");
    if (!all_ones(spec.weights)) throw InvalidCenterError("blowup_curve is the unweighted blow-up");
    return run(X, spec, true);
}

TransformResult weighted_blowup(const VectorField& X, const BlowupSpec& spec) { return run(X, spec, false); }

std::vector<TransformResult> blowup_all_charts(const VectorField& X, BlowupSpec spec) {
    std::vector<TransformResult> out;
    if (spec.label < 0) spec.label = next_label(X.chart());
    for (int b : blown_variables(spec, X.dim())) {
        spec.chart_var = b;
        out.push_back(weighted_blowup(X, spec));
    }
    return out;
}

bool dicritical_test(const TransformResult& r) {
    const ChartFunction& f = r.representative[r.divisor_var];
    if (f.is_zero()) return false;
    // Holomorphic representative: the component is divisible by v iff its v-exponent is positive.
    return f.exponents()[r.divisor_var] <= 0;
}

OneForm pullback_form(const OneForm& w, const BlowupSpec& spec) {
    int n = w.dim();
    ChartMap m = make_map(spec, n);
    const VarList& V = w.vars();
    auto img = images(m, n);
    std::vector<ChartFunction> out(n, ChartFunction::zero(V));
    int c = m.c;
    for (int i = 0; i < n; ++i) {
        ChartFunction a = w[i].substitute(V, img);
        if (m.w[i] == 0) {
            out[i] += a;
        } else if (i == c) {
            SignedExponent e{0, 0, 0};
            e[c] = m.w[c] - 1;
            out[c] += a * ChartFunction::monomial(V, e, m.w[c]);
        } else {
            // d(v^w u) = w v^(w-1) u dv + v^w du
            SignedExponent e1{0, 0, 0}, e2{0, 0, 0};
            e1[c] = m.w[i] - 1;
            e1[i] = 1;
            e2[c] = m.w[i];
            out[c] += a * ChartFunction::monomial(V, e1, m.w[i]);
            out[i] += a * ChartFunction::monomial(V, e2);
        }
    }
    Chart chart = child_chart(w.chart(), m, spec, spec.label >= 0 ? spec.label : next_label(w.chart()));
    return OneForm(chart, std::move(out));
}

Poly pullback_function(const Poly& f, const BlowupSpec& spec) {
    ChartMap m = make_map(spec, f.nvars());
    auto img = images(m, f.nvars());
    return ChartFunction(f).substitute(f.vars(), img).to_poly();
}

} // namespace folia
