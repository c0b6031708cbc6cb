#include "folia/resolve.hpp"

#include <algorithm>
#include <deque>

#include "folia/errors.hpp"
#include "resolve_detail.hpp"

namespace folia {

std::string to_string(TreeStatus s) {
    switch (s) {
    case TreeStatus::Resolved: return "resolved";
    case TreeStatus::BudgetExhausted: return "budget_exhausted";
    case TreeStatus::PersistentNilpotentPending: return "persistent_nilpotent_pending";
    }
    return "?";
}

bool BlowupCentre::weighted() const {
    return std::any_of(weights.begin(), weights.end(), [](int w) { return w != 1; });
}

int ResolutionTree::weighted_blowups() const {
    return static_cast<int>(std::count_if(centres.begin(), centres.end(), [](const BlowupCentre& c) { return c.weighted(); }));
}

const DivisorComponent& ResolutionTree::component(int label) const {
    for (auto& c : components)
        if (c.label == label) return c;
    throw StructuralError("no divisor component with label " + std::to_string(label));
}

namespace detail {

bool point_less(const Point& a, const Point& b) {
    for (size_t i = 0; i < std::min(a.size(), b.size()); ++i) {
        if (canonical_less(a[i], b[i])) return true;
        if (canonical_less(b[i], a[i])) return false;
    }
    return a.size() < b.size();
}

VectorField translated(const VectorField& X, const Point& p) {
    auto ps = X.polys();
    bool moved = std::any_of(p.begin(), p.end(), [](const GaussianRational& c) { return !c.is_zero(); });
    Chart c = X.chart();
    if (moved) {
        for (auto& q : ps) q = q.translate(p);
        for (int i = 0; i < c.dim; ++i)
            if (!p[i].is_zero()) c.divisor_labels[i].reset();
    }
    return VectorField::from_polys(c, ps);
}

std::vector<int> labels_through(const VectorField& Y) {
    std::vector<int> out;
    for (auto& l : Y.chart().divisor_labels)
        if (l) out.push_back(*l);
    std::sort(out.begin(), out.end());
    return out;
}

namespace {

Poly restrict_except(const Poly& p, const std::vector<int>& keep, const Point& base) {
    Poly r = p;
    for (int i = 0; i < p.nvars(); ++i)
        if (std::find(keep.begin(), keep.end(), i) == keep.end()) r = r.restrict_to(i, base[i]);
    return r;
}

UPoly gcd_all(const std::vector<UPoly>& ps) {
    UPoly g;
    for (auto& p : ps) g = gcd(g, p);
    return g;
}

// p as a polynomial in t whose coefficients are univariate in s.
std::vector<UPoly> coeffs_in(const Poly& p, int s, int t) {
    int d = std::max(0, p.degree_in(t));
    int ds = std::max(0, p.degree_in(s));
    std::vector<std::vector<GaussianRational>> raw(d + 1, std::vector<GaussianRational>(ds + 1));
    for (auto& [e, c] : p.terms()) raw[e[t]][e[s]] += c;
    std::vector<UPoly> out;
    for (auto& r : raw) out.emplace_back(r);
    while (!out.empty() && out.back().is_zero()) out.pop_back();
    return out;
}

Poly from_coeffs(const std::vector<UPoly>& cs, const VarList& vars, int s, int t) {
    Poly p(vars);
    for (size_t k = 0; k < cs.size(); ++k)
        for (int j = 0; j <= cs[k].degree(); ++j) {
            if (cs[k].coeff(j).is_zero()) continue;
            Exponent e{0, 0, 0};
            e[t] = static_cast<int>(k);
            e[s] = j;
            p += Poly::monomial(vars, e, cs[k].coeff(j));
        }
    return p;
}

UPoly content_in(const std::vector<Poly>& ps, int s, int t) {
    UPoly g;
    for (auto& p : ps)
        for (auto& c : coeffs_in(p, s, t)) g = gcd(g, c);
    return g;
}

std::vector<Poly> divide_content(const std::vector<Poly>& ps, const UPoly& g, int s, int t) {
    std::vector<Poly> out;
    for (auto& p : ps) {
        auto cs = coeffs_in(p, s, t);
        for (auto& c : cs) c = exact_div(c, g);
        out.push_back(from_coeffs(cs, p.vars(), s, t));
    }
    return out;
}

std::string fmt_point(const Point& p) {
    std::string s = "(";
    for (size_t i = 0; i < p.size(); ++i) s += (i ? ", " : "") + p[i].str();
    return s + ")";
}

std::string fmt_box(const ComplexBox& b) {
    auto c = std::complex<double>((b.lo_re + b.hi_re) / 2, (b.lo_im + b.hi_im) / 2);
    char buf[96];
    std::snprintf(buf, sizeof buf, "%.6g%+.6gi", c.real(), c.imag());
    return buf;
}

} // namespace

std::vector<Poly> minor_sums(const std::vector<Poly>& P) {
    int n = static_cast<int>(P.size());
    std::vector<std::vector<Poly>> J(n, std::vector<Poly>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) J[i][j] = P[i].derivative(j);
    if (n == 1) return {J[0][0]};
    if (n == 2) return {J[0][0] + J[1][1], J[0][0] * J[1][1] - J[0][1] * J[1][0]};
    Poly tr = J[0][0] + J[1][1] + J[2][2];
    Poly m2 = J[0][0] * J[1][1] - J[0][1] * J[1][0] + J[0][0] * J[2][2] - J[0][2] * J[2][0] + J[1][1] * J[2][2] -
              J[1][2] * J[2][1];
    Poly det = J[0][0] * (J[1][1] * J[2][2] - J[1][2] * J[2][1]) - J[0][1] * (J[1][0] * J[2][2] - J[1][2] * J[2][0]) +
               J[0][2] * (J[1][0] * J[2][1] - J[1][1] * J[2][0]);
    return {tr, m2, det};
}

namespace {

// Classify a non-exact singular point lying on the line base + t e_var, a root
// of g: the tags follow from which minor sums share the root.
LocatedPoint approx_point(const std::vector<Poly>& sums, const Point& base, int var, const UPoly& g, const Root& r) {
    LocatedPoint lp;
    lp.exact = false;
    int n = static_cast<int>(base.size());
    for (int i = 0; i < n; ++i) {
        if (i == var) {
            lp.boxes.push_back(r.box);
        } else {
            double re = base[i].re().get_d(), im = base[i].im().get_d();
            lp.boxes.push_back({re, re, im, im});
        }
    }
    auto vanishes = [&](const Poly& s) {
        UPoly h = gcd(g, UPoly::from_poly(restrict_except(s, {var}, base), var));
        if (h.degree() < 1) return false;
        for (auto& q : solve_roots(h))
            if (!q.exact && q.box.overlaps(r.box)) return true;
        return false;
    };
    // Zero multiplicity of the eigenvalue 0 = number of trailing vanishing minor sums.
    int zeros = 0;
    for (int k = n - 1; k >= 0 && vanishes(sums[k]); --k) ++zeros;
    if (zeros == n)
        lp.report.cls = SingularClass::Nilpotent;  // zero linear part is not decidable here either way
    else if (zeros > 0) {
        lp.report.cls = SingularClass::SaddleNode;
        lp.report.saddle_node_rank = zeros;
    } else {
        lp.report.cls = SingularClass::ElementaryNondegenerate;
    }
    lp.pending = !lp.report.elementary();
    return lp;
}

struct LineResult {
    bool generic_nonelementary = false;
    std::vector<Point> special;
    std::vector<LocatedPoint> approx;
};

LineResult analyse_line(const std::vector<Poly>& P, const Point& base, int var) {
    LineResult lr;
    auto sums = minor_sums(P);
    std::vector<UPoly> restricted;
    for (auto& s : sums) restricted.push_back(UPoly::from_poly(restrict_except(s, {var}, base), var));
    if (std::all_of(restricted.begin(), restricted.end(), [](const UPoly& u) { return u.is_zero(); })) {
        lr.generic_nonelementary = true;
        return lr;
    }
    UPoly h = gcd_all(restricted);
    if (h.degree() < 1) return lr;
    for (auto& r : solve_roots(h)) {
        if (r.exact) {
            Point p = base;
            p[var] = r.value;
            lr.special.push_back(p);
        } else {
            LocatedPoint lp = approx_point(sums, base, var, h, r);
            lp.report.cls = SingularClass::Nilpotent;
            lp.pending = true;
            lr.approx.push_back(lp);
        }
    }
    return lr;
}

void add_line(Scan& sc, const std::vector<Poly>& P, const Point& base, int var) {
    LineResult lr = analyse_line(P, base, var);
    if (lr.generic_nonelementary) {
        sc.sites.push_back({base, var});
        return;
    }
    sc.curves.push_back({0, var, base});
    for (auto& p : lr.special) sc.sites.push_back({p, -1});
    for (auto& a : lr.approx) sc.approx.push_back(a);
}

// Isolated common zeros of univariate restrictions along base + t e_var.
void add_roots_on_line(Scan& sc, const std::vector<Poly>& P, const UPoly& g, const Point& base, int var) {
    if (g.degree() < 1) return;
    auto sums = minor_sums(P);
    for (auto& r : solve_roots(g)) {
        if (r.exact) {
            Point p = base;
            p[var] = r.value;
            sc.sites.push_back({p, -1});
        } else {
            sc.approx.push_back(approx_point(sums, base, var, g, r));
        }
    }
}

void scan_one(Scan& sc, const std::vector<Poly>& P, int t) {
    int n = static_cast<int>(P.size());
    Point zero(n);
    std::vector<UPoly> q;
    for (auto& p : P) q.push_back(UPoly::from_poly(restrict_except(p, {t}, zero), t));
    if (std::all_of(q.begin(), q.end(), [](const UPoly& u) { return u.is_zero(); })) {
        add_line(sc, P, zero, t);
        return;
    }
    add_roots_on_line(sc, P, gcd_all(q), zero, t);
}

void scan_two(Scan& sc, const std::vector<Poly>& P, int s, int t) {
    int n = static_cast<int>(P.size());
    Point zero(n);
    std::vector<Poly> Q;
    for (auto& p : P) Q.push_back(restrict_except(p, {s, t}, zero));
    if (std::all_of(Q.begin(), Q.end(), [](const Poly& p) { return p.is_zero(); })) {
        sc.diagnostics.push_back("divisor contained in the singular set");
        return;
    }
    // Coordinate lines {s = a} and {t = b} inside the singular set.
    std::vector<std::pair<int, GaussianRational>> lines;  // (fixed var, value)
    for (auto [fixed, other] : {std::pair{s, t}, std::pair{t, s}}) {
        UPoly g = content_in(Q, fixed, other);
        if (g.degree() < 1) continue;
        for (auto& f : squarefree_decomposition(g))
            for (auto& r : solve_roots(f.factor)) {
                if (r.exact)
                    lines.push_back({fixed, r.value});
                else
                    sc.diagnostics.push_back("unprocessed-nonrational: singular line " + P[0].vars()[fixed] + " = " +
                                             fmt_box(r.box));
            }
        while (g.degree() >= 1) {
            Q = divide_content(Q, g, fixed, other);
            g = content_in(Q, fixed, other);
        }
    }
    for (auto& [fixed, value] : lines) {
        Point base = zero;
        base[fixed] = value;
        add_line(sc, P, base, fixed == s ? t : s);
    }
    // Isolated points off those lines.
    std::vector<Poly> nz;
    for (auto& q : Q)
        if (!q.is_zero()) nz.push_back(q);
    if (std::any_of(nz.begin(), nz.end(), [](const Poly& p) { return p.is_constant(); })) return;
    if (nz.size() < 2) {
        sc.diagnostics.push_back("non-isolated singular curve off the coordinate lines");
        return;
    }
    UPoly G;
    for (size_t i = 0; i < nz.size(); ++i)
        for (size_t j = i + 1; j < nz.size(); ++j) G = gcd(G, resultant(coeffs_in(nz[i], s, t), coeffs_in(nz[j], s, t)));
    if (G.is_zero()) {
        sc.diagnostics.push_back("non-isolated singular curve off the coordinate lines");
        return;
    }
    if (G.degree() < 1) return;
    for (auto& f : squarefree_decomposition(G))
        for (auto& r : solve_roots(f.factor)) {
            if (!r.exact) {
                sc.diagnostics.push_back("unprocessed-nonrational: singular point with " + P[0].vars()[s] + " = " +
                                         fmt_box(r.box));
                continue;
            }
            Point base = zero;
            base[s] = r.value;
            std::vector<UPoly> q;
            for (auto& p : nz) q.push_back(UPoly::from_poly(restrict_except(p, {t}, base), t));
            add_roots_on_line(sc, P, gcd_all(q), base, t);
        }
}

} // namespace

Scan scan_chart(const VectorField& rep, const std::vector<int>& scan_vars) {
    Scan sc;
    auto P = rep.polys();
    int n = rep.dim();
    if (scan_vars.empty()) {
        bool singular = std::all_of(P.begin(), P.end(), [](const Poly& p) { return p.constant_term().is_zero(); });
        if (singular) sc.sites.push_back({Point(n), -1});
    } else if (scan_vars.size() == 1) {
        scan_one(sc, P, scan_vars[0]);
    } else if (scan_vars.size() == 2) {
        scan_two(sc, P, scan_vars[0], scan_vars[1]);
    } else {
        throw StructuralError("divisor scans run over at most two coordinates");
    }
    // Points on a line that is blown up as a whole are covered by that blow-up.
    auto on_whole_line = [&](const Site& x) {
        if (x.axis >= 0) return false;
        for (auto& l : sc.sites) {
            if (l.axis < 0) continue;
            bool same = true;
            for (int i = 0; i < n; ++i)
                if (i != l.axis && !(x.at[i] == l.at[i])) same = false;
            if (same) return true;
        }
        return false;
    };
    sc.sites.erase(std::remove_if(sc.sites.begin(), sc.sites.end(), on_whole_line), sc.sites.end());
    std::sort(sc.sites.begin(), sc.sites.end(), [](const Site& a, const Site& b) {
        if (point_less(a.at, b.at)) return true;
        if (point_less(b.at, a.at)) return false;
        return a.axis < b.axis;
    });
    sc.sites.erase(std::unique(sc.sites.begin(), sc.sites.end(),
                               [](const Site& a, const Site& b) { return a.at == b.at && a.axis == b.axis; }),
                   sc.sites.end());
    return sc;
}

std::vector<int> singular_axes(const VectorField& Y, bool nonelementary_only) {
    std::vector<int> out;
    if (Y.dim() != 3) return out;
    auto P = Y.polys();
    Point zero(3);
    for (int a = 0; a < 3; ++a) {
        bool sing = std::all_of(P.begin(), P.end(), [&](const Poly& p) { return restrict_except(p, {a}, zero).is_zero(); });
        if (!sing) continue;
        if (nonelementary_only && !analyse_line(P, zero, a).generic_nonelementary) continue;
        out.push_back(a);
    }
    return out;
}

std::vector<int> invariant_axes(const VectorField& Y) {
    std::vector<int> out;
    if (Y.dim() != 3) return out;
    auto P = Y.polys();
    Point zero(3);
    for (int a = 0; a < 3; ++a) {
        bool inv = true;
        for (int i = 0; i < 3; ++i)
            if (i != a && !restrict_except(P[i], {a}, zero).is_zero()) inv = false;
        if (inv) out.push_back(a);
    }
    return out;
}

std::vector<int> scan_vars_for(const BlowupSpec& spec, int dim, int chart_var, bool whole_axis) {
    std::vector<int> blown = blown_variables(spec, dim);
    std::vector<int> out;
    auto it = std::find(blown.begin(), blown.end(), chart_var);
    for (++it; it != blown.end(); ++it) out.push_back(*it);
    if (spec.center == CenterKind::Curve && whole_axis) out.insert(out.begin(), spec.free_var);
    std::sort(out.begin(), out.end());
    return out;
}

std::string describe(const Point& p) { return fmt_point(p); }

} // namespace detail

std::vector<LocatedPoint> singular_points_on_divisor(const TreeNode& node) {
    if (!node.field.is_holomorphic()) throw PoleError("divisor scan needs a holomorphic representative");
    detail::Scan sc = detail::scan_chart(node.field, node.scan_vars);
    std::vector<LocatedPoint> out;
    for (auto& s : sc.sites) {
        VectorField Y = detail::translated(node.field, s.at);
        LocatedPoint lp;
        lp.node = node.id;
        lp.coords = s.at;
        lp.components = detail::labels_through(Y);
        lp.report = classify_singularity(Y);
        out.push_back(std::move(lp));
    }
    for (auto& a : sc.approx) {
        LocatedPoint lp = a;
        lp.node = node.id;
        out.push_back(std::move(lp));
    }
    return out;
}

} // namespace folia
