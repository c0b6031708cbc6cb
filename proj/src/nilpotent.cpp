#include <algorithm>
#include <array>

#include "folia/errors.hpp"
#include "folia/resolve.hpp"
#include "resolve_detail.hpp"

namespace folia {

namespace {

// Order in z of p(0, 0, z) over the normal-form variables; nullopt when identically zero.
std::optional<int> z_order(const Poly& p) {
    Poly r = p.restrict_to(0, 0).restrict_to(1, 0);
    if (r.is_zero()) return std::nullopt;
    return r.order();
}

// Pure power c * x_v^n with n >= 2, or nothing.
std::optional<std::pair<GaussianRational, int>> pure_power(const Poly& p, int v) {
    if (p.terms().size() != 1) return std::nullopt;
    auto& [e, c] = *p.terms().begin();
    for (int i = 0; i < kMaxVars; ++i)
        if (i != v && e[i] != 0) return std::nullopt;
    if (e[v] < 2) return std::nullopt;
    return std::pair{c, e[v]};
}

} // namespace

bool verify_witness(const NormalFormWitness& w) {
    if (w.n < 2 || w.threshold > 2 * w.n) return false;
    auto order_ok = [](const Poly& p, int ord) { return p.is_zero() ? ord == -1 : p.order() >= 2 && p.order() == ord; };
    if (!order_ok(w.f, w.ord_f) || !order_ok(w.g, w.ord_g)) return false;
    if (z_order(w.f) != w.ord_fz || z_order(w.g) != w.ord_gz) return false;
    for (auto& o : {w.ord_fz, w.ord_gz})
        if (o && *o <= w.threshold) return false;
    return true;
}

std::optional<NormalFormWitness> match_normal_form(const VectorField& X, int order_slack) {
    if (X.dim() != 3 || !X.is_holomorphic()) return std::nullopt;
    auto P = X.polys();
    const VarList nf{"X", "Y", "Z"};
    std::array<int, 3> perm{0, 1, 2};
    do {
        int ix = perm[0], iy = perm[1], iz = perm[2];
        auto pz = pure_power(P[iz], iz);
        if (!pz) continue;
        auto [c, n] = *pz;
        // dX component: a * x_iy + f with ord f >= 2.
        Exponent ey{0, 0, 0};
        ey[iy] = 1;
        GaussianRational a = P[ix].coeff(ey);
        if (a.is_zero()) continue;
        Poly f = P[ix] - Poly::monomial(X.vars(), ey, a);
        const Poly& g = P[iy];
        if ((!f.is_zero() && f.order() < 2) || (!g.is_zero() && g.order() < 2)) continue;
        // Normal-form coordinates: X = (a/c) Xn, Y = Yn, Z = Zn, time scaled by 1/c.
        std::vector<Poly> img(3, Poly(nf));
        img[ix] = Poly::variable(nf, 0) * (a / c);
        img[iy] = Poly::variable(nf, 1);
        img[iz] = Poly::variable(nf, 2);
        NormalFormWitness w;
        w.var_x = ix;
        w.var_y = iy;
        w.var_z = iz;
        w.a = a;
        w.c = c;
        w.f = f.compose(img) * a.inverse();
        w.g = g.compose(img) * c.inverse();
        w.ord_f = w.f.is_zero() ? -1 : w.f.order();
        w.ord_g = w.g.is_zero() ? -1 : w.g.order();
        w.ord_fz = z_order(w.f);
        w.ord_gz = z_order(w.g);
        w.n = n;
        w.threshold = 2 * n - order_slack;
        w.strict = (!w.ord_fz || *w.ord_fz > 2 * n) && (!w.ord_gz || *w.ord_gz > 2 * n);
        bool ok = true;
        for (auto& o : {w.ord_fz, w.ord_gz})
            if (o && *o <= w.threshold) ok = false;
        if (!ok) continue;
        w.chain = X.chart().history;
        w.at.assign(3, GaussianRational{});
        return w;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return std::nullopt;
}

PersistentNilpotentReport detect_persistent_nilpotent(const VectorField& X, int probe_budget, int order_slack) {
    if (X.dim() != 3) throw NotApplicableError("persistent-nilpotent detection is three-dimensional");
    if (!X.is_holomorphic()) throw NotApplicableError("detection needs a holomorphic field");
    auto rep = classify_singularity(X);
    if (rep.cls != SingularClass::Nilpotent) throw NotApplicableError("origin is not a nilpotent singular point");
    PersistentNilpotentReport out;
    VectorField Y = X;
    detail::Point at(3);
    for (int stage = 0;; ++stage) {
        if (auto w = match_normal_form(Y, order_slack)) {
            w->stage = stage;
            w->at = at;
            out.matched = true;
            out.witness = std::move(*w);
            out.n = out.witness->n;
            out.note = "matched at stage " + std::to_string(stage);
            return out;
        }
        if (stage >= probe_budget) {
            out.note = "no match within " + std::to_string(probe_budget) + " probe blow-ups (not a verdict)";
            return out;
        }
        // Follow a nilpotent point on the divisor, preferring directions in the kernel of the linear part.
        LinearPart L = linear_part(Y);
        auto results = blowup_all_charts(Y, BlowupSpec::point(0));
        std::optional<std::pair<VectorField, detail::Point>> first, in_kernel;
        for (auto& r : results) {
            BlowupSpec spec = BlowupSpec::point(r.divisor_var);
            auto vars = detail::scan_vars_for(spec, 3, r.divisor_var, false);
            detail::Scan sc = detail::scan_chart(r.representative, vars);
            for (auto& s : sc.sites) {
                if (s.axis >= 0) continue;
                VectorField Z = detail::translated(r.representative, s.at);
                if (classify_singularity(Z).cls != SingularClass::Nilpotent) continue;
                std::vector<GaussianRational> d(3);
                for (int i = 0; i < 3; ++i) d[i] = i == r.divisor_var ? GaussianRational(1) : s.at[i];
                bool kernel = true;
                for (int i = 0; i < 3; ++i) {
                    GaussianRational acc;
                    for (int j = 0; j < 3; ++j) acc += L.entries[i][j] * d[j];
                    if (!acc.is_zero()) kernel = false;
                }
                if (!first) first = {Z, s.at};
                if (kernel && !in_kernel) in_kernel = {Z, s.at};
            }
        }
        auto pick = in_kernel ? in_kernel : first;
        if (!pick) {
            out.note = "no nilpotent point on the divisor after " + std::to_string(stage + 1) + " blow-ups";
            return out;
        }
        Y = pick->first;
        at = pick->second;
    }
}

} // namespace folia
