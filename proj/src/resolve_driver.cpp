#include <algorithm>
#include <deque>

#include "folia/errors.hpp"
#include "folia/resolve.hpp"
#include "resolve_detail.hpp"

namespace folia {

namespace {

using detail::Point;

struct Options {
    int max_steps = 40;
    bool escape = false;
    int order_slack = 2;
};

struct Centre {
    Point at;
    CenterKind kind = CenterKind::Point;
    int free_var = -1;
    bool whole_axis = false;
    std::vector<int> weights;
};

class Driver {
public:
    Driver(const VectorField& X, const Options& opt) : opt_(opt) {
        if (!X.is_holomorphic()) throw PoleError("resolution needs a holomorphic field");
        tree_.dim = X.dim();
        Saturation s = saturate(X);
        if (s.content != SignedExponent{0, 0, 0})
            tree_.diagnostics.push_back("input divided by a monomial factor before resolving");
        TreeNode root;
        root.field = s.field;
        auto ps = root.field.polys();
        if (std::any_of(ps.begin(), ps.end(), [](const Poly& p) { return !p.constant_term().is_zero(); }))
            throw NotApplicableError("the origin is a regular point");
        tree_.nodes.push_back(root);
    }

    ResolutionTree run() {
        std::deque<int> queue{0};
        while (!queue.empty()) {
            int id = queue.front();
            queue.pop_front();
            for (int child : process(id)) queue.push_back(child);
        }
        finish();
        return std::move(tree_);
    }

private:
    int steps() const { return tree_.blowups(); }

    std::vector<int> process(int id) {
        std::vector<int> children;
        VectorField field = tree_.nodes[id].field;
        detail::Scan sc = detail::scan_chart(field, tree_.nodes[id].scan_vars);
        for (auto& d : sc.diagnostics) {
            tree_.diagnostics.push_back("node " + std::to_string(id) + ": " + d);
            unresolved_ = true;
        }
        for (auto& c : sc.curves) {
            ElementaryCurve e = c;
            e.node = id;
            tree_.curves.push_back(e);
        }
        for (auto& a : sc.approx) {
            LocatedPoint lp = a;
            lp.node = id;
            for (int i = 0; i < field.dim(); ++i)
                if (field.chart().divisor_labels[i] && lp.boxes[i].lo_re == 0 && lp.boxes[i].hi_re == 0 &&
                    lp.boxes[i].lo_im == 0 && lp.boxes[i].hi_im == 0)
                    lp.components.push_back(*field.chart().divisor_labels[i]);
            std::sort(lp.components.begin(), lp.components.end());
            if (lp.pending) {
                tree_.diagnostics.push_back("node " + std::to_string(id) +
                                            ": unprocessed-nonrational non-elementary singular point");
                unresolved_ = true;
            }
            tree_.singular_points.push_back(std::move(lp));
        }
        for (auto& site : sc.sites) {
            VectorField Y = detail::translated(field, site.at);
            SingularityReport rep = classify_singularity(Y);
            if (!rep.singular()) continue;
            if (site.axis >= 0) {
                if (out_of_budget(id, site.at, Y, rep, "non-elementary singular line")) continue;
                auto c = blow_up(id, {site.at, CenterKind::Curve, site.axis, true, {}}, rep.tag());
                children.insert(children.end(), c.begin(), c.end());
                continue;
            }
            if (rep.elementary()) {
                leaf(id, site.at, Y, std::move(rep), false);
                continue;
            }
            if (out_of_budget(id, site.at, Y, rep, rep.tag() + " point")) continue;
            if (opt_.escape && rep.cls == SingularClass::Nilpotent) {
                if (auto w = match_normal_form(Y, opt_.order_slack)) {
                    auto c = escape(id, site.at, Y, *w, rep.tag());
                    if (c) {
                        children.insert(children.end(), c->begin(), c->end());
                    } else {
                        tree_.diagnostics.push_back("node " + std::to_string(id) + ": persistent nilpotent point " +
                                                    detail::describe(site.at) + " kept, no weight-2 escape found");
                        persistent_ = true;
                        leaf(id, site.at, Y, std::move(rep), true);
                    }
                    continue;
                }
            }
            Centre centre{site.at, CenterKind::Point, -1, false, {}};
            auto axes = detail::singular_axes(Y, true);
            if (!axes.empty()) centre = {site.at, CenterKind::Curve, axes.front(), false, {}};
            auto c = blow_up(id, centre, rep.tag());
            children.insert(children.end(), c.begin(), c.end());
        }
        return children;
    }

    bool out_of_budget(int id, const Point& at, const VectorField& Y, const SingularityReport& rep,
                       const std::string& what) {
        if (steps() < opt_.max_steps) return false;
        tree_.diagnostics.push_back("node " + std::to_string(id) + ": budget exhausted at " + what + " " +
                                    detail::describe(at));
        exhausted_ = true;
        leaf(id, at, Y, rep, true);
        return true;
    }

    void leaf(int id, const Point& at, const VectorField& Y, SingularityReport rep, bool pending) {
        LocatedPoint lp;
        lp.node = id;
        lp.coords = at;
        lp.components = detail::labels_through(Y);
        lp.report = std::move(rep);
        lp.pending = pending;
        tree_.singular_points.push_back(std::move(lp));
    }

    std::vector<TransformResult> transforms(const VectorField& Y, const Centre& c, int label) const {
        BlowupSpec spec;
        spec.center = c.kind;
        spec.free_var = c.free_var;
        spec.weights = c.weights;
        spec.label = label;
        auto results = blowup_all_charts(Y, spec);
        for (auto& r : results) {
            r.field.chart().history.back().recentre = c.at;
            r.representative.chart().history.back().recentre = c.at;
        }
        return results;
    }

    std::vector<int> commit(int id, const Centre& c, const VectorField& Y, std::vector<TransformResult> results,
                            const std::string& tag) {
        int label = results.front().label;
        BlowupCentre bc;
        bc.node = id;
        bc.at = c.at;
        bc.kind = c.kind;
        bc.free_var = c.free_var;
        bc.whole_axis = c.whole_axis;
        BlowupSpec spec;
        spec.center = c.kind;
        spec.free_var = c.free_var;
        auto blown = blown_variables(spec, tree_.dim);
        bc.weights = c.weights.empty() ? std::vector<int>(blown.size(), 1) : c.weights;
        bc.label = label;
        bc.tag = tag;
        int centre_index = static_cast<int>(tree_.centres.size());
        tree_.centres.push_back(bc);

        if (tree_.dim == 2)
            for (int l : detail::labels_through(Y))
                for (auto& comp : tree_.components)
                    if (comp.label == l && comp.weight) --*comp.weight;
        DivisorComponent comp;
        comp.label = label;
        if (tree_.dim == 2) comp.weight = -1;
        comp.dicritical = results.front().dicritical;
        comp.weighted = bc.weighted();
        tree_.components.push_back(comp);

        std::vector<int> children;
        for (auto& r : results) {
            TreeNode n;
            n.id = static_cast<int>(tree_.nodes.size());
            n.parent = id;
            n.site = centre_index;
            n.divisor_var = r.divisor_var;
            n.divisor_multiplicity = r.divisor_multiplicity;
            n.pole_order = r.pole_order;
            n.dicritical = r.dicritical;
            n.scan_vars = detail::scan_vars_for(spec, tree_.dim, r.divisor_var, c.whole_axis);
            n.field = std::move(r.representative);
            if (r.pole_order > 0)
                tree_.diagnostics.push_back("node " + std::to_string(n.id) +
                                            ": strictly meromorphic transform, representative used");
            children.push_back(n.id);
            tree_.nodes.push_back(std::move(n));
        }
        return children;
    }

    std::vector<int> blow_up(int id, const Centre& c, const std::string& tag) {
        VectorField Y = detail::translated(tree_.nodes[id].field, c.at);
        auto results = transforms(Y, c, next_label_);
        ++next_label_;
        return commit(id, c, Y, std::move(results), tag);
    }

    // Every singular point the candidate leaves on its divisor must be exact and elementary.
    bool clean(const std::vector<TransformResult>& results, const Centre& c) const {
        BlowupSpec spec;
        spec.center = c.kind;
        spec.free_var = c.free_var;
        for (auto& r : results) {
            auto vars = detail::scan_vars_for(spec, tree_.dim, r.divisor_var, false);
            detail::Scan sc = detail::scan_chart(r.representative, vars);
            if (!sc.diagnostics.empty() || !sc.approx.empty()) return false;
            for (auto& s : sc.sites) {
                if (s.axis >= 0) return false;
                auto rep = classify_singularity(detail::translated(r.representative, s.at));
                if (rep.singular() && !rep.elementary()) return false;
            }
        }
        return true;
    }

    std::optional<std::vector<int>> escape(int id, const Point& at, const VectorField& Y, const NormalFormWitness& w,
                                           const std::string& tag) {
        std::vector<Centre> candidates;
        std::vector<int> axes = detail::invariant_axes(Y);
        std::stable_partition(axes.begin(), axes.end(), [&](int a) { return a == w.var_z; });
        for (int a : axes)
            for (auto ws : {std::vector<int>{2, 1}, std::vector<int>{1, 2}})
                candidates.push_back({at, CenterKind::Curve, a, false, ws});
        for (auto ws : {std::vector<int>{2, 1, 1}, std::vector<int>{1, 2, 1}, std::vector<int>{1, 1, 2}})
            candidates.push_back({at, CenterKind::Point, -1, false, ws});
        for (auto& c : candidates) {
            std::vector<TransformResult> results;
            try {
                results = transforms(Y, c, next_label_);
            } catch (const InvalidCenterError&) {
                continue;
            } catch (const NotApplicableError&) {
                continue;
            }
            if (!clean(results, c)) continue;
            ++next_label_;
            return commit(id, c, Y, std::move(results), tag + ", persistent");
        }
        return std::nullopt;
    }

    static GaussianRational residue(const UPoly& num, const UPoly& den) {
        // Residue at 0 of num/den: den = s^m d1 with d1(0) != 0.
        int m = 0;
        while (m <= den.degree() && den.coeff(m).is_zero()) ++m;
        if (m == 0) return GaussianRational{};
        std::vector<GaussianRational> d1;
        for (int k = m; k <= den.degree(); ++k) d1.push_back(den.coeff(k));
        // Series of 1/d1 up to s^(m-1).
        std::vector<GaussianRational> inv(m);
        inv[0] = d1[0].inverse();
        for (int k = 1; k < m; ++k) {
            GaussianRational acc;
            for (int j = 1; j <= k && j < static_cast<int>(d1.size()); ++j) acc += d1[j] * inv[k - j];
            inv[k] = -acc * inv[0];
        }
        GaussianRational r;
        for (int k = 0; k < m; ++k) r += num.coeff(k) * inv[m - 1 - k];
        return r;
    }

    void camacho_sad() {
        for (auto& lp : tree_.singular_points) {
            if (!lp.exact || lp.pending) continue;
            const TreeNode& node = tree_.nodes[lp.node];
            VectorField Y = detail::translated(node.field, lp.coords);
            auto P = Y.polys();
            for (int label : lp.components) {
                if (tree_.component(label).dicritical) continue;
                int k = -1;
                for (int i = 0; i < 2; ++i)
                    if (Y.chart().divisor_labels[i] == label) k = i;
                int j = 1 - k;
                Poly bv = P[k].derivative(k).restrict_to(k, 0);
                Poly a = P[j].restrict_to(k, 0);
                if (a.is_zero() || !P[k].restrict_to(k, 0).is_zero()) continue;
                lp.cs.push_back({label, residue(UPoly::from_poly(bv, j), UPoly::from_poly(a, j))});
            }
        }
    }

    void finish() {
        if (tree_.dim == 2) camacho_sad();
        if (exhausted_ || unresolved_)
            tree_.status = TreeStatus::BudgetExhausted;
        else if (persistent_)
            tree_.status = TreeStatus::PersistentNilpotentPending;
        else
            tree_.status = TreeStatus::Resolved;
    }

    Options opt_;
    ResolutionTree tree_;
    int next_label_ = 1;
    bool exhausted_ = false, unresolved_ = false, persistent_ = false;
};

} // namespace

ResolutionTree seidenberg_resolve(const VectorField& X, int max_steps) {
    if (X.dim() != 2) throw NotApplicableError("seidenberg_resolve works on two-dimensional fields");
    if (max_steps < 1) throw NotApplicableError("max_steps must be at least 1");
    return Driver(X, {max_steps, false, 2}).run();
}

ResolutionTree resolve3(const VectorField& X, int max_steps) {
    Resolve3Options o;
    o.max_steps = max_steps;
    return resolve3(X, o);
}

ResolutionTree resolve3(const VectorField& X, const Resolve3Options& opts) {
    if (X.dim() != 3) throw NotApplicableError("resolve3 works on three-dimensional fields");
    if (opts.max_steps < 1) throw NotApplicableError("max_steps must be at least 1");
    return Driver(X, {opts.max_steps, opts.allow_weighted, opts.order_slack}).run();
}

std::map<int, GaussianRational> camacho_sad_sums(const ResolutionTree& tree) {
    std::map<int, GaussianRational> sums;
    std::map<int, bool> complete;
    for (auto& c : tree.components)
        if (!c.dicritical) complete[c.label] = true;
    for (auto& lp : tree.singular_points)
        for (int l : lp.components) {
            if (!complete.count(l)) continue;
            auto it = std::find_if(lp.cs.begin(), lp.cs.end(), [&](const CsIndex& c) { return c.label == l; });
            bool exact_eigen = lp.exact && lp.report.eigen.all_exact() && !lp.report.eigen.roots.empty();
            if (it == lp.cs.end() || !exact_eigen)
                complete[l] = false;
            else
                sums[l] += it->value;
        }
    for (auto& [l, ok] : complete)
        if (!ok) sums.erase(l);
        else sums.try_emplace(l);
    return sums;
}

} // namespace folia
