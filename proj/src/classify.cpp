#include "folia/classify.hpp"

#include <functional>

#include "folia/errors.hpp"

namespace folia {

bool EigenData::all_exact() const {
    for (auto& r : roots)
        if (!r.exact) return false;
    return true;
}

std::vector<GaussianRational> EigenData::exact_values() const {
    std::vector<GaussianRational> out;
    for (auto& r : roots) {
        if (!r.exact) throw NotApplicableError("eigenvalues are not all exact");
        for (int k = 0; k < r.multiplicity; ++k) out.push_back(r.value);
    }
    return out;
}

int EigenData::zero_multiplicity() const {
    for (auto& r : roots)
        if (r.exact && r.value.is_zero()) return r.multiplicity;
    return 0;
}

std::string to_string(SingularClass c) {
    switch (c) {
    case SingularClass::Regular: return "regular";
    case SingularClass::ElementaryNondegenerate: return "elementary_nondegenerate";
    case SingularClass::SaddleNode: return "saddle_node";
    case SingularClass::Nilpotent: return "nilpotent";
    case SingularClass::ZeroLinearPart: return "zero_linear_part";
    }
    return "?";
}

std::string to_string(DomainPosition p) {
    switch (p) {
    case DomainPosition::Siegel: return "siegel";
    case DomainPosition::Poincare: return "poincare";
    case DomainPosition::SiegelBoundary: return "siegel_boundary";
    case DomainPosition::Undecided: return "undecided";
    }
    return "?";
}

std::string SingularityReport::tag() const {
    if (cls == SingularClass::SaddleNode) return "saddle_node(" + std::to_string(saddle_node_rank) + ")";
    return to_string(cls);
}

UPoly char_poly(const LinearPart& L) {
    // Faddeev-LeVerrier: exact over Q(i), no pivoting needed.
    int n = L.dim();
    const Matrix& A = L.entries;
    std::vector<GaussianRational> c(n + 1);
    c[n] = 1;
    Matrix M(n, std::vector<GaussianRational>(n));
    for (int k = 1; k <= n; ++k) {
        Matrix AM(n, std::vector<GaussianRational>(n));
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                GaussianRational s;
                for (int l = 0; l < n; ++l)
                    if (!A[i][l].is_zero() && !M[l][j].is_zero()) s += A[i][l] * M[l][j];
                AM[i][j] = s;
            }
        // M_k = A M_{k-1} + c_{n-k+1} I
        for (int i = 0; i < n; ++i) AM[i][i] += c[n - k + 1];
        M = AM;
        GaussianRational tr;
        for (int i = 0; i < n; ++i)
            for (int l = 0; l < n; ++l) tr += A[i][l] * M[l][i];
        c[n - k] = -tr / GaussianRational(k);
    }
    return UPoly(c);
}

EigenData eigen_solve(const UPoly& p) {
    EigenData e;
    e.char_poly = p;
    e.roots = solve_roots(p);
    return e;
}

std::optional<int> resonance_rank(const std::vector<GaussianRational>& lambda) {
    int n = static_cast<int>(lambda.size());
    Matrix m(2, std::vector<GaussianRational>(n));
    for (int j = 0; j < n; ++j) {
        m[0][j] = GaussianRational(lambda[j].re());
        m[1][j] = GaussianRational(lambda[j].im());
    }
    return n - rank(m);
}

std::optional<int> resonance_rank(const EigenData& e) {
    if (!e.all_exact()) return std::nullopt;
    return resonance_rank(e.exact_values());
}

std::vector<ResonantRelation> resonant_relations(const std::vector<GaussianRational>& lambda, int bound) {
    std::vector<ResonantRelation> out;
    int n = static_cast<int>(lambda.size());
    std::vector<int> I(n, 0);
    std::vector<std::vector<int>> multi;
    std::function<void(int, int)> rec = [&](int j, int left) {
        if (j == n) {
            int tot = 0;
            for (int v : I) tot += v;
            if (tot >= 2) multi.push_back(I);
            return;
        }
        for (int k = 0; k <= left; ++k) {
            I[j] = k;
            rec(j + 1, left - k);
        }
        I[j] = 0;
    };
    rec(0, bound);
    for (int i = 0; i < n; ++i)
        for (auto& m : multi) {
            GaussianRational s;
            for (int j = 0; j < n; ++j)
                if (m[j]) s += lambda[j] * GaussianRational(m[j]);
            if (s == lambda[i]) out.push_back({i + 1, m});
        }
    return out;
}

namespace {

// Sign of the cross product a x b for points of Q(i) viewed in the plane.
int cross_sign(const GaussianRational& a, const GaussianRational& b) {
    return sgn(a.re() * b.im() - a.im() * b.re());
}

mpq_class dot(const GaussianRational& a, const GaussianRational& b) { return a.re() * b.re() + a.im() * b.im(); }

bool origin_in_hull(const std::vector<GaussianRational>& pts) {
    int n = static_cast<int>(pts.size());
    for (int i = 0; i < n; ++i)
        if (pts[i].is_zero()) return true;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (cross_sign(pts[i], pts[j]) == 0 && sgn(dot(pts[i], pts[j])) < 0) return true;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            for (int k = j + 1; k < n; ++k) {
                // 0 inside triangle (inclusive) iff the three orientations of 0 against the edges agree.
                int s1 = cross_sign(pts[i], pts[j]);
                int s2 = cross_sign(pts[j], pts[k]);
                int s3 = cross_sign(pts[k], pts[i]);
                bool has_neg = s1 < 0 || s2 < 0 || s3 < 0;
                bool has_pos = s1 > 0 || s2 > 0 || s3 > 0;
                if (!(has_neg && has_pos) && (has_neg || has_pos)) return true;
            }
    return false;
}

} // namespace

DomainPosition siegel_test(const std::vector<GaussianRational>& lambda) {
    for (auto& l : lambda)
        if (l.is_zero()) return DomainPosition::SiegelBoundary;
    return origin_in_hull(lambda) ? DomainPosition::Siegel : DomainPosition::Poincare;
}

DomainPosition siegel_test(const EigenData& e) {
    if (e.zero_multiplicity() > 0) return DomainPosition::SiegelBoundary;
    if (!e.all_exact()) return DomainPosition::Undecided;
    return siegel_test(e.exact_values());
}

bool second_jet_check(const VectorField& X) { return !X.jet(2).is_zero(); }

SingularityReport classify_singularity(const VectorField& X) {
    if (!X.is_holomorphic()) throw PoleError("classification needs a holomorphic field");
    SingularityReport rep;
    rep.second_jet_nonzero = second_jet_check(X);
    rep.linear = linear_part(X);
    rep.eigen = eigen_solve(char_poly(rep.linear));
    auto ps = X.polys();
    bool singular = true;
    for (auto& p : ps)
        if (!p.constant_term().is_zero()) singular = false;
    if (!singular) {
        rep.cls = SingularClass::Regular;
        return rep;
    }
    int n = X.dim();
    int z = rep.eigen.zero_multiplicity();
    if (z == n) {
        rep.cls = rep.linear.is_zero() ? SingularClass::ZeroLinearPart : SingularClass::Nilpotent;
    } else if (z == 0) {
        rep.cls = SingularClass::ElementaryNondegenerate;
    } else {
        rep.cls = SingularClass::SaddleNode;
        rep.saddle_node_rank = z;
    }
    rep.resonance_rank = resonance_rank(rep.eigen);
    rep.position = siegel_test(rep.eigen);
    return rep;
}

} // namespace folia
