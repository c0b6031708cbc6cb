#include "folia/upoly.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <Eigen/Eigenvalues>

#include "folia/errors.hpp"

namespace folia {

UPoly::UPoly(std::vector<GaussianRational> coeffs) : c_(std::move(coeffs)) { trim(); }

void UPoly::trim() {
    while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

UPoly UPoly::from_poly(const Poly& p, int var) {
    std::vector<GaussianRational> c;
    for (auto& [e, v] : p.terms()) {
        for (int i = 0; i < kMaxVars; ++i)
            if (i != var && e[i] != 0) throw StructuralError("polynomial is not univariate in the requested variable");
        if (static_cast<int>(c.size()) <= e[var]) c.resize(e[var] + 1);
        c[e[var]] = v;
    }
    return UPoly(std::move(c));
}

Poly UPoly::to_poly(const VarList& vars, int var) const {
    Poly::TermMap t;
    for (int k = 0; k <= degree(); ++k) {
        Exponent e{0, 0, 0};
        e[var] = k;
        t.emplace(e, c_[k]);
    }
    return Poly(vars, std::move(t));
}

UPoly& UPoly::operator+=(const UPoly& o) {
    if (c_.size() < o.c_.size()) c_.resize(o.c_.size());
    for (size_t k = 0; k < o.c_.size(); ++k) c_[k] += o.c_[k];
    trim();
    return *this;
}

UPoly& UPoly::operator-=(const UPoly& o) {
    if (c_.size() < o.c_.size()) c_.resize(o.c_.size());
    for (size_t k = 0; k < o.c_.size(); ++k) c_[k] -= o.c_[k];
    trim();
    return *this;
}

UPoly operator*(const UPoly& a, const UPoly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<GaussianRational> c(a.c_.size() + b.c_.size() - 1);
    for (size_t i = 0; i < a.c_.size(); ++i) {
        if (a.c_[i].is_zero()) continue;
        for (size_t j = 0; j < b.c_.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
    }
    return UPoly(std::move(c));
}

UPoly operator*(UPoly a, const GaussianRational& s) {
    for (auto& v : a.c_) v *= s;
    a.trim();
    return a;
}

UPoly UPoly::operator-() const {
    UPoly r = *this;
    for (auto& v : r.c_) v = -v;
    return r;
}

UPoly UPoly::derivative() const {
    std::vector<GaussianRational> c;
    for (int k = 1; k <= degree(); ++k) c.push_back(c_[k] * GaussianRational(k));
    return UPoly(std::move(c));
}

UPoly UPoly::monic() const {
    if (is_zero()) return *this;
    return *this * leading().inverse();
}

GaussianRational UPoly::eval(const GaussianRational& x) const {
    GaussianRational acc;
    for (int k = degree(); k >= 0; --k) acc = acc * x + c_[k];
    return acc;
}

std::complex<long double> UPoly::eval(std::complex<long double> x) const {
    std::complex<long double> acc{0, 0};
    for (int k = degree(); k >= 0; --k) acc = acc * x + c_[k].to_complex_ld();
    return acc;
}

std::string UPoly::str(const std::string& var) const { return to_poly({var}, 0).str(); }

std::pair<UPoly, UPoly> divmod(const UPoly& a, const UPoly& b) {
    if (b.is_zero()) throw std::domain_error("polynomial division by zero");
    std::vector<GaussianRational> r = a.coeffs();
    int db = b.degree();
    if (a.degree() < db) return {UPoly{}, a};
    std::vector<GaussianRational> q(a.degree() - db + 1);
    GaussianRational inv = b.leading().inverse();
    for (int k = a.degree(); k >= db; --k) {
        if (r[k].is_zero()) continue;
        GaussianRational f = r[k] * inv;
        q[k - db] = f;
        for (int j = 0; j <= db; ++j) r[k - db + j] -= f * b.coeff(j);
    }
    return {UPoly(std::move(q)), UPoly(std::move(r))};
}

UPoly exact_div(const UPoly& a, const UPoly& b) {
    auto [q, r] = divmod(a, b);
    if (!r.is_zero()) throw StructuralError("inexact polynomial division");
    return q;
}

UPoly gcd(const UPoly& a, const UPoly& b) {
    UPoly x = a, y = b;
    while (!y.is_zero()) {
        UPoly r = divmod(x, y).second;
        x = std::move(y);
        y = r.monic();
    }
    return x.monic();
}

std::vector<SquarefreeFactor> squarefree_decomposition(const UPoly& p) {
    std::vector<SquarefreeFactor> out;
    if (p.degree() < 1) return out;
    UPoly f = p.monic();
    UPoly df = f.derivative();
    UPoly a = gcd(f, df);
    UPoly b = exact_div(f, a);
    UPoly c = exact_div(df, a);
    UPoly d = c - b.derivative();
    for (int i = 1; b.degree() >= 1; ++i) {
        a = gcd(b, d);
        if (a.degree() >= 1) out.push_back({a, i});
        b = exact_div(b, a);
        c = exact_div(d, a);
        d = c - b.derivative();
    }
    return out;
}

namespace {

constexpr unsigned kPrec = 320;

// Temporaries in mpf expressions take the default precision.
[[maybe_unused]] const bool kPrecSet = (mpf_set_default_prec(kPrec), true);

struct MpfC {
    mpf_class re{0, kPrec}, im{0, kPrec};
};

MpfC mul(const MpfC& a, const MpfC& b) {
    MpfC r;
    r.re = a.re * b.re - a.im * b.im;
    r.im = a.re * b.im + a.im * b.re;
    return r;
}

MpfC div(const MpfC& a, const MpfC& b) {
    mpf_class n(b.re * b.re + b.im * b.im, kPrec);
    MpfC r;
    r.re = (a.re * b.re + a.im * b.im) / n;
    r.im = (a.im * b.re - a.re * b.im) / n;
    return r;
}

MpfC to_mpf(const GaussianRational& g) {
    MpfC r;
    r.re = mpf_class(g.re(), kPrec);
    r.im = mpf_class(g.im(), kPrec);
    return r;
}

mpq_class to_mpq(const mpf_class& f) { return mpq_class(f); }

// Newton on f, in high precision, starting from a double approximation.
MpfC polish(const UPoly& f, std::complex<double> z0) {
    std::vector<MpfC> c;
    for (auto& g : f.coeffs()) c.push_back(to_mpf(g));
    UPoly df = f.derivative();
    std::vector<MpfC> dc;
    for (auto& g : df.coeffs()) dc.push_back(to_mpf(g));
    MpfC z;
    z.re = z0.real();
    z.im = z0.imag();
    mpf_class tiny(1, kPrec);
    mpf_div_2exp(tiny.get_mpf_t(), tiny.get_mpf_t(), kPrec - 24);
    for (int it = 0; it < 200; ++it) {
        MpfC p, q;
        for (int k = static_cast<int>(c.size()) - 1; k >= 0; --k) {
            p = mul(p, z);
            p.re += c[k].re;
            p.im += c[k].im;
        }
        for (int k = static_cast<int>(dc.size()) - 1; k >= 0; --k) {
            q = mul(q, z);
            q.re += dc[k].re;
            q.im += dc[k].im;
        }
        if (sgn(q.re) == 0 && sgn(q.im) == 0) break;
        MpfC step = div(p, q);
        z.re -= step.re;
        z.im -= step.im;
        mpf_class s = abs(step.re) + abs(step.im);
        mpf_class scale = abs(z.re) + abs(z.im) + 1;
        if (s <= tiny * scale) break;
    }
    return z;
}

std::vector<std::complex<double>> numeric_roots(const UPoly& f) {
    int n = f.degree();
    std::vector<std::complex<double>> out;
    if (n < 1) return out;
    UPoly m = f.monic();
    if (n == 1) {
        out.push_back((-m.coeff(0)).to_complex());
        return out;
    }
    Eigen::MatrixXcd comp = Eigen::MatrixXcd::Zero(n, n);
    for (int i = 1; i < n; ++i) comp(i, i - 1) = 1.0;
    for (int i = 0; i < n; ++i) comp(i, n - 1) = -m.coeff(i).to_complex();
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(comp, false);
    for (int i = 0; i < n; ++i) out.push_back(es.eigenvalues()[i]);
    return out;
}

mpz_class denominator_lcm(const UPoly& f) {
    mpz_class d = 1;
    for (auto& g : f.coeffs()) {
        mpz_lcm(d.get_mpz_t(), d.get_mpz_t(), g.re().get_den_mpz_t());
        mpz_lcm(d.get_mpz_t(), d.get_mpz_t(), g.im().get_den_mpz_t());
    }
    return d;
}

mpz_class round_mpf(const mpf_class& x) {
    mpf_class h = x + 0.5;
    mpf_class fl = floor(h);
    return mpz_class(fl);
}

double down(const mpf_class& x) {
    double d = x.get_d();  // truncates toward zero
    return std::nextafter(d, -INFINITY);
}

double up(const mpf_class& x) {
    double d = x.get_d();
    return std::nextafter(d, INFINITY);
}

bool canonical_root_less(const Root& a, const Root& b) {
    if (a.exact != b.exact) return a.exact;
    if (a.exact) return canonical_less(a.value, b.value);
    if (a.approx.real() != b.approx.real()) return a.approx.real() < b.approx.real();
    return a.approx.imag() < b.approx.imag();
}

// Roots of a monic squarefree factor: exact ones are split off by exact
// deflation, the rest get a Newton inclusion disc of radius n|f(z)/f'(z)|.
void roots_of_squarefree(const UPoly& factor, int mult, std::vector<Root>& out) {
    UPoly f = factor.monic();
    if (f.degree() < 1) return;
    // Exact recognition: D * r is a Gaussian integer for every root r in Q(i).
    bool found = true;
    while (found && f.degree() >= 1) {
        found = false;
        mpz_class D = denominator_lcm(f);
        for (auto z : numeric_roots(f)) {
            MpfC p = polish(f, z);
            mpf_class sre = p.re * mpf_class(D, kPrec), sim = p.im * mpf_class(D, kPrec);
            GaussianRational cand(mpq_class(round_mpf(sre), D), mpq_class(round_mpf(sim), D));
            if (f.eval(cand).is_zero()) {
                Root r;
                r.exact = true;
                r.value = cand;
                r.approx = cand.to_complex();
                r.multiplicity = mult;
                out.push_back(r);
                f = exact_div(f, UPoly({-cand, 1}));
                found = true;
                break;
            }
        }
    }
    if (f.degree() < 1) return;

    int n = f.degree();
    UPoly df = f.derivative();
    std::vector<Root> boxes;
    std::vector<std::pair<MpfC, mpf_class>> discs;
    for (auto z : numeric_roots(f)) {
        MpfC p = polish(f, z);
        GaussianRational zq(to_mpq(p.re), to_mpq(p.im));
        GaussianRational fv = f.eval(zq), dv = df.eval(zq);
        Root r;
        r.exact = false;
        r.multiplicity = mult;
        r.approx = {p.re.get_d(), p.im.get_d()};
        mpf_class radius(0, kPrec);
        if (dv.is_zero()) {
            r.clustered = true;
            radius = 1;
        } else {
            mpq_class r2 = mpq_class(n * n) * fv.norm() / dv.norm();
            mpf_class rr(r2, kPrec);
            radius = sqrt(rr);
            // Pad against the rounding of the square root.
            radius = radius * mpf_class(1.0000001, kPrec) + mpf_class(1e-300, kPrec);
        }
        r.box.lo_re = down(p.re - radius);
        r.box.hi_re = up(p.re + radius);
        r.box.lo_im = down(p.im - radius);
        r.box.hi_im = up(p.im + radius);
        if (r.box.width() > 1e-10) r.clustered = true;
        discs.emplace_back(p, radius);
        boxes.push_back(r);
    }
    for (size_t i = 0; i < discs.size(); ++i)
        for (size_t j = i + 1; j < discs.size(); ++j) {
            mpf_class dre = discs[i].first.re - discs[j].first.re;
            mpf_class dim = discs[i].first.im - discs[j].first.im;
            mpf_class rs = discs[i].second + discs[j].second;
            if (dre * dre + dim * dim <= rs * rs) boxes[i].clustered = boxes[j].clustered = true;
        }
    out.insert(out.end(), boxes.begin(), boxes.end());
}

} // namespace

std::vector<Root> solve_roots(const UPoly& p) {
    std::vector<Root> out;
    if (p.is_zero()) throw DegenerateInputError("roots of the zero polynomial");
    for (auto& sf : squarefree_decomposition(p)) roots_of_squarefree(sf.factor, sf.multiplicity, out);
    // Boxes of different squarefree factors must also be disjoint.
    for (size_t i = 0; i < out.size(); ++i)
        for (size_t j = i + 1; j < out.size(); ++j)
            if (!out[i].exact && !out[j].exact && out[i].box.overlaps(out[j].box))
                out[i].clustered = out[j].clustered = true;
    std::sort(out.begin(), out.end(), canonical_root_less);
    return out;
}

std::vector<GaussianRational> exact_roots(const UPoly& p) {
    std::vector<GaussianRational> out;
    if (p.degree() < 1) return out;
    for (auto& r : solve_roots(p))
        if (r.exact) out.push_back(r.value);
    return out;
}

UPoly resultant(const std::vector<UPoly>& a, const std::vector<UPoly>& b) {
    auto trimmed = [](std::vector<UPoly> v) {
        while (!v.empty() && v.back().is_zero()) v.pop_back();
        return v;
    };
    std::vector<UPoly> f = trimmed(a), g = trimmed(b);
    if (f.empty() || g.empty()) return {};
    int m = static_cast<int>(f.size()) - 1, n = static_cast<int>(g.size()) - 1;
    if (m == 0 && n == 0) return UPoly::constant(1);
    if (m == 0) {
        UPoly r = UPoly::constant(1);
        for (int k = 0; k < n; ++k) r = r * f[0];
        return r;
    }
    if (n == 0) {
        UPoly r = UPoly::constant(1);
        for (int k = 0; k < m; ++k) r = r * g[0];
        return r;
    }
    int N = m + n;
    std::vector<std::vector<UPoly>> M(N, std::vector<UPoly>(N));
    for (int i = 0; i < n; ++i)
        for (int k = 0; k <= m; ++k) M[i][i + k] = f[m - k];
    for (int i = 0; i < m; ++i)
        for (int k = 0; k <= n; ++k) M[n + i][i + k] = g[n - k];
    // Fraction-free Bareiss elimination over Q(i)[t].
    UPoly prev = UPoly::constant(1);
    int sign = 1;
    for (int k = 0; k < N - 1; ++k) {
        if (M[k][k].is_zero()) {
            int s = -1;
            for (int i = k + 1; i < N; ++i)
                if (!M[i][k].is_zero()) {
                    s = i;
                    break;
                }
            if (s < 0) return {};
            std::swap(M[k], M[s]);
            sign = -sign;
        }
        for (int i = k + 1; i < N; ++i) {
            for (int j = k + 1; j < N; ++j)
                M[i][j] = exact_div(M[i][j] * M[k][k] - M[i][k] * M[k][j], prev);
            M[i][k] = UPoly{};
        }
        prev = M[k][k];
    }
    UPoly det = M[N - 1][N - 1];
    return sign > 0 ? det : -det;
}

} // namespace folia
