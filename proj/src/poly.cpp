#include "folia/poly.hpp"

#include <algorithm>
#include <limits>
#include <sstream>

#include "folia/errors.hpp"

namespace folia {

Poly::Poly(VarList vars) : vars_(std::move(vars)) {
    if (vars_.size() > kMaxVars) throw StructuralError("at most three variables are supported");
}

Poly::Poly(VarList vars, TermMap terms) : Poly(std::move(vars)) {
    for (auto& [e, c] : terms)
        if (!c.is_zero()) terms_.emplace(e, c);
}

Poly Poly::constant(const VarList& vars, const GaussianRational& c) {
    Poly p(vars);
    p.add_term({0, 0, 0}, c);
    return p;
}

Poly Poly::variable(const VarList& vars, int index) {
    if (index < 0 || index >= static_cast<int>(vars.size()))
        throw StructuralError("variable index out of range");
    Exponent e{0, 0, 0};
    e[index] = 1;
    return monomial(vars, e);
}

Poly Poly::variable(const VarList& vars, const std::string& name) {
    auto it = std::find(vars.begin(), vars.end(), name);
    if (it == vars.end()) throw StructuralError("unknown variable '" + name + "'");
    return variable(vars, static_cast<int>(it - vars.begin()));
}

Poly Poly::monomial(const VarList& vars, const Exponent& e, const GaussianRational& c) {
    Poly p(vars);
    for (int i = 0; i < kMaxVars; ++i) {
        if (e[i] < 0) throw StructuralError("negative exponent in a polynomial");
        if (e[i] > 0 && i >= p.nvars()) throw StructuralError("exponent on an undeclared variable");
    }
    p.add_term(e, c);
    return p;
}

int Poly::var_index(const std::string& name) const {
    auto it = std::find(vars_.begin(), vars_.end(), name);
    if (it == vars_.end()) throw StructuralError("unknown variable '" + name + "'");
    return static_cast<int>(it - vars_.begin());
}

bool Poly::is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first == Exponent{0, 0, 0});
}

int Poly::degree() const { return terms_.empty() ? -1 : total_degree(terms_.begin()->first); }

int Poly::order() const { return terms_.empty() ? -1 : total_degree(terms_.rbegin()->first); }

int Poly::degree_in(int var) const {
    int d = terms_.empty() ? -1 : 0;
    for (auto& [e, c] : terms_) d = std::max(d, e[var]);
    return d;
}

GaussianRational Poly::coeff(const Exponent& e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? GaussianRational{} : it->second;
}

void Poly::check_same_vars(const Poly& o) const {
    if (vars_ != o.vars_) throw StructuralError("polynomials over different variable lists");
}

void Poly::add_term(const Exponent& e, const GaussianRational& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.try_emplace(e, c);
    if (!inserted) {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

Poly& Poly::operator+=(const Poly& o) {
    check_same_vars(o);
    for (auto& [e, c] : o.terms_) add_term(e, c);
    return *this;
}

Poly& Poly::operator-=(const Poly& o) {
    check_same_vars(o);
    for (auto& [e, c] : o.terms_) add_term(e, -c);
    return *this;
}

Poly operator*(const Poly& a, const Poly& b) {
    a.check_same_vars(b);
    Poly r(a.vars_);
    for (auto& [ea, ca] : a.terms_)
        for (auto& [eb, cb] : b.terms_)
            r.add_term({ea[0] + eb[0], ea[1] + eb[1], ea[2] + eb[2]}, ca * cb);
    return r;
}

Poly& Poly::operator*=(const Poly& o) { return *this = *this * o; }

Poly& Poly::operator*=(const GaussianRational& c) {
    if (c.is_zero()) {
        terms_.clear();
        return *this;
    }
    for (auto& [e, v] : terms_) v *= c;
    return *this;
}

Poly Poly::operator-() const {
    Poly r = *this;
    for (auto& [e, v] : r.terms_) v = -v;
    return r;
}

Poly Poly::pow(int k) const {
    if (k < 0) throw StructuralError("negative power of a polynomial");
    Poly result = constant(vars_, 1);
    Poly base = *this;
    while (k > 0) {
        if (k & 1) result = result * base;
        k >>= 1;
        if (k) base = base * base;
    }
    return result;
}

Poly Poly::derivative(int var) const {
    if (var < 0 || var >= nvars()) throw StructuralError("derivative with respect to an unknown variable");
    Poly r(vars_);
    for (auto& [e, c] : terms_) {
        if (e[var] == 0) continue;
        Exponent f = e;
        --f[var];
        r.add_term(f, c * GaussianRational(e[var]));
    }
    return r;
}

Poly Poly::substitute_monomials(const VarList& target_vars, std::span<const MonomialImage> images) const {
    if (static_cast<int>(images.size()) != nvars())
        throw StructuralError("substitution must assign every variable");
    Poly r(target_vars);
    for (auto& [e, c] : terms_) {
        Exponent out{0, 0, 0};
        GaussianRational coeff = c;
        for (int i = 0; i < nvars(); ++i) {
            if (e[i] == 0) continue;
            for (int j = 0; j < kMaxVars; ++j) out[j] += images[i].exps[j] * e[i];
            for (int k = 0; k < e[i]; ++k) coeff *= images[i].coeff;
        }
        for (int j = 0; j < kMaxVars; ++j)
            if (out[j] < 0) throw StructuralError("monomial substitution produced a negative exponent");
        r.add_term(out, coeff);
    }
    return r;
}

Poly Poly::compose(std::span<const Poly> images) const {
    if (static_cast<int>(images.size()) != nvars())
        throw StructuralError("composition must assign every variable");
    if (images.empty()) return *this;
    const VarList& tv = images[0].vars();
    for (auto& p : images)
        if (p.vars() != tv) throw StructuralError("composition images over different variable lists");
    // Cache powers per variable.
    std::vector<std::vector<Poly>> powers(nvars());
    for (int i = 0; i < nvars(); ++i) powers[i].push_back(constant(tv, 1));
    Poly r(tv);
    for (auto& [e, c] : terms_) {
        Poly t = constant(tv, c);
        for (int i = 0; i < nvars(); ++i) {
            while (static_cast<int>(powers[i].size()) <= e[i]) powers[i].push_back(powers[i].back() * images[i]);
            if (e[i] > 0) t = t * powers[i][e[i]];
        }
        r += t;
    }
    return r;
}

Poly Poly::translate(std::span<const GaussianRational> shift) const {
    std::vector<Poly> images;
    for (int i = 0; i < nvars(); ++i) {
        Poly im = variable(vars_, i);
        if (i < static_cast<int>(shift.size()) && !shift[i].is_zero()) im += constant(vars_, shift[i]);
        images.push_back(std::move(im));
    }
    return compose(images);
}

Poly Poly::restrict_to(int var, const GaussianRational& value) const {
    Poly r(vars_);
    std::vector<GaussianRational> pw{1};
    for (auto& [e, c] : terms_) {
        while (static_cast<int>(pw.size()) <= e[var]) pw.push_back(pw.back() * value);
        Exponent f = e;
        f[var] = 0;
        r.add_term(f, c * pw[e[var]]);
    }
    return r;
}

Poly Poly::shift(const Exponent& s) const {
    Poly r(vars_);
    for (auto& [e, c] : terms_) r.terms_.emplace(Exponent{e[0] + s[0], e[1] + s[1], e[2] + s[2]}, c);
    return r;
}

Poly Poly::unshift(const Exponent& s) const {
    Poly r(vars_);
    for (auto& [e, c] : terms_) {
        Exponent f{e[0] - s[0], e[1] - s[1], e[2] - s[2]};
        if (f[0] < 0 || f[1] < 0 || f[2] < 0) throw StructuralError("monomial does not divide polynomial");
        r.terms_.emplace(f, c);
    }
    return r;
}

Poly Poly::jet(int n) const {
    Poly r(vars_);
    for (auto& [e, c] : terms_)
        if (total_degree(e) <= n) r.terms_.emplace(e, c);
    return r;
}

Poly Poly::homogeneous_component(int d) const {
    Poly r(vars_);
    for (auto& [e, c] : terms_)
        if (total_degree(e) == d) r.terms_.emplace(e, c);
    return r;
}

bool Poly::is_homogeneous() const { return degree() == order(); }

Exponent Poly::monomial_content() const {
    if (terms_.empty()) return {0, 0, 0};
    Exponent m{std::numeric_limits<int>::max(), std::numeric_limits<int>::max(),
               std::numeric_limits<int>::max()};
    for (auto& [e, c] : terms_)
        for (int i = 0; i < kMaxVars; ++i) m[i] = std::min(m[i], e[i]);
    return m;
}

namespace {

template <class T>
std::complex<T> eval_impl(const Poly::TermMap& terms, int nvars, std::span<const std::complex<T>> pt) {
    if (static_cast<int>(pt.size()) < nvars) throw StructuralError("evaluation point has too few coordinates");
    std::complex<T> sum{0, 0};
    for (auto& [e, c] : terms) {
        std::complex<T> t(static_cast<T>(c.re().get_d()), static_cast<T>(c.im().get_d()));
        if constexpr (sizeof(T) > sizeof(double)) t = c.to_complex_ld();
        for (int i = 0; i < nvars; ++i)
            for (int k = 0; k < e[i]; ++k) t *= pt[i];
        sum += t;
    }
    return sum;
}

} // namespace

std::complex<double> Poly::eval(std::span<const std::complex<double>> point) const {
    std::vector<std::complex<long double>> p(point.begin(), point.end());
    auto v = eval_impl<long double>(terms_, nvars(), std::span<const std::complex<long double>>(p));
    return {static_cast<double>(v.real()), static_cast<double>(v.imag())};
}

std::complex<long double> Poly::eval(std::span<const std::complex<long double>> point) const {
    return eval_impl<long double>(terms_, nvars(), point);
}

GaussianRational Poly::eval_exact(std::span<const GaussianRational> point) const {
    if (static_cast<int>(point.size()) < nvars()) throw StructuralError("evaluation point has too few coordinates");
    GaussianRational sum;
    for (auto& [e, c] : terms_) {
        GaussianRational t = c;
        for (int i = 0; i < nvars(); ++i)
            for (int k = 0; k < e[i]; ++k) t *= point[i];
        sum += t;
    }
    return sum;
}

std::string monomial_str(const VarList& vars, const Exponent& e) {
    std::string s;
    for (int i = 0; i < static_cast<int>(vars.size()); ++i) {
        if (e[i] == 0) continue;
        if (!s.empty()) s += "*";
        s += vars[i];
        if (e[i] != 1) s += "^" + std::to_string(e[i]);
    }
    return s;
}

std::string Poly::str() const {
    if (terms_.empty()) return "0";
    std::string out;
    bool first = true;
    for (auto& [e, c] : terms_) {
        std::string mono = monomial_str(vars_, e);
        bool negative = c.is_real() ? sgn(c.re()) < 0 : (sgn(c.re()) == 0 && sgn(c.im()) < 0);
        GaussianRational mag = negative ? -c : c;
        std::string coeff;
        if (mono.empty())
            coeff = mag.str();
        else if (!mag.is_one())
            coeff = mag.str() + "*";
        if (first)
            out += negative ? "-" : "";
        else
            out += negative ? " - " : " + ";
        out += coeff + mono;
        first = false;
    }
    return out;
}

MonomialContent monomial_content(std::span<const Poly> components) {
    MonomialContent mc;
    bool any = false;
    Exponent m{std::numeric_limits<int>::max(), std::numeric_limits<int>::max(),
               std::numeric_limits<int>::max()};
    for (auto& p : components) {
        if (p.is_zero()) continue;
        any = true;
        Exponent c = p.monomial_content();
        for (int i = 0; i < kMaxVars; ++i) m[i] = std::min(m[i], c[i]);
    }
    if (!any) throw DegenerateInputError("monomial content of an all-zero tuple");
    mc.content = m;
    for (auto& p : components) mc.reduced.push_back(p.unshift(m));
    return mc;
}

} // namespace folia
