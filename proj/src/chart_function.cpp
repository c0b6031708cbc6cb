#include "folia/chart_function.hpp"

#include <algorithm>

#include "folia/errors.hpp"

namespace folia {

ChartFunction::ChartFunction(const Poly& p) : num_(p) { normalize(); }

ChartFunction::ChartFunction(const Poly& numerator, const SignedExponent& mono) : num_(numerator), mono_(mono) {
    for (int i = num_.nvars(); i < kMaxVars; ++i)
        if (mono_[i] != 0) throw StructuralError("exponent on an undeclared variable");
    normalize();
}

ChartFunction ChartFunction::monomial(const VarList& vars, const SignedExponent& e, const GaussianRational& c) {
    return ChartFunction(Poly::constant(vars, c), e);
}

ChartFunction ChartFunction::from_laurent_terms(const VarList& vars,
                                                const std::map<SignedExponent, GaussianRational>& terms) {
    SignedExponent low{0, 0, 0};
    bool first = true;
    for (auto& [e, c] : terms) {
        if (c.is_zero()) continue;
        for (int i = 0; i < kMaxVars; ++i) low[i] = first ? e[i] : std::min(low[i], e[i]);
        first = false;
    }
    Poly::TermMap shifted;
    for (auto& [e, c] : terms) {
        if (c.is_zero()) continue;
        Exponent f{e[0] - low[0], e[1] - low[1], e[2] - low[2]};
        shifted[f] += c;
    }
    return ChartFunction(Poly(vars, std::move(shifted)), low);
}

void ChartFunction::normalize() {
    if (num_.is_zero()) {
        mono_ = {0, 0, 0};
        return;
    }
    Exponent c = num_.monomial_content();
    if (c != Exponent{0, 0, 0}) {
        num_ = num_.unshift(c);
        for (int i = 0; i < kMaxVars; ++i) mono_[i] += c[i];
    }
}

bool ChartFunction::is_holomorphic() const {
    return std::all_of(mono_.begin(), mono_.end(), [](int e) { return e >= 0; });
}

Poly ChartFunction::to_poly() const {
    if (!is_holomorphic()) throw PoleError("meromorphic chart function has no polynomial form");
    return num_.shift({mono_[0], mono_[1], mono_[2]});
}

ChartFunction& ChartFunction::operator+=(const ChartFunction& o) {
    if (vars() != o.vars()) throw StructuralError("chart functions over different variable lists");
    if (o.is_zero()) return *this;
    if (is_zero()) return *this = o;
    SignedExponent m;
    for (int i = 0; i < kMaxVars; ++i) m[i] = std::min(mono_[i], o.mono_[i]);
    Poly a = num_.shift({mono_[0] - m[0], mono_[1] - m[1], mono_[2] - m[2]});
    Poly b = o.num_.shift({o.mono_[0] - m[0], o.mono_[1] - m[1], o.mono_[2] - m[2]});
    num_ = a + b;
    mono_ = m;
    normalize();
    return *this;
}

ChartFunction& ChartFunction::operator-=(const ChartFunction& o) { return *this += -o; }

ChartFunction& ChartFunction::operator*=(const ChartFunction& o) {
    if (vars() != o.vars()) throw StructuralError("chart functions over different variable lists");
    num_ = num_ * o.num_;
    for (int i = 0; i < kMaxVars; ++i) mono_[i] += o.mono_[i];
    normalize();
    return *this;
}

ChartFunction& ChartFunction::operator*=(const GaussianRational& c) {
    num_ *= c;
    normalize();
    return *this;
}

ChartFunction ChartFunction::operator-() const {
    ChartFunction r = *this;
    r.num_ = -r.num_;
    return r;
}

ChartFunction ChartFunction::shifted(const SignedExponent& e) const {
    if (is_zero()) return *this;
    ChartFunction r = *this;
    for (int i = 0; i < kMaxVars; ++i) r.mono_[i] += e[i];
    return r;
}

ChartFunction ChartFunction::derivative(int var) const {
    if (var < 0 || var >= nvars()) throw StructuralError("derivative with respect to an unknown variable");
    if (is_zero()) return *this;
    // d(x^e P) = x^(e - e_var) * (e_var P + x_var dP).
    Exponent unit{0, 0, 0};
    unit[var] = 1;
    Poly inner = num_ * GaussianRational(mono_[var]) + num_.derivative(var).shift(unit);
    SignedExponent m = mono_;
    m[var] -= 1;
    return ChartFunction(inner, m);
}

ChartFunction ChartFunction::substitute(const VarList& target_vars, std::span<const LaurentImage> images) const {
    if (static_cast<int>(images.size()) != nvars())
        throw StructuralError("substitution must assign every variable");
    std::map<SignedExponent, GaussianRational> out;
    auto image_of = [&](const Exponent& e, GaussianRational coeff, SignedExponent& acc) {
        for (int i = 0; i < nvars(); ++i) {
            for (int j = 0; j < kMaxVars; ++j) acc[j] += images[i].exps[j] * e[i];
            int k = e[i] < 0 ? -e[i] : e[i];
            GaussianRational f = e[i] < 0 ? images[i].coeff.inverse() : images[i].coeff;
            for (int t = 0; t < k; ++t) coeff *= f;
        }
        return coeff;
    };
    SignedExponent base{0, 0, 0};
    Exponent signed_mono{mono_[0], mono_[1], mono_[2]};
    GaussianRational base_coeff = image_of(signed_mono, 1, base);
    for (auto& [e, c] : num_.terms()) {
        SignedExponent acc = base;
        GaussianRational coeff = image_of(e, c * base_coeff, acc);
        auto [it, inserted] = out.try_emplace(acc, coeff);
        if (!inserted) it->second += coeff;
    }
    return from_laurent_terms(target_vars, out);
}

namespace {

template <class T>
std::complex<T> monomial_factor(const SignedExponent& mono, int n, std::span<const std::complex<T>> point) {
    std::complex<T> f{1, 0};
    for (int i = 0; i < n; ++i) {
        if (mono[i] < 0 && point[i] == std::complex<T>{0, 0})
            throw PoleError("evaluation at a pole of a meromorphic chart function");
        for (int k = 0; k < std::abs(mono[i]); ++k) f = mono[i] > 0 ? f * point[i] : f / point[i];
    }
    return f;
}

} // namespace

std::complex<double> ChartFunction::eval_complex(std::span<const std::complex<double>> point) const {
    std::vector<std::complex<long double>> p(point.begin(), point.end());
    auto v = eval_complex(std::span<const std::complex<long double>>(p));
    return {static_cast<double>(v.real()), static_cast<double>(v.imag())};
}

std::complex<long double> ChartFunction::eval_complex(std::span<const std::complex<long double>> point) const {
    if (static_cast<int>(point.size()) < nvars()) throw StructuralError("evaluation point has too few coordinates");
    auto f = monomial_factor<long double>(mono_, nvars(), point);
    if (is_zero()) return {0, 0};
    return num_.eval(point) * f;
}

std::string ChartFunction::str() const {
    if (is_holomorphic()) return to_poly().str();
    std::string s = "(" + num_.str() + ")";
    for (int i = 0; i < nvars(); ++i)
        if (mono_[i] != 0) s += "*" + vars()[i] + "^" + std::to_string(mono_[i]);
    return s;
}

} // namespace folia
