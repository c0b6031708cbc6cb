#pragma once

#include <complex>
#include <map>
#include <span>
#include <string>

#include "folia/poly.hpp"

namespace folia {

/// Laurent monomial image used by substitutions on chart functions;
/// exponents may be negative.
using SignedExponent = std::array<int, kMaxVars>;

/// numerator * prod x_i^{mono_i}. The numerator always carries trivial
/// monomial content, so the exponent vector is the exact divisor order of
/// the function along every coordinate hyperplane.
class ChartFunction {
public:
    ChartFunction() = default;
    explicit ChartFunction(const Poly& p);
    ChartFunction(const Poly& numerator, const SignedExponent& mono);

    static ChartFunction zero(const VarList& vars) { return ChartFunction(Poly(vars)); }
    static ChartFunction constant(const VarList& vars, const GaussianRational& c) {
        return ChartFunction(Poly::constant(vars, c));
    }
    static ChartFunction monomial(const VarList& vars, const SignedExponent& e, const GaussianRational& c = 1);
    /// Build from terms with signed exponents.
    static ChartFunction from_laurent_terms(const VarList& vars,
                                            const std::map<SignedExponent, GaussianRational>& terms);

    const Poly& numerator() const { return num_; }
    const SignedExponent& exponents() const { return mono_; }
    const VarList& vars() const { return num_.vars(); }
    int nvars() const { return num_.nvars(); }

    bool is_zero() const { return num_.is_zero(); }
    bool is_holomorphic() const;
    /// Polynomial form; throws PoleError when a negative exponent is present.
    Poly to_poly() const;

    ChartFunction& operator+=(const ChartFunction& o);
    ChartFunction& operator-=(const ChartFunction& o);
    ChartFunction& operator*=(const ChartFunction& o);
    ChartFunction& operator*=(const GaussianRational& c);

    friend ChartFunction operator+(ChartFunction a, const ChartFunction& b) { return a += b; }
    friend ChartFunction operator-(ChartFunction a, const ChartFunction& b) { return a -= b; }
    friend ChartFunction operator*(ChartFunction a, const ChartFunction& b) { return a *= b; }
    friend ChartFunction operator*(ChartFunction a, const GaussianRational& c) { return a *= c; }
    friend ChartFunction operator*(const GaussianRational& c, ChartFunction a) { return a *= c; }
    ChartFunction operator-() const;

    friend bool operator==(const ChartFunction& a, const ChartFunction& b) {
        return a.mono_ == b.mono_ && a.num_ == b.num_;
    }
    friend bool operator!=(const ChartFunction& a, const ChartFunction& b) { return !(a == b); }

    /// Multiply by prod x_i^{e_i} (signed).
    ChartFunction shifted(const SignedExponent& e) const;
    ChartFunction derivative(int var) const;

    struct LaurentImage {
        GaussianRational coeff{1};
        SignedExponent exps{0, 0, 0};
    };
    ChartFunction substitute(const VarList& target_vars, std::span<const LaurentImage> images) const;

    std::complex<double> eval_complex(std::span<const std::complex<double>> point) const;
    std::complex<long double> eval_complex(std::span<const std::complex<long double>> point) const;

    /// `p` when holomorphic, otherwise `(p)*x^-1*y^2`-style text.
    std::string str() const;

private:
    void normalize();

    Poly num_;
    SignedExponent mono_{0, 0, 0};
};

} // namespace folia
