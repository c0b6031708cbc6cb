#pragma once

#include <array>
#include <complex>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "folia/gaussian_rational.hpp"

namespace folia {

inline constexpr int kMaxVars = 3;

using Exponent = std::array<int, kMaxVars>;
using VarList = std::vector<std::string>;

inline int total_degree(const Exponent& e) { return e[0] + e[1] + e[2]; }

/// Canonical term order: graded lexicographic, highest term first.
struct GradedLexGreater {
    bool operator()(const Exponent& a, const Exponent& b) const {
        int da = total_degree(a), db = total_degree(b);
        if (da != db) return da > db;
        return a > b;
    }
};

/// One target monomial of a monomial substitution: coeff * prod vars^exps.
struct MonomialImage {
    GaussianRational coeff{1};
    Exponent exps{0, 0, 0};
};

/// Multivariate polynomial over Q(i) in at most three named variables.
class Poly {
public:
    using TermMap = std::map<Exponent, GaussianRational, GradedLexGreater>;

    Poly() = default;
    explicit Poly(VarList vars);
    Poly(VarList vars, TermMap terms);

    static Poly constant(const VarList& vars, const GaussianRational& c);
    static Poly variable(const VarList& vars, int index);
    static Poly variable(const VarList& vars, const std::string& name);
    static Poly monomial(const VarList& vars, const Exponent& e, const GaussianRational& c = 1);

    const VarList& vars() const { return vars_; }
    int nvars() const { return static_cast<int>(vars_.size()); }
    int var_index(const std::string& name) const;
    const TermMap& terms() const { return terms_; }

    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const;
    /// -1 for the zero polynomial.
    int degree() const;
    /// Lowest total degree present; -1 for the zero polynomial.
    int order() const;
    int degree_in(int var) const;
    GaussianRational coeff(const Exponent& e) const;
    GaussianRational constant_term() const { return coeff({0, 0, 0}); }

    Poly& operator+=(const Poly& o);
    Poly& operator-=(const Poly& o);
    Poly& operator*=(const Poly& o);
    Poly& operator*=(const GaussianRational& c);

    friend Poly operator+(Poly a, const Poly& b) { return a += b; }
    friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
    friend Poly operator*(const Poly& a, const Poly& b);
    friend Poly operator*(Poly a, const GaussianRational& c) { return a *= c; }
    friend Poly operator*(const GaussianRational& c, Poly a) { return a *= c; }
    Poly operator-() const;

    friend bool operator==(const Poly& a, const Poly& b) {
        return a.vars_ == b.vars_ && a.terms_ == b.terms_;
    }
    friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

    Poly pow(int k) const;
    Poly derivative(int var) const;
    Poly derivative(const std::string& name) const { return derivative(var_index(name)); }

    /// Replace every variable by a monomial in `target_vars`. `images[i]`
    /// is the image of variable i.
    Poly substitute_monomials(const VarList& target_vars, std::span<const MonomialImage> images) const;
    /// General composition: variable i -> images[i] (all over one variable list).
    Poly compose(std::span<const Poly> images) const;
    /// x_i -> x_i + shift[i].
    Poly translate(std::span<const GaussianRational> shift) const;
    /// Set variable `var` to the constant `value` (the variable stays in the list).
    Poly restrict_to(int var, const GaussianRational& value) const;
    /// Multiply by prod vars^e (e >= 0).
    Poly shift(const Exponent& e) const;
    /// Divide by prod vars^e; every term must be divisible.
    Poly unshift(const Exponent& e) const;

    Poly jet(int n) const;
    Poly homogeneous_component(int d) const;
    bool is_homogeneous() const;

    /// Greatest monomial dividing every term (zero poly gives {0,0,0}).
    Exponent monomial_content() const;

    std::complex<double> eval(std::span<const std::complex<double>> point) const;
    std::complex<long double> eval(std::span<const std::complex<long double>> point) const;
    GaussianRational eval_exact(std::span<const GaussianRational> point) const;

    /// Canonical text form, e.g. `(1+2i)*x^2*y - 3/2*z + 1`.
    std::string str() const;

private:
    void check_same_vars(const Poly& o) const;
    void add_term(const Exponent& e, const GaussianRational& c);

    VarList vars_;
    TermMap terms_;
};

struct MonomialContent {
    Exponent content{0, 0, 0};
    std::vector<Poly> reduced;
};

/// Greatest common monomial divisor of the nonzero components, and the
/// components divided by it. Throws DegenerateInputError on all-zero input.
MonomialContent monomial_content(std::span<const Poly> components);

std::string monomial_str(const VarList& vars, const Exponent& e);

} // namespace folia
