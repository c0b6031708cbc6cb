#pragma once

#include <complex>
#include <string>
#include <utility>
#include <vector>

#include "folia/poly.hpp"

namespace folia {

/// Dense univariate polynomial over Q(i), coefficients stored low degree first.
class UPoly {
public:
    UPoly() = default;
    explicit UPoly(std::vector<GaussianRational> coeffs);

    static UPoly constant(const GaussianRational& c) { return UPoly({c}); }
    static UPoly x() { return UPoly({0, 1}); }
    /// `p` must only involve variable `var`.
    static UPoly from_poly(const Poly& p, int var);
    Poly to_poly(const VarList& vars, int var) const;

    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    const std::vector<GaussianRational>& coeffs() const { return c_; }
    GaussianRational coeff(int k) const { return k < static_cast<int>(c_.size()) ? c_[k] : GaussianRational{}; }
    GaussianRational leading() const { return c_.empty() ? GaussianRational{} : c_.back(); }

    UPoly& operator+=(const UPoly& o);
    UPoly& operator-=(const UPoly& o);
    friend UPoly operator+(UPoly a, const UPoly& b) { return a += b; }
    friend UPoly operator-(UPoly a, const UPoly& b) { return a -= b; }
    friend UPoly operator*(const UPoly& a, const UPoly& b);
    friend UPoly operator*(UPoly a, const GaussianRational& c);
    UPoly operator-() const;
    friend bool operator==(const UPoly& a, const UPoly& b) { return a.c_ == b.c_; }
    friend bool operator!=(const UPoly& a, const UPoly& b) { return !(a == b); }

    UPoly derivative() const;
    UPoly monic() const;
    GaussianRational eval(const GaussianRational& x) const;
    std::complex<long double> eval(std::complex<long double> x) const;

    std::string str(const std::string& var = "t") const;

private:
    void trim();
    std::vector<GaussianRational> c_;
};

/// Quotient and remainder; throws std::domain_error on division by zero.
std::pair<UPoly, UPoly> divmod(const UPoly& a, const UPoly& b);
/// Exact quotient; throws StructuralError when b does not divide a.
UPoly exact_div(const UPoly& a, const UPoly& b);
/// Monic gcd (zero only when both inputs are zero).
UPoly gcd(const UPoly& a, const UPoly& b);

struct SquarefreeFactor {
    UPoly factor;  // monic, squarefree
    int multiplicity;
};
/// Yun's algorithm; constant factors are dropped.
std::vector<SquarefreeFactor> squarefree_decomposition(const UPoly& p);

/// Axis-aligned complex box [lo_re, hi_re] x [lo_im, hi_im] with outward-rounded ends.
struct ComplexBox {
    double lo_re = 0, hi_re = 0, lo_im = 0, hi_im = 0;
    double width() const { return std::max(hi_re - lo_re, hi_im - lo_im); }
    bool contains(std::complex<double> z) const {
        return lo_re <= z.real() && z.real() <= hi_re && lo_im <= z.imag() && z.imag() <= hi_im;
    }
    bool overlaps(const ComplexBox& o) const {
        return !(hi_re < o.lo_re || o.hi_re < lo_re || hi_im < o.lo_im || o.hi_im < lo_im);
    }
};

struct Root {
    bool exact = false;
    GaussianRational value;  // meaningful when exact
    ComplexBox box;          // meaningful when !exact
    std::complex<double> approx;
    int multiplicity = 1;
    bool clustered = false;
};

/// All roots with multiplicities: exact Q(i) roots where they exist, the rest
/// as certified inclusion boxes of width <= 1e-10. Exact roots come first in
/// canonical order, then boxes ordered by (re, im) of their centres.
std::vector<Root> solve_roots(const UPoly& p);

/// Exact Q(i) roots only, without multiplicity, canonical order.
std::vector<GaussianRational> exact_roots(const UPoly& p);

/// Resultant of two polynomials with UPoly coefficients (leading entry last),
/// i.e. of bivariate polynomials viewed in the outer variable.
UPoly resultant(const std::vector<UPoly>& a, const std::vector<UPoly>& b);

} // namespace folia
