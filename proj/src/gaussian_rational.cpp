#include "folia/gaussian_rational.hpp"

#include <cmath>
#include <stdexcept>

namespace folia {

GaussianRational GaussianRational::inverse() const {
    if (is_zero()) throw std::domain_error("division by zero in Q(i)");
    mpq_class n = norm();
    return {re_ / n, -im_ / n};
}

GaussianRational& GaussianRational::operator+=(const GaussianRational& o) {
    re_ += o.re_;
    im_ += o.im_;
    return *this;
}

GaussianRational& GaussianRational::operator-=(const GaussianRational& o) {
    re_ -= o.re_;
    im_ -= o.im_;
    return *this;
}

GaussianRational& GaussianRational::operator*=(const GaussianRational& o) {
    if (sgn(im_) == 0 && sgn(o.im_) == 0) {
        re_ *= o.re_;
        return *this;
    }
    mpq_class r = re_ * o.re_ - im_ * o.im_;
    mpq_class i = re_ * o.im_ + im_ * o.re_;
    re_ = std::move(r);
    im_ = std::move(i);
    return *this;
}

GaussianRational& GaussianRational::operator/=(const GaussianRational& o) {
    if (o.is_zero()) throw std::domain_error("division by zero in Q(i)");
    if (sgn(o.im_) == 0) {
        re_ /= o.re_;
        im_ /= o.re_;
        return *this;
    }
    return *this *= o.inverse();
}

std::complex<long double> GaussianRational::to_complex_ld() const {
    // Head/tail split through a 128-bit mpf keeps more than 64 mantissa bits.
    auto part = [](const mpq_class& q) {
        mpf_class f(q, 128);
        double head = f.get_d();
        mpf_class tail = f - head;
        return static_cast<long double>(head) + static_cast<long double>(tail.get_d());
    };
    return {part(re_), part(im_)};
}

namespace {

std::string rational_str(const mpq_class& q) { return q.get_str(); }

} // namespace

std::string GaussianRational::str() const {
    if (sgn(im_) == 0) return rational_str(re_);
    std::string imag;
    mpq_class a = abs(im_);
    if (a == 1)
        imag = "i";
    else if (a.get_den() == 1)
        imag = a.get_str() + "i";
    else
        imag = a.get_str() + "*i";
    if (sgn(re_) == 0) return (sgn(im_) < 0 ? "-" : "") + imag;
    return "(" + rational_str(re_) + (sgn(im_) < 0 ? "-" : "+") + imag + ")";
}

mpq_class exact_rational(double x) {
    if (!std::isfinite(x)) throw std::domain_error("non-finite value has no rational form");
    mpq_class q(x);
    q.canonicalize();
    return q;
}

} // namespace folia
