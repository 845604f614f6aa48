#pragma once

#include <gmpxx.h>

#include <span>
#include <string>
#include <string_view>

#include "qortho/error.hpp"

namespace qortho {

// Exact rational, or Gaussian rational re + im*i.
// The kind is sticky: arithmetic with a Gaussian operand yields a Gaussian,
// but equality looks only at the values.
class Scalar {
public:
    enum class Kind { Rational, Gaussian };

    Scalar() = default;
    Scalar(long v) : re_(v) {}
    Scalar(int v) : re_(v) {}
    Scalar(long num, long den);
    Scalar(mpq_class re) : re_(std::move(re)) { re_.canonicalize(); }
    Scalar(mpq_class re, mpq_class im);

    static Scalar gaussian(mpq_class re, mpq_class im) { return Scalar(std::move(re), std::move(im)); }
    static Scalar i() { return Scalar(mpq_class(0), mpq_class(1)); }
    static Scalar parse(std::string_view text);

    Kind kind() const { return gaussian_ ? Kind::Gaussian : Kind::Rational; }
    bool is_real() const { return sgn(im_) == 0; }
    bool is_zero() const { return sgn(re_) == 0 && sgn(im_) == 0; }
    const mpq_class& re() const { return re_; }
    const mpq_class& im() const { return im_; }

    // Real part, throwing NotReal when the imaginary part is nonzero.
    const mpq_class& real() const;
    int sign() const;

    Scalar conj() const;
    Scalar inverse() const;
    Scalar as_rational() const; // drops the Gaussian tag when im == 0

    Scalar& operator+=(const Scalar& o);
    Scalar& operator-=(const Scalar& o);
    Scalar& operator*=(const Scalar& o);
    Scalar& operator/=(const Scalar& o);
    Scalar operator-() const;

    friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
    friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
    friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
    friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }

    friend bool operator==(const Scalar& a, const Scalar& b) { return a.re_ == b.re_ && a.im_ == b.im_; }
    friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }
    // Ordering is defined on real values only.
    friend bool operator<(const Scalar& a, const Scalar& b) { return a.real() < b.real(); }
    friend bool operator>(const Scalar& a, const Scalar& b) { return b < a; }
    friend bool operator<=(const Scalar& a, const Scalar& b) { return !(b < a); }
    friend bool operator>=(const Scalar& a, const Scalar& b) { return !(a < b); }

    Scalar pow(long e) const;
    std::string str() const;
    double approx() const { return re_.get_d(); }

private:
    mpq_class re_{0};
    mpq_class im_{0};
    bool gaussian_ = false;
};

std::string to_string(const mpq_class& v);
mpq_class parse_rational(std::string_view text);

class QBase {
public:
    explicit QBase(const Scalar& q);
    explicit QBase(const mpq_class& q) : QBase(Scalar(q)) {}
    const Scalar& value() const { return q_; }
    Scalar pow(long e) const { return q_.pow(e); }

private:
    Scalar q_;
};

Scalar pochhammer(const Scalar& a, unsigned m);
Scalar qpochhammer(const Scalar& a, const QBase& q, unsigned m);
Scalar qpochhammer_multi(std::span<const Scalar> as, const QBase& q, unsigned m);

} // namespace qortho
