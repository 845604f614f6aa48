#include "qortho/scalar.hpp"

#include <cctype>

namespace qortho {

const char* to_string(ErrorKind k)
{
    switch (k) {
    case ErrorKind::Parse: return "parse";
    case ErrorKind::LatticeMismatch: return "lattice-mismatch";
    case ErrorKind::ZeroPolynomial: return "zero-polynomial";
    case ErrorKind::BasisGap: return "basis-gap";
    case ErrorKind::NotOrthogonalSequence: return "not-orthogonal-sequence";
    case ErrorKind::NotReal: return "not-real";
    case ErrorKind::Degenerate: return "degenerate";
    case ErrorKind::InvalidSpec: return "invalid-spec";
    case ErrorKind::NotOrthogonal: return "not-orthogonal";
    case ErrorKind::WeightUndefined: return "weight-undefined";
    case ErrorKind::NotPositiveDefinite: return "not-positive-definite";
    case ErrorKind::Domain: return "domain";
    case ErrorKind::Io: return "io";
    }
    return "unknown";
}

Scalar::Scalar(long num, long den)
{
    if (den == 0)
        throw Error(ErrorKind::Domain, "zero denominator");
    re_ = mpq_class(num, den);
    re_.canonicalize();
}

Scalar::Scalar(mpq_class re, mpq_class im) : re_(std::move(re)), im_(std::move(im)), gaussian_(true)
{
    re_.canonicalize();
    im_.canonicalize();
}

const mpq_class& Scalar::real() const
{
    if (sgn(im_) != 0)
        throw Error(ErrorKind::NotReal, "expected a real value, got " + str());
    return re_;
}

int Scalar::sign() const { return sgn(real()); }

Scalar Scalar::conj() const
{
    Scalar r = *this;
    r.im_ = -r.im_;
    return r;
}

Scalar Scalar::inverse() const
{
    if (is_zero())
        throw Error(ErrorKind::Domain, "division by zero");
    if (!gaussian_)
        return Scalar(mpq_class(1 / re_));
    mpq_class n = re_ * re_ + im_ * im_;
    return Scalar(mpq_class(re_ / n), mpq_class(-im_ / n));
}

Scalar Scalar::as_rational() const { return Scalar(real()); }

Scalar& Scalar::operator+=(const Scalar& o)
{
    re_ += o.re_;
    im_ += o.im_;
    gaussian_ = gaussian_ || o.gaussian_;
    return *this;
}

Scalar& Scalar::operator-=(const Scalar& o)
{
    re_ -= o.re_;
    im_ -= o.im_;
    gaussian_ = gaussian_ || o.gaussian_;
    return *this;
}

Scalar& Scalar::operator*=(const Scalar& o)
{
    if (!gaussian_ && !o.gaussian_) {
        re_ *= o.re_;
        return *this;
    }
    mpq_class r = re_ * o.re_ - im_ * o.im_;
    mpq_class i = re_ * o.im_ + im_ * o.re_;
    re_ = std::move(r);
    im_ = std::move(i);
    gaussian_ = true;
    return *this;
}

Scalar& Scalar::operator/=(const Scalar& o)
{
    if (o.is_zero())
        throw Error(ErrorKind::Domain, "division by zero");
    if (!gaussian_ && !o.gaussian_) {
        re_ /= o.re_;
        return *this;
    }
    return *this *= o.inverse();
}

Scalar Scalar::operator-() const
{
    Scalar r = *this;
    r.re_ = -r.re_;
    r.im_ = -r.im_;
    return r;
}

Scalar Scalar::pow(long e) const
{
    if (e < 0)
        return inverse().pow(-e);
    Scalar base = *this, acc(1);
    if (gaussian_)
        acc = Scalar(mpq_class(1), mpq_class(0));
    while (e > 0) {
        if (e & 1)
            acc *= base;
        e >>= 1;
        if (e)
            base *= base;
    }
    return acc;
}

std::string to_string(const mpq_class& v)
{
    // mpq get_str already prints "p" when the denominator is one
    return v.get_str();
}

std::string Scalar::str() const
{
    if (!gaussian_)
        return to_string(re_);
    std::string s = to_string(re_);
    if (sgn(im_) < 0)
        s += "-" + to_string(mpq_class(-im_));
    else
        s += "+" + to_string(im_);
    return s + "*i";
}

static std::string_view trim(std::string_view s)
{
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front())))
        s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back())))
        s.remove_suffix(1);
    return s;
}

mpq_class parse_rational(std::string_view text)
{
    std::string_view t = trim(text);
    auto bad = [&] { return Error(ErrorKind::Parse, "bad rational '" + std::string(text) + "'"); };
    if (t.empty())
        throw bad();
    size_t slash = t.find('/');
    auto digits_ok = [](std::string_view d, bool sign_ok) {
        if (sign_ok && !d.empty() && (d[0] == '-' || d[0] == '+'))
            d.remove_prefix(1);
        if (d.empty())
            return false;
        for (char c : d)
            if (!std::isdigit(static_cast<unsigned char>(c)))
                return false;
        return true;
    };
    std::string_view num = t.substr(0, slash);
    std::string_view den = slash == std::string_view::npos ? std::string_view("1") : t.substr(slash + 1);
    if (!digits_ok(num, true) || !digits_ok(den, false))
        throw bad();
    std::string n(num);
    if (n[0] == '+')
        n.erase(0, 1);
    mpz_class zn(n, 10), zd(std::string(den), 10);
    if (zd == 0)
        throw Error(ErrorKind::Parse, "zero denominator in '" + std::string(text) + "'");
    mpq_class r(zn, zd);
    r.canonicalize();
    return r;
}

Scalar Scalar::parse(std::string_view text)
{
    std::string_view t = trim(text);
    if (t.size() < 2 || t.substr(t.size() - 2) != "*i")
        return Scalar(parse_rational(t));
    std::string_view body = t.substr(0, t.size() - 2);
    // split at the last +/- that is not a leading sign
    size_t cut = std::string_view::npos;
    for (size_t k = body.size(); k-- > 1;) {
        if (body[k] == '+' || body[k] == '-') {
            cut = k;
            break;
        }
    }
    if (cut == std::string_view::npos)
        return Scalar(mpq_class(0), parse_rational(body));
    mpq_class re = parse_rational(body.substr(0, cut));
    std::string_view imtext = body.substr(cut);
    // tolerate "re+-im*i"
    if (imtext.size() > 1 && imtext[0] == '+' && imtext[1] == '-')
        imtext.remove_prefix(1);
    return Scalar(re, parse_rational(imtext));
}

QBase::QBase(const Scalar& q) : q_(q)
{
    if (!q.is_real() || !(sgn(q.re()) > 0 && q.re() < 1))
        throw Error(ErrorKind::InvalidSpec, "q must satisfy 0<q<1, got " + q.str());
}

Scalar pochhammer(const Scalar& a, unsigned m)
{
    Scalar r(1);
    for (unsigned j = 0; j < m; ++j)
        r *= a + Scalar(static_cast<long>(j));
    return r;
}

Scalar qpochhammer(const Scalar& a, const QBase& q, unsigned m)
{
    Scalar r(1), qj(1);
    for (unsigned j = 0; j < m; ++j) {
        r *= Scalar(1) - a * qj;
        qj *= q.value();
    }
    return r;
}

Scalar qpochhammer_multi(std::span<const Scalar> as, const QBase& q, unsigned m)
{
    Scalar r(1);
    for (const Scalar& a : as)
        r *= qpochhammer(a, q, m);
    return r;
}

} // namespace qortho
