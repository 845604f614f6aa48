#include "qortho/poly.hpp"

#include <sstream>

namespace qortho {

const char* to_string(Lattice l)
{
    switch (l) {
    case Lattice::PlainX: return "x";
    case Lattice::QMinusX: return "q^-x";
    case Lattice::Mu: return "mu";
    case Lattice::Lambda: return "lambda";
    case Lattice::XSquared: return "x^2";
    case Lattice::CosTheta: return "cos-theta";
    }
    return "?";
}

Poly::Poly(std::vector<Scalar> coeffs, Lattice lat) : c_(std::move(coeffs)), lat_(lat) { trim(); }

Poly Poly::constant(const Scalar& c, Lattice lat) { return Poly({c}, lat); }

Poly Poly::monomial(unsigned deg, const Scalar& c, Lattice lat)
{
    std::vector<Scalar> v(deg + 1);
    v[deg] = c;
    return Poly(std::move(v), lat);
}

Poly Poly::linear(const Scalar& c0, const Scalar& c1, Lattice lat) { return Poly({c0, c1}, lat); }

Poly Poly::parse(std::string_view text, Lattice lat)
{
    std::vector<Scalar> v;
    size_t start = 0;
    if (text.find_first_not_of(" \t") == std::string_view::npos)
        return Poly({}, lat);
    while (start <= text.size()) {
        size_t comma = text.find(',', start);
        std::string_view tok = text.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start);
        v.push_back(Scalar::parse(tok));
        if (comma == std::string_view::npos)
            break;
        start = comma + 1;
    }
    return Poly(std::move(v), lat);
}

void Poly::trim()
{
    while (!c_.empty() && c_.back().is_zero())
        c_.pop_back();
}

void Poly::check_lattice(const Poly& o) const
{
    if (lat_ != o.lat_)
        throw Error(ErrorKind::LatticeMismatch,
                    std::string("lattice mismatch: ") + to_string(lat_) + " vs " + to_string(o.lat_));
}

Scalar Poly::coeff(int i) const
{
    if (i < 0 || i >= static_cast<int>(c_.size()))
        return Scalar(0);
    return c_[i];
}

const Scalar& Poly::lead() const
{
    if (c_.empty())
        throw Error(ErrorKind::ZeroPolynomial, "zero polynomial has no leading coefficient");
    return c_.back();
}

bool Poly::is_real() const
{
    for (const Scalar& s : c_)
        if (!s.is_real())
            return false;
    return true;
}

Poly Poly::with_lattice(Lattice l) const
{
    Poly r = *this;
    r.lat_ = l;
    return r;
}

Poly Poly::real_part() const
{
    std::vector<Scalar> v;
    v.reserve(c_.size());
    for (const Scalar& s : c_)
        v.emplace_back(s.re());
    return Poly(std::move(v), lat_);
}

Poly Poly::imag_part() const
{
    std::vector<Scalar> v;
    v.reserve(c_.size());
    for (const Scalar& s : c_)
        v.emplace_back(s.im());
    return Poly(std::move(v), lat_);
}

Poly& Poly::operator+=(const Poly& o)
{
    check_lattice(o);
    if (o.c_.size() > c_.size())
        c_.resize(o.c_.size());
    for (size_t i = 0; i < o.c_.size(); ++i)
        c_[i] += o.c_[i];
    trim();
    return *this;
}

Poly& Poly::operator-=(const Poly& o)
{
    check_lattice(o);
    if (o.c_.size() > c_.size())
        c_.resize(o.c_.size());
    for (size_t i = 0; i < o.c_.size(); ++i)
        c_[i] -= o.c_[i];
    trim();
    return *this;
}

Poly& Poly::operator*=(const Poly& o)
{
    check_lattice(o);
    if (c_.empty() || o.c_.empty()) {
        c_.clear();
        return *this;
    }
    std::vector<Scalar> r(c_.size() + o.c_.size() - 1);
    for (size_t i = 0; i < c_.size(); ++i) {
        if (c_[i].is_zero())
            continue;
        for (size_t j = 0; j < o.c_.size(); ++j)
            r[i + j] += c_[i] * o.c_[j];
    }
    c_ = std::move(r);
    trim();
    return *this;
}

Poly& Poly::operator*=(const Scalar& s)
{
    for (Scalar& c : c_)
        c *= s;
    trim();
    return *this;
}

Poly Poly::operator-() const
{
    Poly r = *this;
    for (Scalar& c : r.c_)
        c = -c;
    return r;
}

Scalar Poly::eval(const Scalar& x) const
{
    Scalar acc(0);
    for (size_t i = c_.size(); i-- > 0;) {
        acc *= x;
        acc += c_[i];
    }
    return acc;
}

Poly Poly::derivative() const
{
    if (c_.size() <= 1)
        return Poly({}, lat_);
    std::vector<Scalar> v(c_.size() - 1);
    for (size_t i = 1; i < c_.size(); ++i)
        v[i - 1] = c_[i] * Scalar(static_cast<long>(i));
    return Poly(std::move(v), lat_);
}

std::string Poly::str() const
{
    std::ostringstream os;
    for (size_t i = 0; i < c_.size(); ++i) {
        if (i)
            os << ',';
        os << c_[i].str();
    }
    return os.str();
}

Poly make_monic(const Poly& p)
{
    if (p.is_zero())
        throw Error(ErrorKind::ZeroPolynomial, "cannot normalize the zero polynomial");
    Poly r = p * p.lead().inverse();
    // a Gaussian polynomial whose imaginary parts all cancel is reported as real
    if (r.is_real()) {
        std::vector<Scalar> v;
        for (const Scalar& c : r.coeffs())
            v.emplace_back(c.re());
        r = Poly(std::move(v), p.lattice());
    }
    return r;
}

DivMod divmod(const Poly& a, const Poly& b)
{
    if (b.is_zero())
        throw Error(ErrorKind::ZeroPolynomial, "division by the zero polynomial");
    if (a.lattice() != b.lattice())
        throw Error(ErrorKind::LatticeMismatch, "lattice mismatch in division");
    int db = b.degree();
    std::vector<Scalar> r = a.coeffs();
    std::vector<Scalar> q(a.degree() >= db ? a.degree() - db + 1 : 0);
    Scalar inv = b.lead().inverse();
    for (int k = a.degree(); k >= db; --k) {
        if (r[k].is_zero())
            continue;
        Scalar f = r[k] * inv;
        q[k - db] = f;
        for (int j = 0; j <= db; ++j)
            r[k - db + j] -= f * b.coeffs()[j];
    }
    r.resize(db > 0 ? db : 0);
    return {Poly(std::move(q), a.lattice()), Poly(std::move(r), a.lattice())};
}

Poly gcd(Poly a, Poly b)
{
    while (!b.is_zero()) {
        Poly r = divmod(a, b).rem;
        a = std::move(b);
        b = std::move(r);
    }
    return a.is_zero() ? a : make_monic(a);
}

std::vector<Scalar> expand_in_basis(const Poly& p, const std::vector<Poly>& basis)
{
    int n = std::max(p.degree(), static_cast<int>(basis.size()) - 1);
    if (static_cast<int>(basis.size()) <= p.degree())
        throw Error(ErrorKind::BasisGap, "basis too short for degree " + std::to_string(p.degree()));
    for (size_t j = 0; j < basis.size(); ++j) {
        if (basis[j].degree() != static_cast<int>(j) || !basis[j].is_monic())
            throw Error(ErrorKind::BasisGap, "basis element " + std::to_string(j) + " is not monic of degree " + std::to_string(j));
        if (basis[j].lattice() != p.lattice())
            throw Error(ErrorKind::LatticeMismatch, "basis lattice differs from polynomial lattice");
    }
    std::vector<Scalar> out(n + 1);
    Poly r = p;
    for (int j = r.degree(); j >= 0; j = std::min(j - 1, r.degree())) {
        Scalar c = r.coeff(j);
        out[j] = c;
        if (!c.is_zero())
            r -= basis[j] * c;
    }
    return out;
}

Ttrr ttrr_extract(const std::vector<Poly>& basis)
{
    if (basis.size() < 2)
        throw Error(ErrorKind::BasisGap, "need at least P_0 and P_1");
    for (size_t j = 0; j < basis.size(); ++j)
        if (basis[j].degree() != static_cast<int>(j) || !basis[j].is_monic())
            throw Error(ErrorKind::BasisGap, "basis element " + std::to_string(j) + " is not monic of degree " + std::to_string(j));
    Ttrr t;
    Lattice lat = basis[0].lattice();
    Poly x = Poly::monomial(1, Scalar(1), lat);
    for (size_t j = 0; j + 1 < basis.size(); ++j) {
        Poly r = x * basis[j] - basis[j + 1];
        Scalar bj = r.coeff(static_cast<int>(j));
        r -= basis[j] * bj;
        Scalar cj(0);
        if (j > 0) {
            cj = r.coeff(static_cast<int>(j) - 1);
            r -= basis[j - 1] * cj;
        }
        if (!r.is_zero())
            throw Error(ErrorKind::NotOrthogonalSequence,
                        "three-term identity fails at j=" + std::to_string(j) + ", residual " + r.str());
        t.b.push_back(bj);
        t.c.push_back(cj);
    }
    return t;
}

} // namespace qortho
