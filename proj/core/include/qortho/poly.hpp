#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "qortho/scalar.hpp"

namespace qortho {

// What the polynomial variable stands for.
enum class Lattice { PlainX, QMinusX, Mu, Lambda, XSquared, CosTheta };

const char* to_string(Lattice l);

// Dense univariate polynomial, coeffs[i] multiplies X^i.
// The zero polynomial has no coefficients.
class Poly {
public:
    Poly() = default;
    explicit Poly(std::vector<Scalar> coeffs, Lattice lat = Lattice::PlainX);
    static Poly constant(const Scalar& c, Lattice lat = Lattice::PlainX);
    static Poly monomial(unsigned deg, const Scalar& c = Scalar(1), Lattice lat = Lattice::PlainX);
    // The linear polynomial c0 + c1 X.
    static Poly linear(const Scalar& c0, const Scalar& c1, Lattice lat = Lattice::PlainX);
    static Poly parse(std::string_view text, Lattice lat = Lattice::PlainX);

    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    Lattice lattice() const { return lat_; }
    const std::vector<Scalar>& coeffs() const { return c_; }
    Scalar coeff(int i) const;
    const Scalar& lead() const;
    bool is_real() const;
    bool is_monic() const { return !c_.empty() && c_.back() == Scalar(1); }

    Poly with_lattice(Lattice l) const;
    Poly real_part() const;
    Poly imag_part() const;

    Poly& operator+=(const Poly& o);
    Poly& operator-=(const Poly& o);
    Poly& operator*=(const Poly& o);
    Poly& operator*=(const Scalar& s);
    Poly operator-() const;
    friend Poly operator+(Poly a, const Poly& b) { return a += b; }
    friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
    friend Poly operator*(Poly a, const Poly& b) { return a *= b; }
    friend Poly operator*(Poly a, const Scalar& s) { return a *= s; }
    friend Poly operator*(const Scalar& s, Poly a) { return a *= s; }
    friend bool operator==(const Poly& a, const Poly& b) { return a.lat_ == b.lat_ && a.c_ == b.c_; }

    Scalar eval(const Scalar& x) const;
    Poly derivative() const;

    std::string str() const;

private:
    void trim();
    void check_lattice(const Poly& o) const;

    std::vector<Scalar> c_;
    Lattice lat_ = Lattice::PlainX;
};

Poly make_monic(const Poly& p);

struct DivMod {
    Poly quot, rem;
};
DivMod divmod(const Poly& a, const Poly& b);
Poly gcd(Poly a, Poly b); // monic, or zero when both are zero

// Coefficients c with p = sum c[j] basis[j]; basis[j] monic of degree j.
std::vector<Scalar> expand_in_basis(const Poly& p, const std::vector<Poly>& basis);

// P_{j+1} = (x - b[j]) P_j - c[j] P_{j-1}, for j = 0..size-2; c[0] is 0.
struct Ttrr {
    std::vector<Scalar> b, c;
};
Ttrr ttrr_extract(const std::vector<Poly>& basis);

} // namespace qortho
