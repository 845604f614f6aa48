#include "doctest.h"

#include "qortho/families.hpp"
#include "qortho/quasi.hpp"

using namespace qortho;

namespace {

FamilySpec bqj_ref()
{
    return make_spec(FamilyId::BigQJacobi,
                     {{"q", Scalar(2, 5)}, {"alpha", Scalar(2)}, {"beta", Scalar(1, 2)}, {"gamma", Scalar(-1)}});
}

// (x;q)_k as a polynomial in x
Poly x_qpoch(const Scalar& q, unsigned k)
{
    Poly r = Poly::constant(Scalar(1));
    for (unsigned j = 0; j < k; ++j)
        r *= Poly::linear(Scalar(1), -q.pow(j));
    return r;
}

// 3phi2(q^-n, abq^{n+1}, x; aq, cq; q; q), summed term by term
Poly bqj_direct(const Scalar& q, const Scalar& a, const Scalar& b, const Scalar& c, unsigned n)
{
    QBase Q(q);
    Poly s;
    for (unsigned k = 0; k <= n; ++k) {
        Scalar coef = qpochhammer(q.pow(-static_cast<long>(n)), Q, k) * qpochhammer(a * b * q.pow(n + 1), Q, k) *
                      q.pow(k) / (qpochhammer(a * q, Q, k) * qpochhammer(c * q, Q, k) * qpochhammer(q, Q, k));
        s += x_qpoch(q, k) * coef;
    }
    return make_monic(s);
}

std::vector<FamilySpec> orthogonal_instances()
{
    std::vector<FamilySpec> v;
    for (const auto& f : all_families())
        for (const auto& s : suite_instances(f.id))
            if (region_check(s).status == RegionStatus::Orthogonal)
                v.push_back(s);
    return v;
}

unsigned cap(const FamilySpec& s, unsigned n) { return s.N ? std::min<unsigned>(n, *s.N) : n; }

} // namespace

TEST_SUITE("families") {

TEST_CASE("degree zero is 1 for every family")
{
    for (const auto& s : orthogonal_instances())
        CHECK(monic_poly(s, 0, true) == Poly::constant(Scalar(1), s.lattice()));
}

TEST_CASE("Al-Salam-Carlitz I degree one")
{
    auto s = make_spec(FamilyId::AlSalamCarlitzI, {{"q", Scalar(1, 2)}, {"alpha", Scalar(-2)}});
    CHECK(monic_poly(s, 1) == Poly::linear(Scalar(1), Scalar(1)));
}

TEST_CASE("big q-Jacobi against direct series summation")
{
    auto s = bqj_ref();
    for (unsigned n = 0; n <= 6; ++n)
        CHECK(monic_poly(s, n) == bqj_direct(Scalar(2, 5), Scalar(2), Scalar(1, 2), Scalar(-1), n));
}

TEST_CASE("region_check")
{
    CHECK(region_check(bqj_ref()).status == RegionStatus::Orthogonal);
    CHECK(region_check(bqj_ref().with("alpha", Scalar(5))).status == RegionStatus::QuasiCandidate);
    auto ql = [](Scalar t) { return make_spec(FamilyId::QLaguerre, {{"q", Scalar(1, 2)}, {"t", t}}); };
    CHECK(region_check(ql(Scalar(1, 2))).status == RegionStatus::Orthogonal);  // alpha = 1
    CHECK(region_check(ql(Scalar(3, 2))).status == RegionStatus::Orthogonal);  // -1 < alpha < 0
    CHECK(region_check(ql(Scalar(4))).status != RegionStatus::Orthogonal);     // alpha < -1
    for (const auto& s : orthogonal_instances())
        for (const auto& note : region_check(s).notes)
            CHECK(note.rfind("ok:", 0) == 0);
}

TEST_CASE("invalid specs are rejected")
{
    CHECK_THROWS_AS(make_spec(FamilyId::BigQJacobi, {{"q", Scalar(2)}, {"alpha", Scalar(2)}, {"beta", Scalar(1)}, {"gamma", Scalar(-1)}})
                        .validate(),
                    Error);
    CHECK_THROWS_AS(make_spec(FamilyId::BigQJacobi, {{"q", Scalar(1, 2)}}).validate(), Error);
    CHECK_THROWS_AS(monic_poly(make_spec(FamilyId::QHahn, {{"q", Scalar(1, 2)}, {"alpha", Scalar(1, 2)}, {"beta", Scalar(1, 2)}}, 3), 4),
                    Error);
}

TEST_CASE("support intervals")
{
    auto qh = make_spec(FamilyId::QHahn, {{"q", Scalar(1, 2)}, {"alpha", Scalar(1, 2)}, {"beta", Scalar(1, 2)}}, 8);
    Support s = support_interval(qh);
    CHECK(*s.lo == 1);
    CHECK(*s.hi == 256);

    Support b = support_interval(bqj_ref());
    CHECK(*b.lo == mpq_class(-2, 5));
    CHECK(*b.hi == mpq_class(4, 5));

    auto qr = suite_instances(FamilyId::QRacah).front();
    mpq_class q(1, 2), gd = qr.get("gamma").real() * qr.get("delta").real();
    mpq_class mu0 = 1 + gd * q;
    mpq_class mu6 = mpq_class(64) + gd * q * q * q * q * q * q * q;
    Support r = support_interval(qr);
    CHECK(*r.lo == mu0);
    CHECK(*r.hi == mu6);

    CHECK(!support_interval(suite_instances(FamilyId::ContinuousHahn).front()).lo);
    CHECK(!support_interval(suite_instances(FamilyId::Wilson).front()).hi);
}

TEST_CASE("discrete moments")
{
    auto qh = make_spec(FamilyId::QHahn, {{"q", Scalar(1, 2)}, {"alpha", Scalar(1, 2)}, {"beta", Scalar(1, 2)}}, 8);
    for (unsigned n = 1; n <= 8; ++n)
        CHECK(discrete_moment(qh, monic_poly(qh, n), 0).is_zero());
    CHECK(discrete_moment(qh, monic_poly(qh, 2) * monic_poly(qh, 3), 0).is_zero());
    CHECK(!discrete_moment(qh, monic_poly(qh, 3) * monic_poly(qh, 3), 0).is_zero());

    auto base = suite_instances(FamilyId::QHahn).front();
    Poly q1 = monic_poly(base.with("alpha", base.get("alpha") / base.get("q")), 5);
    CHECK(!discrete_moment(base, q1, 4).is_zero());
    CHECK(discrete_moment(base, q1, 3).is_zero());
}

TEST_CASE("a weight with a vanishing denominator names the point")
{
    auto s = make_spec(FamilyId::QRacah, {{"q", Scalar(1, 2)}, {"alpha", Scalar(128)}, {"beta", Scalar(1, 32)},
                                           {"gamma", Scalar(1, 4)}, {"delta", Scalar(1, 3)}},
                       6);
    try {
        (void)discrete_weights(s);
        FAIL("expected WeightUndefined");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::WeightUndefined);
        CHECK(std::string(e.what()).find("x=3") != std::string::npos);
    }
}

TEST_CASE("gauss moments")
{
    auto s = bqj_ref();
    mpq_class w = mpq_class(1) / mpq_class(mpz_class("100000000000000000000"));
    GaussMoment one = gauss_moment(s, Poly::constant(Scalar(1)), 0, w);
    CHECK(abs(one.value - 1) <= one.bound + mpq_class(1, 1000000000000000UL));
    for (unsigned j = 1; j <= 4; ++j) {
        GaussMoment g = gauss_moment(s, monic_poly(s, j), 0, w);
        CHECK(abs(g.value) <= g.bound + mpq_class(1, 1000000000000UL));
        CHECK(g.bound <= mpq_class(1, 1000000000000UL));
    }
}

TEST_CASE("three-term recurrence holds for n up to 10")
{
    for (const auto& s : orthogonal_instances()) {
        unsigned top = cap(s, 10);
        auto basis = monic_basis(s, top, true);
        Ttrr t = ttrr_extract(basis);
        for (size_t j = 1; j + 1 < basis.size(); ++j) {
            Poly x = Poly::linear(-t.b[j], Scalar(1), basis[j].lattice());
            CHECK((basis[j + 1] - x * basis[j] + basis[j - 1] * t.c[j]).is_zero());
        }
    }
}

TEST_CASE("Favard positivity on orthogonal instances")
{
    for (const auto& s : orthogonal_instances()) {
        unsigned top = cap(s, 11);
        Ttrr t = ttrr_extract(monic_basis(s, top, true));
        for (size_t j = 1; j < t.c.size(); ++j) {
            INFO(s.str() << " j=" << j);
            CHECK(t.c[j].is_real());
            CHECK(t.c[j].sign() > 0);
        }
    }
}

TEST_CASE("all zeros inside the support for n up to 8")
{
    for (const auto& s : orthogonal_instances()) {
        Support sup = support_interval(s);
        for (unsigned n = 1; n <= cap(s, 8); ++n) {
            INFO(s.str() << " n=" << n);
            auto rc = count_roots_in(monic_poly(s, n, true), sup.lo, sup.hi);
            CHECK(rc.count == static_cast<int>(n));
            CHECK(!rc.perturbed);
        }
    }
}

TEST_CASE("continuous Hahn and Wilson cancel imaginary parts exactly")
{
    auto ch = suite_instances(FamilyId::ContinuousHahn).front();
    for (unsigned n = 0; n <= 8; ++n) {
        Poly p = monic_poly(ch, n);
        CHECK(p.is_real());
        for (const auto& c : p.coeffs())
            CHECK(sgn(c.im()) == 0);
    }
    auto w = make_spec(FamilyId::Wilson, {{"a", Scalar(mpq_class(1, 2), mpq_class(1))}, {"b", Scalar(mpq_class(1, 2), mpq_class(-1))},
                                          {"c", Scalar(3, 4)}, {"d", Scalar(5, 4)}});
    for (unsigned n = 0; n <= 6; ++n)
        CHECK(monic_poly(w, n).is_real());
    auto bad = ch.with("c", Scalar(mpq_class(1, 3), mpq_class(2)));
    CHECK_THROWS_AS(monic_poly(bad, 3), Error);
}

TEST_CASE("Wilson product identity against Gaussian series summation")
{
    Scalar a(1, 2), b(3, 4), c(5, 4), d(7, 4);
    auto w = make_spec(FamilyId::Wilson, {{"a", a}, {"b", b}, {"c", c}, {"d", d}});
    Scalar s = a + b + c + d;
    for (unsigned n = 1; n <= 5; ++n) {
        Poly p = monic_poly(w, n);
        Scalar lead = pochhammer(Scalar(-static_cast<long>(n)), n) * pochhammer(s + Scalar(static_cast<long>(n) - 1), n) /
                      (pochhammer(a + b, n) * pochhammer(a + c, n) * pochhammer(a + d, n) * pochhammer(Scalar(1), n));
        for (const mpq_class& x : {mpq_class(1, 3), mpq_class(2), mpq_class(-5, 7), mpq_class(11, 4), mpq_class(3, 10)}) {
            Scalar sum(mpq_class(0), mpq_class(0));
            Scalar apx(a.re(), x), amx(a.re(), -x);
            for (unsigned k = 0; k <= n; ++k) {
                sum += pochhammer(Scalar(-static_cast<long>(n)), k) * pochhammer(s + Scalar(static_cast<long>(n) - 1), k) *
                       pochhammer(apx, k) * pochhammer(amx, k) /
                       (pochhammer(a + b, k) * pochhammer(a + c, k) * pochhammer(a + d, k) * pochhammer(Scalar(1), k));
            }
            CHECK(sum.is_real());
            CHECK(sum == lead * p.eval(Scalar(x * x)));
        }
    }
}

TEST_CASE("config text")
{
    auto s = parse_spec("# reference\nfamily=big-q-jacobi\nq=2/5\nalpha=2\nbeta=1/2\ngamma=-1\n");
    CHECK(s.str() == bqj_ref().str());
    try {
        (void)parse_spec("family=big-q-jacobi\nq=2/5\nalpha=oops\n", "ref.cfg");
        FAIL("expected a parse error");
    } catch (const Error& e) {
        CHECK(std::string(e.what()).find("ref.cfg:3") != std::string::npos);
    }
}

}
