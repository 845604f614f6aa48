#include "doctest.h"

#include <random>

#include "qortho/families.hpp"
#include "qortho/recurrence.hpp"

using namespace qortho;

namespace {

Poly P(const char* text) { return Poly::parse(text); }
Poly X() { return Poly::monomial(1); }

FamilySpec bqj_ref()
{
    return make_spec(FamilyId::BigQJacobi,
                     {{"q", Scalar(2, 5)}, {"alpha", Scalar(2)}, {"beta", Scalar(1, 2)}, {"gamma", Scalar(-1)}});
}

} // namespace

TEST_SUITE("polyalg") {

TEST_CASE("ring operations")
{
    CHECK((P("1,1") * P("-1,1")) == P("-1,0,1"));
    CHECK(P("-1,0,1").eval(Scalar(1)) == Scalar(0));
    CHECK(P("3,0,5") + Poly() == P("3,0,5"));
    CHECK((P("1,2") - P("1,2")).is_zero());
    CHECK((P("1,2") * Scalar(3, 2)) == P("3/2,3"));
}

TEST_CASE("lattice mismatch is an error")
{
    Poly a = Poly::parse("1,1", Lattice::PlainX), b = Poly::parse("1,1", Lattice::Mu);
    CHECK_THROWS_AS(a + b, Error);
    try {
        (void)(a * b);
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::LatticeMismatch);
    }
}

TEST_CASE("make_monic")
{
    CHECK(make_monic(P("6,0,3")) == P("2,0,1"));
    CHECK(make_monic(P("2,0,1")) == P("2,0,1"));
    Poly g(std::vector<Scalar>{Scalar(0), Scalar(mpq_class(2), mpq_class(0))});
    Poly m = make_monic(g);
    CHECK(m == X());
    CHECK(m.is_real());
    CHECK_THROWS_AS(make_monic(Poly()), Error);
}

TEST_CASE("expand_in_basis")
{
    auto basis = monic_basis(bqj_ref(), 4);
    auto e = expand_in_basis(basis[4], basis);
    CHECK(e.size() == 5);
    for (size_t j = 0; j < e.size(); ++j)
        CHECK(e[j] == Scalar(j == 4 ? 1 : 0));

    Scalar b0(3, 7);
    std::vector<Poly> lin{Poly::constant(Scalar(1)), Poly::linear(-b0, Scalar(1))};
    auto c = expand_in_basis(X(), lin);
    CHECK(c[0] == b0);
    CHECK(c[1] == Scalar(1));

    std::vector<Poly> gap{Poly::constant(Scalar(1)), P("0,0,1")};
    CHECK_THROWS_AS(expand_in_basis(X(), gap), Error);
}

TEST_CASE("shifted big q-Jacobi has two trailing coefficients matching the catalog")
{
    FamilySpec base = bqj_ref();
    const CatalogEntry& e = catalog_entry("bqj.a");
    Poly q = monic_poly(e.shift.apply(base), 3);
    auto basis = monic_basis(base, 3);
    auto c = expand_in_basis(q, basis);
    CHECK(c[0].is_zero());
    CHECK(c[1].is_zero());
    CHECK(!c[2].is_zero());
    CHECK(c[3] == Scalar(1));
    auto sigma = catalog_coeffs(e, 3, base);
    CHECK(c[2] == sigma[1]);
}

TEST_CASE("expand and recombine on random polynomials up to degree 12")
{
    std::mt19937_64 rng(12);
    std::uniform_int_distribution<long> d(-30, 30);
    auto basis = monic_basis(bqj_ref(), 12);
    for (int trial = 0; trial < 20; ++trial) {
        unsigned deg = 1 + trial % 12;
        std::vector<Scalar> c;
        for (unsigned i = 0; i <= deg; ++i)
            c.emplace_back(d(rng), 1 + std::abs(d(rng)));
        if (c.back().is_zero())
            c.back() = Scalar(1);
        Poly p(c);
        auto e = expand_in_basis(p, basis);
        Poly back;
        for (size_t j = 0; j < e.size(); ++j)
            back += basis[j] * e[j];
        CHECK(back == p);
    }
}

TEST_CASE("ttrr_extract")
{
    auto asc = make_spec(FamilyId::AlSalamCarlitzI, {{"q", Scalar(1, 2)}, {"alpha", Scalar(-2)}});
    auto basis = monic_basis(asc, 4);
    Ttrr t = ttrr_extract(basis);
    // c_n = -alpha q^{n-1} (1 - q^n)
    CHECK(t.c[1] == Scalar(1));
    CHECK(t.c[2] == Scalar(3, 4));
    CHECK(t.c[0].is_zero());
    CHECK(basis[1] == Poly::linear(-t.b[0], Scalar(1)));
    for (size_t j = 1; j + 1 < basis.size(); ++j) {
        Poly r = basis[j + 1] - Poly::linear(-t.b[j], Scalar(1)) * basis[j] + basis[j - 1] * t.c[j];
        CHECK(r.is_zero());
    }

    auto w = make_spec(FamilyId::Wilson, {{"a", Scalar(1, 2)}, {"b", Scalar(3, 4)}, {"c", Scalar(5, 4)}, {"d", Scalar(7, 4)}});
    CHECK(ttrr_extract(monic_basis(w, 3)).c[1].sign() > 0);

    CHECK_THROWS_AS(ttrr_extract({Poly::constant(Scalar(1)), X(), P("5,0,1"), P("0,0,1,1")}), Error);
}

TEST_CASE("sturm_isolate")
{
    auto r = sturm_isolate(P("-2,0,1"));
    REQUIRE(r.size() == 2);
    CHECK(r[0].hi <= r[1].lo);
    CHECK(r[0].lo < 0);
    CHECK(r[1].lo * r[1].lo < 2);
    CHECK(r[1].hi * r[1].hi > 2);
    CHECK(sturm_isolate(P("1,0,1")).empty());

    auto base = bqj_ref();
    auto boxes = sturm_isolate(monic_poly(base, 4));
    CHECK(boxes.size() == 4);
    Support s = support_interval(base);
    for (const auto& b : boxes) {
        auto r = refine_root(monic_poly(base, 4), b, mpq_class(1, 1000000));
        CHECK(r.width() <= mpq_class(1, 1000000));
        CHECK(*s.lo < r.lo);
        CHECK(r.hi < *s.hi);
    }
}

TEST_CASE("repeated roots are reported with multiplicity")
{
    auto r = sturm_isolate(P("1,-2,1") * P("-2,1")); // (x-1)^2 (x-2)
    REQUIRE(r.size() == 2);
    CHECK(r[0].multiplicity == 2);
    CHECK(r[1].multiplicity == 1);
}

TEST_CASE("refine_root")
{
    Poly p = P("-2,0,1");
    auto b = sturm_isolate(p)[1];
    mpq_class w(1, 1000000000000UL);
    RootBox f = refine_root(p, b, w);
    CHECK(f.width() <= w);
    CHECK(f.lo * f.lo < 2);
    CHECK(f.hi * f.hi > 2);
    CHECK(f.sign_lo != f.sign_hi);
    RootBox g = refine_root(p, f, w);
    CHECK(g.lo == f.lo);
    CHECK(g.hi == f.hi);
    // never loses the sign change
    for (int i = 0; i < 20; ++i) {
        f = refine_root(p, f, f.width() / 3);
        CHECK(sign_at(real_zero_carrier(p), f.lo) != sign_at(real_zero_carrier(p), f.hi));
    }
}

TEST_CASE("count_roots_in")
{
    Poly p = P("-2,0,1");
    CHECK(count_roots_in(p, mpq_class(0), mpq_class(2)).count == 1);
    CHECK(count_roots_in(p, mpq_class(-2), mpq_class(2)).count == 2);
    CHECK(count_roots_in(p, std::nullopt, std::nullopt).count == 2);

    auto rc = count_roots_in(P("-1,0,1"), mpq_class(1), mpq_class(3));
    CHECK(rc.count == 0);
    CHECK(rc.perturbed);

    auto base = bqj_ref();
    Poly q = monic_poly(catalog_entry("bqj.a").shift.apply(base), 5);
    Support s = support_interval(base);
    CHECK(count_roots_in(q, s.lo, s.hi).count >= 4);
}

TEST_CASE("box counts add up")
{
    std::mt19937_64 rng(3);
    std::uniform_int_distribution<long> d(-9, 9);
    for (int t = 0; t < 20; ++t) {
        Poly p = Poly::constant(Scalar(1));
        for (int k = 0; k < 5; ++k)
            p *= Poly::linear(Scalar(d(rng), 1 + std::abs(d(rng))), Scalar(1));
        p += Poly::constant(Scalar(d(rng), 7));
        auto boxes = sturm_isolate(p);
        int sum = 0;
        for (const auto& b : boxes)
            sum += count_roots_in(p, b.lo, b.hi).count;
        auto sq = squarefree_part(real_zero_carrier(p));
        SturmChain ch(sq);
        CHECK(sum == static_cast<int>(boxes.size()));
        CHECK(count_roots_in(p, std::nullopt, std::nullopt).count == sum);
        CHECK(ch.variations_at_minus_inf() - ch.variations_at_plus_inf() == sum);
    }
}

TEST_CASE("gcd")
{
    Poly g = gcd(P("1,-2,1") * P("3,1"), P("-1,1") * P("5,0,1"));
    CHECK(g == P("-1,1"));
    CHECK(gcd(P("1,1"), P("2,1")) == Poly::constant(Scalar(1)));
}

TEST_CASE("text form")
{
    Poly p = P("1/2,-3,0,7/5");
    CHECK(Poly::parse(p.str()) == p);
    CHECK(p.str() == "1/2,-3,0,7/5");
}

}
