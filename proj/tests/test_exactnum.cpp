#include "doctest.h"

#include <random>
#include <vector>

#include "qortho/scalar.hpp"

using namespace qortho;

namespace {

Scalar random_rational(std::mt19937_64& rng)
{
    std::uniform_int_distribution<long> num(-1000, 1000), den(1, 997);
    return Scalar(num(rng), den(rng));
}

bool canonical(const Scalar& s)
{
    auto ok = [](const mpq_class& v) {
        mpz_class g;
        mpz_gcd(g.get_mpz_t(), v.get_num_mpz_t(), v.get_den_mpz_t());
        return v.get_den() > 0 && g == 1;
    };
    return ok(s.re()) && ok(s.im());
}

} // namespace

TEST_SUITE("exactnum") {

TEST_CASE("pochhammer examples")
{
    CHECK(pochhammer(Scalar(7, 3), 0) == Scalar(1));
    CHECK(pochhammer(Scalar(2), 3) == Scalar(24));
    CHECK(pochhammer(Scalar(-3), 5) == Scalar(0));
}

TEST_CASE("qpochhammer examples")
{
    QBase q(Scalar(1, 2));
    CHECK(qpochhammer(Scalar(5, 7), q, 0) == Scalar(1));
    CHECK(qpochhammer(Scalar(1, 2), q, 2) == Scalar(3, 8));
    for (unsigned m = 1; m < 6; ++m)
        CHECK(qpochhammer(Scalar(1), QBase(Scalar(2, 5)), m) == Scalar(0));
}

TEST_CASE("qpochhammer_multi examples")
{
    QBase q(Scalar(1, 2));
    std::vector<Scalar> none;
    CHECK(qpochhammer_multi(none, q, 4) == Scalar(1));
    std::vector<Scalar> one{Scalar(3, 7)};
    CHECK(qpochhammer_multi(one, q, 3) == qpochhammer(Scalar(3, 7), q, 3));
    std::vector<Scalar> two{Scalar(1, 2), Scalar(1, 3)};
    CHECK(qpochhammer_multi(two, q, 1) == Scalar(1, 3));
}

TEST_CASE("q must lie in (0,1)")
{
    CHECK_THROWS_AS(QBase(Scalar(1)), Error);
    CHECK_THROWS_AS(QBase(Scalar(0)), Error);
    CHECK_THROWS_AS(QBase(Scalar(3, 2)), Error);
}

TEST_CASE("field axioms on random rationals")
{
    std::mt19937_64 rng(20240611);
    for (int i = 0; i < 300; ++i) {
        Scalar a = random_rational(rng), b = random_rational(rng), c = random_rational(rng);
        CHECK((a + b) + c == a + (b + c));
        CHECK((a * b) * c == a * (b * c));
        CHECK(a * (b + c) == a * b + a * c);
        CHECK(a + b == b + a);
        if (!a.is_zero()) {
            CHECK(a * a.inverse() == Scalar(1));
            CHECK((b / a) * a == b);
        }
        CHECK(canonical(a * b - c));
    }
}

TEST_CASE("gaussian arithmetic")
{
    std::mt19937_64 rng(7);
    for (int i = 0; i < 100; ++i) {
        Scalar a(random_rational(rng).re(), random_rational(rng).re());
        Scalar b(random_rational(rng).re(), random_rational(rng).re());
        CHECK((a * b).conj() == a.conj() * b.conj());
        if (!a.is_zero())
            CHECK(a * a.inverse() == Scalar(1));
        CHECK((a * a.conj()).is_real());
        CHECK(canonical(a / (b.is_zero() ? Scalar(1) : b)));
    }
    CHECK(Scalar::i() * Scalar::i() == Scalar(-1));
    CHECK(Scalar(mpq_class(3, 4), mpq_class(0)) == Scalar(3, 4));
}

TEST_CASE("pochhammer recurrences up to m = 50")
{
    std::mt19937_64 rng(99);
    QBase q(Scalar(3, 7));
    for (int i = 0; i < 5; ++i) {
        Scalar a = random_rational(rng);
        for (unsigned m = 0; m < 50; ++m) {
            CHECK(pochhammer(a, m + 1) == pochhammer(a, m) * (a + Scalar(static_cast<long>(m))));
            CHECK(qpochhammer(a, q, m + 1) == qpochhammer(a, q, m) * (Scalar(1) - a * q.pow(m)));
        }
    }
}

TEST_CASE("text round trip")
{
    for (const char* t : {"0", "-7", "3/4", "-22/3", "1/3+1*i", "3/4-1/2*i", "0+2*i"}) {
        Scalar s = Scalar::parse(t);
        CHECK(Scalar::parse(s.str()) == s);
    }
    CHECK(Scalar::parse("6/8") == Scalar(3, 4));
    CHECK(Scalar::parse("6/8").str() == "3/4");
    CHECK_THROWS_AS(Scalar::parse("1/0"), Error);
    CHECK_THROWS_AS(Scalar::parse("abc"), Error);
}

TEST_CASE("real() rejects a nonzero imaginary part")
{
    CHECK_THROWS_AS(Scalar(mpq_class(1), mpq_class(1)).real(), Error);
    CHECK(Scalar(mpq_class(5), mpq_class(0)).real() == 5);
}

}
