#include "doctest.h"

#include "qortho/quasi.hpp"

using namespace qortho;

namespace {

const mpq_class kWidth(1, 1000000000000UL);

FamilySpec spec_of(FamilyId id) { return suite_instances(id).front(); }

Scalar sq(const Scalar& a) { return a * a; }

struct Triple {
    Poly q, pn, pn1;
};

Triple triple(const FamilySpec& base, const ShiftSpec& shift, unsigned n)
{
    return {monic_poly(shift.apply(base), n, true), monic_poly(base, n, true), monic_poly(base, n - 1, true)};
}

} // namespace

TEST_SUITE("quasi") {

TEST_CASE("order of shifted big q-Jacobi")
{
    auto base = make_spec(FamilyId::BigQJacobi, {{"q", Scalar(2, 5)}, {"alpha", Scalar(2)}, {"beta", Scalar(1, 2)}, {"gamma", Scalar(-1)}});
    for (unsigned k = 1; k <= 3; ++k) {
        auto v = quasi_order(base, ShiftSpec::parse("alpha/q^" + std::to_string(k)), 6);
        CHECK(v.order == k);
        CHECK(v.coeffs.size() == k + 1);
        CHECK(v.coeffs[0] == Scalar(1));
        CHECK(!v.coeffs[k].is_zero());
    }
}

TEST_CASE("order of shifted Wilson and self expansion")
{
    auto w = spec_of(FamilyId::Wilson);
    CHECK(quasi_order(w, ShiftSpec::parse("a-1"), 5).order == 1);
    CHECK(quasi_order_poly(w, monic_poly(w, 5)).order == 0);
}

TEST_CASE("scaling does not change the order")
{
    auto base = spec_of(FamilyId::LittleQJacobi);
    Poly q = monic_poly(ShiftSpec::parse("alpha/q^2").apply(base), 5);
    auto a = quasi_order_poly(base, q);
    auto b = quasi_order_poly(base, q * Scalar(-7, 3));
    CHECK(a.order == 2);
    CHECK(a.order == b.order);
    CHECK(a.coeffs == b.coeffs);
}

TEST_CASE("a base outside the orthogonality region is rejected")
{
    auto base = spec_of(FamilyId::BigQJacobi).with("alpha", Scalar(5));
    try {
        (void)quasi_order(base, ShiftSpec::parse("alpha/q"), 4);
        FAIL("expected NotOrthogonal");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::NotOrthogonal);
    }
}

TEST_CASE("f ratio closed forms")
{
    SUBCASE("big q-Jacobi at gamma q")
    {
        Scalar q(2, 5), a(2), b(1, 2), c(-1);
        auto s = make_spec(FamilyId::BigQJacobi, {{"q", q}, {"alpha", a}, {"beta", b}, {"gamma", c}});
        for (unsigned n = 1; n <= 5; ++n) {
            Scalar qn = q.pow(n), q2n = q.pow(2 * n);
            Scalar want = a * q.pow(n + 1) * (a * b * qn - 1) * (b * qn - 1) * (c * qn - 1) /
                          ((a * b * q2n - q) * (a * b * q2n - 1));
            CHECK(f_ratio(s, n, c * q) == want);
        }
    }
    SUBCASE("little q-Jacobi at 0")
    {
        auto s = spec_of(FamilyId::LittleQJacobi);
        Scalar q = s.get("q"), a = s.get("alpha"), b = s.get("beta");
        for (unsigned n = 1; n <= 5; ++n) {
            Scalar qn = q.pow(n), q2n = q.pow(2 * n);
            Scalar want = -(a * b * qn - 1) * (a * qn - 1) * qn / ((a * b * q2n - 1) * (a * b * q2n - q));
            CHECK(f_ratio(s, n, Scalar(0)) == want);
        }
    }
    SUBCASE("Al-Salam-Carlitz I at alpha")
    {
        auto s = spec_of(FamilyId::AlSalamCarlitzI);
        for (unsigned n = 1; n <= 6; ++n)
            CHECK(f_ratio(s, n, s.get("alpha")) == -s.get("q").pow(n - 1));
    }
    SUBCASE("q-Laguerre at 0")
    {
        auto s = spec_of(FamilyId::QLaguerre);
        Scalar q = s.get("q"), t = s.get("t");
        for (unsigned n = 1; n <= 6; ++n)
            CHECK(f_ratio(s, n, Scalar(0)) == (q.pow(n) * t - 1) * q / (q.pow(2 * n) * t));
    }
    SUBCASE("q-Hahn at the top lattice point")
    {
        // q^-N lies above every zero of the monic P_n and P_{n-1}, so the ratio is
        // positive; the closed form below carries that sign.
        auto s = spec_of(FamilyId::QHahn);
        Scalar q = s.get("q"), a = s.get("alpha"), b = s.get("beta");
        long N = *s.N;
        for (unsigned n = 1; n <= 6; ++n) {
            Scalar qn = q.pow(n), q2n = q.pow(2 * n);
            Scalar want = a * (b * qn - 1) * (a * b * qn - 1) * (qn - q.pow(N + 1)) * qn /
                          ((a * b * q2n - q) * (a * b * q2n - 1) * q.pow(N));
            Scalar f = f_ratio(s, n, q.pow(-N));
            CHECK(f.sign() > 0);
            CHECK(f == want);
        }
    }
    SUBCASE("zero denominator")
    {
        auto s = spec_of(FamilyId::BigQJacobi);
        Scalar root = -monic_poly(s, 1).coeff(0);
        CHECK_THROWS_AS(f_ratio(s, 2, root), Error);
    }
}

TEST_CASE("order-1 endpoint examples")
{
    SUBCASE("big q-Jacobi beta shift exits left")
    {
        auto base = spec_of(FamilyId::BigQJacobi);
        auto r = endpoint_classify_order1(base, catalog_entry("bqj.b"), 4);
        CHECK(r.verdict == Extreme::LeftExit);
        CHECK(r.agree());
    }
    SUBCASE("q-Hahn alpha shift exits left")
    {
        auto r = endpoint_classify_order1(spec_of(FamilyId::QHahn), catalog_entry("qhahn.a"), 4);
        CHECK(r.verdict == Extreme::LeftExit);
        CHECK(r.agree());
    }
    SUBCASE("big q-Laguerre alpha shift: the top zero passes alpha q")
    {
        // -a_n - f_n(alpha q) reduces to alpha - q^n, positive whenever alpha q < 1 < alpha
        auto base = spec_of(FamilyId::BigQLaguerre);
        Scalar q = base.get("q"), a = base.get("alpha");
        for (unsigned n = 2; n <= 6; ++n) {
            auto r = endpoint_classify_order1(base, catalog_entry("bql.a"), n);
            REQUIRE(r.right);
            CHECK(*r.right == a - q.pow(n));
            CHECK(r.verdict == Extreme::RightExit);
            CHECK(r.isolation == Extreme::RightExit);
            CHECK(r.beyond_right == 1);
        }
    }
    SUBCASE("infinite end is undetermined")
    {
        auto r = endpoint_classify_order1(spec_of(FamilyId::QLaguerre), catalog_entry("qlag.t"), 5);
        CHECK(r.agree());
        CHECK(r.beyond_right == -1);
    }
}

TEST_CASE("order-1 criterion agrees with isolation on every depth-1 entry")
{
    for (const auto& e : catalog()) {
        if (e.depth != 1)
            continue;
        FamilySpec s = reference_spec(e);
        if (region_check(s).status != RegionStatus::Orthogonal)
            continue;
        unsigned top = s.N ? std::min<unsigned>(6, *s.N) : 6;
        for (unsigned n = 2; n <= top; ++n) {
            Order1Endpoint r;
            try {
                r = endpoint_classify_order1(s, e, n);
            } catch (const Error& err) {
                CHECK_MESSAGE(err.kind() == ErrorKind::NotReal, e.id);
                continue;
            }
            INFO(e.id << " n=" << n);
            CHECK(r.agree());
        }
    }
}

TEST_CASE("order-1 zeros interlace on the side fixed by the sign of a_n")
{
    for (const auto& e : catalog()) {
        if (e.depth != 1)
            continue;
        FamilySpec s = reference_spec(e);
        if (region_check(s).status != RegionStatus::Orthogonal)
            continue;
        for (unsigned n : {3u, 5u}) {
            if (s.N && n > *s.N)
                continue;
            auto sigma = catalog_coeffs(e, n, s);
            if (!sigma[1].is_real())
                continue;
            auto t = triple(s, e.shift, n);
            auto good = sigma[1].sign() < 0 ? InterlaceVariant::QuasiBelow : InterlaceVariant::QuasiAbove;
            auto bad = good == InterlaceVariant::QuasiBelow ? InterlaceVariant::QuasiAbove : InterlaceVariant::QuasiBelow;
            INFO(e.id << " n=" << n);
            CHECK(certify_interlace(t.q, t.pn, t.pn1, good, {}, kWidth).status == Certificate::Certified);
            CHECK(certify_interlace(t.q, t.pn, t.pn1, bad, {}, kWidth).status == Certificate::Refuted);
        }
    }
}

TEST_CASE("identical root sets are refuted")
{
    auto s = spec_of(FamilyId::BigQJacobi);
    Poly p5 = monic_poly(s, 5), p4 = monic_poly(s, 4);
    CHECK(certify_interlace(p5, p5, p4, InterlaceVariant::QuasiBelow, {}, kWidth).status == Certificate::Refuted);
    CHECK(certify_interlace(p5, p5, p4, InterlaceVariant::QuasiAbove, {}, kWidth).status == Certificate::Refuted);
}

TEST_CASE("pure box comparison")
{
    auto s = spec_of(FamilyId::QHahn);
    auto t = triple(s, ShiftSpec::parse("alpha/q"), 5);
    auto iso = [](const Poly& p) {
        auto v = sturm_isolate(p);
        for (auto& b : v)
            b = refine_root(p, b, mpq_class(1, 1000000000000UL));
        return v;
    };
    auto a = catalog_coeffs(catalog_entry("qhahn.a"), 5, s)[1];
    auto want = a.sign() < 0 ? InterlaceVariant::QuasiBelow : InterlaceVariant::QuasiAbove;
    CHECK(interlace_check(iso(t.q), iso(t.pn), iso(t.pn1), want).status == Certificate::Certified);
    auto wide = iso(t.q);
    wide[0].hi = wide.back().hi;
    CHECK(interlace_check(wide, iso(t.pn), iso(t.pn1), want).status != Certificate::Certified);
}

TEST_CASE("zero count is at least n - k for real shifts")
{
    for (const auto& e : catalog()) {
        FamilySpec s = reference_spec(e);
        if (region_check(s).status != RegionStatus::Orthogonal)
            continue;
        unsigned n = s.N ? std::min<unsigned>(6, *s.N) : 6;
        Poly q = monic_poly(e.shift.apply(s), n, true);
        if (!q.is_real())
            continue;
        auto v = quasi_order_poly(s, q);
        INFO(e.id);
        CHECK(v.order == e.depth);
        CHECK(v.zero_count >= static_cast<int>(n - v.order));
    }
}

TEST_CASE("order-2 endpoint parity")
{
    SUBCASE("q-Hahn joint shift: odd beyond both ends")
    {
        auto r = endpoint_classify_order2(spec_of(FamilyId::QHahn), catalog_entry("qhahn.ab"), 5);
        CHECK(r.left == Beyond::Odd);
        CHECK(r.right == Beyond::Odd);
        CHECK(r.agree());
    }
    SUBCASE("little q-Jacobi joint shift")
    {
        auto r = endpoint_classify_order2(spec_of(FamilyId::LittleQJacobi), catalog_entry("lqj.ab"), 5);
        CHECK(r.left == Beyond::Odd);
        CHECK(r.right == Beyond::Odd);
        CHECK(r.agree());
    }
    SUBCASE("negative b_n gives all real zeros")
    {
        for (const auto& e : catalog()) {
            if (e.depth != 2)
                continue;
            FamilySpec s = reference_spec(e);
            if (region_check(s).status != RegionStatus::Orthogonal)
                continue;
            unsigned top = s.N ? std::min<unsigned>(7, *s.N) : 7;
            for (unsigned n = 3; n <= top; ++n) {
                Order2Endpoint r;
                try {
                    r = endpoint_classify_order2(s, e, n);
                } catch (const Error&) {
                    continue;
                }
                INFO(e.id << " n=" << n);
                CHECK(r.agree());
                if (r.realness_criterion())
                    CHECK(r.real_zeros == static_cast<int>(n));
            }
        }
    }
}

TEST_CASE("little q-Jacobi partial interlacing and the sign of C_n - b_n")
{
    auto s = spec_of(FamilyId::LittleQJacobi);
    Scalar q = s.get("q"), a = s.get("alpha"), b = s.get("beta");
    for (unsigned n = 3; n <= 7; ++n) {
        auto r = partial_interlace_check(s, catalog_entry("lqj.a2"), n, kWidth);
        Scalar qn = q.pow(n), q2n = q.pow(2 * n);
        Scalar want = q.pow(2 * n + 1) * (a - q) * (qn - q) * (b * qn - q) * a /
                      ((a * b * q2n - q.pow(3)) * sq(a * b * q2n - q * q));
        INFO("n=" << n);
        CHECK(r.C_n - r.b_n == want);
        CHECK(r.sign_b_minus_C == (r.b_n - r.C_n).sign());
        CHECK(r.agree());
    }
}

TEST_CASE("partial interlacing for Al-Salam-Carlitz I and continuous Hahn")
{
    auto asc = spec_of(FamilyId::AlSalamCarlitzI);
    auto r = partial_interlace_check(asc, catalog_entry("asc1.a2"), 4, kWidth);
    CHECK(r.sign_b_minus_C > 0);
    CHECK(r.pattern.status == Certificate::Certified);

    auto ch = spec_of(FamilyId::ContinuousHahn);
    for (const char* id : {"chahn.ac", "chahn.bd"}) {
        auto p = partial_interlace_check(ch, catalog_entry(id), 5, kWidth);
        CHECK(p.agree());
    }
}

TEST_CASE("suite outcomes")
{
    auto verdict = [](const SuiteReport& r, const char* id) {
        const Claim* c = r.find(id);
        REQUIRE(c != nullptr);
        return c->verdict;
    };
    for (unsigned n : {4u, 5u, 6u}) {
        auto bqj = theorem_suite(spec_of(FamilyId::BigQJacobi), n);
        CHECK(bqj.exit_code() == 0);
        for (const auto& c : bqj.claims)
            CHECK_MESSAGE(c.verdict == ClaimVerdict::Pass, c.id);
    }
    for (FamilyId id : {FamilyId::QHahn, FamilyId::LittleQJacobi, FamilyId::LittleQLaguerre, FamilyId::QLaguerre,
                        FamilyId::AlSalamCarlitzI, FamilyId::AffineQKrawtchouk, FamilyId::Wilson})
        for (const auto& s : suite_instances(id))
            CHECK_MESSAGE(theorem_suite(s, 5).exit_code() == 0, s.str());
    for (FamilyId id : {FamilyId::AskeyWilson, FamilyId::QRacah, FamilyId::Racah})
        for (const auto& s : suite_instances(id)) {
            auto r = theorem_suite(s, 5);
            CHECK_MESSAGE(r.exit_code() == 0, s.str());
            int passed = 0;
            for (const auto& c : r.claims)
                passed += c.verdict == ClaimVerdict::Pass;
            CHECK(passed > 0);
        }

    // Known disagreements with the stated claims, kept visible.
    auto bql = theorem_suite(spec_of(FamilyId::BigQLaguerre), 5);
    CHECK(verdict(bql, "bql.order.alpha") == ClaimVerdict::Pass);
    CHECK(verdict(bql, "bql.endpoint.alpha") == ClaimVerdict::Fail);
    CHECK(verdict(bql, "bql.interlace.alpha") == ClaimVerdict::Fail);
    auto qk = theorem_suite(spec_of(FamilyId::QuantumQKrawtchouk), 5);
    CHECK(verdict(qk, "qtmqk.order.p") == ClaimVerdict::Pass);
    CHECK(verdict(qk, "qtmqk.endpoint.p") == ClaimVerdict::Fail);
    CHECK(verdict(qk, "qtmqk.interlace.p") == ClaimVerdict::Fail);
    auto ch = theorem_suite(spec_of(FamilyId::ContinuousHahn), 5);
    CHECK(verdict(ch, "chahn.order.a") == ClaimVerdict::Pass);
    CHECK(verdict(ch, "chahn.zeros.a") == ClaimVerdict::Fail);
    CHECK(ch.exit_code() == 1);
}

TEST_CASE("suite report does not depend on the job count")
{
    for (FamilyId id : {FamilyId::BigQJacobi, FamilyId::QHahn, FamilyId::ContinuousHahn}) {
        auto s = spec_of(id);
        std::string one = suite_report_json(theorem_suite(s, 5, {kWidth, 1}));
        std::string four = suite_report_json(theorem_suite(s, 5, {kWidth, 4}));
        CHECK(one == four);
    }
}

TEST_CASE("suite rejects a non-orthogonal base")
{
    CHECK_THROWS_AS(theorem_suite(spec_of(FamilyId::BigQJacobi).with("alpha", Scalar(5)), 5), Error);
}

}
