#include "doctest.h"

#include "json.hpp"
#include "qortho/recurrence.hpp"

using namespace qortho;

namespace {

unsigned top_n(const FamilySpec& s, unsigned n) { return s.N ? std::min<unsigned>(n, *s.N) : n; }

} // namespace

TEST_SUITE("recurrences") {

TEST_CASE("catalog coefficient examples")
{
    auto ql = make_spec(FamilyId::QLaguerre, {{"q", Scalar(1, 2)}, {"t", Scalar(1, 2)}});
    auto c = catalog_coeffs(catalog_entry("qlag.t"), 1, ql);
    REQUIRE(c.size() == 2);
    CHECK(c[0] == Scalar(1));
    CHECK(c[1] == Scalar(2));

    auto asc = make_spec(FamilyId::AlSalamCarlitzI, {{"q", Scalar(1, 2)}, {"alpha", Scalar(-2)}});
    CHECK(catalog_coeffs(catalog_entry("asc1.a"), 1, asc)[1] == Scalar(2));

    auto w = make_spec(FamilyId::Wilson, {{"a", Scalar(1, 2)}, {"b", Scalar(3, 4)}, {"c", Scalar(5, 4)}, {"d", Scalar(7, 4)}});
    CHECK(catalog_coeffs(catalog_entry("wilson.a"), 1, w)[1] == Scalar(240, 221));
}

TEST_CASE("catalog needs n >= J")
{
    const auto& e = catalog_entry("bqj.ab");
    CHECK_THROWS_AS(catalog_coeffs(e, 1, reference_spec(e)), Error);
}

TEST_CASE("vanishing denominator is Degenerate")
{
    // alpha beta q^2 = 1 at n = 1
    auto s = make_spec(FamilyId::BigQJacobi, {{"q", Scalar(1, 2)}, {"alpha", Scalar(2)}, {"beta", Scalar(2)}, {"gamma", Scalar(-1)}});
    try {
        (void)catalog_coeffs(catalog_entry("bqj.a"), 1, s);
        FAIL("expected Degenerate");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::Degenerate);
    }
}

TEST_CASE("every entry verifies for n = J..8")
{
    CHECK(catalog().size() == 35);
    for (const auto& e : catalog()) {
        FamilySpec s = reference_spec(e);
        for (unsigned n = e.depth; n <= top_n(s, 8); ++n) {
            INFO(e.id << " n=" << n);
            CHECK(verify_entry(e, n, s).holds);
        }
    }
}

TEST_CASE("a perturbed coefficient fails verification")
{
    for (const auto& e : catalog()) {
        FamilySpec s = reference_spec(e);
        unsigned n = top_n(s, 5);
        auto sigma = catalog_coeffs(e, n, s);
        sigma[1] += Scalar(1, 1000);
        VerifyResult r = verify_coeffs(s, e.shift, n, sigma);
        INFO(e.id);
        CHECK(!r.holds);
        CHECK(!r.residual.is_zero());
    }
}

TEST_CASE("discovery reproduces the catalog")
{
    for (const auto& e : catalog()) {
        FamilySpec s = reference_spec(e);
        for (unsigned n = e.depth; n <= top_n(s, 8); ++n) {
            DiscoveryResult d = discover_coeffs(s, e.shift, n, e.depth);
            INFO(e.id << " n=" << n);
            REQUIRE(d.found);
            CHECK(d.coeffs == catalog_coeffs(e, n, s));
            CHECK(d.coeffs[0] == Scalar(1));
        }
    }
}

TEST_CASE("J = n always succeeds, J = n - 1 needs a vanishing constant term")
{
    for (const auto& c : negative_controls()) {
        CHECK(discover_coeffs(c.base, c.shift, 5, 5).found);
        auto d = discover_coeffs(c.base, c.shift, 5, 4);
        if (!d.found)
            CHECK(d.offending_index == 0);
    }
}

TEST_CASE("negative controls have no short combination")
{
    CHECK(negative_controls().size() >= 3);
    for (const auto& c : negative_controls())
        for (unsigned J = 1; J <= 3; ++J) {
            auto d = discover_coeffs(c.base, c.shift, 5, J);
            INFO(c.id << " J=" << J);
            CHECK(!d.found);
            CHECK(d.offending_index >= 0);
            CHECK(d.offending_index < static_cast<int>(5 - J));
        }
}

TEST_CASE("composing the two single shifts gives the joint shift")
{
    const auto& a = catalog_entry("bqj.a");
    const auto& b = catalog_entry("bqj.b");
    const auto& ab = catalog_entry("bqj.ab");
    FamilySpec s = reference_spec(ab);
    CHECK(chain_shift({&a, &b}).apply(s).str() == ab.shift.apply(s).str());
    for (unsigned n = 2; n <= 8; ++n)
        CHECK(compose_chain({&a, &b}, n, s) == catalog_coeffs(ab, n, s));
}

TEST_CASE("repeated composition matches discovery")
{
    for (const auto& e : catalog()) {
        if (e.depth != 1)
            continue;
        FamilySpec s = reference_spec(e);
        for (unsigned k = 1; k <= 3; ++k) {
            unsigned n = top_n(s, 6);
            FamilySpec shifted;
            try {
                shifted = e.shift.times(k).apply(s);
                if (region_check(s).status != RegionStatus::Orthogonal)
                    continue;
            } catch (const Error&) {
                continue;
            }
            auto d = discover_coeffs(s, e.shift.times(k), n, k);
            INFO(e.id << " k=" << k);
            REQUIRE(d.found);
            CHECK(compose_entries(e, k, n, s) == d.coeffs);
        }
    }
}

TEST_CASE("shift text")
{
    CHECK(ShiftSpec::parse("alpha/q^2,beta/q").str() == "alpha/q^2,beta/q");
    CHECK(ShiftSpec::parse("a-1,c-1").times(2).str() == "a-2,c-2");
    CHECK_THROWS_AS(ShiftSpec::parse(""), Error);
    CHECK_THROWS_AS(ShiftSpec::parse("alpha/q,alpha/q"), Error);
    CHECK_THROWS_AS(ShiftSpec::parse("alpha/q^0"), Error);
    CHECK_THROWS_AS(ShiftSpec::parse("alpha*2"), Error);
}

TEST_CASE("manifest lists every entry")
{
    auto j = nlohmann::json::parse(catalog_manifest_json())["entries"];
    REQUIRE(j.is_array());
    CHECK(j.size() == catalog().size());
    for (const auto& row : j) {
        CHECK(row.contains("id"));
        CHECK(row.contains("source_tag"));
        CHECK(row.contains("depth"));
        CHECK(row.contains("shift"));
    }
}

}
