// Acceptance run: one PASS/FAIL line per criterion, exit 1 if any fails.
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <map>
#include <iostream>
#include <sstream>
#include <string>

#include "qortho/quasi.hpp"
#include "qortho_cli/cli.hpp"

using namespace qortho;

namespace {

const mpq_class kWidth(1, 1000000000000UL);

unsigned cap(const FamilySpec& s, unsigned n) { return s.N ? std::min<unsigned>(n, static_cast<unsigned>(*s.N)) : n; }

struct Outcome {
    bool ok = true;
    std::ostringstream note;
    unsigned checked = 0;

    void require(bool cond, const std::string& what)
    {
        ++checked;
        if (!cond && ok) {
            ok = false;
            note << what;
        } else if (!cond) {
            note << "; " << what;
        }
    }
};

bool starts_with(const std::string& s, const std::string& p) { return s.rfind(p, 0) == 0; }

std::string witness(const Claim& c, const std::string& key)
{
    for (const auto& [k, v] : c.witness)
        if (k == key)
            return v;
    return {};
}

// --- 1 ---
void catalog_identities(Outcome& o)
{
    for (const auto& e : catalog()) {
        FamilySpec s = reference_spec(e);
        for (unsigned n = e.depth + 1; n <= cap(s, 8); ++n) {
            VerifyResult r = verify_entry(e, n, s);
            o.require(r.holds && r.residual.is_zero(), e.id + " n=" + std::to_string(n));
        }
    }
}

// --- 2 ---
void discovery_agreement(Outcome& o)
{
    for (const auto& e : catalog()) {
        FamilySpec s = reference_spec(e);
        for (unsigned n = e.depth; n <= cap(s, 8); ++n) {
            DiscoveryResult d = discover_coeffs(s, e.shift, n, e.depth);
            o.require(d.found && d.coeffs == catalog_coeffs(e, n, s), e.id + " n=" + std::to_string(n));
        }
    }
    const auto& a = catalog_entry("bqj.a");
    const auto& b = catalog_entry("bqj.b");
    const auto& ab = catalog_entry("bqj.ab");
    FamilySpec s = reference_spec(ab);
    for (unsigned n = 2; n <= 8; ++n)
        o.require(compose_chain({&a, &b}, n, s) == catalog_coeffs(ab, n, s), "compose bqj n=" + std::to_string(n));
}

// Runs the suite on every instance of the families and applies `pick` to each claim.
void suite_claims(Outcome& o, const std::vector<std::pair<FamilyId, unsigned>>& fams,
                  const std::function<bool(const std::string&)>& pick,
                  const std::function<void(const Claim&, Outcome&)>& extra = {})
{
    for (const auto& [id, n] : fams) {
        std::map<std::string, bool> passed; // claim id -> passed on some instance
        for (const auto& s : suite_instances(id)) {
            SuiteReport r = theorem_suite(s, n, {kWidth, 4});
            for (const auto& c : r.claims) {
                if (!pick(c.id))
                    continue;
                bool& p = passed[c.id];
                if (c.verdict == ClaimVerdict::Pass) {
                    p = true;
                    if (extra)
                        extra(c, o);
                } else if (c.verdict != ClaimVerdict::Skipped) {
                    o.require(false, c.id + " on " + s.str() + ": " + to_string(c.verdict));
                }
            }
        }
        if (passed.empty())
            o.require(false, std::string("no claims for ") + to_string(id));
        for (const auto& [cid, p] : passed)
            o.require(p, cid + " never applicable");
    }
}

// --- 5 ---
void quadrature(Outcome& o)
{
    const mpq_class node_w = mpq_class(1) / mpq_class(mpz_class("100000000000000000000"));
    const mpq_class tiny(1, 1000000000000UL), visible(1, 1000000);
    const unsigned n = 5;
    std::vector<std::pair<FamilySpec, const char*>> cases;
    cases.emplace_back(suite_instances(FamilyId::BigQJacobi).front(), "bqj.a");
    for (const auto& s : suite_instances(FamilyId::AskeyWilson))
        cases.emplace_back(s, "aw.a");
    for (const auto& [s, id] : cases) {
        const CatalogEntry& e = catalog_entry(id);
        Poly q = monic_poly(e.shift.apply(s), n, true);
        for (unsigned m = 0; m + 1 <= n; ++m) {
            GaussMoment g = gauss_moment(s, q, m, node_w);
            mpq_class hi = abs(g.value) + g.bound, lo = abs(g.value) - g.bound;
            char buf[96];
            std::snprintf(buf, sizeof buf, "%s m=%u |moment|=%.3e", id, m, g.value.get_d());
            if (m + 2 <= n)
                o.require(hi <= tiny, buf);
            else
                o.require(lo > visible, buf);
        }
    }
}

// --- 7 ---
void negative_controls_and_perturbation(Outcome& o)
{
    for (const auto& c : negative_controls())
        for (unsigned J = 1; J <= 3; ++J)
            o.require(!discover_coeffs(c.base, c.shift, 5, J).found, c.id + " J=" + std::to_string(J));
    for (const auto& e : catalog()) {
        FamilySpec s = reference_spec(e);
        unsigned n = cap(s, 5);
        auto sigma = catalog_coeffs(e, n, s);
        for (size_t j = 1; j < sigma.size(); ++j) {
            auto bad = sigma;
            bad[j] += Scalar(1, 1000);
            o.require(!verify_coeffs(s, e.shift, n, bad).holds, e.id + " perturbed sigma_" + std::to_string(j));
        }
    }
}

// --- 8 ---
void invariants(Outcome& o)
{
    std::map<std::string, FamilySpec> inst;
    auto add = [&](const FamilySpec& s) {
        if (region_check(s).status == RegionStatus::Orthogonal)
            inst.emplace(s.str(), s);
    };
    for (const auto& f : all_families())
        for (const auto& s : suite_instances(f.id))
            add(s);
    for (const auto& e : catalog())
        add(reference_spec(e));
    for (const auto& e : negative_controls())
        add(e.base);
    for (const auto& [key, s] : inst) {
        Ttrr t = ttrr_extract(monic_basis(s, cap(s, 11), true));
        for (size_t j = 1; j < t.c.size(); ++j)
            o.require(t.c[j].is_real() && t.c[j].sign() > 0, "Favard " + s.str() + " j=" + std::to_string(j));
        Support sup = support_interval(s);
        for (unsigned n = 1; n <= cap(s, 8); ++n) {
            Poly p = monic_poly(s, n, true);
            o.require(p.is_real(), "real coefficients " + s.str() + " n=" + std::to_string(n));
            auto rc = count_roots_in(p, sup.lo, sup.hi);
            o.require(rc.count == static_cast<int>(n) && !rc.perturbed, "roots inside " + s.str() + " n=" + std::to_string(n));
        }
    }

    // deterministic reports
    for (const auto& f : all_families()) {
        if (!has_suite(f.id))
            continue;
        for (const auto& s : suite_instances(f.id)) {
            std::string a = suite_report_json(theorem_suite(s, 5, {kWidth, 1}));
            std::string b = suite_report_json(theorem_suite(s, 5, {kWidth, 8}));
            o.require(a == b, "suite report differs across jobs for " + s.str());
        }
    }
    namespace fs = std::filesystem;
    fs::path tmp = fs::temp_directory_path() / "qortho-acceptance";
    cli::RunConfig c;
    c.command = cli::Command::Verify;
    c.all = true;
    c.n_lo = 1;
    c.n_hi = 8;
    c.out = (tmp / "j1").string();
    c.jobs = 1;
    auto r1 = cli::run_capture(c);
    c.out = (tmp / "j8").string();
    c.jobs = 8;
    auto r8 = cli::run_capture(c);
    o.require(r1.code == cli::kOk && r1.report == r8.report, "verify report differs across jobs");
    std::error_code ec;
    fs::remove_all(tmp, ec);
}

bool dual_path_ok(const Claim& c)
{
    // chain claims carry criterion and isolation, endpoint claims a dual_path flag
    std::string dp = witness(c, "dual_path");
    if (!dp.empty())
        return dp == "agree";
    std::string crit = witness(c, "criterion"), claimed = witness(c, "claimed"), iso = witness(c, "isolation");
    if (!iso.empty() && !claimed.empty())
        return crit == claimed && iso == "certified";
    return true;
}

} // namespace

int main()
{
    using Clock = std::chrono::steady_clock;
    struct Criterion {
        int number;
        const char* name;
        std::function<void(Outcome&)> run;
    };
    auto kind_is = [](std::initializer_list<const char*> kinds) {
        std::vector<std::string> v(kinds.begin(), kinds.end());
        return [v](const std::string& id) {
            auto dot = id.find('.');
            std::string rest = id.substr(dot + 1);
            for (const auto& k : v)
                if (starts_with(rest, k + std::string(".")))
                    return true;
            return false;
        };
    };

    std::vector<Criterion> crit{
        {1, "catalog identities, exact, n = J+1..8", catalog_identities},
        {2, "discovery equals catalog, composition", discovery_agreement},
        {3, "quasi-orthogonality order k = 1..3",
         [&](Outcome& o) {
             using F = FamilyId;
             suite_claims(o,
                          {{F::BigQJacobi, 6}, {F::QHahn, 6}, {F::LittleQJacobi, 6}, {F::QLaguerre, 6},
                           {F::AlSalamCarlitzI, 6}, {F::AskeyWilson, 6}, {F::Wilson, 6}, {F::Racah, 6},
                           {F::QRacah, 6}, {F::ContinuousHahn, 6}},
                          kind_is({"order"}));
         }},
        {4, "discrete moments, q-Hahn and q-Racah, k = 1,2, n = 5",
         [&](Outcome& o) {
             suite_claims(o, {{FamilyId::QHahn, 5}, {FamilyId::QRacah, 5}}, kind_is({"moments"}));
         }},
        {5, "Gauss quadrature moments, <= 1e-12 and > 1e-6, n = 5", quadrature},
        {6, "interlacing and endpoint verdicts, dual path",
         [&](Outcome& o) {
             using F = FamilyId;
             auto all_kinds = kind_is({"interlace", "endpoint", "undetermined", "order2", "partial"});
             auto check = [](const Claim& c, Outcome& oo) { oo.require(dual_path_ok(c), c.id + " dual path"); };
             suite_claims(o,
                          {{F::BigQJacobi, 5}, {F::QHahn, 5}, {F::LittleQJacobi, 5}, {F::QLaguerre, 5},
                           {F::AlSalamCarlitzI, 4}, {F::AskeyWilson, 5}, {F::QRacah, 5}, {F::Racah, 5},
                           {F::Wilson, 5}},
                          all_kinds, check);
             suite_claims(o, {{F::ContinuousHahn, 5}}, kind_is({"partial"}), check);
         }},
        {7, "negative controls and perturbed coefficients", negative_controls_and_perturbation},
        {8, "Favard, roots in support, real coefficients, determinism", invariants},
    };

    int failed = 0;
    for (auto& c : crit) {
        Outcome o;
        auto t0 = Clock::now();
        try {
            c.run(o);
        } catch (const std::exception& e) {
            o.require(false, std::string("exception: ") + e.what());
        }
        double secs = std::chrono::duration<double>(Clock::now() - t0).count();
        char head[160];
        std::snprintf(head, sizeof head, "[%s] %d %s (%u checks, %.2fs)", o.ok ? "PASS" : "FAIL", c.number, c.name,
                      o.checked, secs);
        std::cout << head;
        if (!o.ok) {
            ++failed;
            std::cout << ": " << o.note.str();
        }
        std::cout << "\n";
    }
    return failed ? 1 : 0;
}
