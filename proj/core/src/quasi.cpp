#include "qortho/quasi.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <functional>
#include <thread>

#include "json.hpp"

namespace qortho {

namespace {

using RP = std::vector<mpq_class>;
using Witness = std::vector<std::pair<std::string, std::string>>;

void require_orthogonal(const FamilySpec& base)
{
    RegionVerdict v = region_check(base);
    if (v.status == RegionStatus::Orthogonal)
        return;
    std::string msg = "base is not in its orthogonality region (" + base.str() + ")";
    for (const auto& note : v.notes)
        if (note.rfind("ok:", 0) != 0)
            msg += "; " + note;
    throw Error(ErrorKind::NotOrthogonal, msg);
}

RP carrier_sq(const Poly& p)
{
    RP c = real_zero_carrier(p);
    while (!c.empty() && sgn(c.back()) == 0)
        c.pop_back();
    if (c.size() <= 1)
        return c;
    return squarefree_part(c);
}

int count_in(const SturmChain* chain, const Bound& lo, const Bound& hi)
{
    return chain ? chain->count(lo, hi) : 0;
}

struct IsoCounts {
    int left = -1, right = -1, inside = 0, total = 0;
    bool boundary = false;
};

IsoCounts iso_counts(const Poly& q, const Support& sup)
{
    IsoCounts r;
    RP sq = carrier_sq(q);
    std::optional<SturmChain> chain;
    if (sq.size() > 1)
        chain.emplace(sq);
    const SturmChain* ch = chain ? &*chain : nullptr;
    auto on = [&](const Bound& e) { return e && sq.size() > 1 && sign_at(sq, *e) == 0; };
    r.boundary = on(sup.lo) || on(sup.hi);
    r.total = count_in(ch, std::nullopt, std::nullopt);
    if (r.boundary)
        return r;
    if (sup.lo)
        r.left = count_in(ch, std::nullopt, sup.lo);
    if (sup.hi)
        r.right = count_in(ch, sup.hi, std::nullopt);
    r.inside = count_in(ch, sup.lo, sup.hi);
    return r;
}

// Same decision rule as the sign criterion: exits at finite ends, AllInside
// only when both ends are finite.
Extreme extreme_from(const IsoCounts& c, const Support& sup, unsigned n)
{
    if (c.boundary)
        return Extreme::Undetermined;
    bool l = c.left > 0, r = c.right > 0;
    if (l && r)
        return Extreme::Undetermined;
    if (l)
        return Extreme::LeftExit;
    if (r)
        return Extreme::RightExit;
    if (sup.lo && sup.hi && c.inside == static_cast<int>(n))
        return Extreme::AllInside;
    return Extreme::Undetermined;
}

std::string str(const Scalar& s) { return s.str(); }

std::string join(const std::vector<Scalar>& v)
{
    std::string s = "[";
    for (size_t i = 0; i < v.size(); ++i)
        s += (i ? ", " : "") + v[i].str();
    return s + "]";
}

const Scalar& real_or_throw(const Scalar& s, const char* what)
{
    if (!s.is_real())
        throw Error(ErrorKind::NotReal, std::string(what) + " is not real: " + s.str());
    return s;
}

// ---- located items for interlacing ----

struct Item {
    std::string label;
    int src = 0;   // which polynomial (or -1 for exact points)
    RootBox box;   // for points lo == hi == value
    bool exact = false;
};

bool separated(const Item& a, const Item& b)
{
    if (a.exact && b.exact)
        return a.box.lo != b.box.lo;
    if (a.exact)
        return a.box.lo <= b.box.lo || a.box.lo >= b.box.hi;
    if (b.exact)
        return b.box.lo <= a.box.lo || b.box.lo >= a.box.hi;
    return a.box.hi <= b.box.lo || b.box.hi <= a.box.lo;
}

const mpq_class& cap_width()
{
    static const mpq_class c = mpq_class(1) / mpq_class(mpz_class(1) << 256);
    return c;
}

struct Located {
    Certificate status = Certificate::Certified;
    std::string detail;
    mpq_class width = 0;
    std::vector<Item> items; // sorted when Certified
};

Poly rp_to_poly(const RP& p)
{
    std::vector<Scalar> c;
    for (const auto& v : p)
        c.emplace_back(v);
    return Poly(std::move(c));
}

RP poly_to_rp(const Poly& p)
{
    RP r;
    for (const auto& c : p.coeffs())
        r.push_back(c.real());
    return r;
}

// Refine until pairwise disjoint across sources. sqs[src] is the squarefree
// polynomial the boxes of src isolate. With refine == false any overlap is
// Inconclusive.
Located locate(std::vector<Item> items, const std::vector<RP>& sqs, const mpq_class& width, bool refine)
{
    Located out;
    if (refine)
        for (auto& it : items)
            if (!it.exact && it.box.width() > width)
                it.box = refine_root_sq(sqs[it.src], it.box, width);

    // shared-zero carriers per source pair
    size_t ns = sqs.size();
    std::vector<std::vector<std::optional<SturmChain>>> common(ns, std::vector<std::optional<SturmChain>>(ns));
    if (refine) {
        for (size_t i = 0; i < ns; ++i)
            for (size_t j = i + 1; j < ns; ++j) {
                if (sqs[i].size() <= 1 || sqs[j].size() <= 1)
                    continue;
                Poly g = gcd(rp_to_poly(sqs[i]), rp_to_poly(sqs[j]));
                if (g.degree() >= 1) {
                    common[i][j].emplace(squarefree_part(poly_to_rp(g)));
                }
            }
    }

    for (;;) {
        bool overlap = false;
        for (size_t i = 0; i < items.size(); ++i) {
            for (size_t j = i + 1; j < items.size(); ++j) {
                Item& a = items[i];
                Item& b = items[j];
                if (a.src == b.src && !a.exact)
                    continue;
                if (separated(a, b))
                    continue;
                if (!refine) {
                    out.status = Certificate::Inconclusive;
                    out.detail = "boxes of " + a.label + " and " + b.label + " overlap";
                    out.width = std::max(a.box.width(), b.box.width());
                    out.items = std::move(items);
                    return out;
                }
                // exact tie tests
                bool tie = false;
                if (a.exact && b.exact) {
                    tie = true;
                } else if (a.exact || b.exact) {
                    const Item& pt = a.exact ? a : b;
                    const Item& bx = a.exact ? b : a;
                    tie = sign_at(sqs[bx.src], pt.box.lo) == 0;
                } else {
                    int s = std::min(a.src, b.src), t = std::max(a.src, b.src);
                    if (common[s][t]) {
                        mpq_class lo = std::max(a.box.lo, b.box.lo), hi = std::min(a.box.hi, b.box.hi);
                        tie = lo < hi && common[s][t]->count(lo, hi) > 0;
                    }
                }
                if (tie) {
                    out.status = Certificate::Refuted;
                    out.detail = "shared zero: " + a.label + " = " + b.label;
                    out.width = std::max(a.box.width(), b.box.width());
                    out.items = std::move(items);
                    return out;
                }
                overlap = true;
                for (Item* it : {&a, &b}) {
                    if (it->exact)
                        continue;
                    it->box = refine_root_sq(sqs[it->src], it->box, it->box.width() / 2);
                    if (it->box.width() < cap_width()) {
                        out.status = Certificate::Inconclusive;
                        out.detail = "boxes of " + a.label + " and " + b.label + " still overlap at width 2^-256";
                        out.width = it->box.width();
                        out.items = std::move(items);
                        return out;
                    }
                }
            }
        }
        if (!overlap)
            break;
    }
    std::stable_sort(items.begin(), items.end(), [](const Item& a, const Item& b) { return a.box.lo < b.box.lo; });
    for (const auto& it : items)
        if (!it.exact)
            out.width = std::max(out.width, it.box.width());
    out.items = std::move(items);
    return out;
}

std::string label(const char* poly, size_t j) { return std::string(poly) + "[" + std::to_string(j) + "]"; }

constexpr const char* kQ = "Q";
constexpr const char* kPn = "Pn";
constexpr const char* kPn1 = "Pn-1";

std::vector<Item> make_items(const std::vector<RootBox>& boxes, int src, const char* name)
{
    std::vector<Item> v;
    for (size_t j = 0; j < boxes.size(); ++j)
        v.push_back({label(name, j + 1), src, boxes[j], false});
    return v;
}

std::vector<std::string> full_chain(size_t n, InterlaceVariant v)
{
    std::vector<std::string> e;
    for (size_t j = 1; j <= n; ++j) {
        if (v == InterlaceVariant::QuasiBelow) {
            e.push_back(label(kPn, j));
            e.push_back(label(kQ, j));
        } else {
            e.push_back(label(kQ, j));
            e.push_back(label(kPn, j));
        }
        if (j < n)
            e.push_back(label(kPn1, j));
    }
    return e;
}

std::vector<std::string> with_points(std::vector<std::string> chain, const std::vector<ChainPoint>& pts)
{
    std::vector<std::string> front, after, before, end;
    for (const auto& p : pts) {
        switch (p.pos) {
        case ChainPoint::Pos::Front: front.push_back(p.label); break;
        case ChainPoint::Pos::AfterFirst: after.push_back(p.label); break;
        case ChainPoint::Pos::BeforeLast: before.push_back(p.label); break;
        case ChainPoint::Pos::End: end.push_back(p.label); break;
        }
    }
    std::vector<std::string> out = front;
    for (size_t i = 0; i < chain.size(); ++i) {
        if (i + 1 == chain.size() && chain.size() > 1)
            out.insert(out.end(), before.begin(), before.end());
        out.push_back(chain[i]);
        if (i == 0)
            out.insert(out.end(), after.begin(), after.end());
    }
    out.insert(out.end(), end.begin(), end.end());
    return out;
}

InterlaceResult judge(Located loc, InterlaceVariant pattern, size_t n, const std::vector<ChainPoint>& pts)
{
    InterlaceResult r;
    r.status = loc.status;
    r.detail = loc.detail;
    r.width = loc.width;
    for (const auto& it : loc.items) {
        r.order.push_back(it.label);
        r.boxes.push_back({it.label, {it.box.lo, it.box.hi}});
    }
    if (loc.status != Certificate::Certified)
        return r;

    if (pattern == InterlaceVariant::PartialInner) {
        std::vector<size_t> wpos;
        for (size_t i = 0; i < loc.items.size(); ++i)
            if (loc.items[i].src == 1)
                wpos.push_back(i);
        for (size_t g = 0; g + 1 < wpos.size(); ++g) {
            int cnt = 0;
            for (size_t i = wpos[g] + 1; i < wpos[g + 1]; ++i)
                cnt += loc.items[i].src == 0;
            if (cnt != 1) {
                r.status = Certificate::Refuted;
                r.detail = std::to_string(cnt) + " zeros of Q between " + loc.items[wpos[g]].label + " and " +
                           loc.items[wpos[g + 1]].label;
                return r;
            }
        }
        r.detail = std::to_string(wpos.size() > 1 ? wpos.size() - 1 : 0) + " gaps hold one zero each";
        return r;
    }

    std::vector<std::string> expected = with_points(full_chain(n, pattern), pts);
    if (expected != r.order) {
        r.status = Certificate::Refuted;
        size_t k = 0;
        while (k < expected.size() && k < r.order.size() && expected[k] == r.order[k])
            ++k;
        r.detail = "order differs at position " + std::to_string(k + 1);
        if (k < expected.size() && k < r.order.size())
            r.detail += ": expected " + expected[k] + ", found " + r.order[k];
        else
            r.detail += ": expected " + std::to_string(expected.size()) + " items, found " +
                        std::to_string(r.order.size());
        return r;
    }
    r.detail = "chain holds";
    return r;
}

} // namespace

const char* to_string(Extreme e)
{
    switch (e) {
    case Extreme::LeftExit: return "left-exit";
    case Extreme::RightExit: return "right-exit";
    case Extreme::AllInside: return "all-inside";
    case Extreme::Undetermined: return "undetermined";
    }
    return "?";
}

const char* to_string(Beyond b)
{
    switch (b) {
    case Beyond::Odd: return "odd";
    case Beyond::Even: return "even";
    case Beyond::Infinite: return "infinite";
    }
    return "?";
}

const char* to_string(InterlaceVariant v)
{
    switch (v) {
    case InterlaceVariant::QuasiBelow: return "quasi-below";
    case InterlaceVariant::QuasiAbove: return "quasi-above";
    case InterlaceVariant::PartialInner: return "partial-inner";
    }
    return "?";
}

const char* to_string(Certificate c)
{
    switch (c) {
    case Certificate::Certified: return "certified";
    case Certificate::Refuted: return "refuted";
    case Certificate::Inconclusive: return "inconclusive";
    }
    return "?";
}

const char* to_string(ClaimVerdict v)
{
    switch (v) {
    case ClaimVerdict::Pass: return "pass";
    case ClaimVerdict::Fail: return "fail";
    case ClaimVerdict::Inconclusive: return "inconclusive";
    case ClaimVerdict::Skipped: return "skipped";
    case ClaimVerdict::Error: return "error";
    }
    return "?";
}

QuasiVerdict quasi_order_poly(const FamilySpec& base, const Poly& q)
{
    require_orthogonal(base);
    if (q.is_zero())
        throw Error(ErrorKind::ZeroPolynomial, "quasi_order of the zero polynomial");
    Poly m = make_monic(q);
    if (m.lattice() == Lattice::PlainX)
        m = m.with_lattice(base.lattice());
    unsigned n = static_cast<unsigned>(m.degree());
    auto basis = monic_basis(base, n);
    auto e = expand_in_basis(m, basis);
    unsigned low = 0;
    while (low < n && e[low].is_zero())
        ++low;

    QuasiVerdict v;
    v.n = n;
    v.order = n - low;
    for (unsigned i = 0; i <= v.order; ++i)
        v.coeffs.push_back(e[n - i]);

    Support sup = support_interval(base);
    RootCount rc = count_roots_in(m, sup.lo, sup.hi);
    v.zero_count = rc.count;
    v.perturbed = rc.perturbed;
    v.extreme = extreme_from(iso_counts(m, sup), sup, n);
    return v;
}

QuasiVerdict quasi_order(const FamilySpec& base, const ShiftSpec& shift, unsigned n)
{
    require_orthogonal(base);
    return quasi_order_poly(base, monic_poly(shift.apply(base), n, true));
}

Scalar f_ratio(const FamilySpec& base, unsigned n, const Scalar& point)
{
    if (n < 1)
        throw Error(ErrorKind::Domain, "f_n needs n >= 1");
    Scalar den = monic_poly(base, n - 1).eval(point);
    if (den.is_zero())
        throw Error(ErrorKind::Domain, "P_" + std::to_string(n - 1) + " vanishes at " + point.str());
    return monic_poly(base, n).eval(point) / den;
}

Order1Endpoint endpoint_classify_order1(const FamilySpec& base, const CatalogEntry& entry, unsigned n)
{
    if (entry.depth != 1)
        throw Error(ErrorKind::Domain, entry.id + " is not an order-one relation");
    if (entry.family != base.id)
        throw Error(ErrorKind::InvalidSpec, entry.id + " does not belong to " + to_string(base.id));
    auto sigma = catalog_coeffs(entry, n, base);
    Order1Endpoint r;
    r.a_n = real_or_throw(sigma[1], "a_n");
    Scalar ma = -r.a_n;
    Support sup = support_interval(base);

    // Q(e) = -(-a_n - f_n(e)) P_{n-1}(e), and P_{n-1} has all its zeros inside
    std::optional<Scalar> flo, fhi;
    bool lexit = false, rexit = false, boundary = false;
    if (sup.lo) {
        flo = f_ratio(base, n, Scalar(*sup.lo));
        r.left = ma - *flo;
        lexit = r.left->sign() < 0;
        boundary = boundary || r.left->is_zero();
    }
    if (sup.hi) {
        fhi = f_ratio(base, n, Scalar(*sup.hi));
        r.right = ma - *fhi;
        rexit = r.right->sign() > 0;
        boundary = boundary || r.right->is_zero();
    }
    if (lexit && rexit)
        r.verdict = Extreme::Undetermined;
    else if (lexit)
        r.verdict = Extreme::LeftExit;
    else if (rexit)
        r.verdict = Extreme::RightExit;
    else if (!boundary && flo && fhi)
        r.verdict = Extreme::AllInside;
    else
        r.verdict = Extreme::Undetermined;

    Poly q = monic_poly(entry.shift.apply(base), n, true);
    IsoCounts c = iso_counts(q, sup);
    r.beyond_left = c.left;
    r.beyond_right = c.right;
    r.isolation = extreme_from(c, sup, n);
    return r;
}

bool Order2Endpoint::agree() const
{
    auto ok = [](Beyond b, int cnt) {
        if (b == Beyond::Infinite)
            return true;
        if (cnt < 0)
            return false;
        return (b == Beyond::Odd) == (cnt % 2 == 1);
    };
    return ok(left, beyond_left) && ok(right, beyond_right);
}

Order2Endpoint endpoint_classify_order2(const FamilySpec& base, const CatalogEntry& entry, unsigned n)
{
    if (entry.depth != 2)
        throw Error(ErrorKind::Domain, entry.id + " is not an order-two relation");
    if (entry.family != base.id)
        throw Error(ErrorKind::InvalidSpec, entry.id + " does not belong to " + to_string(base.id));
    auto sigma = catalog_coeffs(entry, n, base);
    Order2Endpoint r;
    r.n = n;
    r.a_n = real_or_throw(sigma[1], "a_n");
    r.b_n = real_or_throw(sigma[2], "b_n");
    Support sup = support_interval(base);
    auto F = [&](const mpq_class& e) {
        Scalar fn = f_ratio(base, n, Scalar(e)), fn1 = f_ratio(base, n - 1, Scalar(e));
        return fn * fn1 + r.a_n * fn1 + r.b_n;
    };
    if (sup.lo) {
        r.F_left = F(*sup.lo);
        r.left = r.F_left->sign() < 0 ? Beyond::Odd : Beyond::Even;
    }
    if (sup.hi) {
        r.F_right = F(*sup.hi);
        r.right = r.F_right->sign() < 0 ? Beyond::Odd : Beyond::Even;
    }
    Poly q = monic_poly(entry.shift.apply(base), n, true);
    IsoCounts c = iso_counts(q, sup);
    r.beyond_left = c.boundary ? -1 : c.left;
    r.beyond_right = c.boundary ? -1 : c.right;
    r.real_zeros = c.total;
    return r;
}

InterlaceResult interlace_check(const std::vector<RootBox>& q_roots, const std::vector<RootBox>& n_roots,
                                const std::vector<RootBox>& n1_roots, InterlaceVariant pattern)
{
    std::vector<Item> items = make_items(q_roots, 0, kQ);
    size_t n = q_roots.size();
    if (pattern == InterlaceVariant::PartialInner) {
        auto w = make_items(n1_roots, 1, kPn1);
        items.insert(items.end(), w.begin(), w.end());
        return judge(locate(std::move(items), std::vector<RP>(2), 0, false), pattern, n, {});
    }
    if (n_roots.size() != n || n1_roots.size() + 1 != n) {
        InterlaceResult r;
        r.status = Certificate::Refuted;
        r.detail = "zero counts " + std::to_string(n) + "/" + std::to_string(n_roots.size()) + "/" +
                   std::to_string(n1_roots.size()) + " do not fit the chain";
        return r;
    }
    auto x = make_items(n_roots, 1, kPn);
    auto w = make_items(n1_roots, 2, kPn1);
    items.insert(items.end(), x.begin(), x.end());
    items.insert(items.end(), w.begin(), w.end());
    return judge(locate(std::move(items), std::vector<RP>(3), 0, false), pattern, n, {});
}

InterlaceResult certify_interlace(const Poly& q, const Poly& pn, const Poly& pn1, InterlaceVariant pattern,
                                  const std::vector<ChainPoint>& points, const mpq_class& width)
{
    size_t n = static_cast<size_t>(std::max(q.degree(), 0));
    RP sq = carrier_sq(q);
    auto qb = sturm_isolate(q);

    std::vector<RP> sqs{sq};
    std::vector<Item> items = make_items(qb, 0, kQ);
    if (pattern == InterlaceVariant::PartialInner) {
        sqs.push_back(carrier_sq(pn1));
        auto w = make_items(sturm_isolate(pn1), 1, kPn1);
        items.insert(items.end(), w.begin(), w.end());
        return judge(locate(std::move(items), sqs, width, true), pattern, n, {});
    }

    auto xb = sturm_isolate(pn);
    auto wb = sturm_isolate(pn1);
    bool simple = std::all_of(qb.begin(), qb.end(), [](const RootBox& b) { return b.multiplicity == 1; });
    if (qb.size() != n || !simple || xb.size() != n || wb.size() + 1 != n) {
        InterlaceResult r;
        r.status = Certificate::Refuted;
        r.detail = "Q has " + std::to_string(qb.size()) + " distinct real zeros" + (simple ? "" : " (some repeated)") +
                   " for degree " + std::to_string(n);
        for (const auto& b : qb)
            r.boxes.push_back({"Q", {b.lo, b.hi}});
        return r;
    }
    sqs.push_back(carrier_sq(pn));
    sqs.push_back(carrier_sq(pn1));
    auto x = make_items(xb, 1, kPn);
    auto w = make_items(wb, 2, kPn1);
    items.insert(items.end(), x.begin(), x.end());
    items.insert(items.end(), w.begin(), w.end());
    for (const auto& p : points) {
        Item it;
        it.label = p.label;
        it.src = -1;
        it.exact = true;
        it.box.lo = it.box.hi = p.value;
        items.push_back(it);
    }
    // exact points need a source slot for the refinement bookkeeping
    for (auto& it : items)
        if (it.exact)
            it.src = static_cast<int>(sqs.size());
    sqs.push_back(RP{});
    return judge(locate(std::move(items), sqs, width, true), pattern, n, points);
}

PartialInterlace partial_interlace_check(const FamilySpec& base, const CatalogEntry& entry, unsigned n,
                                         const mpq_class& width)
{
    if (entry.depth != 2)
        throw Error(ErrorKind::Domain, entry.id + " is not an order-two relation");
    if (n < 3)
        throw Error(ErrorKind::Domain, "partial interlacing needs n >= 3");
    auto sigma = catalog_coeffs(entry, n, base);
    auto basis = monic_basis(base, n);
    Ttrr t = ttrr_extract(basis);
    PartialInterlace r;
    r.C_n = real_or_throw(t.c[n - 1], "C_n");
    r.b_n = real_or_throw(sigma[2], "b_n");
    r.sign_b_minus_C = (r.b_n - r.C_n).sign();
    Poly q = monic_poly(entry.shift.apply(base), n, true);
    r.pattern = certify_interlace(q, basis[n], basis[n - 1], InterlaceVariant::PartialInner, {}, width);
    return r;
}

// ================= theorem suite =================

namespace {

struct Ctx {
    const FamilySpec& base;
    unsigned n;
    mpq_class width;
};

using Unmet = std::function<std::optional<std::string>(const FamilySpec&, unsigned)>;

struct ClaimDef {
    std::string id, tag;
    Unmet unmet;
    std::function<ClaimVerdict(const Ctx&, Witness&)> run;
};

mpq_class R(const FamilySpec& s, const char* k) { return s.get(k).real(); }
mpq_class Q(const FamilySpec& s) { return s.get("q").real(); }

std::optional<std::string> need(bool ok, const std::string& what)
{
    if (ok)
        return std::nullopt;
    return "hypothesis not met: " + what;
}

Unmet all_of(std::vector<Unmet> v)
{
    return [v](const FamilySpec& s, unsigned n) -> std::optional<std::string> {
        for (const auto& u : v)
            if (auto r = u(s, n))
                return r;
        return std::nullopt;
    };
}

Unmet none() { return [](const FamilySpec&, unsigned) { return std::optional<std::string>(); }; }

Unmet n_at_least(unsigned m)
{
    return [m](const FamilySpec&, unsigned n) { return need(n >= m, "n >= " + std::to_string(m)); };
}

Unmet gt1(const char* p)
{
    return [p](const FamilySpec& s, unsigned) { return need(R(s, p) > 1, std::string(p) + " > 1"); };
}

// 0 < Re(p) < 1
Unmet re_unit(const char* p)
{
    return [p](const FamilySpec& s, unsigned) {
        const mpq_class& v = s.get(p).re();
        return need(sgn(v) > 0 && v < 1, std::string("0 < Re ") + p + " < 1");
    };
}

void put(Witness& w, const std::string& k, const std::string& v) { w.emplace_back(k, v); }

std::string box_list(const InterlaceResult& r)
{
    std::string s;
    for (const auto& [lab, b] : r.boxes) {
        if (!s.empty())
            s += "; ";
        s += lab + " in (" + to_string(b.first) + ", " + to_string(b.second) + ")";
    }
    return s;
}

Poly shifted_poly(const FamilySpec& base, const ShiftSpec& sh, unsigned n) { return monic_poly(sh.apply(base), n, true); }

// --- claim builders ---

ClaimDef order_claim(std::string id, std::string tag, Unmet unmet, std::vector<std::pair<std::string, unsigned>> shifts,
                     bool iterate, bool check_zeros = true)
{
    ClaimDef d{std::move(id), std::move(tag), std::move(unmet), nullptr};
    d.run = [shifts, iterate, check_zeros](const Ctx& c, Witness& w) {
        bool ok = true;
        unsigned tried = 0;
        for (const auto& [text, k0] : shifts) {
            ShiftSpec base_shift = ShiftSpec::parse(text);
            unsigned kmax = iterate ? 3 : 1;
            for (unsigned m = 1; m <= kmax; ++m) {
                unsigned k = k0 * m;
                if (k + 1 > c.n)
                    break;
                ShiftSpec sh = base_shift.times(m);
                QuasiVerdict v = quasi_order(c.base, sh, c.n);
                ++tried;
                bool good = v.order == k && !v.coeffs.front().is_zero() && !v.coeffs.back().is_zero();
                if (check_zeros)
                    good = good && v.zero_count >= static_cast<int>(c.n - k);
                ok = ok && good;
                std::string key = sh.str();
                put(w, key + ".order", std::to_string(v.order) + " (expected " + std::to_string(k) + ")");
                put(w, key + ".a", join(v.coeffs));
                put(w, key + ".zeros_in_support",
                    std::to_string(v.zero_count) + " (at least " + std::to_string(c.n - k) + " required)");
            }
        }
        if (tried == 0) {
            put(w, "note", "no shift with k <= n-1");
            return ClaimVerdict::Skipped;
        }
        return ok ? ClaimVerdict::Pass : ClaimVerdict::Fail;
    };
    return d;
}

// At least n-k zeros in the support, claimed for a single shift.
ClaimDef zero_count_claim(std::string id, std::string tag, Unmet unmet, std::string shift, unsigned k)
{
    ClaimDef d{std::move(id), std::move(tag), std::move(unmet), nullptr};
    d.run = [shift, k](const Ctx& c, Witness& w) {
        Poly q = shifted_poly(c.base, ShiftSpec::parse(shift), c.n);
        int real = static_cast<int>(sturm_isolate(q).size());
        QuasiVerdict v = quasi_order_poly(c.base, q);
        put(w, "shifted", shift);
        put(w, "real_coefficients", q.is_real() ? "yes" : "no");
        put(w, "order", std::to_string(v.order));
        put(w, "distinct_real_zeros", std::to_string(real));
        put(w, "required", "at least " + std::to_string(c.n - k) + " real, distinct zeros");
        return real >= static_cast<int>(c.n - k) ? ClaimVerdict::Pass : ClaimVerdict::Fail;
    };
    return d;
}

ClaimDef endpoint1_claim(std::string id, std::string tag, Unmet unmet, std::string entry_id, Extreme expected)
{
    ClaimDef d{std::move(id), std::move(tag), std::move(unmet), nullptr};
    d.run = [entry_id, expected](const Ctx& c, Witness& w) {
        const CatalogEntry& e = catalog_entry(entry_id);
        Order1Endpoint r = endpoint_classify_order1(c.base, e, c.n);
        put(w, "entry", e.id);
        put(w, "a_n", str(r.a_n));
        if (r.left)
            put(w, "-a_n-f_n(lo)", str(*r.left));
        if (r.right)
            put(w, "-a_n-f_n(hi)", str(*r.right));
        put(w, "criterion", to_string(r.verdict));
        put(w, "isolation", to_string(r.isolation));
        put(w, "zeros_left_of_support", std::to_string(r.beyond_left));
        put(w, "zeros_right_of_support", std::to_string(r.beyond_right));
        put(w, "expected", to_string(expected));
        if (!r.agree()) {
            put(w, "dual_path", "disagree");
            return ClaimVerdict::Fail;
        }
        put(w, "dual_path", "agree");
        return r.verdict == expected ? ClaimVerdict::Pass : ClaimVerdict::Fail;
    };
    return d;
}

using PointsFn = std::function<std::vector<ChainPoint>(const FamilySpec&, unsigned)>;

PointsFn support_points(std::optional<ChainPoint::Pos> lo, std::optional<ChainPoint::Pos> hi)
{
    return [lo, hi](const FamilySpec& s, unsigned) {
        Support sup = support_interval(s);
        std::vector<ChainPoint> v;
        if (lo && sup.lo)
            v.push_back({"lo=" + to_string(*sup.lo), *sup.lo, *lo});
        if (hi && sup.hi)
            v.push_back({"hi=" + to_string(*sup.hi), *sup.hi, *hi});
        return v;
    };
}

ClaimDef chain_claim(std::string id, std::string tag, Unmet unmet, std::string entry_id, InterlaceVariant variant,
                     PointsFn points, std::string note = {})
{
    ClaimDef d{std::move(id), std::move(tag), std::move(unmet), nullptr};
    d.run = [entry_id, variant, points, note](const Ctx& c, Witness& w) {
        const CatalogEntry& e = catalog_entry(entry_id);
        auto sigma = catalog_coeffs(e, c.n, c.base);
        const Scalar& a = real_or_throw(sigma[1], "a_n");
        InterlaceVariant predicted = a.sign() < 0 ? InterlaceVariant::QuasiBelow : InterlaceVariant::QuasiAbove;
        Poly q = shifted_poly(c.base, e.shift, c.n);
        Poly pn = monic_poly(c.base, c.n), pn1 = monic_poly(c.base, c.n - 1);
        auto pts = points ? points(c.base, c.n) : std::vector<ChainPoint>{};
        InterlaceResult r = certify_interlace(q, pn, pn1, variant, pts, c.width);
        if (!note.empty())
            put(w, "note", note);
        put(w, "entry", e.id);
        put(w, "a_n", str(a));
        put(w, "claimed", to_string(variant));
        put(w, "criterion", to_string(predicted));
        put(w, "isolation", to_string(r.status));
        put(w, "detail", r.detail);
        put(w, "width", to_string(r.width));
        put(w, "boxes", box_list(r));
        if (r.status == Certificate::Inconclusive)
            return ClaimVerdict::Inconclusive;
        bool crit = predicted == variant;
        if (!crit) {
            // dual path: the criterion's own chain must certify
            InterlaceResult alt = certify_interlace(q, pn, pn1, predicted, {}, c.width);
            put(w, "criterion_chain", to_string(alt.status));
            return ClaimVerdict::Fail;
        }
        if (r.status == Certificate::Certified)
            return ClaimVerdict::Pass;
        // criterion holds but the chain (with its points) does not: check the bare chain
        InterlaceResult bare = certify_interlace(q, pn, pn1, variant, {}, c.width);
        put(w, "bare_chain", to_string(bare.status));
        return ClaimVerdict::Fail;
    };
    return d;
}

ClaimDef order2_claim(std::string id, std::string tag, Unmet unmet, std::string entry_id, bool left_odd,
                      bool right_odd)
{
    ClaimDef d{std::move(id), std::move(tag), std::move(unmet), nullptr};
    d.run = [entry_id, left_odd, right_odd](const Ctx& c, Witness& w) {
        const CatalogEntry& e = catalog_entry(entry_id);
        Order2Endpoint r = endpoint_classify_order2(c.base, e, c.n);
        put(w, "entry", e.id);
        put(w, "a_n", str(r.a_n));
        put(w, "b_n", str(r.b_n));
        if (r.F_left)
            put(w, "F(lo)", str(*r.F_left));
        if (r.F_right)
            put(w, "F(hi)", str(*r.F_right));
        put(w, "criterion_left", to_string(r.left));
        put(w, "criterion_right", to_string(r.right));
        put(w, "zeros_left_of_support", std::to_string(r.beyond_left));
        put(w, "zeros_right_of_support", std::to_string(r.beyond_right));
        put(w, "distinct_real_zeros", std::to_string(r.real_zeros));
        bool ok = r.realness_criterion() && r.real_zeros == static_cast<int>(c.n);
        if (left_odd)
            ok = ok && r.left == Beyond::Odd;
        if (right_odd)
            ok = ok && r.right == Beyond::Odd;
        if (!r.agree()) {
            put(w, "dual_path", "disagree");
            return ClaimVerdict::Fail;
        }
        put(w, "dual_path", "agree");
        return ok ? ClaimVerdict::Pass : ClaimVerdict::Fail;
    };
    return d;
}

ClaimDef partial_claim(std::string id, std::string tag, Unmet unmet, std::string entry_id)
{
    ClaimDef d{std::move(id), std::move(tag), std::move(unmet), nullptr};
    d.run = [entry_id](const Ctx& c, Witness& w) {
        const CatalogEntry& e = catalog_entry(entry_id);
        PartialInterlace r = partial_interlace_check(c.base, e, c.n, c.width);
        put(w, "entry", e.id);
        put(w, "C_n", str(r.C_n));
        put(w, "b_n", str(r.b_n));
        put(w, "C_n-b_n", str(r.C_n - r.b_n));
        put(w, "criterion", r.sign_b_minus_C > 0 ? "C_n < b_n" : "C_n >= b_n");
        put(w, "isolation", to_string(r.pattern.status));
        put(w, "detail", r.pattern.detail);
        put(w, "boxes", box_list(r.pattern));
        if (r.pattern.status == Certificate::Inconclusive)
            return ClaimVerdict::Inconclusive;
        if (!r.agree()) {
            put(w, "dual_path", "disagree");
            return ClaimVerdict::Fail;
        }
        put(w, "dual_path", "agree");
        return r.sign_b_minus_C > 0 ? ClaimVerdict::Pass : ClaimVerdict::Fail;
    };
    return d;
}

// No realness statement applies here: b_n > 0, so the negative b_n test is silent.
ClaimDef positive_bn_claim(std::string id, std::string tag, Unmet unmet, std::string entry_id)
{
    ClaimDef d{std::move(id), std::move(tag), std::move(unmet), nullptr};
    d.run = [entry_id](const Ctx& c, Witness& w) {
        const CatalogEntry& e = catalog_entry(entry_id);
        auto sigma = catalog_coeffs(e, c.n, c.base);
        Poly q = shifted_poly(c.base, e.shift, c.n);
        put(w, "entry", e.id);
        put(w, "b_n", str(sigma[2]));
        put(w, "distinct_real_zeros", std::to_string(sturm_isolate(q).size()));
        return real_or_throw(sigma[2], "b_n").sign() > 0 ? ClaimVerdict::Pass : ClaimVerdict::Fail;
    };
    return d;
}

ClaimDef moments_claim(std::string id, std::string tag, Unmet unmet, std::string entry_id, unsigned k)
{
    ClaimDef d{std::move(id), std::move(tag), std::move(unmet), nullptr};
    d.run = [entry_id, k](const Ctx& c, Witness& w) {
        if (k + 1 > c.n) {
            put(w, "note", "needs n > k");
            return ClaimVerdict::Skipped;
        }
        const CatalogEntry& e = catalog_entry(entry_id);
        ShiftSpec sh = e.shift.times(k);
        Poly q = shifted_poly(c.base, sh, c.n);
        QuasiVerdict v = quasi_order_poly(c.base, q);
        bool ok = v.order == k;
        put(w, "shift", sh.str());
        put(w, "order", std::to_string(v.order));
        for (unsigned m = 0; m <= c.n - k; ++m) {
            Scalar mom = discrete_moment(c.base, q, m);
            bool want_zero = m + k + 1 <= c.n;
            ok = ok && (mom.is_zero() == want_zero);
            put(w, "m=" + std::to_string(m), mom.str());
        }
        return ok ? ClaimVerdict::Pass : ClaimVerdict::Fail;
    };
    return d;
}

ClaimDef quadrature_claim(std::string id, std::string tag, Unmet unmet, std::string entry_id)
{
    ClaimDef d{std::move(id), std::move(tag), std::move(unmet), nullptr};
    d.run = [entry_id](const Ctx& c, Witness& w) {
        const CatalogEntry& e = catalog_entry(entry_id);
        Poly q = shifted_poly(c.base, e.shift, c.n);
        const mpq_class node_w = mpq_class(1) / mpq_class(mpz_class("100000000000000000000"));
        const mpq_class tiny(1, 1000000000000UL);
        bool ok = true;
        for (unsigned m = 0; m + 1 <= c.n; ++m) {
            GaussMoment g = gauss_moment(c.base, q, m, node_w);
            mpq_class hi = abs(g.value) + g.bound, lo = abs(g.value) - g.bound;
            // vanishing below 1e-12; the last moment must be certified nonzero
            bool good = m + 2 <= c.n ? hi <= tiny : sgn(lo) > 0;
            ok = ok && good;
            char buf[64];
            std::snprintf(buf, sizeof buf, "%.6e +- %.1e", g.value.get_d(), g.bound.get_d());
            put(w, "m=" + std::to_string(m), buf);
        }
        return ok ? ClaimVerdict::Pass : ClaimVerdict::Fail;
    };
    return d;
}

// --- region sweeps for the "sign varies" statements ---

struct Range {
    const char* name;
    std::function<std::optional<mpq_class>(const mpq_class&)> lo, hi; // functions of q
};

std::vector<mpq_class> samples(const std::optional<mpq_class>& lo, const std::optional<mpq_class>& hi)
{
    if (lo && hi)
        return {*lo + (*hi - *lo) * mpq_class(1, 10), *lo + (*hi - *lo) / 2, *lo + (*hi - *lo) * mpq_class(9, 10)};
    if (hi)
        return {*hi - mpq_class(1, 10), *hi - 1, *hi - 15};
    if (lo)
        return {*lo + mpq_class(1, 10), *lo + 1, *lo + 15};
    return {mpq_class(-1), mpq_class(0), mpq_class(1)};
}

std::vector<FamilySpec> region_grid(FamilyId id, const std::vector<Range>& ranges)
{
    static const std::vector<mpq_class> qs = {mpq_class(1, 10), mpq_class(1, 5), mpq_class(2, 5), mpq_class(1, 2),
                                              mpq_class(9, 10)};
    std::vector<FamilySpec> out;
    for (const auto& q : qs) {
        std::vector<std::map<std::string, Scalar>> acc{{{"q", Scalar(q)}}};
        for (const auto& r : ranges) {
            std::vector<std::map<std::string, Scalar>> next;
            for (const auto& m : acc)
                for (const auto& v : samples(r.lo(q), r.hi(q))) {
                    auto m2 = m;
                    m2[r.name] = Scalar(v);
                    next.push_back(std::move(m2));
                }
            acc = std::move(next);
        }
        for (auto& m : acc) {
            FamilySpec s;
            s.id = id;
            s.params = std::move(m);
            out.push_back(std::move(s));
        }
    }
    return out;
}

enum class Side { Left, Right };

// Sign of the exact criterion at one endpoint; the isolation count must match.
struct SweepPoint {
    int sign = 0;
    bool exits = false; // criterion says an (odd number of) zero(s) beyond
    bool agree = false;
};

SweepPoint sweep_eval(const FamilySpec& s, const CatalogEntry& e, unsigned n, Side side)
{
    SweepPoint p;
    if (e.depth == 1) {
        Order1Endpoint r = endpoint_classify_order1(s, e, n);
        const Scalar& v = side == Side::Left ? *r.left : *r.right;
        p.sign = v.sign();
        p.exits = side == Side::Left ? p.sign < 0 : p.sign > 0;
        int cnt = side == Side::Left ? r.beyond_left : r.beyond_right;
        p.agree = p.sign == 0 ? cnt < 0 : cnt >= 0 && (cnt > 0) == p.exits;
    } else {
        Order2Endpoint r = endpoint_classify_order2(s, e, n);
        const Scalar& v = side == Side::Left ? *r.F_left : *r.F_right;
        p.sign = v.sign();
        p.exits = p.sign < 0;
        int cnt = side == Side::Left ? r.beyond_left : r.beyond_right;
        p.agree = p.sign == 0 ? cnt < 0 : cnt >= 0 && (cnt % 2 == 1) == p.exits;
    }
    return p;
}

ClaimDef sweep_claim(std::string id, std::string tag, Unmet unmet, std::string entry_id, Side side,
                     std::vector<Range> ranges)
{
    ClaimDef d{std::move(id), std::move(tag), std::move(unmet), nullptr};
    d.run = [entry_id, side, ranges](const Ctx& c, Witness& w) {
        const CatalogEntry& e = catalog_entry(entry_id);
        auto grid = region_grid(c.base.id, ranges);
        unsigned n0 = e.depth;
        int neg = 0, pos = 0, zero = 0, skipped = 0, disagree = 0;
        std::string wneg, wpos;
        for (const auto& s : grid) {
            if (region_check(s).status != RegionStatus::Orthogonal) {
                ++skipped;
                continue;
            }
            for (unsigned m = n0; m <= c.n; ++m) {
                SweepPoint p;
                try {
                    p = sweep_eval(s, e, m, side);
                } catch (const Error&) {
                    ++skipped;
                    continue;
                }
                disagree += !p.agree;
                std::string tagged = s.str() + ";n=" + std::to_string(m) + (p.exits ? " (exits)" : " (stays)");
                if (p.sign < 0) {
                    if (neg++ == 0)
                        wneg = tagged;
                } else if (p.sign > 0) {
                    if (pos++ == 0)
                        wpos = tagged;
                } else {
                    ++zero;
                }
            }
        }
        put(w, "entry", e.id);
        put(w, "endpoint", side == Side::Left ? "lo" : "hi");
        put(w, "samples_negative", std::to_string(neg));
        put(w, "samples_positive", std::to_string(pos));
        put(w, "samples_zero", std::to_string(zero));
        put(w, "samples_skipped", std::to_string(skipped));
        put(w, "isolation_disagreements", std::to_string(disagree));
        if (!wneg.empty())
            put(w, "negative_witness", wneg);
        if (!wpos.empty())
            put(w, "positive_witness", wpos);
        // fixed instance
        try {
            SweepPoint p = sweep_eval(c.base, e, c.n, side);
            put(w, "instance", std::string(p.sign < 0 ? "negative" : p.sign > 0 ? "positive" : "zero") +
                                   (p.exits ? " (exits)" : " (stays)") + (p.agree ? ", isolation agrees" : ", isolation disagrees"));
        } catch (const Error& ex) {
            put(w, "instance", std::string("not evaluated: ") + ex.what());
        }
        bool undetermined = neg > 0 && pos > 0;
        put(w, "classification", undetermined ? "undetermined" : "determined");
        if (disagree)
            return ClaimVerdict::Fail;
        return undetermined ? ClaimVerdict::Pass : ClaimVerdict::Fail;
    };
    return d;
}

// --- per-family claim tables ---

using P = ChainPoint::Pos;

std::optional<mpq_class> none_b(const mpq_class&) { return std::nullopt; }

std::vector<ClaimDef> claims_for(FamilyId id)
{
    using F = FamilyId;
    const auto IB = InterlaceVariant::QuasiBelow;
    const auto IA = InterlaceVariant::QuasiAbove;
    std::vector<ClaimDef> v;
    switch (id) {
    case F::BigQJacobi: {
        auto ab = all_of({gt1("alpha"), gt1("beta")});
        v.push_back(order_claim("bqj.order.alpha", "bqj-thm-order-i", gt1("alpha"), {{"alpha/q", 1}}, true));
        v.push_back(order_claim("bqj.order.beta", "bqj-thm-order-ii", gt1("beta"), {{"beta/q", 1}}, true));
        v.push_back(order_claim("bqj.order.beta-gamma", "bqj-thm-order-iii", gt1("beta"), {{"beta/q,gamma/q", 1}}, true));
        v.push_back(order_claim("bqj.order.alpha-beta", "bqj-thm-order-iv", ab,
                                {{"alpha/q,beta/q", 2}, {"alpha/q^2,beta/q", 3}, {"alpha/q,beta/q^2", 3}}, false));
        v.push_back(chain_claim("bqj.interlace.alpha", "bqj-thm-interlace-i", gt1("alpha"), "bqj.a", IB,
                                support_points(P::Front, std::nullopt)));
        v.push_back(endpoint1_claim("bqj.endpoint.beta", "bqj-thm-interlace-ii", gt1("beta"), "bqj.b", Extreme::LeftExit));
        v.push_back(chain_claim("bqj.interlace.beta", "bqj-thm-interlace-ii", gt1("beta"), "bqj.b", IA,
                                support_points(P::AfterFirst, P::End)));
        v.push_back(chain_claim("bqj.interlace.beta-gamma", "bqj-thm-interlace-iii", gt1("beta"), "bqj.bg", IA,
                                support_points(std::nullopt, P::End)));
        v.push_back(order2_claim("bqj.order2.alpha-beta", "bqj-thm-interlace-iv", all_of({ab, n_at_least(2)}), "bqj.ab",
                                 true, false));
        std::vector<Range> bqj_region = {
            {"alpha", [](const mpq_class&) { return std::optional<mpq_class>(1); },
             [](const mpq_class& q) { return std::optional<mpq_class>(1 / q); }},
            {"beta", [](const mpq_class&) { return std::optional<mpq_class>(0); },
             [](const mpq_class& q) { return std::optional<mpq_class>(1 / q); }},
            {"gamma", none_b, [](const mpq_class&) { return std::optional<mpq_class>(0); }}};
        auto bqj_region_ab = bqj_region;
        bqj_region_ab[1].lo = [](const mpq_class&) { return std::optional<mpq_class>(1); };
        v.push_back(sweep_claim("bqj.undetermined.alpha-hi", "bqj-remark-i", gt1("alpha"), "bqj.a", Side::Right,
                                bqj_region));
        v.push_back(sweep_claim("bqj.undetermined.alpha-beta-hi", "bqj-thm-interlace-iv", all_of({ab, n_at_least(2)}),
                                "bqj.ab", Side::Right, bqj_region_ab));
        v.push_back(quadrature_claim("bqj.quadrature.alpha", "bqj-thm-order-i", gt1("alpha"), "bqj.a"));
        break;
    }
    case F::BigQLaguerre:
        v.push_back(order_claim("bql.order.alpha", "bql-remark-ii", gt1("alpha"), {{"alpha/q", 1}}, true));
        v.push_back(endpoint1_claim("bql.endpoint.alpha", "bql-remark-ii", gt1("alpha"), "bql.a", Extreme::AllInside));
        v.push_back(chain_claim("bql.interlace.alpha", "bql-remark-ii", gt1("alpha"), "bql.a", IB,
                                support_points(P::Front, P::End)));
        break;
    case F::QHahn: {
        auto ab = all_of({gt1("alpha"), gt1("beta")});
        v.push_back(order_claim("qhahn.order.alpha", "qhahn-thm-order", gt1("alpha"), {{"alpha/q", 1}}, true));
        v.push_back(order_claim("qhahn.order.beta", "qhahn-thm-order", gt1("beta"), {{"beta/q", 1}}, true));
        v.push_back(order_claim("qhahn.order.alpha-beta", "qhahn-thm-order", ab,
                                {{"alpha/q,beta/q", 2}, {"alpha/q^2,beta/q", 3}}, false));
        v.push_back(endpoint1_claim("qhahn.endpoint.alpha", "qhahn-thm-interlace-i", gt1("alpha"), "qhahn.a",
                                    Extreme::LeftExit));
        v.push_back(chain_claim("qhahn.interlace.alpha", "qhahn-thm-interlace-i", gt1("alpha"), "qhahn.a", IA,
                                support_points(P::AfterFirst, P::End)));
        v.push_back(endpoint1_claim("qhahn.endpoint.beta", "qhahn-thm-interlace-ii", gt1("beta"), "qhahn.b",
                                    Extreme::RightExit));
        v.push_back(chain_claim("qhahn.interlace.beta", "qhahn-thm-interlace-ii", gt1("beta"), "qhahn.b", IB,
                                support_points(P::Front, P::BeforeLast)));
        v.push_back(order2_claim("qhahn.order2.alpha-beta", "qhahn-thm-order2", all_of({ab, n_at_least(2)}), "qhahn.ab",
                                 true, true));
        v.push_back(positive_bn_claim("qhahn.remark.alpha2", "qhahn-remark-alpha2", all_of({gt1("alpha"), n_at_least(2)}),
                                      "qhahn.a2"));
        for (unsigned k : {1u, 2u}) {
            v.push_back(moments_claim("qhahn.moments.alpha.k" + std::to_string(k), "qhahn-discrete-def", gt1("alpha"),
                                      "qhahn.a", k));
            v.push_back(moments_claim("qhahn.moments.beta.k" + std::to_string(k), "qhahn-discrete-def", gt1("beta"),
                                      "qhahn.b", k));
        }
        break;
    }
    case F::AffineQKrawtchouk:
        v.push_back(order_claim("affqk.order.alpha", "affqk-remark-i", gt1("alpha"), {{"alpha/q", 1}}, true));
        v.push_back(endpoint1_claim("affqk.endpoint.alpha", "affqk-remark-i", gt1("alpha"), "affqk.a", Extreme::LeftExit));
        v.push_back(chain_claim("affqk.interlace.alpha", "affqk-remark-i", gt1("alpha"), "affqk.a", IA,
                                support_points(P::AfterFirst, P::End)));
        for (unsigned k : {1u, 2u})
            v.push_back(moments_claim("affqk.moments.alpha.k" + std::to_string(k), "qhahn-discrete-def", gt1("alpha"),
                                      "affqk.a", k));
        break;
    case F::QuantumQKrawtchouk: {
        const std::string note =
            "stated range q^-N < p < q^(-N+1) is empty for 0 < q < 1; evaluated at an orthogonal instance p > q^-N";
        v.push_back(order_claim("qtmqk.order.p", "qtmqk-remark-ii", none(), {{"p/q", 1}}, true));
        v.push_back(endpoint1_claim("qtmqk.endpoint.p", "qtmqk-remark-ii", none(), "qtmqk.p", Extreme::RightExit));
        v.push_back(chain_claim("qtmqk.interlace.p", "qtmqk-remark-ii", none(), "qtmqk.p", IB,
                                support_points(P::Front, P::BeforeLast), note));
        for (unsigned k : {1u, 2u})
            v.push_back(moments_claim("qtmqk.moments.p.k" + std::to_string(k), "qhahn-discrete-def", none(), "qtmqk.p", k));
        break;
    }
    case F::QKrawtchouk:
        v.push_back(order_claim("qkraw.order.p", "qkraw-concluding", none(), {{"p/q", 1}}, true));
        for (unsigned k : {1u, 2u})
            v.push_back(moments_claim("qkraw.moments.p.k" + std::to_string(k), "qhahn-discrete-def", none(), "qkraw.p", k));
        break;
    case F::LittleQJacobi: {
        auto ab = all_of({gt1("alpha"), gt1("beta")});
        v.push_back(order_claim("lqj.order.alpha", "lqj-thm-order-i", gt1("alpha"), {{"alpha/q", 1}}, true));
        v.push_back(order_claim("lqj.order.beta", "lqj-thm-order-ii", gt1("beta"), {{"beta/q", 1}}, true));
        v.push_back(order_claim("lqj.order.alpha-beta", "lqj-thm-order-iii", ab,
                                {{"alpha/q,beta/q", 2}, {"alpha/q^2,beta/q", 3}}, false));
        v.push_back(endpoint1_claim("lqj.endpoint.alpha", "lqj-thm-interlace-i", gt1("alpha"), "lqj.a", Extreme::LeftExit));
        v.push_back(chain_claim("lqj.interlace.alpha", "lqj-thm-interlace-i", gt1("alpha"), "lqj.a", IA,
                                support_points(P::AfterFirst, P::End)));
        v.push_back(endpoint1_claim("lqj.endpoint.beta", "lqj-thm-interlace-ii", gt1("beta"), "lqj.b", Extreme::RightExit));
        v.push_back(chain_claim("lqj.interlace.beta", "lqj-thm-interlace-ii", gt1("beta"), "lqj.b", IB,
                                support_points(P::Front, P::BeforeLast)));
        v.push_back(order2_claim("lqj.order2.alpha-beta", "lqj-thm-order2", all_of({ab, n_at_least(2)}), "lqj.ab", true,
                                 true));
        v.push_back(partial_claim("lqj.partial.alpha2", "lqj-remark-i", all_of({gt1("alpha"), n_at_least(3)}), "lqj.a2"));
        break;
    }
    case F::LittleQLaguerre:
        v.push_back(order_claim("lql.order.alpha", "lql-remark-ii", gt1("alpha"), {{"alpha/q", 1}}, true));
        v.push_back(endpoint1_claim("lql.endpoint.alpha", "lql-remark-ii", gt1("alpha"), "lql.a", Extreme::LeftExit));
        v.push_back(chain_claim("lql.interlace.alpha", "lql-remark-ii", gt1("alpha"), "lql.a", IA,
                                support_points(P::AfterFirst, P::End)));
        break;
    case F::QLaguerre: {
        Unmet t_range = [](const FamilySpec& s, unsigned) {
            mpq_class t = R(s, "t");
            return need(t > 1 && t * Q(s) < 1, "1 < t < 1/q (-1 < alpha < 0)");
        };
        v.push_back(order_claim("qlag.order.alpha", "qlag-thm-order", t_range, {{"t/q", 1}}, true));
        v.push_back(endpoint1_claim("qlag.endpoint.alpha", "qlag-thm-interlace", t_range, "qlag.t", Extreme::LeftExit));
        v.push_back(chain_claim("qlag.interlace.alpha", "qlag-thm-interlace", t_range, "qlag.t", IA,
                                support_points(P::AfterFirst, std::nullopt)));
        break;
    }
    case F::AlSalamCarlitzI: {
        Unmet cond = [](const FamilySpec& s, unsigned n) {
            mpq_class qn = Scalar(Q(s)).pow(static_cast<long>(n)).real();
            return need(R(s, "alpha") < qn / (qn - 1), "alpha < q^n/(q^n-1)");
        };
        Unmet cond2 = [](const FamilySpec& s, unsigned n) {
            mpq_class qn = Scalar(Q(s)).pow(static_cast<long>(n)).real();
            return need(R(s, "alpha") < qn * Q(s) / (qn - 1), "alpha < q^(n+1)/(q^n-1)");
        };
        v.push_back(order_claim("asc1.order.alpha", "asc1-thm-order", none(), {{"alpha/q", 1}}, true));
        v.push_back(chain_claim("asc1.interlace.alpha", "asc1-thm-interlace-i", none(), "asc1.a", IA,
                                [](const FamilySpec& s, unsigned) {
                                    mpq_class a = R(s, "alpha");
                                    return std::vector<ChainPoint>{{"alpha/q=" + to_string(a / Q(s)), a / Q(s), P::Front},
                                                                   {"alpha=" + to_string(a), a, P::AfterFirst},
                                                                   {"hi=1", mpq_class(1), P::End}};
                                }));
        v.push_back(endpoint1_claim("asc1.endpoint.alpha", "asc1-thm-interlace-i", cond, "asc1.a", Extreme::LeftExit));
        v.push_back(sweep_claim("asc1.undetermined.alpha-lo", "asc1-thm-interlace-i", none(), "asc1.a", Side::Left,
                                {{"alpha", none_b, [](const mpq_class&) { return std::optional<mpq_class>(0); }}}));
        v.push_back(partial_claim("asc1.partial.alpha2", "asc1-thm-interlace-ii", all_of({cond2, n_at_least(3)}),
                                  "asc1.a2"));
        break;
    }
    case F::AskeyWilson: {
        Unmet amax = [](const FamilySpec& s, unsigned) {
            auto abs2 = [&](const char* k) {
                const Scalar& x = s.get(k);
                return mpq_class(x.re() * x.re() + x.im() * x.im());
            };
            mpq_class a2 = abs2("a");
            bool ok = s.get("a").is_real() && a2 >= abs2("b") && a2 >= abs2("c") && a2 >= abs2("d") && a2 < 1 &&
                      Q(s) * Q(s) < a2;
            return need(ok, "|a| = max(|a|,|b|,|c|,|d|), q < |a| < 1");
        };
        Unmet apos = all_of({amax, [](const FamilySpec& s, unsigned) { return need(sgn(R(s, "a")) > 0, "a > 0"); }});
        Unmet aneg = all_of({amax, [](const FamilySpec& s, unsigned) { return need(sgn(R(s, "a")) < 0, "a < 0"); }});
        v.push_back(order_claim("aw.order.a", "aw-thm-order", amax, {{"a/q", 1}}, true));
        v.push_back(chain_claim("aw.interlace.a-positive", "aw-thm-interlace-i", apos, "aw.a", IB,
                                support_points(P::Front, std::nullopt)));
        v.push_back(chain_claim("aw.interlace.a-negative", "aw-thm-interlace-ii", aneg, "aw.a", IA,
                                support_points(std::nullopt, P::End)));
        v.push_back(quadrature_claim("aw.quadrature.a", "aw-thm-order", amax, "aw.a"));
        break;
    }
    case F::QRacah: {
        Unmet acase = [](const FamilySpec& s, unsigned) {
            mpq_class q = Q(s), qN = Scalar(q).pow(-*s.N).real();
            bool ok = R(s, "alpha") * q == qN && R(s, "beta") * q < 1 && R(s, "gamma") * q < 1 &&
                      R(s, "beta") * R(s, "delta") * q < 1;
            return need(ok, "alpha = q^(-N-1), beta q < 1, gamma q < 1, beta delta q < 1");
        };
        Unmet bcase = [](const FamilySpec& s, unsigned) {
            mpq_class q = Q(s), qN = Scalar(q).pow(-*s.N).real();
            bool ok = R(s, "beta") * R(s, "delta") * q == qN && R(s, "alpha") * q < 1 && R(s, "gamma") * q < 1 &&
                      R(s, "alpha") * q / R(s, "delta") < 1;
            return need(ok, "beta = q^(-N-1)/delta, alpha q < 1, gamma q < 1, alpha q/delta < 1");
        };
        Unmet half = [](const FamilySpec& s, unsigned n) { return need(2 * n > static_cast<unsigned>(*s.N) + 2, "n > N/2 + 1"); };
        Unmet a_only = [](const FamilySpec& s, unsigned) {
            mpq_class q = Q(s), qN = Scalar(q).pow(-*s.N).real();
            return need(R(s, "alpha") * q == qN, "alpha = q^(-N-1)");
        };
        Unmet b_only = [](const FamilySpec& s, unsigned) {
            mpq_class q = Q(s), qN = Scalar(q).pow(-*s.N).real();
            return need(R(s, "beta") * R(s, "delta") * q == qN, "beta = q^(-N-1)/delta");
        };
        v.push_back(order_claim("qracah.order.alpha", "qracah-thm-order-i", a_only, {{"alpha/q", 1}}, true));
        v.push_back(order_claim("qracah.order.beta", "qracah-thm-order-ii", b_only, {{"beta/q", 1}}, false));
        v.push_back(chain_claim("qracah.interlace.alpha", "qracah-thm-interlace-i", all_of({acase, half}), "qracah.a", IB,
                                support_points(P::Front, std::nullopt)));
        v.push_back(chain_claim("qracah.interlace.beta", "qracah-thm-interlace-ii", all_of({bcase, half}), "qracah.b", IB,
                                support_points(P::Front, std::nullopt)));
        for (unsigned k : {1u, 2u}) {
            v.push_back(moments_claim("qracah.moments.alpha.k" + std::to_string(k), "qhahn-discrete-def", a_only,
                                      "qracah.a", k));
        }
        v.push_back(moments_claim("qracah.moments.beta.k1", "qhahn-discrete-def", b_only, "qracah.b", 1));
        break;
    }
    case F::Racah: {
        Unmet acase = [](const FamilySpec& s, unsigned) {
            bool ok = R(s, "alpha") == -*s.N - 1 && sgn(R(s, "beta")) > 0 && sgn(R(s, "gamma")) > 0 &&
                      sgn(R(s, "delta")) > 0;
            return need(ok, "alpha = -N-1, beta, gamma, delta > 0");
        };
        Unmet bcase = [](const FamilySpec& s, unsigned) {
            bool ok = R(s, "beta") == -*s.N - R(s, "delta") - 1 && sgn(R(s, "alpha")) > 0 && sgn(R(s, "gamma")) > 0 &&
                      R(s, "alpha") > R(s, "delta");
            return need(ok, "beta = -N-delta-1, alpha, gamma > 0, alpha > delta");
        };
        Unmet half = [](const FamilySpec& s, unsigned n) { return need(2 * n > static_cast<unsigned>(*s.N) + 2, "n > N/2 + 1"); };
        Unmet a_only = [](const FamilySpec& s, unsigned) { return need(R(s, "alpha") == -*s.N - 1, "alpha = -N-1"); };
        Unmet b_only = [](const FamilySpec& s, unsigned) {
            return need(R(s, "beta") == -*s.N - R(s, "delta") - 1, "beta = -N-delta-1");
        };
        v.push_back(order_claim("racah.order.alpha", "racah-thm-order-i", a_only, {{"alpha-1", 1}}, true));
        v.push_back(order_claim("racah.order.beta", "racah-thm-order-ii", b_only, {{"beta-1", 1}}, true));
        v.push_back(chain_claim("racah.interlace.alpha", "racah-thm-interlace-i", all_of({acase, half}), "racah.a", IB,
                                support_points(P::Front, std::nullopt)));
        v.push_back(chain_claim("racah.interlace.beta", "racah-thm-interlace-ii", all_of({bcase, half}), "racah.b", IB,
                                support_points(P::Front, std::nullopt)));
        for (unsigned k : {1u, 2u}) {
            v.push_back(moments_claim("racah.moments.alpha.k" + std::to_string(k), "qhahn-discrete-def", a_only, "racah.a", k));
            v.push_back(moments_claim("racah.moments.beta.k" + std::to_string(k), "qhahn-discrete-def", b_only, "racah.b", k));
        }
        break;
    }
    case F::Wilson: {
        Unmet base_ok = [](const FamilySpec& s, unsigned) {
            bool ok = true;
            for (const char* k : {"b", "c", "d"})
                ok = ok && sgn(s.get(k).re()) > 0;
            return need(ok, "Re(b,c,d) > 0");
        };
        v.push_back(order_claim("wilson.order.a", "wilson-thm-order", re_unit("a"), {{"a-1", 1}}, true));
        v.push_back(order_claim("wilson.order.mixed", "wilson-thm-order", all_of({re_unit("a"), re_unit("b")}),
                                {{"a-1,b-1", 2}, {"a-2,b-1", 3}, {"a-1,b-2", 3}}, false));
        v.push_back(chain_claim("wilson.interlace.a", "wilson-thm-interlace", all_of({re_unit("a"), base_ok}), "wilson.a",
                                IA, nullptr));
        break;
    }
    case F::ContinuousHahn:
        v.push_back(order_claim("chahn.order.a-c", "chahn-thm-order", re_unit("a"), {{"a-1,c-1", 2}}, true));
        v.push_back(order_claim("chahn.order.b-d", "chahn-thm-order", re_unit("b"), {{"b-1,d-1", 2}}, true));
        v.push_back(order_claim("chahn.order.all", "chahn-thm-order", all_of({re_unit("a"), re_unit("b")}),
                                {{"a-1,b-1,c-1,d-1", 4}}, false));
        v.push_back(order_claim("chahn.order.a", "chahn-thm-order", re_unit("a"), {{"a-1", 1}}, true, false));
        v.push_back(zero_count_claim("chahn.zeros.a", "chahn-thm-order", re_unit("a"), "a-1", 1));
        v.push_back(partial_claim("chahn.partial.a-c", "chahn-thm-partial-i", all_of({re_unit("a"), n_at_least(3)}),
                                  "chahn.ac"));
        v.push_back(partial_claim("chahn.partial.b-d", "chahn-thm-partial-ii", all_of({re_unit("b"), n_at_least(3)}),
                                  "chahn.bd"));
        break;
    default:
        break;
    }
    return v;
}

} // namespace

bool has_suite(FamilyId id) { return !claims_for(id).empty(); }

std::vector<FamilySpec> suite_instances(FamilyId id)
{
    using F = FamilyId;
    const Scalar h(1, 2);
    switch (id) {
    case F::BigQJacobi:
        return {make_spec(F::BigQJacobi, {{"q", Scalar(2, 5)}, {"alpha", Scalar(2)}, {"beta", Scalar(2)}, {"gamma", Scalar(-1)}})};
    case F::BigQLaguerre:
        return {make_spec(F::BigQLaguerre, {{"q", Scalar(2, 5)}, {"alpha", Scalar(2)}, {"gamma", Scalar(-1)}})};
    case F::QHahn:
        return {make_spec(F::QHahn, {{"q", h}, {"alpha", Scalar(3, 2)}, {"beta", Scalar(3, 2)}}, 8)};
    case F::AffineQKrawtchouk:
        return {make_spec(F::AffineQKrawtchouk, {{"q", h}, {"alpha", Scalar(3, 2)}}, 8)};
    case F::QuantumQKrawtchouk:
        return {make_spec(F::QuantumQKrawtchouk, {{"q", h}, {"p", Scalar(384)}}, 8)};
    case F::QKrawtchouk:
        return {make_spec(F::QKrawtchouk, {{"q", h}, {"p", h}}, 8)};
    case F::LittleQJacobi:
        return {make_spec(F::LittleQJacobi, {{"q", h}, {"alpha", Scalar(3, 2)}, {"beta", Scalar(3, 2)}})};
    case F::LittleQLaguerre:
        return {make_spec(F::LittleQLaguerre, {{"q", h}, {"alpha", Scalar(3, 2)}})};
    case F::QLaguerre:
        return {make_spec(F::QLaguerre, {{"q", h}, {"t", Scalar(3, 2)}})};
    case F::AlSalamCarlitzI:
        return {make_spec(F::AlSalamCarlitzI, {{"q", h}, {"alpha", Scalar(-2)}})};
    case F::AskeyWilson: {
        auto s = make_spec(F::AskeyWilson, {{"q", Scalar(1, 3)}, {"a", h}, {"b", Scalar(1, 4)}, {"c", Scalar(1, 5)}, {"d", Scalar(-1, 6)}});
        return {s, s.with("a", -h)};
    }
    case F::QRacah:
        return {make_spec(F::QRacah, {{"q", h}, {"alpha", Scalar(128)}, {"beta", -h}, {"gamma", Scalar(1, 4)}, {"delta", Scalar(1, 3)}}, 6),
                make_spec(F::QRacah, {{"q", h}, {"alpha", -h}, {"beta", Scalar(384)}, {"gamma", Scalar(1, 4)}, {"delta", Scalar(1, 3)}}, 6)};
    case F::Racah:
        return {make_spec(F::Racah, {{"alpha", Scalar(-7)}, {"beta", Scalar(8)}, {"gamma", h}, {"delta", Scalar(1, 3)}}, 6),
                make_spec(F::Racah, {{"alpha", Scalar(15, 2)}, {"beta", Scalar(-22, 3)}, {"gamma", h}, {"delta", Scalar(1, 3)}}, 6)};
    case F::Wilson:
        return {make_spec(F::Wilson, {{"a", h}, {"b", Scalar(3, 4)}, {"c", Scalar(5, 4)}, {"d", Scalar(7, 4)}})};
    case F::ContinuousHahn:
        return {make_spec(F::ContinuousHahn, {{"a", Scalar(mpq_class(1, 3), mpq_class(1))},
                                              {"b", Scalar(mpq_class(3, 4), mpq_class(1, 2))},
                                              {"c", Scalar(mpq_class(1, 3), mpq_class(-1))},
                                              {"d", Scalar(mpq_class(3, 4), mpq_class(-1, 2))}})};
    default:
        return {};
    }
}

int SuiteReport::exit_code() const
{
    bool inconclusive = false;
    for (const auto& c : claims) {
        if (c.verdict == ClaimVerdict::Fail || c.verdict == ClaimVerdict::Error)
            return 1;
        inconclusive = inconclusive || c.verdict == ClaimVerdict::Inconclusive;
    }
    return inconclusive ? 3 : 0;
}

const Claim* SuiteReport::find(const std::string& id) const
{
    for (const auto& c : claims)
        if (c.id == id)
            return &c;
    return nullptr;
}

SuiteReport theorem_suite(const FamilySpec& base, unsigned n, const SuiteOptions& opt)
{
    require_orthogonal(base);
    if (base.N && n > static_cast<unsigned>(*base.N))
        throw Error(ErrorKind::Domain, "n exceeds N for " + base.str());
    auto defs = claims_for(base.id);
    SuiteReport rep;
    rep.base = base;
    rep.n = n;
    rep.claims.resize(defs.size());
    Ctx ctx{base, n, opt.width};

    std::atomic<size_t> next{0};
    auto worker = [&]() {
        for (;;) {
            size_t i = next.fetch_add(1);
            if (i >= defs.size())
                return;
            const ClaimDef& d = defs[i];
            Claim& c = rep.claims[i];
            c.id = d.id;
            c.source_tag = d.tag;
            try {
                if (auto why = d.unmet(base, n)) {
                    c.verdict = ClaimVerdict::Skipped;
                    c.witness.emplace_back("reason", *why);
                    continue;
                }
                c.verdict = d.run(ctx, c.witness);
            } catch (const std::exception& e) {
                c.verdict = ClaimVerdict::Error;
                c.witness.emplace_back("error", e.what());
            }
        }
    };
    unsigned jobs = std::max(1u, opt.jobs);
    if (jobs == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < jobs; ++t)
            pool.emplace_back(worker);
        for (auto& t : pool)
            t.join();
    }
    std::stable_sort(rep.claims.begin(), rep.claims.end(), [](const Claim& a, const Claim& b) { return a.id < b.id; });
    return rep;
}

std::string suite_report_json(const SuiteReport& r)
{
    nlohmann::ordered_json j;
    j["family"] = to_string(r.base.id);
    nlohmann::ordered_json params = nlohmann::ordered_json::object();
    for (const auto& [k, v] : r.base.params)
        params[k] = v.str();
    if (r.base.N)
        params["N"] = std::to_string(*r.base.N);
    j["params"] = params;
    j["n"] = r.n;
    nlohmann::ordered_json claims = nlohmann::ordered_json::array();
    for (const auto& c : r.claims) {
        nlohmann::ordered_json cj;
        cj["id"] = c.id;
        cj["source_tag"] = c.source_tag;
        cj["verdict"] = to_string(c.verdict);
        nlohmann::ordered_json w = nlohmann::ordered_json::object();
        for (const auto& [k, v] : c.witness)
            w[k] = v;
        cj["witness"] = w;
        claims.push_back(cj);
    }
    j["claims"] = claims;
    return j.dump(2) + "\n";
}

} // namespace qortho
