#include "qortho/roots.hpp"

#include <algorithm>

namespace qortho {

namespace {

using RP = std::vector<mpq_class>;

void rtrim(RP& p)
{
    while (!p.empty() && sgn(p.back()) == 0)
        p.pop_back();
}

RP to_rp(const Poly& p)
{
    RP r;
    r.reserve(p.coeffs().size());
    for (const Scalar& c : p.coeffs())
        r.push_back(c.real());
    return r;
}

RP rderiv(const RP& p)
{
    RP d;
    for (size_t i = 1; i < p.size(); ++i)
        d.push_back(p[i] * static_cast<unsigned long>(i));
    rtrim(d);
    return d;
}

// remainder of a / b
RP rrem(RP a, const RP& b)
{
    int db = static_cast<int>(b.size()) - 1;
    for (int k = static_cast<int>(a.size()) - 1; k >= db; --k) {
        if (sgn(a[k]) == 0)
            continue;
        mpq_class f = a[k] / b.back();
        for (int j = 0; j <= db; ++j)
            a[k - db + j] -= f * b[j];
    }
    a.resize(std::min<size_t>(a.size(), db));
    rtrim(a);
    return a;
}

RP rquot(RP a, const RP& b)
{
    int db = static_cast<int>(b.size()) - 1;
    int da = static_cast<int>(a.size()) - 1;
    if (da < db)
        return {};
    RP q(da - db + 1);
    for (int k = da; k >= db; --k) {
        if (sgn(a[k]) == 0)
            continue;
        mpq_class f = a[k] / b.back();
        q[k - db] = f;
        for (int j = 0; j <= db; ++j)
            a[k - db + j] -= f * b[j];
    }
    rtrim(q);
    return q;
}

RP rmonic(RP p)
{
    if (p.empty())
        return p;
    mpq_class l = p.back();
    for (auto& c : p)
        c /= l;
    return p;
}

RP rgcd(RP a, RP b)
{
    rtrim(a);
    rtrim(b);
    while (!b.empty()) {
        RP r = rrem(a, b);
        a = std::move(b);
        b = std::move(r);
    }
    return rmonic(a);
}

int sign_inf(const RP& p, bool plus)
{
    if (p.empty())
        return 0;
    int s = sgn(p.back());
    if (!plus && (p.size() - 1) % 2 == 1)
        s = -s;
    return s;
}

int count_variations(const std::vector<int>& signs)
{
    int v = 0, last = 0;
    for (int s : signs) {
        if (s == 0)
            continue;
        if (last != 0 && s != last)
            ++v;
        last = s;
    }
    return v;
}

// Choose a split point in (lo, hi) that is not a root of p.
mpq_class split_point(const RP& p, const mpq_class& lo, const mpq_class& hi)
{
    mpq_class w = hi - lo;
    mpq_class m = lo + w / 2;
    mpq_class frac(1, 4);
    while (sign_at(p, m) == 0) {
        m = lo + w * (mpq_class(1, 2) + frac);
        frac /= 2;
    }
    return m;
}

} // namespace

mpq_class eval_at(const RP& p, const mpq_class& x)
{
    mpq_class acc = 0;
    for (size_t i = p.size(); i-- > 0;) {
        acc *= x;
        acc += p[i];
    }
    return acc;
}

int sign_at(const RP& p, const mpq_class& x) { return sgn(eval_at(p, x)); }

RP squarefree_part(const RP& p)
{
    RP q = p;
    rtrim(q);
    if (q.size() <= 1)
        return rmonic(q);
    RP g = rgcd(q, rderiv(q));
    return rmonic(rquot(q, g));
}

RP real_zero_carrier(const Poly& p)
{
    if (p.is_real())
        return to_rp(p);
    return rgcd(to_rp(p.real_part()), to_rp(p.imag_part()));
}

SturmChain::SturmChain(const RP& sq)
{
    RP a = sq;
    rtrim(a);
    seq_.push_back(a);
    if (a.size() <= 1)
        return;
    RP b = rderiv(a);
    while (!b.empty()) {
        seq_.push_back(b);
        RP r = rrem(a, b);
        for (auto& c : r)
            c = -c;
        a = std::move(b);
        b = std::move(r);
    }
}

int SturmChain::variations_at(const mpq_class& x) const
{
    std::vector<int> s;
    s.reserve(seq_.size());
    for (const auto& p : seq_)
        s.push_back(sign_at(p, x));
    return count_variations(s);
}

int SturmChain::variations_at_minus_inf() const
{
    std::vector<int> s;
    for (const auto& p : seq_)
        s.push_back(sign_inf(p, false));
    return count_variations(s);
}

int SturmChain::variations_at_plus_inf() const
{
    std::vector<int> s;
    for (const auto& p : seq_)
        s.push_back(sign_inf(p, true));
    return count_variations(s);
}

int SturmChain::count(const Bound& lo, const Bound& hi) const
{
    int vlo = lo ? variations_at(*lo) : variations_at_minus_inf();
    int vhi = hi ? variations_at(*hi) : variations_at_plus_inf();
    return vlo - vhi;
}

std::vector<RootBox> sturm_isolate(const Poly& p)
{
    RP carrier = real_zero_carrier(p);
    rtrim(carrier);
    if (carrier.size() <= 1)
        return {};
    RP sq = squarefree_part(carrier);
    if (sq.size() <= 1)
        return {};
    SturmChain chain(sq);

    // Cauchy bound, strictly larger than every root modulus
    mpq_class bound = 0;
    for (size_t i = 0; i + 1 < sq.size(); ++i) {
        mpq_class r = abs(sq[i] / sq.back());
        if (r > bound)
            bound = r;
    }
    bound += 1;

    std::vector<RootBox> out;
    struct Work {
        mpq_class lo, hi;
        int n;
    };
    mpq_class lo0 = -bound, hi0 = bound;
    std::vector<Work> stack{{lo0, hi0, chain.count(lo0, hi0)}};
    // depth-first, right half pushed first so output comes out sorted
    while (!stack.empty()) {
        Work w = stack.back();
        stack.pop_back();
        if (w.n == 0)
            continue;
        if (w.n == 1) {
            RootBox b;
            b.lo = w.lo;
            b.hi = w.hi;
            b.sign_lo = sign_at(sq, w.lo);
            b.sign_hi = sign_at(sq, w.hi);
            out.push_back(b);
            continue;
        }
        mpq_class m = split_point(sq, w.lo, w.hi);
        int left = chain.count(w.lo, m);
        stack.push_back({m, w.hi, w.n - left});
        stack.push_back({w.lo, m, left});
    }

    // multiplicities from the repeated-gcd chain
    std::vector<RP> layers;
    RP g = carrier;
    for (;;) {
        g = rgcd(g, rderiv(g));
        if (g.size() <= 1)
            break;
        layers.push_back(g);
    }
    if (!layers.empty()) {
        std::vector<SturmChain> chains;
        for (const auto& l : layers)
            chains.emplace_back(squarefree_part(l));
        for (auto& b : out) {
            for (const auto& c : chains) {
                if (c.count(b.lo, b.hi) > 0)
                    ++b.multiplicity;
                else
                    break;
            }
        }
    }
    return out;
}

RootBox refine_root_sq(const RP& sq, const RootBox& box, const mpq_class& target_width)
{
    RootBox b = box;
    while (b.width() > target_width) {
        mpq_class m = b.midpoint();
        int s = sign_at(sq, m);
        if (s == 0) {
            // exact rational root: shrink symmetrically around it
            mpq_class r = target_width / 4;
            b.lo = m - r;
            b.hi = m + r;
            b.sign_lo = sign_at(sq, b.lo);
            b.sign_hi = sign_at(sq, b.hi);
            break;
        }
        if (s == b.sign_lo) {
            b.lo = m;
        } else {
            b.hi = m;
        }
    }
    return b;
}

RootBox refine_root(const Poly& p, const RootBox& box, const mpq_class& target_width)
{
    return refine_root_sq(squarefree_part(real_zero_carrier(p)), box, target_width);
}

RootCount count_roots_in(const Poly& p, const Bound& lo, const Bound& hi)
{
    if (lo && hi && !(*lo < *hi))
        throw Error(ErrorKind::Domain, "count_roots_in needs lo < hi");
    RootCount rc;
    RP carrier = real_zero_carrier(p);
    rtrim(carrier);
    rc.lo_used = lo;
    rc.hi_used = hi;
    if (carrier.size() <= 1) {
        rc.count = 0;
        return rc;
    }
    RP sq = squarefree_part(carrier);
    SturmChain chain(sq);

    // An endpoint that is a root is moved inward by width/2^32 (halved until the
    // moved endpoint is no root and no root lies between old and new endpoint).
    mpq_class span;
    if (lo && hi)
        span = *hi - *lo;
    else if (lo)
        span = std::max(mpq_class(1), mpq_class(abs(*lo)));
    else if (hi)
        span = std::max(mpq_class(1), mpq_class(abs(*hi)));
    mpq_class two32 = mpq_class(mpz_class(1) << 32);

    auto shift = [&](const mpq_class& e, int dir) {
        RP lin{-e, 1};
        RP defl = rquot(sq, lin);
        SturmChain dchain(defl);
        mpq_class eps = span / two32;
        for (;;) {
            mpq_class e2 = e + dir * eps;
            if (sign_at(sq, e2) != 0) {
                int between = dir > 0 ? dchain.count(e, e2) : dchain.count(e2, e);
                if (between == 0)
                    return e2;
            }
            eps /= 2;
        }
    };

    if (lo && sign_at(sq, *lo) == 0) {
        rc.lo_used = shift(*lo, +1);
        rc.perturbed = true;
    }
    if (hi && sign_at(sq, *hi) == 0) {
        rc.hi_used = shift(*hi, -1);
        rc.perturbed = true;
    }
    rc.count = chain.count(rc.lo_used, rc.hi_used);
    return rc;
}

} // namespace qortho
