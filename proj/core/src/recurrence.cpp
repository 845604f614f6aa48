#include "qortho/recurrence.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "json.hpp"

namespace qortho {

namespace {

std::string_view trim(std::string_view s)
{
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front())))
        s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back())))
        s.remove_suffix(1);
    return s;
}

long parse_k(std::string_view t, std::string_view whole)
{
    if (t.empty())
        return 1;
    long k = 0;
    for (char ch : t) {
        if (ch < '0' || ch > '9')
            throw Error(ErrorKind::Parse, "bad shift count in '" + std::string(whole) + "'");
        k = k * 10 + (ch - '0');
        if (k > 1000000)
            throw Error(ErrorKind::Parse, "shift count too large in '" + std::string(whole) + "'");
    }
    return k;
}

ParamShift parse_one(std::string_view tok)
{
    tok = trim(tok);
    ParamShift s;
    size_t slash = tok.find("/q");
    if (slash != std::string_view::npos) {
        s.param = std::string(trim(tok.substr(0, slash)));
        s.action = ShiftAction::DivideByQ;
        std::string_view rest = tok.substr(slash + 2);
        if (rest.empty())
            s.k = 1;
        else if (rest.front() == '^')
            s.k = parse_k(rest.substr(1), tok);
        else
            throw Error(ErrorKind::Parse, "bad shift '" + std::string(tok) + "'");
    } else {
        size_t op = tok.find_last_of("+-");
        if (op == std::string_view::npos || op == 0)
            throw Error(ErrorKind::Parse, "bad shift '" + std::string(tok) + "' (expected p/q^k, p-k or p+k)");
        s.param = std::string(trim(tok.substr(0, op)));
        s.action = tok[op] == '-' ? ShiftAction::SubtractK : ShiftAction::AddK;
        std::string_view num = trim(tok.substr(op + 1));
        if (num.empty())
            throw Error(ErrorKind::Parse, "bad shift '" + std::string(tok) + "'");
        s.k = parse_k(num, tok);
    }
    if (s.param.empty())
        throw Error(ErrorKind::Parse, "missing parameter name in shift '" + std::string(tok) + "'");
    return s;
}

Scalar ratio(const Scalar& num, const Scalar& den, const char* what)
{
    if (den.is_zero())
        throw Error(ErrorKind::Degenerate, std::string("vanishing denominator ") + what);
    return num / den;
}

// coefficient tails, one function per display

using Tail = std::function<std::vector<Scalar>(long, const FamilySpec&)>;

struct QP {
    Scalar q, a, b, g, d;
    explicit QP(const FamilySpec& s, const char* A = nullptr, const char* B = nullptr, const char* G = nullptr,
                const char* D = nullptr)
        : q(s.get("q"))
    {
        if (A)
            a = s.has(A) ? s.get(A) : Scalar(0);
        if (B)
            b = s.has(B) ? s.get(B) : Scalar(0);
        if (G)
            g = s.has(G) ? s.get(G) : Scalar(0);
        if (D)
            d = s.has(D) ? s.get(D) : Scalar(0);
    }
    Scalar p(long e) const { return q.pow(e); }
};

const Scalar one(1);

std::vector<Scalar> bqj_a(long n, const FamilySpec& s)
{
    QP v(s, "alpha", "beta", "gamma");
    Scalar qn = v.p(n), ab2 = v.a * v.b * v.p(2 * n);
    return {ratio(v.a * v.q * (qn - one) * (v.b * qn - one) * (v.g * qn - one), (ab2 - one) * (ab2 - v.q),
                  "(alpha beta q^2n - 1)(alpha beta q^2n - q)")};
}

std::vector<Scalar> bqj_b(long n, const FamilySpec& s)
{
    QP v(s, "alpha", "beta", "gamma");
    Scalar qn = v.p(n), ab2 = v.a * v.b * v.p(2 * n);
    return {ratio(-v.a * v.b * v.p(n + 1) * (qn - one) * (v.a * qn - one) * (v.g * qn - one),
                  (ab2 - one) * (ab2 - v.q), "(alpha beta q^2n - 1)(alpha beta q^2n - q)")};
}

std::vector<Scalar> bqj_bg(long n, const FamilySpec& s)
{
    QP v(s, "alpha", "beta", "gamma");
    Scalar qn = v.p(n), ab2 = v.a * v.b * v.p(2 * n);
    return {ratio(-(qn - one) * (v.a * qn - one) * (-v.a * v.b * qn + v.g),
                  (ab2 - one) * (v.a * v.b * v.p(2 * n - 1) - one), "(alpha beta q^2n - 1)(alpha beta q^(2n-1) - 1)")};
}

std::vector<Scalar> bqj_ab(long n, const FamilySpec& s)
{
    QP v(s, "alpha", "beta", "gamma");
    const Scalar& q = v.q;
    Scalar qn = v.p(n), ab2 = v.a * v.b * v.p(2 * n);
    Scalar s1 = ratio(-v.a * q * (ab2 - v.b * v.p(n + 1) - v.b * qn + q) * (qn - one) * (v.g * qn - one),
                      (ab2 - one) * (ab2 - q * q), "(alpha beta q^2n - 1)(alpha beta q^2n - q^2)");
    Scalar num = -v.a * v.a * v.b * (qn - one) * (v.b * qn - q) * (v.a * qn - q) * (v.g * qn - one) * (v.g * qn - q) *
                 (qn - q) * v.p(n + 3);
    Scalar den = (ab2 - q * q) * (ab2 - q * q) * (ab2 - v.p(3)) * (ab2 - q);
    return {s1, ratio(num, den, "(alpha beta q^2n - q^2)^2 (alpha beta q^2n - q^3)(alpha beta q^2n - q)")};
}

std::vector<Scalar> qhahn_a(long n, const FamilySpec& s)
{
    QP v(s, "alpha", "beta");
    long N = *s.N;
    Scalar qn = v.p(n), ab2 = v.a * v.b * v.p(2 * n);
    return {ratio(v.a * (qn - one) * (v.b * qn - one) * (qn - v.p(N + 1)), v.p(N) * (ab2 - one) * (ab2 - v.q),
                  "(alpha beta q^2n - 1)(alpha beta q^2n - q)")};
}

std::vector<Scalar> qhahn_b(long n, const FamilySpec& s)
{
    QP v(s, "alpha", "beta");
    long N = *s.N;
    Scalar qn = v.p(n), ab2 = v.a * v.b * v.p(2 * n);
    return {ratio(-v.a * v.b * (qn - v.p(N + 1)) * (v.a * qn - one) * (qn - one), (ab2 - one) * (ab2 - v.q) * v.p(N - n),
                  "(alpha beta q^2n - 1)(alpha beta q^2n - q)")};
}

std::vector<Scalar> qhahn_ab(long n, const FamilySpec& s)
{
    QP v(s, "alpha", "beta");
    const Scalar& q = v.q;
    long N = *s.N;
    Scalar qn = v.p(n), ab2 = v.a * v.b * v.p(2 * n);
    Scalar s1 = ratio(-v.a * (ab2 - v.b * v.p(n + 1) - v.b * qn + q) * (qn - one) * (qn - v.p(N + 1)),
                      (ab2 - q * q) * (ab2 - one) * v.p(N), "(alpha beta q^2n - q^2)(alpha beta q^2n - 1)");
    Scalar num = -v.a * v.a * v.b * v.p(n + 1) * (qn - one) * (v.b * qn - q) * (qn - v.p(N + 1)) * (v.a * qn - q) *
                 (qn - q) * (qn - v.p(N + 2));
    Scalar den = (ab2 - q * q) * (ab2 - q * q) * (ab2 - q) * (ab2 - v.p(3)) * v.p(2 * N);
    return {s1, ratio(num, den, "(alpha beta q^2n - q^2)^2 (alpha beta q^2n - q)(alpha beta q^2n - q^3)")};
}

std::vector<Scalar> qhahn_a2(long n, const FamilySpec& s)
{
    QP v(s, "alpha", "beta");
    const Scalar& q = v.q;
    long N = *s.N;
    Scalar qn = v.p(n), ab2 = v.a * v.b * v.p(2 * n);
    Scalar s1 = ratio(v.a * (q + one) * (qn - one) * (v.b * qn - one) * (qn - v.p(N + 1)),
                      (ab2 - q * q) * (ab2 - one) * v.p(N), "(alpha beta q^2n - q^2)(alpha beta q^2n - 1)");
    Scalar num = v.a * q * v.a * q * (qn - one) * (v.b * qn - q) * (qn - v.p(N + 1)) * (qn - q) * (v.b * qn - one) *
                 (qn - v.p(N + 2));
    Scalar den = (ab2 - q * q) * (ab2 - q * q) * (ab2 - q) * (ab2 - v.p(3)) * v.p(2 * N);
    return {s1, ratio(num, den, "(alpha beta q^2n - q^2)^2 (alpha beta q^2n - q)(alpha beta q^2n - q^3)")};
}

std::vector<Scalar> qtmqk_p(long n, const FamilySpec& s)
{
    QP v(s);
    long N = *s.N;
    Scalar p = s.get("p");
    return {ratio((v.p(N + 1) - v.p(n)) * (v.p(n) - one), p * v.p(2 * n + N), "p")};
}

std::vector<Scalar> qkraw_p(long n, const FamilySpec& s)
{
    QP v(s);
    long N = *s.N;
    Scalar p = s.get("p"), qn = v.p(n);
    return {ratio(-p * (qn - one) * (qn - v.p(N + 1)) * v.p(n + 1),
                  (v.p(2 * n) * p + v.q) * (v.p(2 * n) * p + v.q * v.q) * v.p(N), "(q^2n p + q)(q^2n p + q^2)")};
}

std::vector<Scalar> lqj_a(long n, const FamilySpec& s)
{
    QP v(s, "alpha", "beta");
    Scalar qn = v.p(n), ab2 = v.a * v.b * v.p(2 * n);
    return {ratio(v.a * qn * (qn - one) * (v.b * qn - one), (ab2 - one) * (ab2 - v.q),
                  "(alpha beta q^2n - 1)(alpha beta q^2n - q)")};
}

std::vector<Scalar> lqj_b(long n, const FamilySpec& s)
{
    QP v(s, "alpha", "beta");
    Scalar qn = v.p(n), ab2 = v.a * v.b * v.p(2 * n);
    return {ratio(-v.a * v.b * v.p(2 * n) * (qn - one) * (v.a * qn - one), (ab2 - one) * (ab2 - v.q),
                  "(alpha beta q^2n - 1)(alpha beta q^2n - q)")};
}

std::vector<Scalar> lqj_ab(long n, const FamilySpec& s)
{
    QP v(s, "alpha", "beta");
    const Scalar& q = v.q;
    Scalar qn = v.p(n), ab2 = v.a * v.b * v.p(2 * n);
    Scalar s1 = ratio(-v.a * qn * (ab2 - v.p(n + 1) * v.b - v.b * qn + q) * (qn - one), (ab2 - q * q) * (ab2 - one),
                      "(alpha beta q^2n - q^2)(alpha beta q^2n - 1)");
    Scalar num = -v.a * v.a * v.b * v.p(3 * n + 1) * (qn - one) * (v.b * qn - q) * (v.a * qn - q) * (qn - q);
    Scalar den = (ab2 - q * q) * (ab2 - q * q) * (ab2 - q) * (ab2 - v.p(3));
    return {s1, ratio(num, den, "(alpha beta q^2n - q^2)^2 (alpha beta q^2n - q)(alpha beta q^2n - q^3)")};
}

std::vector<Scalar> lqj_a2(long n, const FamilySpec& s)
{
    QP v(s, "alpha", "beta");
    const Scalar& q = v.q;
    Scalar qn = v.p(n), ab2 = v.a * v.b * v.p(2 * n);
    Scalar s1 = ratio(v.a * qn * (q + one) * (qn - one) * (v.b * qn - one), (ab2 - q * q) * (ab2 - one),
                      "(alpha beta q^2n - q^2)(alpha beta q^2n - 1)");
    Scalar num = v.a * v.a * v.p(2 * n + 2) * (qn - one) * (v.b * qn - q) * (qn - q) * (v.b * qn - one);
    Scalar den = (ab2 - q * q) * (ab2 - q * q) * (ab2 - q) * (ab2 - v.p(3));
    return {s1, ratio(num, den, "(alpha beta q^2n - q^2)^2 (alpha beta q^2n - q)(alpha beta q^2n - q^3)")};
}

std::vector<Scalar> qlag_t(long n, const FamilySpec& s)
{
    QP v(s);
    Scalar t = s.get("t");
    // q^(2n+alpha) = q^2n t
    return {ratio(-(v.p(n) - one) * v.q, v.p(2 * n) * t, "t")};
}

std::vector<Scalar> asc1_a(long n, const FamilySpec& s)
{
    QP v(s, "alpha");
    return {v.a / v.q * (v.p(n) - one)};
}

std::vector<Scalar> asc1_a2(long n, const FamilySpec& s)
{
    QP v(s, "alpha");
    Scalar qn = v.p(n);
    return {v.a * (qn - one) * (v.q + one) / v.p(2), v.a * v.a * (qn - one) * (qn - v.q) / v.p(4)};
}

std::vector<Scalar> aw_a(long n, const FamilySpec& s)
{
    QP v(s);
    const Scalar& q = v.q;
    Scalar a = s.get("a"), b = s.get("b"), c = s.get("c"), d = s.get("d");
    Scalar qn = v.p(n), abcd = a * b * c * d * v.p(2 * n);
    return {ratio(-a * q * (qn - one) * (c * d * qn - q) * (b * d * qn - q) * (b * c * qn - q),
                  Scalar(2) * (abcd - v.p(3)) * (abcd - q * q), "(abcd q^2n - q^3)(abcd q^2n - q^2)")};
}

std::vector<Scalar> qracah_a(long n, const FamilySpec& s)
{
    QP v(s, "alpha", "beta", "gamma", "delta");
    Scalar qn = v.p(n), ab2 = v.a * v.b * v.p(2 * n);
    return {ratio(-v.a * v.q * (one - qn) * (one - v.b * qn) * (one - v.g * qn) * (one - v.b * v.d * qn),
                  (one - ab2) * (v.q - ab2), "(1 - alpha beta q^2n)(q - alpha beta q^2n)")};
}

std::vector<Scalar> qracah_b(long n, const FamilySpec& s)
{
    QP v(s, "alpha", "beta", "gamma", "delta");
    Scalar qn = v.p(n), ab2 = v.a * v.b * v.p(2 * n);
    return {ratio(v.b * v.q * (one - qn) * (one - v.a * qn) * (one - v.g * qn) * (v.a * qn - v.d),
                  (one - ab2) * (v.q - ab2), "(1 - alpha beta q^2n)(q - alpha beta q^2n)")};
}

struct ABCD {
    Scalar a, b, c, d, S, n;
    ABCD(long nn, const FamilySpec& s)
        : a(s.get("a")), b(s.get("b")), c(s.get("c")), d(s.get("d")), S(a + b + c + d), n(nn)
    {
    }
};

Tail wilson(int which)
{
    return [which](long nn, const FamilySpec& s) -> std::vector<Scalar> {
        ABCD v(nn, s);
        const Scalar& n = v.n;
        Scalar m1 = n - one;
        Scalar f;
        switch (which) {
        case 0: f = (v.c + v.d + m1) * (v.b + v.d + m1) * (v.b + v.c + m1); break;
        case 1: f = (v.c + v.d + m1) * (v.a + v.d + m1) * (v.a + v.c + m1); break;
        case 2: f = (v.a + v.d + m1) * (v.b + v.d + m1) * (v.a + v.b + m1); break;
        default: f = (v.a + v.c + m1) * (v.b + v.c + m1) * (v.a + v.b + m1); break;
        }
        Scalar two_n = Scalar(2) * n;
        return {ratio(n * f, (two_n + v.S - Scalar(2)) * (two_n + v.S - Scalar(3)), "(2n+a+b+c+d-2)(2n+a+b+c+d-3)")};
    };
}

std::vector<Scalar> racah_a(long nn, const FamilySpec& s)
{
    Scalar al = s.get("alpha"), be = s.get("beta"), ga = s.get("gamma"), de = s.get("delta"), n(nn);
    Scalar m = Scalar(2) * n + al + be;
    return {ratio(-(be + n) * (be + de + n) * (ga + n) * n, m * (m - one), "(2n+alpha+beta)(2n+alpha+beta-1)")};
}

std::vector<Scalar> racah_b(long nn, const FamilySpec& s)
{
    Scalar al = s.get("alpha"), be = s.get("beta"), ga = s.get("gamma"), de = s.get("delta"), n(nn);
    Scalar m = Scalar(2) * n + al + be;
    return {ratio(-(al + n) * (al - de + n) * (ga + n) * n, m * (m - one), "(2n+alpha+beta)(2n+alpha+beta-1)")};
}

Tail chahn(int which)
{
    return [which](long nn, const FamilySpec& s) -> std::vector<Scalar> {
        ABCD v(nn, s);
        const Scalar& n = v.n;
        const Scalar I = Scalar::i();
        Scalar m1 = n - one;
        Scalar two_n = Scalar(2) * n;
        Scalar den = (two_n + v.S - Scalar(3)) * (two_n + v.S - Scalar(2));
        Scalar num;
        switch (which) {
        case 0: num = I * (v.b + v.c + m1) * (v.b + v.d + m1) * n; break;
        case 1: num = I * (v.a + v.d + m1) * (v.a + v.c + m1) * n; break;
        case 2: num = -I * (v.b + v.d + m1) * (v.a + v.d + m1) * n; break;
        default: num = -I * (v.b + v.c + m1) * (v.a + v.c + m1) * n; break;
        }
        return {ratio(num, den, "(2n+a+b+c+d-3)(2n+a+b+c+d-2)")};
    };
}

std::vector<Scalar> chahn_ac(long nn, const FamilySpec& s)
{
    ABCD v(nn, s);
    const Scalar& n = v.n;
    const Scalar I = Scalar::i();
    Scalar t = Scalar(2) * n + v.S;
    Scalar s1 = ratio(-I * (v.a + v.d - v.b - v.c) * (v.b + v.d + n - one) * n, (t - Scalar(4)) * (t - Scalar(2)),
                      "(2n+a+b+c+d-4)(2n+a+b+c+d-2)");
    Scalar num = (v.b + v.d + n - Scalar(2)) * (v.a + v.d + n - Scalar(2)) * (n - one) * (v.b + v.c + n - Scalar(2)) *
                 (v.b + v.d + n - one) * n;
    Scalar den = (t - Scalar(5)) * (t - Scalar(4)) * (t - Scalar(4)) * (t - Scalar(3));
    return {s1, ratio(num, den, "(2n+a+b+c+d-5)(2n+a+b+c+d-4)^2(2n+a+b+c+d-3)")};
}

std::vector<Scalar> chahn_bd(long nn, const FamilySpec& s)
{
    ABCD v(nn, s);
    const Scalar& n = v.n;
    const Scalar I = Scalar::i();
    Scalar t = Scalar(2) * n + v.S;
    Scalar s1 = ratio(I * (v.a + v.d - v.b - v.c) * (v.a + v.c + n - one) * n, (t - Scalar(4)) * (t - Scalar(2)),
                      "(2n+a+b+c+d-4)(2n+a+b+c+d-2)");
    Scalar num = n * (v.a + v.d + n - Scalar(2)) * (v.a + v.c + n - one) * (v.b + v.c + n - Scalar(2)) *
                 (v.a + v.c + n - Scalar(2)) * (n - one);
    Scalar den = (t - Scalar(5)) * (t - Scalar(4)) * (t - Scalar(4)) * (t - Scalar(3));
    return {s1, ratio(num, den, "(2n+a+b+c+d-5)(2n+a+b+c+d-4)^2(2n+a+b+c+d-3)")};
}

// A family whose relation is another family's with beta = 0.
Tail beta_zero(Tail t, FamilyId as)
{
    return [t, as](long n, const FamilySpec& s) {
        FamilySpec v = s;
        v.id = as;
        v.params["beta"] = Scalar(0);
        return t(n, v);
    };
}

std::vector<CatalogEntry> build_catalog()
{
    auto E = [](std::string id, FamilyId f, const char* shift, unsigned J, std::string tag, Tail t) {
        return CatalogEntry{std::move(id), f, ShiftSpec::parse(shift), J, std::move(tag), std::move(t)};
    };
    using F = FamilyId;
    std::vector<CatalogEntry> c;
    c.push_back(E("bqj.a", F::BigQJacobi, "alpha/q", 1, "bqj-rel-alpha", bqj_a));
    c.push_back(E("bqj.b", F::BigQJacobi, "beta/q", 1, "bqj-rel-beta", bqj_b));
    c.push_back(E("bqj.bg", F::BigQJacobi, "beta/q,gamma/q", 1, "bqj-rel-beta-gamma", bqj_bg));
    c.push_back(E("bqj.ab", F::BigQJacobi, "alpha/q,beta/q", 2, "bqj-rel-alpha-beta", bqj_ab));
    c.push_back(E("bql.a", F::BigQLaguerre, "alpha/q", 1, "bqj-rel-alpha@beta=0", beta_zero(bqj_a, F::BigQJacobi)));
    c.push_back(E("qhahn.a", F::QHahn, "alpha/q", 1, "qhahn-rel-alpha", qhahn_a));
    c.push_back(E("qhahn.b", F::QHahn, "beta/q", 1, "qhahn-rel-beta", qhahn_b));
    c.push_back(E("qhahn.ab", F::QHahn, "alpha/q,beta/q", 2, "qhahn-rel-alpha-beta", qhahn_ab));
    c.push_back(E("qhahn.a2", F::QHahn, "alpha/q^2", 2, "qhahn-rel-alpha2", qhahn_a2));
    c.push_back(E("affqk.a", F::AffineQKrawtchouk, "alpha/q", 1, "qhahn-rel-alpha@beta=0", beta_zero(qhahn_a, F::QHahn)));
    c.push_back(E("qtmqk.p", F::QuantumQKrawtchouk, "p/q", 1, "qtmqk-rel-p", qtmqk_p));
    c.push_back(E("lqj.a", F::LittleQJacobi, "alpha/q", 1, "lqj-rel-alpha", lqj_a));
    c.push_back(E("lqj.b", F::LittleQJacobi, "beta/q", 1, "lqj-rel-beta", lqj_b));
    c.push_back(E("lqj.ab", F::LittleQJacobi, "alpha/q,beta/q", 2, "lqj-rel-alpha-beta", lqj_ab));
    c.push_back(E("lqj.a2", F::LittleQJacobi, "alpha/q^2", 2, "lqj-rel-alpha2", lqj_a2));
    c.push_back(E("lql.a", F::LittleQLaguerre, "alpha/q", 1, "lqj-rel-alpha@beta=0", beta_zero(lqj_a, F::LittleQJacobi)));
    c.push_back(E("qlag.t", F::QLaguerre, "t/q", 1, "qlag-rel-alpha", qlag_t));
    c.push_back(E("asc1.a", F::AlSalamCarlitzI, "alpha/q", 1, "asc1-rel-alpha", asc1_a));
    c.push_back(E("asc1.a2", F::AlSalamCarlitzI, "alpha/q^2", 2, "asc1-rel-alpha2", asc1_a2));
    c.push_back(E("aw.a", F::AskeyWilson, "a/q", 1, "aw-rel-a", aw_a));
    c.push_back(E("qracah.a", F::QRacah, "alpha/q", 1, "qracah-rel-alpha", qracah_a));
    c.push_back(E("qracah.b", F::QRacah, "beta/q", 1, "qracah-rel-beta", qracah_b));
    c.push_back(E("wilson.a", F::Wilson, "a-1", 1, "wilson-rel-a", wilson(0)));
    c.push_back(E("wilson.b", F::Wilson, "b-1", 1, "wilson-rel-b", wilson(1)));
    c.push_back(E("wilson.c", F::Wilson, "c-1", 1, "wilson-rel-c", wilson(2)));
    c.push_back(E("wilson.d", F::Wilson, "d-1", 1, "wilson-rel-d", wilson(3)));
    c.push_back(E("racah.a", F::Racah, "alpha-1", 1, "racah-rel-alpha", racah_a));
    c.push_back(E("racah.b", F::Racah, "beta-1", 1, "racah-rel-beta", racah_b));
    c.push_back(E("chahn.a", F::ContinuousHahn, "a-1", 1, "chahn-rel-a", chahn(0)));
    c.push_back(E("chahn.b", F::ContinuousHahn, "b-1", 1, "chahn-rel-b", chahn(1)));
    c.push_back(E("chahn.c", F::ContinuousHahn, "c-1", 1, "chahn-rel-c", chahn(2)));
    c.push_back(E("chahn.d", F::ContinuousHahn, "d-1", 1, "chahn-rel-d", chahn(3)));
    c.push_back(E("chahn.ac", F::ContinuousHahn, "a-1,c-1", 2, "chahn-rel-a-c", chahn_ac));
    c.push_back(E("chahn.bd", F::ContinuousHahn, "b-1,d-1", 2, "chahn-rel-b-d", chahn_bd));
    c.push_back(E("qkraw.p", F::QKrawtchouk, "p/q", 1, "qkraw-rel-p", qkraw_p));
    return c;
}

std::vector<Scalar> raw_coeffs(const CatalogEntry& e, long n, const FamilySpec& params)
{
    if (params.id != e.family)
        throw Error(ErrorKind::InvalidSpec, "entry " + e.id + " is for " + to_string(e.family) + ", got " +
                                                to_string(params.id));
    std::vector<Scalar> out{one};
    try {
        for (auto& s : e.tail(n, params))
            out.push_back(s);
    } catch (const Error& err) {
        throw Error(err.kind(), e.id + " at n=" + std::to_string(n) + ": " + err.what());
    }
    return out;
}

// coefficients over base P_{n-i}, i = 0.., of chain[idx..] applied to base
std::vector<Scalar> expand_chain(const std::vector<const CatalogEntry*>& chain, size_t idx, long n,
                                 const FamilySpec& base)
{
    if (idx == chain.size())
        return {one};
    FamilySpec inner = base;
    for (size_t j = chain.size(); j-- > idx + 1;)
        inner = chain[j]->shift.apply(inner);
    std::vector<Scalar> sigma;
    try {
        sigma = raw_coeffs(*chain[idx], n, inner);
    } catch (const Error& err) {
        throw Error(err.kind(), "stage " + std::to_string(chain.size() - idx) + " (" + chain[idx]->id + " at " +
                                    inner.str() + "): " + err.what());
    }
    std::vector<Scalar> out;
    for (size_t j = 0; j < sigma.size(); ++j) {
        long m = n - static_cast<long>(j);
        if (m < 0)
            break;
        if (sigma[j].is_zero())
            continue;
        auto sub = expand_chain(chain, idx + 1, m, base);
        if (out.size() < j + sub.size())
            out.resize(j + sub.size());
        for (size_t i = 0; i < sub.size(); ++i)
            out[j + i] += sigma[j] * sub[i];
    }
    return out;
}

} // namespace

ShiftSpec ShiftSpec::parse(std::string_view text)
{
    ShiftSpec s;
    size_t start = 0;
    while (start <= text.size()) {
        size_t comma = text.find(',', start);
        std::string_view tok = text.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start);
        if (!trim(tok).empty())
            s.shifts.push_back(parse_one(tok));
        if (comma == std::string_view::npos)
            break;
        start = comma + 1;
    }
    s.validate();
    return s;
}

void ShiftSpec::validate() const
{
    if (shifts.empty())
        throw Error(ErrorKind::InvalidSpec, "shift must move at least one parameter");
    for (size_t i = 0; i < shifts.size(); ++i) {
        if (shifts[i].k < 1)
            throw Error(ErrorKind::InvalidSpec, "shift count must be >= 1 for " + shifts[i].param);
        for (size_t j = 0; j < i; ++j)
            if (shifts[j].param == shifts[i].param)
                throw Error(ErrorKind::InvalidSpec, "parameter " + shifts[i].param + " shifted twice");
    }
}

ShiftSpec ShiftSpec::times(long m) const
{
    ShiftSpec r = *this;
    for (auto& s : r.shifts)
        s.k *= m;
    return r;
}

FamilySpec ShiftSpec::apply(const FamilySpec& base) const
{
    validate();
    const FamilyInfo& info = family_info(base.id);
    FamilySpec r = base;
    for (const auto& s : shifts) {
        const Scalar& v = base.get(s.param);
        switch (s.action) {
        case ShiftAction::DivideByQ:
            if (!info.has_q)
                throw Error(ErrorKind::InvalidSpec, std::string(info.name) + " has no q; cannot shift " + s.param + "/q");
            r.params[s.param] = v / base.q().pow(s.k);
            break;
        case ShiftAction::SubtractK:
            r.params[s.param] = v - Scalar(s.k);
            break;
        case ShiftAction::AddK:
            r.params[s.param] = v + Scalar(s.k);
            break;
        }
    }
    return r;
}

std::string ShiftSpec::str() const
{
    std::ostringstream os;
    for (size_t i = 0; i < shifts.size(); ++i) {
        if (i)
            os << ',';
        const auto& s = shifts[i];
        os << s.param;
        switch (s.action) {
        case ShiftAction::DivideByQ:
            os << "/q";
            if (s.k != 1)
                os << '^' << s.k;
            break;
        case ShiftAction::SubtractK: os << '-' << s.k; break;
        case ShiftAction::AddK: os << '+' << s.k; break;
        }
    }
    return os.str();
}

const std::vector<CatalogEntry>& catalog()
{
    static const std::vector<CatalogEntry> c = build_catalog();
    return c;
}

const CatalogEntry& catalog_entry(std::string_view id)
{
    for (const auto& e : catalog())
        if (e.id == id)
            return e;
    throw Error(ErrorKind::InvalidSpec, "unknown catalog entry '" + std::string(id) + "'");
}

std::vector<Scalar> catalog_coeffs(const CatalogEntry& entry, unsigned n, const FamilySpec& params)
{
    if (n < entry.depth)
        throw Error(ErrorKind::Domain, entry.id + " needs n >= " + std::to_string(entry.depth));
    return raw_coeffs(entry, static_cast<long>(n), params);
}

VerifyResult verify_coeffs(const FamilySpec& base, const ShiftSpec& shift, unsigned n, const std::vector<Scalar>& sigma)
{
    Poly lhs = monic_poly(shift.apply(base), n, true);
    auto basis = monic_basis(base, n, true);
    Poly r = lhs;
    for (size_t j = 0; j < sigma.size() && j <= n; ++j)
        r -= basis[n - j] * sigma[j];
    VerifyResult v;
    v.holds = r.is_zero();
    v.residual = r;
    return v;
}

VerifyResult verify_entry(const CatalogEntry& entry, unsigned n, const FamilySpec& params)
{
    return verify_coeffs(params, entry.shift, n, catalog_coeffs(entry, n, params));
}

DiscoveryResult discover_coeffs(const FamilySpec& base, const ShiftSpec& shift, unsigned n, unsigned J)
{
    Poly target = monic_poly(shift.apply(base), n, true);
    auto basis = monic_basis(base, n, true);
    auto e = expand_in_basis(target, basis);
    DiscoveryResult r;
    long cut = static_cast<long>(n) - static_cast<long>(J);
    for (long i = cut - 1; i >= 0; --i) {
        if (!e[i].is_zero()) {
            r.offending_index = static_cast<int>(i);
            return r;
        }
    }
    r.found = true;
    for (long j = 0; j <= static_cast<long>(J) && j <= static_cast<long>(n); ++j)
        r.coeffs.push_back(e[n - j]);
    return r;
}

ShiftSpec chain_shift(const std::vector<const CatalogEntry*>& chain)
{
    ShiftSpec s;
    for (const auto* e : chain) {
        for (const auto& p : e->shift.shifts) {
            auto it = std::find_if(s.shifts.begin(), s.shifts.end(), [&](const ParamShift& o) { return o.param == p.param; });
            if (it == s.shifts.end()) {
                s.shifts.push_back(p);
            } else if (it->action == p.action) {
                it->k += p.k;
            } else {
                throw Error(ErrorKind::InvalidSpec, "chain mixes shift directions on " + p.param);
            }
        }
    }
    s.validate();
    return s;
}

std::vector<Scalar> compose_chain(const std::vector<const CatalogEntry*>& chain, unsigned n, const FamilySpec& params)
{
    if (chain.empty())
        throw Error(ErrorKind::InvalidSpec, "empty composition chain");
    auto out = expand_chain(chain, 0, static_cast<long>(n), params);
    unsigned total = 0;
    for (const auto* e : chain)
        total += e->depth;
    out.resize(std::min<size_t>(total, n) + 1);
    return out;
}

std::vector<Scalar> compose_entries(const CatalogEntry& entry, unsigned k, unsigned n, const FamilySpec& params)
{
    if (k == 0)
        throw Error(ErrorKind::InvalidSpec, "composition count must be >= 1");
    std::vector<const CatalogEntry*> chain(k, &entry);
    return compose_chain(chain, n, params);
}

FamilySpec reference_spec(const CatalogEntry& e)
{
    using F = FamilyId;
    const Scalar h(1, 2);
    auto id = [&](std::string_view x) { return e.id == x; };
    switch (e.family) {
    case F::BigQJacobi:
        if (id("bqj.a"))
            return make_spec(F::BigQJacobi, {{"q", Scalar(2, 5)}, {"alpha", Scalar(2)}, {"beta", h}, {"gamma", Scalar(-1)}});
        return make_spec(F::BigQJacobi, {{"q", Scalar(2, 5)}, {"alpha", Scalar(2)}, {"beta", Scalar(2)}, {"gamma", Scalar(-1)}});
    case F::BigQLaguerre:
        return make_spec(F::BigQLaguerre, {{"q", Scalar(2, 5)}, {"alpha", Scalar(2)}, {"gamma", Scalar(-1)}});
    case F::QHahn:
        if (id("qhahn.b"))
            return make_spec(F::QHahn, {{"q", h}, {"alpha", h}, {"beta", Scalar(3, 2)}}, 8);
        if (id("qhahn.ab"))
            return make_spec(F::QHahn, {{"q", h}, {"alpha", Scalar(3, 2)}, {"beta", Scalar(3, 2)}}, 8);
        return make_spec(F::QHahn, {{"q", h}, {"alpha", Scalar(3, 2)}, {"beta", h}}, 8);
    case F::AffineQKrawtchouk:
        return make_spec(F::AffineQKrawtchouk, {{"q", h}, {"alpha", Scalar(3, 2)}}, 8);
    case F::QuantumQKrawtchouk:
        return make_spec(F::QuantumQKrawtchouk, {{"q", h}, {"p", Scalar(384)}}, 8);
    case F::QKrawtchouk:
        return make_spec(F::QKrawtchouk, {{"q", h}, {"p", h}}, 8);
    case F::LittleQJacobi:
        if (id("lqj.b"))
            return make_spec(F::LittleQJacobi, {{"q", h}, {"alpha", h}, {"beta", Scalar(3, 2)}});
        if (id("lqj.ab"))
            return make_spec(F::LittleQJacobi, {{"q", h}, {"alpha", Scalar(3, 2)}, {"beta", Scalar(3, 2)}});
        return make_spec(F::LittleQJacobi, {{"q", h}, {"alpha", Scalar(3, 2)}, {"beta", h}});
    case F::LittleQLaguerre:
        return make_spec(F::LittleQLaguerre, {{"q", h}, {"alpha", Scalar(3, 2)}});
    case F::QLaguerre:
        return make_spec(F::QLaguerre, {{"q", h}, {"t", Scalar(3, 2)}});
    case F::AlSalamCarlitzI:
        return make_spec(F::AlSalamCarlitzI, {{"q", h}, {"alpha", Scalar(-2)}});
    case F::AskeyWilson:
        return make_spec(F::AskeyWilson, {{"q", Scalar(1, 3)}, {"a", h}, {"b", Scalar(1, 4)}, {"c", Scalar(1, 5)}, {"d", Scalar(-1, 6)}});
    case F::QRacah:
        if (id("qracah.b"))
            return make_spec(F::QRacah, {{"q", h}, {"alpha", -h}, {"beta", Scalar(384)}, {"gamma", Scalar(1, 4)}, {"delta", Scalar(1, 3)}}, 6);
        return make_spec(F::QRacah, {{"q", h}, {"alpha", Scalar(128)}, {"beta", -h}, {"gamma", Scalar(1, 4)}, {"delta", Scalar(1, 3)}}, 6);
    case F::Wilson:
        return make_spec(F::Wilson, {{"a", h}, {"b", Scalar(3, 4)}, {"c", Scalar(5, 4)}, {"d", Scalar(7, 4)}});
    case F::Racah:
        if (id("racah.b"))
            return make_spec(F::Racah, {{"alpha", Scalar(15, 2)}, {"beta", Scalar(-22, 3)}, {"gamma", h}, {"delta", Scalar(1, 3)}}, 6);
        return make_spec(F::Racah, {{"alpha", Scalar(-7)}, {"beta", Scalar(8)}, {"gamma", h}, {"delta", Scalar(1, 3)}}, 6);
    case F::ContinuousHahn:
        return make_spec(F::ContinuousHahn, {{"a", Scalar(mpq_class(1, 3), mpq_class(1))},
                                             {"b", Scalar(mpq_class(3, 4), mpq_class(1, 2))},
                                             {"c", Scalar(mpq_class(1, 3), mpq_class(-1))},
                                             {"d", Scalar(mpq_class(3, 4), mpq_class(-1, 2))}});
    default:
        break;
    }
    throw Error(ErrorKind::InvalidSpec, "no reference instance for " + e.id);
}

const std::vector<NegativeControl>& negative_controls()
{
    static const std::vector<NegativeControl> v = {
        {"qmeixner.b", make_spec(FamilyId::QMeixner, {{"q", Scalar(1, 2)}, {"beta", Scalar(1, 2)}, {"gamma", Scalar(1)}}),
         ShiftSpec::parse("beta/q")},
        {"asc2.a", make_spec(FamilyId::AlSalamCarlitzII, {{"q", Scalar(1, 2)}, {"alpha", Scalar(1, 2)}}),
         ShiftSpec::parse("alpha/q")},
        {"bessel.a", make_spec(FamilyId::Bessel, {{"alpha", Scalar(1, 2)}}), ShiftSpec::parse("alpha+1")},
    };
    return v;
}

std::string catalog_manifest_json()
{
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto& e : catalog()) {
        nlohmann::ordered_json j;
        j["id"] = e.id;
        j["family"] = to_string(e.family);
        j["shift"] = e.shift.str();
        j["depth"] = e.depth;
        j["source_tag"] = e.source_tag;
        arr.push_back(j);
    }
    nlohmann::ordered_json root;
    root["entries"] = arr;
    return root.dump(2) + "\n";
}

} // namespace qortho
