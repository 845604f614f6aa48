#include "qortho/families.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace qortho {

namespace {

const std::vector<FamilyInfo>& table()
{
    static const std::vector<FamilyInfo> t = {
        {FamilyId::BigQJacobi, "big-q-jacobi", {"q", "alpha", "beta", "gamma"}, true, false, Lattice::PlainX},
        {FamilyId::BigQLaguerre, "big-q-laguerre", {"q", "alpha", "gamma"}, true, false, Lattice::PlainX},
        {FamilyId::QHahn, "q-hahn", {"q", "alpha", "beta"}, true, true, Lattice::QMinusX},
        {FamilyId::AffineQKrawtchouk, "affine-q-krawtchouk", {"q", "alpha"}, true, true, Lattice::QMinusX},
        {FamilyId::QuantumQKrawtchouk, "quantum-q-krawtchouk", {"q", "p"}, true, true, Lattice::QMinusX},
        {FamilyId::LittleQJacobi, "little-q-jacobi", {"q", "alpha", "beta"}, true, false, Lattice::PlainX},
        {FamilyId::LittleQLaguerre, "little-q-laguerre", {"q", "alpha"}, true, false, Lattice::PlainX},
        {FamilyId::QLaguerre, "q-laguerre", {"q", "t"}, true, false, Lattice::PlainX},
        {FamilyId::AlSalamCarlitzI, "al-salam-carlitz-1", {"q", "alpha"}, true, false, Lattice::PlainX},
        {FamilyId::AskeyWilson, "askey-wilson", {"q", "a", "b", "c", "d"}, true, false, Lattice::CosTheta},
        {FamilyId::QRacah, "q-racah", {"q", "alpha", "beta", "gamma", "delta"}, true, true, Lattice::Mu},
        {FamilyId::Wilson, "wilson", {"a", "b", "c", "d"}, false, false, Lattice::XSquared},
        {FamilyId::Racah, "racah", {"alpha", "beta", "gamma", "delta"}, false, true, Lattice::Lambda},
        {FamilyId::ContinuousHahn, "continuous-hahn", {"a", "b", "c", "d"}, false, false, Lattice::PlainX},
        {FamilyId::QKrawtchouk, "q-krawtchouk", {"q", "p"}, true, true, Lattice::QMinusX},
        {FamilyId::QMeixner, "q-meixner", {"q", "beta", "gamma"}, true, false, Lattice::QMinusX},
        {FamilyId::AlSalamCarlitzII, "al-salam-carlitz-2", {"q", "alpha"}, true, false, Lattice::QMinusX},
        {FamilyId::Bessel, "bessel", {"alpha"}, false, false, Lattice::PlainX},
    };
    return t;
}

std::string_view trim(std::string_view s)
{
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r'))
        s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
        s.remove_suffix(1);
    return s;
}

Scalar qp(const Scalar& a, const QBase& q, unsigned m) { return qpochhammer(a, q, m); }

Scalar factorial(unsigned m) { return pochhammer(Scalar(1), m); }

void need_nonzero(const Scalar& d, unsigned m, const char* what)
{
    if (d.is_zero())
        throw Error(ErrorKind::Degenerate,
                    std::string("series denominator ") + what + " vanishes at term " + std::to_string(m));
}

// Sum of coef(m) * V_m(X) where V_{m+1} = V_m * factor(m).
template <class Coef, class Factor>
Poly series(unsigned n, Lattice lat, Coef coef, Factor factor)
{
    Poly acc({}, lat);
    Poly v = Poly::constant(Scalar(1), lat);
    for (unsigned m = 0; m <= n; ++m) {
        if (m > 0)
            v *= factor(m - 1);
        Scalar c = coef(m);
        if (!c.is_zero())
            acc += v * c;
    }
    return acc;
}

bool is_conj(const Scalar& a, const Scalar& b) { return a == b.conj(); }

// Parameters are real or form the conjugate pairs (a,c), (b,d).
bool paired_ac_bd(const FamilySpec& s)
{
    return is_conj(s.get("a"), s.get("c")) && is_conj(s.get("b"), s.get("d"));
}

// Any pairing of four parameters into conjugates (reals pair with themselves).
bool conj_closed(const std::vector<Scalar>& v)
{
    std::vector<bool> used(v.size(), false);
    for (size_t i = 0; i < v.size(); ++i) {
        if (used[i])
            continue;
        if (v[i].is_real()) {
            used[i] = true;
            continue;
        }
        bool found = false;
        for (size_t j = i + 1; j < v.size(); ++j) {
            if (!used[j] && is_conj(v[i], v[j])) {
                used[i] = used[j] = true;
                found = true;
                break;
            }
        }
        if (!found)
            return false;
    }
    return true;
}

Poly build(const FamilySpec& s, unsigned n)
{
    const Lattice lat = s.lattice();
    const Scalar one(1);
    const long nn = static_cast<long>(n);
    switch (s.id) {
    case FamilyId::BigQJacobi:
    case FamilyId::BigQLaguerre: {
        QBase q = s.q();
        Scalar al = s.get("alpha"), ga = s.get("gamma");
        Scalar be = s.id == FamilyId::BigQJacobi ? s.get("beta") : Scalar(0);
        Scalar qv = q.value();
        return series(n, lat,
            [&](unsigned m) {
                Scalar den = qp(al * qv, q, m) * qp(ga * qv, q, m) * qp(qv, q, m);
                need_nonzero(den, m, "(alpha q, gamma q, q)_m");
                return qp(q.pow(-nn), q, m) * qp(al * be * q.pow(nn + 1), q, m) * qv.pow(m) / den;
            },
            [&](unsigned j) { return Poly::linear(one, -q.pow(j), lat); });
    }
    case FamilyId::QHahn:
    case FamilyId::AffineQKrawtchouk: {
        QBase q = s.q();
        Scalar al = s.get("alpha");
        Scalar be = s.id == FamilyId::QHahn ? s.get("beta") : Scalar(0);
        Scalar qv = q.value();
        long N = *s.N;
        return series(n, lat,
            [&](unsigned m) {
                Scalar den = qp(al * qv, q, m) * qp(q.pow(-N), q, m) * qp(qv, q, m);
                need_nonzero(den, m, "(alpha q, q^-N, q)_m");
                return qp(q.pow(-nn), q, m) * qp(al * be * q.pow(nn + 1), q, m) * qv.pow(m) / den;
            },
            [&](unsigned j) { return Poly::linear(one, -q.pow(j), lat); });
    }
    case FamilyId::QuantumQKrawtchouk: {
        QBase q = s.q();
        Scalar p = s.get("p");
        long N = *s.N;
        Scalar z = p * q.pow(nn + 1);
        return series(n, lat,
            [&](unsigned m) {
                Scalar den = qp(q.pow(-N), q, m) * qp(q.value(), q, m);
                need_nonzero(den, m, "(q^-N, q)_m");
                return qp(q.pow(-nn), q, m) * z.pow(m) / den;
            },
            [&](unsigned j) { return Poly::linear(one, -q.pow(j), lat); });
    }
    case FamilyId::QKrawtchouk: {
        QBase q = s.q();
        Scalar p = s.get("p");
        long N = *s.N;
        return series(n, lat,
            [&](unsigned m) {
                Scalar den = qp(q.pow(-N), q, m) * qp(q.value(), q, m);
                need_nonzero(den, m, "(q^-N, q)_m");
                return qp(q.pow(-nn), q, m) * qp(-p * q.pow(nn), q, m) * q.pow(m) / den;
            },
            [&](unsigned j) { return Poly::linear(one, -q.pow(j), lat); });
    }
    case FamilyId::LittleQJacobi:
    case FamilyId::LittleQLaguerre: {
        QBase q = s.q();
        Scalar al = s.get("alpha");
        Scalar be = s.id == FamilyId::LittleQJacobi ? s.get("beta") : Scalar(0);
        Scalar qv = q.value();
        // (qX)^m: the product factor is q X
        return series(n, lat,
            [&](unsigned m) {
                Scalar den = qp(al * qv, q, m) * qp(qv, q, m);
                need_nonzero(den, m, "(alpha q, q)_m");
                return qp(q.pow(-nn), q, m) * qp(al * be * q.pow(nn + 1), q, m) / den;
            },
            [&](unsigned) { return Poly::monomial(1, qv, lat); });
    }
    case FamilyId::QLaguerre: {
        QBase q = s.q();
        Scalar t = s.get("t");
        Scalar qv = q.value();
        Scalar z = -q.pow(nn + 1) * t;
        return series(n, lat,
            [&](unsigned m) {
                Scalar den = qp(t * qv, q, m) * qp(qv, q, m);
                need_nonzero(den, m, "(t q, q)_m");
                Scalar sgn = (m % 2) ? Scalar(-1) : Scalar(1);
                long binom = static_cast<long>(m) * (static_cast<long>(m) - 1) / 2;
                return qp(q.pow(-nn), q, m) * sgn * q.pow(binom) * z.pow(m) / den;
            },
            [&](unsigned) { return Poly::monomial(1, one, lat); });
    }
    case FamilyId::AlSalamCarlitzI: {
        QBase q = s.q();
        Scalar al = s.get("alpha");
        if (al.is_zero())
            throw Error(ErrorKind::Degenerate, "alpha = 0");
        Scalar r = q.value() / al;
        return series(n, lat,
            [&](unsigned m) { return qp(q.pow(-nn), q, m) * r.pow(m) / qp(q.value(), q, m); },
            [&](unsigned j) { return Poly::linear(-q.pow(j), one, lat); });
    }
    case FamilyId::AlSalamCarlitzII: {
        QBase q = s.q();
        Scalar al = s.get("alpha");
        if (al.is_zero())
            throw Error(ErrorKind::Degenerate, "alpha = 0");
        Scalar r = q.pow(nn) / al;
        return series(n, lat,
            [&](unsigned m) {
                Scalar sgn = (m % 2) ? Scalar(-1) : Scalar(1);
                long binom = static_cast<long>(m) * (static_cast<long>(m) - 1) / 2;
                return qp(q.pow(-nn), q, m) * sgn * q.pow(-binom) * r.pow(m) / qp(q.value(), q, m);
            },
            [&](unsigned j) { return Poly::linear(one, -q.pow(j), lat); });
    }
    case FamilyId::QMeixner: {
        QBase q = s.q();
        Scalar be = s.get("beta"), ga = s.get("gamma");
        if (ga.is_zero())
            throw Error(ErrorKind::Degenerate, "gamma = 0");
        Scalar z = -q.pow(nn + 1) / ga;
        return series(n, lat,
            [&](unsigned m) {
                Scalar den = qp(be * q.value(), q, m) * qp(q.value(), q, m);
                need_nonzero(den, m, "(beta q, q)_m");
                return qp(q.pow(-nn), q, m) * z.pow(m) / den;
            },
            [&](unsigned j) { return Poly::linear(one, -q.pow(j), lat); });
    }
    case FamilyId::AskeyWilson: {
        QBase q = s.q();
        Scalar a = s.get("a"), b = s.get("b"), c = s.get("c"), d = s.get("d");
        Scalar qv = q.value();
        return series(n, lat,
            [&](unsigned m) {
                Scalar den = qp(a * b, q, m) * qp(a * c, q, m) * qp(a * d, q, m) * qp(qv, q, m);
                need_nonzero(den, m, "(ab, ac, ad, q)_m");
                return qp(q.pow(-nn), q, m) * qp(a * b * c * d * q.pow(nn - 1), q, m) * qv.pow(m) / den;
            },
            [&](unsigned j) {
                Scalar qj = q.pow(j);
                return Poly::linear(one + a * a * qj * qj, Scalar(-2) * a * qj, lat);
            });
    }
    case FamilyId::QRacah: {
        QBase q = s.q();
        Scalar al = s.get("alpha"), be = s.get("beta"), ga = s.get("gamma"), de = s.get("delta");
        Scalar qv = q.value();
        return series(n, lat,
            [&](unsigned m) {
                Scalar den = qp(al * qv, q, m) * qp(be * de * qv, q, m) * qp(ga * qv, q, m) * qp(qv, q, m);
                need_nonzero(den, m, "(alpha q, beta delta q, gamma q, q)_m");
                return qp(q.pow(-nn), q, m) * qp(al * be * q.pow(nn + 1), q, m) * qv.pow(m) / den;
            },
            [&](unsigned j) {
                long jj = static_cast<long>(j);
                return Poly::linear(one + ga * de * q.pow(2 * jj + 1), -q.pow(jj), lat);
            });
    }
    case FamilyId::Wilson: {
        Scalar a = s.get("a"), b = s.get("b"), c = s.get("c"), d = s.get("d");
        Scalar S = a + b + c + d;
        return series(n, lat,
            [&](unsigned m) {
                Scalar den = pochhammer(a + b, m) * pochhammer(a + c, m) * pochhammer(a + d, m) * factorial(m);
                need_nonzero(den, m, "(a+b, a+c, a+d)_m m!");
                return pochhammer(Scalar(-nn), m) * pochhammer(Scalar(nn) + S - one, m) / den;
            },
            [&](unsigned j) {
                Scalar aj = a + Scalar(static_cast<long>(j));
                return Poly::linear(aj * aj, one, lat);
            });
    }
    case FamilyId::Racah: {
        Scalar al = s.get("alpha"), be = s.get("beta"), ga = s.get("gamma"), de = s.get("delta");
        return series(n, lat,
            [&](unsigned m) {
                Scalar den = pochhammer(al + one, m) * pochhammer(be + de + one, m) * pochhammer(ga + one, m) * factorial(m);
                need_nonzero(den, m, "(alpha+1, beta+delta+1, gamma+1)_m m!");
                return pochhammer(Scalar(-nn), m) * pochhammer(Scalar(nn) + al + be + one, m) / den;
            },
            [&](unsigned j) {
                Scalar jj(static_cast<long>(j));
                return Poly::linear(jj * (ga + de + one + jj), Scalar(-1), lat);
            });
    }
    case FamilyId::ContinuousHahn: {
        Scalar a = s.get("a"), b = s.get("b"), c = s.get("c"), d = s.get("d");
        Scalar S = a + b + c + d;
        return series(n, lat,
            [&](unsigned m) {
                Scalar den = pochhammer(a + c, m) * pochhammer(a + d, m) * factorial(m);
                need_nonzero(den, m, "(a+c, a+d)_m m!");
                return pochhammer(Scalar(-nn), m) * pochhammer(Scalar(nn) + S - one, m) / den;
            },
            [&](unsigned j) { return Poly::linear(a + Scalar(static_cast<long>(j)), Scalar::i(), lat); });
    }
    case FamilyId::Bessel: {
        Scalar al = s.get("alpha");
        return series(n, lat,
            [&](unsigned m) {
                return pochhammer(Scalar(-nn), m) * pochhammer(Scalar(nn) + al + one, m) / factorial(m);
            },
            [&](unsigned) { return Poly::monomial(1, Scalar(-1, 2), lat); });
    }
    }
    throw Error(ErrorKind::InvalidSpec, "unknown family");
}

struct Check {
    bool ok;
    std::string text;
};

RegionVerdict verdict_from(const std::vector<Check>& checks)
{
    RegionVerdict v;
    bool all = true;
    for (const auto& c : checks) {
        v.notes.push_back(std::string(c.ok ? "ok: " : "violated: ") + c.text);
        all = all && c.ok;
    }
    v.status = all ? RegionStatus::Orthogonal : RegionStatus::QuasiCandidate;
    return v;
}

bool all_positive(const std::vector<Scalar>& w)
{
    for (const auto& x : w)
        if (!x.is_real() || x.sign() <= 0)
            return false;
    return true;
}

// Closed interval arithmetic over the rationals.
struct Iv {
    mpq_class lo, hi;
    Iv() = default;
    Iv(const mpq_class& v) : lo(v), hi(v) {}
    Iv(const mpq_class& l, const mpq_class& h) : lo(l), hi(h) {}
};

Iv operator+(const Iv& a, const Iv& b) { return {a.lo + b.lo, a.hi + b.hi}; }
Iv operator*(const Iv& a, const Iv& b)
{
    mpq_class p[4] = {a.lo * b.lo, a.lo * b.hi, a.hi * b.lo, a.hi * b.hi};
    return {*std::min_element(p, p + 4), *std::max_element(p, p + 4)};
}
Iv sqr(const Iv& a)
{
    Iv r = a * a;
    if (sgn(a.lo) <= 0 && sgn(a.hi) >= 0)
        r.lo = 0;
    return r;
}
Iv recip(const Iv& a)
{
    if (sgn(a.lo) <= 0 && sgn(a.hi) >= 0)
        throw Error(ErrorKind::Domain, "interval reciprocal of a range containing zero");
    return {1 / a.hi, 1 / a.lo};
}

Iv eval_iv(const Poly& p, const Iv& x)
{
    Iv acc(mpq_class(0));
    for (size_t i = p.coeffs().size(); i-- > 0;)
        acc = acc * x + Iv(p.coeffs()[i].real());
    return acc;
}

} // namespace

const std::vector<FamilyInfo>& all_families() { return table(); }

const FamilyInfo& family_info(FamilyId id)
{
    for (const auto& f : table())
        if (f.id == id)
            return f;
    throw Error(ErrorKind::InvalidSpec, "unknown family id");
}

FamilyId family_from_name(std::string_view name)
{
    for (const auto& f : table())
        if (name == f.name)
            return f.id;
    throw Error(ErrorKind::InvalidSpec, "unknown family '" + std::string(name) + "'");
}

const char* to_string(FamilyId id) { return family_info(id).name; }

const char* to_string(RegionStatus s)
{
    switch (s) {
    case RegionStatus::Orthogonal: return "orthogonal";
    case RegionStatus::QuasiCandidate: return "quasi-candidate";
    case RegionStatus::Invalid: return "invalid";
    }
    return "?";
}

const Scalar& FamilySpec::get(const std::string& name) const
{
    auto it = params.find(name);
    if (it == params.end())
        throw Error(ErrorKind::InvalidSpec, std::string(to_string(id)) + ": missing parameter '" + name + "'");
    return it->second;
}

FamilySpec FamilySpec::with(const std::string& name, const Scalar& value) const
{
    FamilySpec r = *this;
    r.params[name] = value;
    return r;
}

QBase FamilySpec::q() const { return QBase(get("q")); }

void FamilySpec::validate() const
{
    const FamilyInfo& info = family_info(id);
    for (const auto& p : info.params)
        get(p);
    for (const auto& [k, v] : params) {
        if (std::find(info.params.begin(), info.params.end(), k) == info.params.end())
            throw Error(ErrorKind::InvalidSpec, std::string(info.name) + ": unexpected parameter '" + k + "'");
    }
    if (info.has_q)
        q();
    if (info.finite && (!N || *N < 0))
        throw Error(ErrorKind::InvalidSpec, std::string(info.name) + ": needs a nonnegative integer N");
    if (!info.finite && N)
        throw Error(ErrorKind::InvalidSpec, std::string(info.name) + ": takes no N");
}

std::string FamilySpec::str() const
{
    std::ostringstream os;
    os << "family=" << to_string(id);
    for (const auto& p : family_info(id).params) {
        auto it = params.find(p);
        if (it != params.end())
            os << ';' << p << '=' << it->second.str();
    }
    if (N)
        os << ";N=" << *N;
    return os.str();
}

FamilySpec make_spec(FamilyId id, std::initializer_list<std::pair<const std::string, Scalar>> params,
                     std::optional<long> N)
{
    FamilySpec s;
    s.id = id;
    s.params = std::map<std::string, Scalar>(params);
    s.N = N;
    s.validate();
    return s;
}

FamilySpec parse_spec(std::string_view text, const std::string& source)
{
    FamilySpec s;
    bool have_family = false;
    size_t line_no = 0, pos = 0;
    auto where = [&] { return source + ":" + std::to_string(line_no) + ": "; };
    while (pos <= text.size()) {
        size_t nl = text.find('\n', pos);
        std::string_view line = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
        pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
        ++line_no;
        size_t hash = line.find('#');
        if (hash != std::string_view::npos)
            line = line.substr(0, hash);
        line = trim(line);
        if (line.empty())
            continue;
        size_t eq = line.find('=');
        if (eq == std::string_view::npos)
            throw Error(ErrorKind::Parse, where() + "expected key=value");
        std::string key(trim(line.substr(0, eq)));
        std::string_view val = trim(line.substr(eq + 1));
        try {
            if (key == "family") {
                s.id = family_from_name(val);
                have_family = true;
            } else if (key == "N") {
                mpq_class v = parse_rational(val);
                if (v.get_den() != 1 || !v.get_num().fits_slong_p())
                    throw Error(ErrorKind::Parse, "N must be an integer");
                s.N = v.get_num().get_si();
            } else {
                if (key.empty())
                    throw Error(ErrorKind::Parse, "empty key");
                if (s.params.count(key))
                    throw Error(ErrorKind::Parse, "duplicate key '" + key + "'");
                s.params[key] = Scalar::parse(val);
            }
        } catch (const Error& e) {
            throw Error(e.kind(), where() + e.what());
        }
    }
    if (!have_family)
        throw Error(ErrorKind::Parse, source + ": missing family=<id>");
    try {
        s.validate();
    } catch (const Error& e) {
        throw Error(e.kind(), source + ": " + e.what());
    }
    return s;
}

FamilySpec load_spec(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw Error(ErrorKind::Io, "cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_spec(ss.str(), path);
}

Poly monic_poly(const FamilySpec& spec, unsigned n, bool allow_complex)
{
    spec.validate();
    if (spec.N && static_cast<long>(n) > *spec.N)
        throw Error(ErrorKind::InvalidSpec,
                    "degree " + std::to_string(n) + " exceeds N=" + std::to_string(*spec.N) + " for " + to_string(spec.id));
    Poly p = build(spec, n);
    if (p.degree() != static_cast<int>(n))
        throw Error(ErrorKind::Degenerate, std::string(to_string(spec.id)) + ": degree drops below " + std::to_string(n) +
                                               " at " + spec.str());
    Poly r = make_monic(p);
    if (!allow_complex && !r.is_real())
        throw Error(ErrorKind::NotReal, std::string(to_string(spec.id)) + ": imaginary parts do not cancel at " + spec.str());
    return r;
}

std::vector<Poly> monic_basis(const FamilySpec& spec, unsigned nmax, bool allow_complex)
{
    std::vector<Poly> b;
    b.reserve(nmax + 1);
    for (unsigned j = 0; j <= nmax; ++j)
        b.push_back(monic_poly(spec, j, allow_complex));
    return b;
}

RegionVerdict region_check(const FamilySpec& s)
{
    try {
        s.validate();
    } catch (const Error& e) {
        return {RegionStatus::Invalid, {std::string("invalid: ") + e.what()}};
    }
    auto real = [&](const char* k) -> std::optional<mpq_class> {
        const Scalar& v = s.get(k);
        if (!v.is_real())
            return std::nullopt;
        return v.re();
    };
    auto req_real = [&](std::initializer_list<const char*> ks) -> std::optional<RegionVerdict> {
        for (const char* k : ks)
            if (!real(k))
                return RegionVerdict{RegionStatus::Invalid, {std::string("invalid: ") + k + " must be real"}};
        return std::nullopt;
    };
    std::vector<Check> c;
    switch (s.id) {
    case FamilyId::BigQJacobi:
    case FamilyId::BigQLaguerre: {
        bool jac = s.id == FamilyId::BigQJacobi;
        if (auto bad = jac ? req_real({"alpha", "beta", "gamma"}) : req_real({"alpha", "gamma"}))
            return *bad;
        mpq_class qv = s.get("q").re(), aq = *real("alpha") * qv;
        c.push_back({sgn(aq) > 0 && aq < 1, "0 < alpha q < 1"});
        if (jac) {
            mpq_class bq = *real("beta") * qv;
            c.push_back({sgn(bq) >= 0 && bq < 1, "0 <= beta q < 1"});
        }
        c.push_back({sgn(*real("gamma")) < 0, "gamma < 0"});
        break;
    }
    case FamilyId::QHahn: {
        if (auto bad = req_real({"alpha", "beta"}))
            return *bad;
        mpq_class qv = s.get("q").re(), a = *real("alpha"), b = *real("beta");
        mpq_class qN = s.get("q").pow(-*s.N).re();
        bool low = sgn(a * qv) > 0 && a * qv < 1 && sgn(b * qv) > 0 && b * qv < 1;
        bool high = a > qN && b > qN;
        c.push_back({low || high, "(0 < alpha q < 1 and 0 < beta q < 1) or (alpha > q^-N and beta > q^-N)"});
        break;
    }
    case FamilyId::AffineQKrawtchouk:
    case FamilyId::LittleQLaguerre: {
        if (auto bad = req_real({"alpha"}))
            return *bad;
        mpq_class aq = *real("alpha") * s.get("q").re();
        c.push_back({sgn(aq) > 0 && aq < 1, "0 < alpha q < 1"});
        break;
    }
    case FamilyId::QuantumQKrawtchouk: {
        if (auto bad = req_real({"p"}))
            return *bad;
        mpq_class p = *real("p");
        // q^-N < p < q^(-N+1) is empty for 0 < q < 1; weights and c_j are positive for p > q^-N
        mpq_class lo = s.get("q").pow(-*s.N).re();
        c.push_back({p > lo, "p > q^-N"});
        break;
    }
    case FamilyId::LittleQJacobi: {
        if (auto bad = req_real({"alpha", "beta"}))
            return *bad;
        mpq_class qv = s.get("q").re(), aq = *real("alpha") * qv, bq = *real("beta") * qv;
        c.push_back({sgn(aq) > 0 && aq < 1, "0 < alpha q < 1"});
        c.push_back({bq < 1, "beta q < 1"});
        break;
    }
    case FamilyId::QLaguerre: {
        if (auto bad = req_real({"t"}))
            return *bad;
        // t = q^alpha, alpha > -1  <=>  0 < t < 1/q
        mpq_class t = *real("t"), qv = s.get("q").re();
        c.push_back({sgn(t) > 0 && t * qv < 1, "0 < t < 1/q (alpha > -1)"});
        break;
    }
    case FamilyId::AlSalamCarlitzI: {
        if (auto bad = req_real({"alpha"}))
            return *bad;
        c.push_back({sgn(*real("alpha")) < 0, "alpha < 0"});
        break;
    }
    case FamilyId::AlSalamCarlitzII: {
        if (auto bad = req_real({"alpha"}))
            return *bad;
        mpq_class aq = *real("alpha") * s.get("q").re();
        c.push_back({sgn(aq) > 0 && aq < 1, "0 < alpha q < 1"});
        break;
    }
    case FamilyId::QMeixner: {
        if (auto bad = req_real({"beta", "gamma"}))
            return *bad;
        mpq_class bq = *real("beta") * s.get("q").re();
        c.push_back({sgn(bq) >= 0 && bq < 1, "0 <= beta q < 1"});
        c.push_back({sgn(*real("gamma")) > 0, "gamma > 0"});
        break;
    }
    case FamilyId::QKrawtchouk: {
        if (auto bad = req_real({"p"}))
            return *bad;
        c.push_back({sgn(*real("p")) > 0, "p > 0"});
        break;
    }
    case FamilyId::AskeyWilson: {
        std::vector<Scalar> v = {s.get("a"), s.get("b"), s.get("c"), s.get("d")};
        c.push_back({conj_closed(v), "parameters real or in conjugate pairs"});
        bool inside = true;
        for (const auto& x : v)
            inside = inside && (x.re() * x.re() + x.im() * x.im() < 1);
        c.push_back({inside, "max(|a|,|b|,|c|,|d|) < 1"});
        break;
    }
    case FamilyId::Wilson: {
        std::vector<Scalar> v = {s.get("a"), s.get("b"), s.get("c"), s.get("d")};
        c.push_back({conj_closed(v), "parameters real or in conjugate pairs"});
        bool pos = true;
        for (const auto& x : v)
            pos = pos && sgn(x.re()) > 0;
        c.push_back({pos, "Re(a,b,c,d) > 0"});
        break;
    }
    case FamilyId::ContinuousHahn: {
        c.push_back({paired_ac_bd(s), "c = conj(a) and d = conj(b)"});
        bool pos = true;
        for (const char* k : {"a", "b", "c", "d"})
            pos = pos && sgn(s.get(k).re()) > 0;
        c.push_back({pos, "Re(a,b,c,d) > 0"});
        break;
    }
    case FamilyId::QRacah: {
        if (auto bad = req_real({"alpha", "beta", "gamma", "delta"}))
            return *bad;
        Scalar qN = s.get("q").pow(-*s.N), qv = s.get("q");
        bool trunc = s.get("alpha") * qv == qN || s.get("beta") * s.get("delta") * qv == qN || s.get("gamma") * qv == qN;
        c.push_back({trunc, "alpha q = q^-N or beta delta q = q^-N or gamma q = q^-N"});
        bool pos = false;
        try {
            pos = all_positive(discrete_weights(s));
        } catch (const Error&) {
        }
        c.push_back({pos, "all weights w(0..N) positive"});
        break;
    }
    case FamilyId::Racah: {
        if (auto bad = req_real({"alpha", "beta", "gamma", "delta"}))
            return *bad;
        Scalar mN(-*s.N), one(1);
        bool trunc = s.get("alpha") + one == mN || s.get("beta") + s.get("delta") + one == mN || s.get("gamma") + one == mN;
        c.push_back({trunc, "alpha+1 = -N or beta+delta+1 = -N or gamma+1 = -N"});
        bool pos = false;
        try {
            pos = all_positive(discrete_weights(s));
        } catch (const Error&) {
        }
        c.push_back({pos, "all weights w(0..N) positive"});
        break;
    }
    case FamilyId::Bessel:
        c.push_back({false, "no positive-definite orthogonality region"});
        break;
    }
    return verdict_from(c);
}

std::string Support::str() const
{
    std::string l = lo ? to_string(*lo) : "-inf";
    std::string h = hi ? to_string(*hi) : "+inf";
    return "(" + l + ", " + h + ")";
}

Support support_interval(const FamilySpec& s)
{
    s.validate();
    auto r = [&](const char* k) { return s.get(k).real(); };
    switch (s.id) {
    case FamilyId::BigQJacobi:
    case FamilyId::BigQLaguerre: {
        mpq_class qv = r("q");
        mpq_class a = r("gamma") * qv, b = r("alpha") * qv;
        return {std::min(a, b), std::max(a, b)};
    }
    case FamilyId::QHahn:
    case FamilyId::AffineQKrawtchouk:
    case FamilyId::QuantumQKrawtchouk:
    case FamilyId::QKrawtchouk:
        return {mpq_class(1), s.get("q").pow(-*s.N).real()};
    case FamilyId::LittleQJacobi:
    case FamilyId::LittleQLaguerre:
        return {mpq_class(0), mpq_class(1)};
    case FamilyId::QLaguerre:
    case FamilyId::Wilson:
        return {mpq_class(0), std::nullopt};
    case FamilyId::AlSalamCarlitzI:
        return {r("alpha"), mpq_class(1)};
    case FamilyId::AskeyWilson:
        return {mpq_class(-1), mpq_class(1)};
    case FamilyId::QRacah: {
        auto pts = lattice_points(s);
        mpq_class a = pts.front().real(), b = pts.back().real();
        return {std::min(a, b), std::max(a, b)};
    }
    case FamilyId::Racah: {
        auto pts = lattice_points(s);
        mpq_class a = pts.front().real(), b = pts.back().real();
        return {std::min(a, b), std::max(a, b)};
    }
    case FamilyId::QMeixner:
    case FamilyId::AlSalamCarlitzII:
        return {mpq_class(1), std::nullopt};
    case FamilyId::ContinuousHahn:
    case FamilyId::Bessel:
        return {std::nullopt, std::nullopt};
    }
    throw Error(ErrorKind::InvalidSpec, "unknown family");
}

bool has_discrete_weight(FamilyId id)
{
    switch (id) {
    case FamilyId::QHahn:
    case FamilyId::AffineQKrawtchouk:
    case FamilyId::QuantumQKrawtchouk:
    case FamilyId::QKrawtchouk:
    case FamilyId::QRacah:
    case FamilyId::Racah:
        return true;
    default:
        return false;
    }
}

std::vector<Scalar> lattice_points(const FamilySpec& s)
{
    s.validate();
    if (!has_discrete_weight(s.id))
        throw Error(ErrorKind::Domain, std::string(to_string(s.id)) + " has no finite discrete support");
    long N = *s.N;
    std::vector<Scalar> pts;
    for (long x = 0; x <= N; ++x) {
        switch (s.id) {
        case FamilyId::QRacah: {
            Scalar q = s.get("q");
            pts.push_back(q.pow(-x) + s.get("gamma") * s.get("delta") * q.pow(x + 1));
            break;
        }
        case FamilyId::Racah: {
            Scalar xx(x);
            pts.push_back(xx * (xx + s.get("gamma") + s.get("delta") + Scalar(1)));
            break;
        }
        default:
            pts.push_back(s.get("q").pow(-x));
        }
    }
    return pts;
}

std::vector<Scalar> discrete_weights(const FamilySpec& s)
{
    s.validate();
    if (!has_discrete_weight(s.id))
        throw Error(ErrorKind::Domain, std::string(to_string(s.id)) + " has no finite discrete support");
    long N = *s.N;
    const Scalar one(1);
    std::vector<Scalar> w{one};
    for (long x = 0; x < N; ++x) {
        Scalar num, den;
        switch (s.id) {
        case FamilyId::QHahn: {
            Scalar q = s.get("q"), a = s.get("alpha"), b = s.get("beta");
            num = (one - a * q.pow(x + 1)) * (one - q.pow(x - N));
            den = b.is_zero() ? Scalar(0) : (one - q.pow(x + 1)) * (one - q.pow(x - N) / b) * a * b * q;
            break;
        }
        case FamilyId::AffineQKrawtchouk: {
            Scalar q = s.get("q"), a = s.get("alpha");
            num = (one - a * q.pow(x + 1)) * (one - q.pow(N - x));
            den = (one - q.pow(x + 1)) * a * q;
            break;
        }
        case FamilyId::QuantumQKrawtchouk: {
            Scalar q = s.get("q"), p = s.get("p");
            num = -q.pow(x) * (one - q.pow(N - x));
            den = (one - p * q.pow(N - x)) * (one - q.pow(x + 1));
            break;
        }
        case FamilyId::QKrawtchouk: {
            Scalar q = s.get("q"), p = s.get("p");
            num = one - q.pow(x - N);
            den = (one - q.pow(x + 1)) * (-p);
            break;
        }
        case FamilyId::QRacah: {
            Scalar q = s.get("q"), a = s.get("alpha"), b = s.get("beta"), g = s.get("gamma"), d = s.get("delta");
            Scalar q1 = q.pow(x + 1);
            num = (one - a * q1) * (one - b * d * q1) * (one - g * q1) * (one - g * d * q1) * (one - g * d * q.pow(2 * x + 3));
            if (a.is_zero() || b.is_zero())
                den = Scalar(0);
            else
                den = (one - q1) * (one - g * d * q1 / a) * (one - g * q1 / b) * (one - d * q1) * a * b * q *
                      (one - g * d * q.pow(2 * x + 1));
            break;
        }
        case FamilyId::Racah: {
            Scalar a = s.get("alpha"), b = s.get("beta"), g = s.get("gamma"), d = s.get("delta"), xx(x);
            Scalar half(1, 2);
            num = (a + one + xx) * (b + d + one + xx) * (g + one + xx) * (g + d + one + xx) * ((g + d + Scalar(3)) * half + xx);
            den = (-a + g + d + one + xx) * (-b + g + one + xx) * (d + one + xx) * ((g + d + one) * half + xx) * (xx + one);
            break;
        }
        default:
            break;
        }
        if (den.is_zero())
            throw Error(ErrorKind::WeightUndefined, std::string(to_string(s.id)) + ": weight undefined at x=" +
                                                        std::to_string(x + 1) + " (zero denominator)");
        w.push_back(w.back() * num / den);
    }
    return w;
}

Scalar discrete_moment(const FamilySpec& s, const Poly& p, unsigned m)
{
    if (p.lattice() != s.lattice())
        throw Error(ErrorKind::LatticeMismatch, "polynomial lattice differs from family lattice");
    auto pts = lattice_points(s);
    auto w = discrete_weights(s);
    Scalar acc(0);
    for (size_t i = 0; i < pts.size(); ++i)
        acc += pts[i].pow(m) * p.eval(pts[i]) * w[i];
    return acc;
}

GaussMoment gauss_moment(const FamilySpec& s, const Poly& p, unsigned m, const mpq_class& node_width)
{
    if (p.lattice() != s.lattice())
        throw Error(ErrorKind::LatticeMismatch, "polynomial lattice differs from family lattice");
    if (!p.is_real())
        throw Error(ErrorKind::NotReal, "quadrature needs a real polynomial");
    unsigned deg = static_cast<unsigned>(std::max(p.degree(), 0)) + m;
    unsigned nodes = (deg + 2) / 2; // exact for degree <= 2 nodes - 1
    if (nodes == 0)
        nodes = 1;
    auto basis = monic_basis(s, nodes);
    Ttrr t = ttrr_extract(basis);
    // h_j = c_1 ... c_j with mu_0 = 1
    std::vector<mpq_class> h{mpq_class(1)};
    for (unsigned j = 1; j < nodes; ++j) {
        const mpq_class& cj = t.c[j].real();
        if (sgn(cj) <= 0)
            throw Error(ErrorKind::NotPositiveDefinite,
                        "c_" + std::to_string(j) + " = " + to_string(cj) + " is not positive");
        h.push_back(h.back() * cj);
    }
    auto boxes = sturm_isolate(basis[nodes]);
    if (boxes.size() != nodes)
        throw Error(ErrorKind::NotPositiveDefinite, "P_N does not have N distinct real zeros");
    Iv total(mpq_class(0));
    for (auto& b : boxes) {
        RootBox r = refine_root(basis[nodes], b, node_width);
        Iv x(r.lo, r.hi);
        Iv sum(mpq_class(0));
        for (unsigned j = 0; j < nodes; ++j)
            sum = sum + sqr(eval_iv(basis[j], x)) * Iv(mpq_class(1 / h[j]));
        Iv lam = recip(sum);
        Iv f = eval_iv(p, x);
        Iv xm(mpq_class(1));
        for (unsigned k = 0; k < m; ++k)
            xm = xm * x;
        total = total + lam * f * xm;
    }
    GaussMoment g;
    g.value = (total.lo + total.hi) / 2;
    g.bound = (total.hi - total.lo) / 2;
    g.nodes = nodes;
    return g;
}

} // namespace qortho
