#include "qortho_cli/cli.hpp"

#include <atomic>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <thread>

#include "json.hpp"
#include "qortho/quasi.hpp"

namespace qortho::cli {

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

namespace {

mpz_class pow_int(unsigned base, unsigned e)
{
    mpz_class r;
    mpz_ui_pow_ui(r.get_mpz_t(), base, e);
    return r;
}

bool is_power_of(const mpz_class& v, unsigned base)
{
    if (v < 1)
        return false;
    mpz_class x = v;
    while (x > 1) {
        if (x % base != 0)
            return false;
        x /= base;
    }
    return true;
}

// Runs f(0..count-1) on `jobs` threads; callers write into pre-sized slots.
void parallel_for(size_t count, unsigned jobs, const std::function<void(size_t)>& f)
{
    std::atomic<size_t> next{0};
    auto worker = [&]() {
        for (size_t i; (i = next.fetch_add(1)) < count;)
            f(i);
    };
    jobs = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(std::max<size_t>(count, 1))));
    if (jobs == 1) {
        worker();
        return;
    }
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < jobs; ++t)
        pool.emplace_back(worker);
    for (auto& t : pool)
        t.join();
}

json params_json(const FamilySpec& s)
{
    json p = json::object();
    for (const auto& [k, v] : s.params)
        p[k] = v.str();
    if (s.N)
        p["N"] = std::to_string(*s.N);
    return p;
}

json scalars(const std::vector<Scalar>& v)
{
    json a = json::array();
    for (const auto& s : v)
        a.push_back(s.str());
    return a;
}

const CatalogEntry* find_entry(const std::string& id)
{
    for (const auto& e : catalog())
        if (e.id == id)
            return &e;
    return nullptr;
}

FamilySpec default_instance(FamilyId id)
{
    auto inst = suite_instances(id);
    if (!inst.empty())
        return inst.front();
    for (const auto& nc : negative_controls())
        if (nc.base.id == id)
            return nc.base;
    for (const auto& e : catalog())
        if (e.family == id)
            return reference_spec(e);
    throw Error(ErrorKind::InvalidSpec, std::string("no built-in instance for ") + to_string(id) + "; pass --spec");
}

FamilySpec resolve_spec(const RunConfig& c)
{
    if (!c.spec_path.empty()) {
        FamilySpec s = load_spec(c.spec_path);
        if (!c.family.empty() && family_from_name(c.family) != s.id)
            throw Error(ErrorKind::InvalidSpec, c.spec_path + ": family is " + to_string(s.id) + ", not " + c.family);
        return s;
    }
    if (c.family.empty())
        throw Error(ErrorKind::Parse, "--family or --spec is required");
    return default_instance(family_from_name(c.family));
}

ShiftSpec resolve_shift(const RunConfig& c)
{
    if (c.shift.empty())
        throw Error(ErrorKind::Parse, "--shift is required");
    if (const CatalogEntry* e = find_entry(c.shift))
        return e->shift;
    return ShiftSpec::parse(c.shift);
}

std::string read_text(const fs::path& p)
{
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

struct Sink {
    fs::path dir;
    std::vector<std::string> files;

    void write(const std::string& name, const std::string& text)
    {
        fs::create_directories(dir);
        fs::path p = dir / name;
        std::ofstream out(p, std::ios::binary);
        if (!out)
            throw Error(ErrorKind::Io, "cannot write " + p.string());
        out << text;
        files.push_back(p.string());
    }
};

std::string dump(const json& j) { return j.dump(2) + "\n"; }

// ---------------- commands ----------------

int cmd_verify(const RunConfig& c, Sink& sink, std::ostream& log)
{
    struct Task {
        const CatalogEntry* entry;
        FamilySpec params;
        unsigned n;
    };
    std::optional<FamilySpec> user;
    std::optional<FamilyId> fam;
    if (!c.all) {
        user = resolve_spec(c);
        fam = user->id;
    }
    std::vector<Task> tasks;
    for (const auto& e : catalog()) {
        if (fam && e.family != *fam)
            continue;
        if (!c.all && !c.shift.empty() && c.shift != e.id && c.shift != e.shift.str())
            continue;
        FamilySpec p = user && c.spec_path.size() ? *user : reference_spec(e);
        for (unsigned n = std::max(c.n_lo, e.depth); n <= c.n_hi; ++n) {
            if (p.N && n > static_cast<unsigned>(*p.N))
                break;
            tasks.push_back({&e, p, n});
        }
    }
    if (tasks.empty())
        throw Error(ErrorKind::Parse, "no catalog entries match");

    std::vector<json> rows(tasks.size());
    std::vector<int> status(tasks.size()); // 0 holds, 1 fails, 2 error
    parallel_for(tasks.size(), c.jobs, [&](size_t i) {
        const Task& t = tasks[i];
        json r;
        r["entry"] = t.entry->id;
        r["family"] = to_string(t.entry->family);
        r["shift"] = t.entry->shift.str();
        r["n"] = t.n;
        try {
            VerifyResult v = verify_entry(*t.entry, t.n, t.params);
            r["holds"] = v.holds;
            if (!v.holds)
                r["residual"] = v.residual.str();
            status[i] = v.holds ? 0 : 1;
        } catch (const Error& e) {
            r["holds"] = false;
            r["error"] = std::string(to_string(e.kind())) + ": " + e.what();
            status[i] = 2;
        }
        rows[i] = std::move(r);
    });

    int counts[3] = {0, 0, 0};
    for (int s : status)
        ++counts[s];
    json j;
    j["command"] = "verify";
    j["results"] = rows;
    j["summary"] = {{"holds", counts[0]}, {"fails", counts[1]}, {"errors", counts[2]}};
    sink.write("report.json", dump(j));
    log << "verify: " << counts[0] << " hold, " << counts[1] << " fail, " << counts[2] << " errors over "
        << tasks.size() << " (entry, n) pairs\n";
    return counts[1] + counts[2] ? kFail : kOk;
}

int cmd_discover(const RunConfig& c, Sink& sink, std::ostream& log)
{
    FamilySpec base = resolve_spec(c);
    ShiftSpec shift = resolve_shift(c);
    const CatalogEntry* match = nullptr;
    for (const auto& e : catalog())
        if (e.family == base.id && e.shift.str() == shift.str() && e.depth == c.depth)
            match = &e;

    json rows = json::array();
    int found = 0, missing = 0, disagree = 0;
    for (unsigned n = c.n_lo; n <= c.n_hi; ++n) {
        DiscoveryResult d = discover_coeffs(base, shift, n, c.depth);
        json r;
        r["n"] = n;
        r["outcome"] = d.found ? "coefficients" : "no-constant-combination";
        if (d.found) {
            ++found;
            r["coeffs"] = scalars(d.coeffs);
            if (match && n >= match->depth) {
                bool same = catalog_coeffs(*match, n, base) == d.coeffs;
                r["catalog_entry"] = match->id;
                r["catalog_agrees"] = same;
                disagree += !same;
            }
        } else {
            ++missing;
            r["offending_index"] = d.offending_index;
        }
        rows.push_back(r);
    }
    json j;
    j["command"] = "discover";
    j["family"] = to_string(base.id);
    j["params"] = params_json(base);
    j["shift"] = shift.str();
    j["depth"] = c.depth;
    j["expect_none"] = c.expect_none;
    j["results"] = rows;
    sink.write("report.json", dump(j));
    log << "discover " << shift.str() << " J=" << c.depth << ": " << found << " with coefficients, " << missing
        << " without a constant combination\n";
    if (disagree)
        return kFail;
    if (c.expect_none)
        return found ? kFail : kOk;
    return missing ? kFail : kOk;
}

int cmd_order(const RunConfig& c, Sink& sink, std::ostream& log)
{
    FamilySpec base = resolve_spec(c);
    ShiftSpec shift = resolve_shift(c);
    json rows = json::array();
    for (unsigned n = c.n_lo; n <= c.n_hi; ++n) {
        QuasiVerdict v = quasi_order(base, shift, n);
        json r;
        r["n"] = n;
        r["order"] = v.order;
        r["coeffs"] = scalars(v.coeffs);
        r["zeros_in_support"] = v.zero_count;
        r["endpoint_perturbed"] = v.perturbed;
        r["extreme"] = to_string(v.extreme);
        rows.push_back(r);
        log << "n=" << n << " order " << v.order << ", " << v.zero_count << " zeros in "
            << support_interval(base).str() << ", " << to_string(v.extreme) << "\n";
    }
    json j;
    j["command"] = "order";
    j["family"] = to_string(base.id);
    j["params"] = params_json(base);
    j["shift"] = shift.str();
    j["results"] = rows;
    sink.write("report.json", dump(j));
    return kOk;
}

std::vector<RootBox> refined(const Poly& p, const mpq_class& width)
{
    auto boxes = sturm_isolate(p);
    for (auto& b : boxes)
        if (b.width() > width)
            b = refine_root(p, b, width);
    return boxes;
}

std::string decimal(const mpq_class& v)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v.get_d());
    return buf;
}

int cmd_zeros(const RunConfig& c, Sink& sink, std::ostream& log)
{
    FamilySpec base = resolve_spec(c);
    std::optional<ShiftSpec> shift;
    if (!c.shift.empty())
        shift = resolve_shift(c);

    std::ostringstream csv;
    csv << "# midpoint_approx is the decimal midpoint of the isolating box; lo and hi are exact\n";
    csv << "polynomial,n,j,lo,hi,midpoint_approx\n";
    json rows = json::array();
    auto emit = [&](const std::string& name, const FamilySpec& s, unsigned n) {
        Poly p = monic_poly(s, n, true);
        auto boxes = refined(p, c.width);
        for (size_t j = 0; j < boxes.size(); ++j)
            csv << name << "," << n << "," << j + 1 << "," << to_string(boxes[j].lo) << "," << to_string(boxes[j].hi)
                << "," << decimal(boxes[j].midpoint()) << "\n";
        json r;
        r["polynomial"] = name;
        r["n"] = n;
        r["real_zeros"] = boxes.size();
        rows.push_back(r);
    };
    for (unsigned n = c.n_lo; n <= c.n_hi; ++n) {
        emit("base", base, n);
        if (shift)
            emit("shifted", shift->apply(base), n);
    }
    sink.write("zeros.csv", csv.str());

    json j;
    j["command"] = "zeros";
    j["family"] = to_string(base.id);
    j["params"] = params_json(base);
    if (shift)
        j["shift"] = shift->str();
    j["width"] = to_string(c.width);
    j["results"] = rows;

    if (!c.sweep.empty()) {
        // param=lo..hi:steps, zeros of the (shifted) P_{n_hi} against the parameter value
        auto eq = c.sweep.find('='), dots = c.sweep.find(".."), colon = c.sweep.rfind(':');
        if (eq == std::string::npos || dots == std::string::npos || colon == std::string::npos || colon < dots)
            throw Error(ErrorKind::Parse, "--sweep expects param=lo..hi:steps");
        std::string name = c.sweep.substr(0, eq);
        mpq_class lo = parse_rational(c.sweep.substr(eq + 1, dots - eq - 1));
        mpq_class hi = parse_rational(c.sweep.substr(dots + 2, colon - dots - 2));
        long steps = std::stol(c.sweep.substr(colon + 1));
        if (steps < 1 || !(lo < hi))
            throw Error(ErrorKind::Parse, "--sweep needs lo < hi and steps >= 1");
        if (!base.has(name))
            throw Error(ErrorKind::Parse, "--sweep: no parameter " + name);
        std::ostringstream dat;
        dat << "# " << name << " zero_midpoint_approx (n=" << c.n_hi << (shift ? ", shifted " + shift->str() : "")
            << ")\n";
        int skipped = 0;
        for (long i = 0; i <= steps; ++i) {
            mpq_class v = lo + (hi - lo) * i / steps;
            v.canonicalize();
            FamilySpec s = base.with(name, Scalar(v));
            try {
                if (region_check(s).status != RegionStatus::Orthogonal) {
                    ++skipped;
                    continue;
                }
                Poly p = monic_poly(shift ? shift->apply(s) : s, c.n_hi, true);
                for (const auto& b : refined(p, c.width))
                    dat << decimal(v) << " " << decimal(b.midpoint()) << "\n";
            } catch (const Error&) {
                ++skipped;
            }
        }
        sink.write("sweep-" + name + ".dat", dat.str());
        j["sweep"] = {{"param", name}, {"points", steps + 1}, {"skipped", skipped}};
    }
    sink.write("report.json", dump(j));
    log << "zeros: wrote " << sink.files.size() << " files to " << sink.dir.string() << "\n";
    return kOk;
}

int cmd_suite(const RunConfig& c, Sink& sink, std::ostream& log)
{
    FamilySpec base = resolve_spec(c);
    SuiteOptions opt;
    opt.width = c.width;
    opt.jobs = c.jobs;
    int code = kOk;
    std::vector<std::string> texts;
    for (unsigned n = c.n_lo; n <= c.n_hi; ++n) {
        SuiteReport r = theorem_suite(base, n, opt);
        int counts[5] = {0, 0, 0, 0, 0};
        for (const auto& cl : r.claims)
            ++counts[static_cast<int>(cl.verdict)];
        log << "suite " << to_string(base.id) << " n=" << n << ": " << counts[0] << " pass, " << counts[1]
            << " fail, " << counts[2] << " inconclusive, " << counts[3] << " skipped, " << counts[4] << " errors\n";
        for (const auto& cl : r.claims)
            if (cl.verdict == ClaimVerdict::Fail || cl.verdict == ClaimVerdict::Error ||
                cl.verdict == ClaimVerdict::Inconclusive)
                log << "  " << to_string(cl.verdict) << ": " << cl.id << "\n";
        int e = r.exit_code();
        if (e == kFail || (e == kInconclusive && code == kOk))
            code = e;
        texts.push_back(suite_report_json(r));
    }
    if (texts.size() == 1) {
        sink.write("report.json", texts.front());
    } else {
        json arr = json::array();
        for (const auto& t : texts)
            arr.push_back(json::parse(t));
        sink.write("report.json", dump(arr));
    }
    return code;
}

int cmd_moments(const RunConfig& c, Sink& sink, std::ostream& log)
{
    FamilySpec base = resolve_spec(c);
    ShiftSpec shift = resolve_shift(c);
    bool discrete = has_discrete_weight(base.id);
    json rows = json::array();
    int bad = 0;
    for (unsigned n = c.n_lo; n <= c.n_hi; ++n) {
        Poly q = monic_poly(shift.apply(base), n, true);
        QuasiVerdict v = quasi_order_poly(base, q);
        json r;
        r["n"] = n;
        r["order"] = v.order;
        json ms = json::array();
        for (unsigned m = 0; m <= n; ++m) {
            json mj;
            mj["m"] = m;
            bool want_zero = m + v.order + 1 <= n;
            if (discrete) {
                Scalar val = discrete_moment(base, q, m);
                mj["value"] = val.str();
                if (m + v.order <= n)
                    bad += val.is_zero() != want_zero;
            } else {
                GaussMoment g = gauss_moment(base, q, m, c.width);
                mj["value_approx"] = decimal(g.value);
                mj["bound"] = decimal(g.bound);
                mj["nodes"] = g.nodes;
            }
            ms.push_back(mj);
        }
        r["moments"] = ms;
        rows.push_back(r);
    }
    json j;
    j["command"] = "moments";
    j["family"] = to_string(base.id);
    j["params"] = params_json(base);
    j["shift"] = shift.str();
    j["kind"] = discrete ? "exact-discrete" : "gauss-quadrature";
    j["results"] = rows;
    sink.write("report.json", dump(j));
    log << "moments: " << (discrete ? "exact sums" : "quadrature") << ", " << rows.size() << " degrees"
        << (discrete ? ", " + std::to_string(bad) + " mismatches against the order" : std::string()) << "\n";
    return bad ? kFail : kOk;
}

int dispatch(const RunConfig& c, Sink& sink, std::ostream& log)
{
    if (c.n_lo > c.n_hi)
        throw Error(ErrorKind::Parse, "empty --n range");
    switch (c.command) {
    case Command::Verify: return cmd_verify(c, sink, log);
    case Command::Discover: return cmd_discover(c, sink, log);
    case Command::Order: return cmd_order(c, sink, log);
    case Command::Zeros: return cmd_zeros(c, sink, log);
    case Command::Suite: return cmd_suite(c, sink, log);
    case Command::Moments: return cmd_moments(c, sink, log);
    }
    return kUsage;
}

int error_code(const Error& e)
{
    switch (e.kind()) {
    case ErrorKind::Parse:
    case ErrorKind::InvalidSpec:
    case ErrorKind::Io:
    case ErrorKind::NotOrthogonal:
        return kUsage;
    default:
        return kFail;
    }
}

} // namespace

std::pair<unsigned, unsigned> parse_range(const std::string& text)
{
    auto to_u = [&](const std::string& s) -> unsigned {
        if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos)
            throw Error(ErrorKind::Parse, "bad --n value '" + text + "'");
        return static_cast<unsigned>(std::stoul(s));
    };
    auto dots = text.find("..");
    if (dots == std::string::npos) {
        unsigned v = to_u(text);
        return {v, v};
    }
    unsigned a = to_u(text.substr(0, dots)), b = to_u(text.substr(dots + 2));
    if (a > b)
        throw Error(ErrorKind::Parse, "bad --n range '" + text + "'");
    return {a, b};
}

mpq_class parse_width(const std::string& text)
{
    mpq_class w;
    auto e = text.find_first_of("eE");
    auto caret = text.find("^-");
    auto exponent = [&](const std::string& digits) -> unsigned {
        if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos)
            throw Error(ErrorKind::Parse, "bad --width '" + text + "'");
        return static_cast<unsigned>(std::stoul(digits));
    };
    if (e != std::string::npos && text.substr(0, e) == "1" && text.compare(e + 1, 1, "-") == 0) {
        w = mpq_class(mpz_class(1), pow_int(10, exponent(text.substr(e + 2))));
    } else if (caret != std::string::npos && text.substr(0, caret) == "2") {
        w = mpq_class(mpz_class(1), pow_int(2, exponent(text.substr(caret + 2))));
    } else {
        w = parse_rational(text);
    }
    w.canonicalize();
    if (sgn(w) <= 0 || w.get_num() != 1 || !(is_power_of(w.get_den(), 2) || is_power_of(w.get_den(), 10)))
        throw Error(ErrorKind::Parse, "--width must be a positive power of 1/2 or 1/10: " + text);
    return w;
}

Command parse_command(const std::string& text)
{
    if (text == "verify")
        return Command::Verify;
    if (text == "discover")
        return Command::Discover;
    if (text == "order")
        return Command::Order;
    if (text == "zeros")
        return Command::Zeros;
    if (text == "suite")
        return Command::Suite;
    if (text == "moments")
        return Command::Moments;
    throw Error(ErrorKind::Parse, "unknown command " + text);
}

RunOutput run_capture(const RunConfig& config)
{
    RunOutput out;
    Sink sink{config.out, {}};
    std::ostringstream log;
    try {
        out.code = dispatch(config, sink, log);
    } catch (const Error& e) {
        out.code = error_code(e);
        out.report = std::string("error: ") + e.what();
        out.files = sink.files;
        return out;
    }
    out.files = sink.files;
    fs::path rep = fs::path(config.out) / "report.json";
    if (fs::exists(rep))
        out.report = read_text(rep);
    return out;
}

int run(const RunConfig& config)
{
    Sink sink{config.out, {}};
    try {
        return dispatch(config, sink, std::cout);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return error_code(e);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kFail;
    }
}

} // namespace qortho::cli
