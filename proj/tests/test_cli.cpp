#include "doctest.h"

#include <filesystem>
#include <fstream>
#include <random>

#include "json.hpp"
#include "qortho/error.hpp"
#include "qortho_cli/cli.hpp"

using namespace qortho;
using namespace qortho::cli;
namespace fs = std::filesystem;

namespace {

struct TempDir {
    fs::path path;
    TempDir()
    {
        std::random_device rd;
        path = fs::temp_directory_path() / ("qortho-test-" + std::to_string(rd()));
        fs::create_directories(path);
    }
    ~TempDir()
    {
        std::error_code ec;
        fs::remove_all(path, ec);
    }
    std::string sub(const std::string& name) const { return (path / name).string(); }
};

RunConfig config(Command cmd, const std::string& family, const std::string& out, unsigned lo = 5, unsigned hi = 5)
{
    RunConfig c;
    c.command = cmd;
    c.family = family;
    c.out = out;
    c.n_lo = lo;
    c.n_hi = hi;
    return c;
}

std::string slurp(const std::string& p)
{
    std::ifstream in(p);
    return std::string(std::istreambuf_iterator<char>(in), {});
}

} // namespace

TEST_SUITE("cli") {

TEST_CASE("range and width parsing")
{
    CHECK(parse_range("5") == std::pair<unsigned, unsigned>{5, 5});
    CHECK(parse_range("1..8") == std::pair<unsigned, unsigned>{1, 8});
    CHECK_THROWS_AS(parse_range("8..1"), Error);
    CHECK_THROWS_AS(parse_range("x"), Error);
    CHECK(parse_width("1e-12") == mpq_class(1, 1000000000000UL));
    CHECK(parse_width("2^-40") == mpq_class(mpz_class(1), mpz_class(1) << 40));
    CHECK(parse_width("1/1024") == mpq_class(1, 1024));
    CHECK_THROWS_AS(parse_width("3e-5"), Error);
    CHECK_THROWS_AS(parse_width("1/3"), Error);
    CHECK_THROWS_AS(parse_width("0"), Error);
    CHECK(parse_command("suite") == Command::Suite);
    CHECK_THROWS_AS(parse_command("prove"), Error);
}

TEST_CASE("verify all entries")
{
    TempDir t;
    auto c = config(Command::Verify, "", t.sub("v"), 1, 8);
    c.all = true;
    c.jobs = 4;
    auto r = run_capture(c);
    CHECK(r.code == kOk);
    auto j = nlohmann::json::parse(r.report);
    CHECK(!j.empty());
}

TEST_CASE("verify report is identical across job counts")
{
    TempDir t;
    auto a = config(Command::Verify, "", t.sub("a"), 1, 6);
    a.all = true;
    auto b = a;
    b.out = t.sub("b");
    b.jobs = 8;
    CHECK(run_capture(a).report == run_capture(b).report);
}

TEST_CASE("discover")
{
    TempDir t;
    auto c = config(Command::Discover, "big-q-jacobi", t.sub("d"));
    c.shift = "alpha/q";
    c.depth = 1;
    CHECK(run_capture(c).code == kOk);

    auto neg = config(Command::Discover, "q-meixner", t.sub("n"));
    neg.shift = "beta/q";
    neg.depth = 2;
    neg.expect_none = true;
    CHECK(run_capture(neg).code == kOk);
    neg.expect_none = false;
    CHECK(run_capture(neg).code == kFail);
}

TEST_CASE("zeros writes a csv with a header")
{
    TempDir t;
    auto c = config(Command::Zeros, "q-hahn", t.sub("z"), 3, 4);
    c.shift = "alpha/q";
    auto r = run_capture(c);
    REQUIRE(r.code == kOk);
    std::string csv = slurp(t.sub("z/zeros.csv"));
    CHECK(csv.rfind("# ", 0) == 0);
    CHECK(csv.find("polynomial,n,j,lo,hi,midpoint_approx") != std::string::npos);
    CHECK(csv.find("shifted,4,4,") != std::string::npos);
}

TEST_CASE("suite report is identical across job counts")
{
    TempDir t;
    auto a = config(Command::Suite, "big-q-jacobi", t.sub("a"));
    auto b = a;
    b.out = t.sub("b");
    b.jobs = 4;
    auto ra = run_capture(a), rb = run_capture(b);
    CHECK(ra.code == kOk);
    CHECK(ra.report == rb.report);
    auto j = nlohmann::json::parse(ra.report);
    CHECK(j["family"] == "big-q-jacobi");
    CHECK(j["claims"].size() > 0);
}

TEST_CASE("usage errors exit 2")
{
    TempDir t;
    auto c = config(Command::Suite, "no-such-family", t.sub("e"));
    CHECK(run_capture(c).code == kUsage);

    std::ofstream(t.sub("bad.cfg")) << "family=big-q-jacobi\nq=2/5\nalpha=two\n";
    auto s = config(Command::Order, "", t.sub("e2"));
    s.spec_path = t.sub("bad.cfg");
    s.shift = "alpha/q";
    auto r = run_capture(s);
    CHECK(r.code == kUsage);
    CHECK(r.report.find("bad.cfg:3") != std::string::npos);

    auto missing = config(Command::Order, "", t.sub("e3"));
    missing.spec_path = t.sub("missing.cfg");
    CHECK(run_capture(missing).code == kUsage);

    std::ofstream(t.sub("out.cfg")) << "family=big-q-jacobi\nq=2/5\nalpha=5\nbeta=2\ngamma=-1\n";
    auto outside = config(Command::Suite, "", t.sub("e4"));
    outside.spec_path = t.sub("out.cfg");
    CHECK(run_capture(outside).code == kUsage);
}

TEST_CASE("suite with a known failing claim exits 1")
{
    TempDir t;
    CHECK(run_capture(config(Command::Suite, "big-q-laguerre", t.sub("s"))).code == kFail);
}

TEST_CASE("moments")
{
    TempDir t;
    auto c = config(Command::Moments, "q-hahn", t.sub("m"));
    c.shift = "alpha/q";
    CHECK(run_capture(c).code == kOk);
}

}
