#include "oracles.hh"

#include "../tools/cli.hh"

#include <posram/cert_io.hh>
#include <posram/coloring.hh>

#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <unistd.h>

using namespace posram;
namespace fs = std::filesystem;

namespace
{
    struct Run
    {
        int code;
        std::string out;
        std::string err;
    };

    auto run(std::vector<std::string> args) -> Run
    {
        std::ostringstream out, err;
        int code = cli::run(args, out, err);
        return Run{ code, out.str(), err.str() };
    }

    auto contains(const std::string & text, const std::string & piece) -> bool
    {
        return text.find(piece) != std::string::npos;
    }

    auto slurp(const fs::path & p) -> std::string
    {
        std::ifstream in{ p, std::ios::binary };
        std::ostringstream s;
        s << in.rdbuf();
        return s.str();
    }

    struct TempDir
    {
        fs::path path;

        TempDir()
        {
            static int counter = 0;
            path = fs::temp_directory_path() / ("posram_cli_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
            fs::create_directories(path);
        }

        ~TempDir()
        {
            std::error_code ignored;
            fs::remove_all(path, ignored);
        }

        auto operator/ (const std::string & name) const -> std::string { return (path / name).string(); }
    };

    auto write_coloring(const std::string & path, const Coloring & c) -> std::string
    {
        save_coloring(path, c);
        return path;
    }
}

TEST_CASE("usage errors and help")
{
    CHECK(run({}).code == 2);
    CHECK(run({ "frobnicate" }).code == 2);
    auto help = run({ "--help" });
    CHECK(help.code == 0);
    CHECK(contains(help.out, "lowerbound"));
    CHECK(run({ "scan", "--n", "2" }).code == 2);
}

TEST_CASE("random colorings are reproducible")
{
    TempDir dir;
    auto r = run({ "random", "--N", "5", "--seed", "9", "--out", dir / "a.prc" });
    CHECK(r.code == 0);
    CHECK(contains(r.out, "wrote"));
    run({ "random", "--N", "5", "--seed", "9", "--out", dir / "b.prc" });
    CHECK(slurp(dir / "a.prc") == slurp(dir / "b.prc"));
    CHECK(load_coloring(dir / "a.prc") == build(GroundSet{ 5 }, source::Random{ 9, 0.5 }));
}

TEST_CASE("verify reports found and absent copies")
{
    TempDir dir;
    auto blue = write_coloring(dir / "blue.prc", Coloring{ GroundSet{ 3 }, Color::blue });
    auto found = run({ "verify", blue, "--pattern", "lambda", "--color", "blue", "--cert", dir / "l.cert" });
    CHECK(found.code == 0);
    CHECK(contains(found.out, "found:"));
    CHECK(run({ "check", dir / "l.cert", blue }).out == "PASS pattern\n");

    auto absent = run({ "verify", blue, "--pattern", "Q1", "--color", "red" });
    CHECK(absent.code == 1);
    CHECK(contains(absent.out, "absent:"));

    CHECK(run({ "verify", blue, "--pattern", "nonsense-pattern" }).code == 2);
    CHECK(run({ "verify", blue, "--pattern", "Q1", "--color", "green" }).code == 2);
    CHECK(run({ "verify", dir / "missing.prc", "--pattern", "Q1" }).code == 2);
}

TEST_CASE("shift and duality write checkable certificates")
{
    TempDir dir;
    auto red = write_coloring(dir / "red.prc", Coloring{ GroundSet{ 4 }, Color::red });
    auto blue = write_coloring(dir / "blue.prc", Coloring{ GroundSet{ 4 }, Color::blue });

    auto s = run({ "shift", "--coloring", red, "--split", "2,2", "--cert", dir / "s.cert" });
    CHECK(s.code == 0);
    CHECK(contains(s.out, "red X-good copy of Q_2"));
    CHECK(run({ "check", dir / "s.cert", red }).out == "PASS xgood\n");

    auto chain = run({ "shift", "--coloring", blue, "--split", "2,2", "--ordering", "3,2", "--cert", dir / "c.cert" });
    CHECK(chain.code == 0);
    CHECK(contains(chain.out, "blue chain"));
    CHECK(run({ "check", dir / "c.cert", blue }).out == "PASS chain\n");

    auto inline_cert = run({ "shift", "--coloring", red, "--split", "1,3" });
    CHECK(contains(inline_cert.out, "CERT xgood N=4"));

    CHECK(run({ "shift", "--coloring", red, "--split", "2,1" }).code == 2);
    CHECK(run({ "shift", "--coloring", red, "--split", "2,x" }).code == 2);

    auto d = run({ "duality", "--coloring", red, "--split", "3,1", "--cert", dir / "d.cert" });
    CHECK(d.code == 0);
    CHECK(run({ "check", dir / "d.cert", red }).out == "PASS xgood\n");

    auto lambda_free = Coloring{ GroundSet{ 4 }, Color::red };
    for (Mask v : { 0b0000u, 0b1000u, 0b1100u, 0b1110u, 0b1111u })
        lambda_free.assign(v, Color::blue);
    auto chainy = write_coloring(dir / "chainy.prc", lambda_free);
    auto shrub = run({ "duality", "--coloring", chainy, "--split", "1,3", "--cert", dir / "y.cert" });
    CHECK(shrub.code == 0);
    auto verdict = run({ "check", dir / "y.cert", chainy });
    CHECK(verdict.code == 0);

    CHECK(run({ "duality", "--coloring", blue, "--split", "2,2" }).code == 2);
}

TEST_CASE("scan")
{
    TempDir dir;
    auto red = write_coloring(dir / "red.prc", Coloring{ GroundSet{ 4 }, Color::red });
    auto r = run({ "scan", "--coloring", red, "--n", "2", "--k", "2", "--cert", dir / "scan" });
    CHECK(r.code == 0);
    CHECK(contains(r.out, "red Q_2 for Y = "));
    CHECK(run({ "check", dir / "scan.cert", red }).out == "PASS xgood\n");
}

TEST_CASE("shrub build")
{
    TempDir dir;
    auto r = run({ "shrub", "build", "--k", "4" });
    CHECK(r.code == 0);
    CHECK(contains(r.out, "canonical shrub: N = 20, 65 nodes"));

    auto small = run({ "shrub", "build", "--k", "2", "--cert", dir / "s.cert" });
    CHECK(contains(small.out, "N = 6, 5 nodes"));
    auto c = write_coloring(dir / "any.prc", Coloring{ GroundSet{ 6 }, Color::red });
    CHECK(run({ "check", dir / "s.cert", c }).code == 0);

    CHECK(run({ "shrub", "build", "--k", "0" }).code == 2);
    CHECK(run({ "shrub", "build", "--k", "3", "--blocksize", "2" }).code == 2);
}

TEST_CASE("lowerbound is deterministic and its output checks")
{
    TempDir dir;
    auto a = run({ "lowerbound", "--N", "20", "--k", "2", "--seed", "1", "--out", dir / "a" });
    auto b = run({ "lowerbound", "--N", "20", "--k", "2", "--seed", "1", "--out", dir / "b" });
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
    CHECK(contains(a.out, "certified: R(Lambda, Q_18) >= 21"));
    for (auto ext : { ".prc", ".cert", ".frameworks" })
        CHECK(slurp(dir / ("a" + std::string{ ext })) == slurp(dir / ("b" + std::string{ ext })));
    CHECK(run({ "check", dir / "a.cert", dir / "a.prc" }).out == "PASS frameworks\n");

    auto scan = run({ "scan", "--coloring", dir / "a.prc", "--n", "18", "--k", "2" });
    CHECK(scan.code == 0);
    CHECK(contains(scan.out, "blue shrubs for all 190 choices of Y: no red Q_18"));

    auto fail = run({ "lowerbound", "--N", "12", "--k", "2", "--seed", "1", "--out", dir / "c" });
    CHECK(fail.code == 1);
    CHECK(contains(fail.out, "FAIL budget-exhausted"));

    CHECK(run({ "lowerbound", "--N", "6", "--k", "2", "--seed", "1", "--out", dir / "d" }).code == 2);
}

TEST_CASE("ramsey")
{
    TempDir dir;
    auto r = run({ "ramsey", "--blue", "lambda", "--red", "Q1", "--witness", dir / "w.prc" });
    CHECK(r.code == 0);
    CHECK(contains(r.out, "R = 3\n"));
    CHECK(contains(r.out, "R lambda Q1 = 3\n"));
    CHECK(slurp(dir / "w.prc") == slurp(fs::path{ POSRAM_TEST_DATA } / "lambda_q1_witness.prc"));

    auto bound = run({ "ramsey", "--blue", "chain4", "--red", "chain4", "--nmax", "2" });
    CHECK(bound.code == 1);
    CHECK(contains(bound.out, "R >= 3"));
    CHECK(contains(bound.out, "= >=3"));
}

TEST_CASE("the stored witness is a good coloring of Q_2")
{
    auto w = load_coloring((fs::path{ POSRAM_TEST_DATA } / "lambda_q1_witness.prc").string());
    CHECK(w.ground().size() == 2);
    CHECK(! oracle::has_lambda(w, true));
    CHECK(! oracle::has_induced_copy(standard_poset(PatternKind::cube(1)), oracle::color_class(w, false)));
}

TEST_CASE("check rejects tampered and malformed certificates")
{
    TempDir dir;
    auto red = write_coloring(dir / "red.prc", Coloring{ GroundSet{ 3 }, Color::red });
    run({ "shift", "--coloring", red, "--split", "2,1", "--cert", dir / "s.cert" });
    auto text = slurp(dir / "s.cert");

    auto tampered = text;
    auto at = tampered.rfind("V ");
    tampered[at + 2] = tampered[at + 2] == '0' ? '1' : '0';
    std::ofstream{ dir / "t.cert" } << tampered;
    auto t = run({ "check", dir / "t.cert", red });
    CHECK(t.code == 1);
    CHECK(t.out.rfind("FAIL ", 0) == 0);

    std::ofstream{ dir / "m.cert" } << "CERT xgood N=3\nX zz\n";
    auto m = run({ "check", dir / "m.cert", red });
    CHECK(m.code == 1);
    CHECK(m.out.rfind("FAIL malformed", 0) == 0);

    auto other = write_coloring(dir / "other.prc", Coloring{ GroundSet{ 4 }, Color::red });
    auto h = run({ "check", dir / "s.cert", other });
    CHECK(h.code == 1);
    CHECK(contains(h.out, "FAIL host-mismatch"));
}
