#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "latconv/cli.hpp"
#include "latconv/examples.hpp"
#include "support.hpp"

using namespace latconv;
namespace fs = std::filesystem;

namespace {

struct Run {
    int code;
    std::string out, err;
};

Run run_cli(std::vector<std::string> args) {
    args.insert(args.begin(), "latconv");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

fs::path scratch(const std::string& name) {
    const fs::path p = fs::temp_directory_path() / ("latconv_cli_test_" + name);
    fs::remove_all(p);
    return p;
}

// Parses "x_1,...,re,im" rows after any '#' lines and the header.
std::vector<std::vector<double>> csv_rows(const std::string& text) {
    std::vector<std::vector<double>> rows;
    std::istringstream in(text);
    bool header = false;
    for (std::string line; std::getline(in, line);) {
        if (line.empty() || line[0] == '#') continue;
        if (!header) {
            header = true;
            continue;
        }
        std::vector<double> r;
        std::istringstream ls(line);
        for (std::string c; std::getline(ls, c, ',');) r.push_back(std::stod(c));
        rows.push_back(r);
    }
    return rows;
}

}  // namespace

TEST_SUITE("cli") {
    TEST_CASE("analyze reports mu = 3/4 for the intro example") {
        const Run r = run_cli({"analyze", "--example", "intro"});
        CHECK(r.code == 0);
        CHECK(r.out.find("mu = 3/4") != std::string::npos);
        CHECK(r.out.find("xi_1,xi_2,re,im,omega") != std::string::npos);
    }

    TEST_CASE("stability of the unstable candidate exits with 3") {
        const Run r = run_cli({"stability", "--example", "unstable1d", "--nmax", "512"});
        CHECK(r.code == 3);
        CHECK(r.out.rfind("# verdict: unstable", 0) == 0);
        CHECK(run_cli({"stability", "--example", "ex73", "--nmax", "256"}).code == 0);
    }

    TEST_CASE("examples list and emit round trip") {
        const Run l = run_cli({"examples", "list"});
        CHECK(l.code == 0);
        CHECK(l.out.find("intro,") != std::string::npos);
        for (const char* name : {"intro", "ex72", "ex75:3,2", "unstable1d"}) {
            const Run e = run_cli({"examples", "emit", name});
            REQUIRE(e.code == 0);
            std::istringstream in(e.out);
            CHECK(read_function(in) == builtin_example(name));
        }
    }

    TEST_CASE("usage errors exit with 2") {
        CHECK(run_cli({}).code == 2);
        CHECK(run_cli({"frobnicate"}).code == 2);
        CHECK(run_cli({"power", "--example", "intro", "--n", "0"}).code == 2);
        CHECK(run_cli({"power", "--example", "intro", "--n", "5:2"}).code == 2);
        CHECK(run_cli({"power", "--example", "intro", "--n", "4", "--window", "1:0,0:1"}).code == 2);
        CHECK(run_cli({"analyze", "--example", "nope"}).code == 2);
        CHECK(run_cli({"analyze"}).code == 2);
        CHECK(run_cli({"analyze", "--example", "intro", "--input", "x.txt"}).code == 2);
        CHECK(run_cli({"power", "--example", "intro", "--n", "4", "--method", "magic"}).code == 2);
    }

    TEST_CASE("malformed function file reports the line") {
        const fs::path dir = scratch("bad");
        fs::create_directories(dir);
        const fs::path file = dir / "f.txt";
        std::ofstream(file) << "dim 2\n0 0 1 0\n1 0 0.5\n";
        const Run r = run_cli({"analyze", "--input", file.string()});
        CHECK(r.code == 2);
        CHECK(r.err.find("line 3") != std::string::npos);
        fs::remove_all(dir);
    }

    TEST_CASE("resource cap exits with 4") {
        const Run r = run_cli({"power", "--example", "intro", "--n", "100000"});
        CHECK(r.code == 4);
    }

    TEST_CASE("power matches the direct oracle at n = 100") {
        const Run r = run_cli({"power", "--example", "ex71", "--n", "100", "--window", "-12:12,-12:12"});
        REQUIRE(r.code == 0);
        const LatticeFunction oracle = power(builtin_example("ex71"), 100, PowerMethod::Direct);
        const auto rows = csv_rows(r.out);
        CHECK(rows.size() == 25 * 25);
        double err = 0;
        for (const auto& row : rows) {
            const LatticePoint x{static_cast<std::int64_t>(row[0]), static_cast<std::int64_t>(row[1])};
            err = std::max(err, std::abs(cplx(row[2], row[3]) - oracle.at(x)));
        }
        CHECK(err < 1e-10);
    }

    TEST_CASE("large-n power: peak near the centre, wider in y than in x") {
        const Run r = run_cli({"power", "--example", "ex71", "--n", "10000", "--window", "-50:50,-50:50"});
        REQUIRE(r.code == 0);
        const auto rows = csv_rows(r.out);
        REQUIRE(rows.size() == 101 * 101);
        std::size_t arg = 0;
        for (std::size_t i = 0; i < rows.size(); ++i)
            if (std::abs(cplx(rows[i][2], rows[i][3])) > std::abs(cplx(rows[arg][2], rows[arg][3]))) arg = i;
        CHECK(std::abs(rows[arg][0]) <= 2);
        CHECK(rows[arg][1] == 0);
        const double peak = std::abs(cplx(rows[arg][2], rows[arg][3]));
        double wx = 0, wy = 0;
        for (const auto& row : rows) {
            if (std::abs(cplx(row[2], row[3])) < peak / 2) continue;
            wx = std::max(wx, std::abs(row[0]));
            wy = std::max(wy, std::abs(row[1]));
        }
        CHECK(wy > wx);
        // Periodized values match the local limit approximation to its known accuracy.
        const Run l = run_cli({"llt", "--example", "ex71", "--n", "10000", "--window", "-50:50,-50:50"});
        const auto approx = csv_rows(l.out.substr(l.out.find("# n:")));
        REQUIRE(approx.size() == rows.size());
        double diff = 0;
        for (std::size_t i = 0; i < rows.size(); ++i) diff = std::max(diff, std::abs(rows[i][2] - approx[i][2]));
        CHECK(diff < 0.05 * peak);
    }

    TEST_CASE("graymap output with sidecar") {
        const fs::path dir = scratch("pgm");
        const Run r = run_cli({"power", "--example", "intro", "--n", "20", "--window", "-10:10,-5:5", "--graymap", "abs", "--out",
                               dir.string()});
        REQUIRE(r.code == 0);
        std::ifstream pgm(dir / "power_n20.pgm", std::ios::binary);
        std::string magic;
        int w = 0, h = 0, maxval = 0;
        pgm >> magic >> w >> h >> maxval;
        CHECK(magic == "P5");
        CHECK(w == 11);
        CHECK(h == 21);
        CHECK(maxval == 255);
        CHECK(fs::file_size(dir / "power_n20.pgm") == std::string("P5\n11 21\n255\n").size() + 11 * 21);
        std::ifstream side(dir / "power_n20.txt");
        std::string first;
        std::getline(side, first);
        CHECK(first == "mode abs");
        CHECK(fs::exists(dir / "power_n20.csv"));
        fs::remove_all(dir);
        CHECK(run_cli({"power", "--example", "intro", "--n", "20", "--graymap", "abs"}).code == 2);
    }

    TEST_CASE("reports are byte-identical across runs") {
        const std::vector<std::string> args{"bounds", "--kind", "gaussian", "--example", "srw:2", "--n", "8:32:8"};
        const Run a = run_cli(args), b = run_cli(args);
        CHECK(a.code == 0);
        CHECK(a.out == b.out);
        CHECK(a.out.rfind("# verdict: fitted", 0) == 0);
    }

    TEST_CASE("bounds, llt, attractor, legendre and theta subcommands") {
        CHECK(run_cli({"bounds", "--kind", "gaussian", "--example", "ex72", "--n", "4,8"}).out.rfind(
                  "# verdict: hypothesis-violation", 0) == 0);
        const Run d = run_cli({"bounds", "--kind", "derivative", "--example", "ex75:3,2", "--n", "16:64:8", "--v", "1,0;0,1",
                               "--beta", "1,0"});
        CHECK(d.code == 0);
        CHECK(run_cli({"bounds", "--kind", "sup", "--example", "intro", "--n", "64:512:x2"}).code == 0);
        const Run l = run_cli({"llt", "--example", "intro", "--n", "16:128:x2"});
        CHECK(l.code == 0);
        CHECK(l.out.rfind("# verdict: decreasing", 0) == 0);
        const Run h = run_cli({"attractor", "--example", "ex72", "--t", "10", "--window", "-3:3,-3:3"});
        CHECK(h.code == 0);
        CHECK(csv_rows(h.out).size() == 49);
        const Run g = run_cli({"legendre", "--example", "ex71", "--at", "1,0;0,1"});
        REQUIRE(g.code == 0);
        const auto rows = csv_rows(g.out);
        REQUIRE(rows.size() == 2);
        CHECK(rows[0][2] == doctest::Approx(5 * std::pow(3.0, -1.2)).epsilon(1e-6));
        CHECK(rows[1][2] == doctest::Approx(1.5).epsilon(1e-6));
        const Run t = run_cli({"theta", "--example", "srw:2", "--n", "2", "--window", "1:1,1:1", "--check", "16"});
        CHECK(t.code == 0);
        CHECK(t.out.find("2,1,1,2,2") != std::string::npos);
        CHECK(run_cli({"theta", "--example", "intro", "--n", "2", "--window", "0:0,0:0"}).code == 2);
    }
}
