#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "adelic/cli.hpp"

using namespace adelic;

namespace {

struct RunResult {
    int code;
    std::string out;
    std::string err;
};

RunResult run_cli(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    int code = run(args, out, err);
    return {code, out.str(), err.str()};
}

}  // namespace

TEST_CASE("vp prints exact valuations") {
    auto r = run_cli({"vp", "50", "5"});
    CHECK(r.code == 0);
    CHECK(r.out == "2\n");

    auto inf = run_cli({"vp", "0", "3"});
    CHECK(inf.code == 0);
    CHECK(inf.out == "oo\n");

    auto quad = run_cli({"vp", "2+1*sqrt(-1)", "5:split-", "--field", "-1"});
    CHECK(quad.code == 0);
    CHECK(quad.out == "1\n");
}

TEST_CASE("product-check prints the exact value 1") {
    auto r = run_cli({"product-check", "17"});
    CHECK(r.code == 0);
    CHECK(r.out == "1\n");

    auto quad = run_cli({"product-check", "1+1*sqrt(-5)", "--field", "-5"});
    CHECK(quad.code == 0);
    CHECK(quad.out == "1\n");
}

TEST_CASE("padic subcommands speak the render grammar") {
    CHECK(run_cli({"padic", "eval", "7", "5", "3"}).out == "2 + 1*5 + O(5^3)\n");
    CHECK(run_cli({"padic", "add", "2 + O(5^3)", "3 + O(5^3)"}).out == "1*5 + O(5^3)\n");
    CHECK(run_cli({"padic", "mul", "2 + O(5^3)", "2 + 3*5 + 1*5^2 + O(5^3)"}).out ==
          "4 + 1*5 + 3*5^2 + O(5^3)\n");
    CHECK(run_cli({"padic", "inv", "1 + 4*5 + 4*5^2 + O(5^3)"}).out == "1 + 1*5 + 1*5^2 + O(5^3)\n");
    CHECK(run_cli({"padic", "eval", "25", "5", "2"}).code == 2);
}

TEST_CASE("hensel subcommands") {
    auto root = run_cli({"hensel", "root", "1 + 1*t^2", "5", "2", "3"});
    CHECK(root.code == 0);
    CHECK(root.out == "2 + 1*5 + 2*5^2 + O(5^3)\n");

    auto factor = run_cli({"hensel", "factor", "1 + 1*t^2", "5", "-2 + 1*t", "2 + 1*t", "3"});
    CHECK(factor.code == 0);
    CHECK(factor.out == "g = 68 + 1*t\nh = 57 + 1*t\n");

    CHECK(run_cli({"hensel", "root", "1 + 1*t^2", "5", "1", "3"}).code == 2);
}

TEST_CASE("approx certifies before printing") {
    auto r = run_cli({"approx", "--at", "2=0", "--at", "3=1", "--eps", "1/8"});
    CHECK(r.code == 0);
    CHECK(r.out == "64\n");

    auto single = run_cli({"approx", "--at", "oo=1/2", "--eps", "1/10"});
    CHECK(single.out == "1/2\n");

    auto dup = run_cli({"approx", "--at", "2=0", "--at", "2=1", "--eps", "1/8"});
    CHECK(dup.code == 2);
}

TEST_CASE("idele subcommands") {
    CHECK(run_cli({"idele", "content", "default=1; 2=2"}).out == "1/2\n");
    CHECK(run_cli({"idele", "ideal", "default=1; 2=8"}).out == "2^3\n");
    CHECK(run_cli({"idele", "lcount", "default=1; oo=10"}).out == "20\n");
    CHECK(run_cli({"idele", "ideal", "default=1; oo=10"}).out == "1\n");
    auto quad = run_cli({"idele", "ideal", "default=1+1*sqrt(-5)", "--field", "-5"});
    CHECK(quad.out == "2:ram^1 * 3:split-^1\n");
}

TEST_CASE("classnum prints the class number and the reduced forms") {
    auto r = run_cli({"classnum", "-5"});
    CHECK(r.code == 0);
    CHECK(r.out == "h = 2\n(1, 0, 5)\n(2, 2, 3)\n");
    CHECK(run_cli({"classnum", "-1"}).out == "h = 1\n(1, 0, 1)\n");
    CHECK(run_cli({"classnum", "5"}).code == 2);
}

TEST_CASE("unit prints the fundamental unit") {
    CHECK(run_cli({"unit", "2"}).out == "1+1*sqrt(2)\n");
    CHECK(run_cli({"unit", "5"}).out == "1/2+1/2*sqrt(5)\n");
    CHECK(run_cli({"unit", "-2"}).code == 2);
}

TEST_CASE("sunit-rank with and without log vectors") {
    auto r = run_cli({"sunit-rank", "--S", "oo,2,3", "--gen", "-1", "--gen", "2", "--gen", "3"});
    CHECK(r.code == 0);
    CHECK(r.out == "2\n");

    auto logs = run_cli({"sunit-rank", "--S", "oo,2", "--gen", "2", "--log"});
    CHECK(logs.code == 0);
    CHECK(logs.out.find("log 2 =") != std::string::npos);
    CHECK(logs.out.find("0.69314718056") != std::string::npos);

    CHECK(run_cli({"sunit-rank", "--S", "oo,2", "--gen", "3"}).code == 2);
}

TEST_CASE("unknown commands and bad flags exit 2 with usage") {
    auto r = run_cli({"frobnicate"});
    CHECK(r.code == 2);
    CHECK(r.out.empty());
    CHECK(r.err.find("usage:") != std::string::npos);

    CHECK(run_cli({}).code == 2);
    CHECK(run_cli({"vp", "50", "4"}).code == 2);
    CHECK(run_cli({"vp", "50"}).code == 2);
}

TEST_CASE("budget errors exit 1") {
    auto r = run_cli({"idele", "lcount", "default=1; oo=100000000000"});
    CHECK(r.code == 1);
    CHECK(r.out.empty());
    CHECK(r.err.find("budget") != std::string::npos);
}

TEST_CASE("identical argv yields byte-identical output") {
    std::vector<std::string> argv = {"classnum", "-23"};
    auto a = run_cli(argv), b = run_cli(argv);
    CHECK(a.code == b.code);
    CHECK(a.out == b.out);
    auto c = run_cli({"approx", "--at", "2=1/3", "--at", "7=5", "--eps", "1/50"});
    auto d = run_cli({"approx", "--at", "2=1/3", "--at", "7=5", "--eps", "1/50"});
    CHECK(c.out == d.out);
}

TEST_CASE("every renderer's output is accepted by the matching parser") {
    // drive the round trip through the CLI itself: re-evaluating a rendered
    // p-adic literal must reproduce it byte for byte
    auto first = run_cli({"padic", "eval", "22/7", "3", "6"});
    REQUIRE(first.code == 0);
    std::string lit = first.out.substr(0, first.out.size() - 1);
    auto doubled = run_cli({"padic", "add", lit, "O(3^6)"});
    CHECK(doubled.out == first.out);
}

TEST_CASE("batch mode runs one command per line and stops on errors") {
    std::string path = "cli_batch_test_input.txt";
    {
        std::ofstream f(path);
        f << "vp 50 5\n";
        f << "# a comment line\n";
        f << "padic eval 7 5 3\n";
    }
    auto r = run_cli({"--input", path});
    CHECK(r.code == 0);
    CHECK(r.out == "2\n2 + 1*5 + O(5^3)\n");

    {
        std::ofstream f(path);
        f << "vp 50 5\n";
        f << "vp 50 4\n";
        f << "vp 50 2\n";
    }
    auto stopped = run_cli({"--input", path});
    CHECK(stopped.code == 2);
    CHECK(stopped.out == "2\n");  // nothing after the failing line

    std::remove(path.c_str());
    CHECK(run_cli({"--input", "no_such_file.txt"}).code == 2);
}
