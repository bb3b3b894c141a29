#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include "lcmod/cli.hpp"
#include "lcmod/instance.hpp"
#include "lcmod/trace.hpp"

using namespace lcmod;

namespace {

struct RunResult {
    int code;
    std::string out, err;
};

RunResult run(std::vector<std::string> args) {
    std::ostringstream out, err;
    int code = run_cli(args, out, err);
    return {code, out.str(), err.str()};
}

std::string temp_file(const std::string& name, const std::string& content) {
    std::string path = std::string("/tmp/lcmod_test_") + name;
    std::ofstream f(path);
    f << content;
    return path;
}

const char* I2 =
    "p listcolor 3 2\n"
    "tag LCCM\n"
    "e 0 1\n"
    "e 1 2\n"
    "l 0 : 1\n"
    "l 1 : 1 2\n"
    "l 2 : 1 2\n"
    "mod 0\n";

const char* I1 =
    "p listcolor 3 2\n"
    "tag LCCM\n"
    "e 0 1\n"
    "e 1 2\n"
    "l 0 : 1\n"
    "l 1 : 1 2\n"
    "l 2 : 2\n"
    "mod 0\n";

} // namespace

TEST_CASE("solve subcommand on the worked instances") {
    std::string yes_path = temp_file("i2.lc", I2);
    std::string no_path = temp_file("i1.lc", I1);
    for (std::string alg : {"sieve", "partition", "brute", "brute-mod"}) {
        RunResult yes = run({"solve", "--alg", alg, "--seed", "7", yes_path});
        CHECK(yes.code == 0);
        CHECK(yes.out == "YES\n");
        RunResult no = run({"solve", "--alg", alg, "--seed", "7", no_path});
        CHECK(no.code == 1);
        CHECK(no.out == "NO\n");
    }
}

TEST_CASE("exit codes for usage and parse errors") {
    CHECK(run({"solve", "/tmp/lcmod_does_not_exist"}).code == 2);
    std::string bad = temp_file("bad.lc", "p listcolor 2 1\ne 0 9\nl 0 :\nl 1 :\n");
    CHECK(run({"solve", bad}).code == 2);
    CHECK(run({"bogus-subcommand"}).code == 2);
    // solver preconditions surface as usage errors
    std::string nomod = temp_file("nomod.lc", "p listcolor 1 0\nl 0 : 1\n");
    CHECK(run({"solve", "--alg", "sieve", nomod}).code == 2);
}

TEST_CASE("kernel subcommand produces a parseable instance and trace") {
    RunResult gen = run({"gen", "--model", "random", "--tag", "PCECM", "--n", "20", "--k", "4",
                         "--colors", "17", "--pre-frac", "0.3", "--density", "0.5",
                         "--seed", "11"});
    REQUIRE(gen.code == 0);
    std::string inst_path = temp_file("pce.lc", gen.out);
    std::string trace_path = "/tmp/lcmod_test_pce.trace";
    RunResult kern = run({"kernel", "--problem", "pce", "--trace", trace_path, inst_path});
    CHECK((kern.code == 0 || kern.code == 1));
    Instance reduced = parse_instance(kern.out);
    CHECK(reduced.n() <= 12);
    Instance orig = parse_instance(gen.out);
    std::ifstream tf(trace_path);
    std::stringstream buf;
    buf << tf.rdbuf();
    KernelTrace t = KernelTrace::parse(buf.str(), orig);
    CHECK(t.kind == "pce");
}

TEST_CASE("gen output round-trips") {
    RunResult g = run({"gen", "--model", "planted", "--n", "10", "--k", "3", "--list-size", "4",
                       "--seed", "5"});
    REQUIRE(g.code == 0);
    Instance inst = parse_instance(g.out);
    CHECK(write_instance(inst) == g.out);

    RunResult hs = run({"gen", "--model", "hitting-set", "--universe", "3",
                        "--sets", "1 2;2 3", "--k", "1"});
    REQUIRE(hs.code == 0);
    Instance hsi = parse_instance(hs.out);
    CHECK(hsi.tag == Tag::LCCM);
    CHECK(hsi.modulator.has_value());

    RunResult is = run({"gen", "--model", "independent-set", "--n", "5", "--density", "0.4",
                        "--k", "2", "--seed", "9"});
    REQUIRE(is.code == 0);
    Instance isi = parse_instance(is.out);
    CHECK(isi.tag == Tag::BUDGET);
    CHECK(isi.budget.has_value());
}

TEST_CASE("check subcommand") {
    std::string inst_path = temp_file("chk.lc", I2);
    std::string good = temp_file("good.col", "0 1\n1 2\n2 1\n");
    std::string bad = temp_file("bad.col", "0 1\n1 1\n2 1\n");
    RunResult ok = run({"check", inst_path, good});
    CHECK(ok.code == 0);
    CHECK(ok.out == "VALID\n");
    RunResult nok = run({"check", inst_path, bad});
    CHECK(nok.code == 1);
    CHECK(nok.out == "INVALID\n");
}

TEST_CASE("runs are bit-identical across seeds and jobs") {
    RunResult a = run({"gen", "--model", "planted", "--n", "12", "--k", "3", "--list-size", "5",
                       "--seed", "21"});
    std::string path = temp_file("det.lc", a.out);
    for (std::string alg : {"sieve", "partition"}) {
        RunResult j1 = run({"solve", "--alg", alg, "--seed", "3", "--jobs", "1", path});
        RunResult j4 = run({"solve", "--alg", alg, "--seed", "3", "--jobs", "4", path});
        CHECK(j1.code == j4.code);
        CHECK(j1.out == j4.out);
    }
    RunResult g1 = run({"gen", "--model", "random", "--n", "9", "--k", "2", "--seed", "4"});
    RunResult g2 = run({"gen", "--model", "random", "--n", "9", "--k", "2", "--seed", "4"});
    CHECK(g1.out == g2.out);
}

TEST_CASE("bench emits one row per k per algorithm") {
    RunResult b = run({"bench", "--algs", "sieve,partition", "--n", "8", "--k-min", "1",
                       "--k-max", "3", "--trials", "2", "--list-size", "4", "--seed", "2"});
    REQUIRE(b.code == 0);
    int rows = 0, comments = 0;
    std::istringstream ss(b.out);
    std::string line;
    while (std::getline(ss, line)) {
        if (line.empty()) continue;
        if (line[0] == '#') ++comments;
        else ++rows;
    }
    CHECK(comments == 1);
    CHECK(rows == 6);
}
