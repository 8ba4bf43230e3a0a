#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "json.hpp"
#include "toralg/cli.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

using namespace toralg;
using nlohmann::json;

namespace {

struct RunResult {
    int code;
    std::string out;
    std::string err;
};

RunResult run(std::vector<std::string> args) {
    std::ostringstream out, err;
    int code = run_cli(args, out, err);
    return {code, out.str(), err.str()};
}

json out_json(const RunResult& r) { return json::parse(r.out); }

}  // namespace

TEST_CASE("gen reports the generator, eigenvalue, and Pell data") {
    auto r = run({"--json", "gen", "sqrt(5)"});
    REQUIRE(r.code == 0);
    auto j = out_json(r);
    CHECK(j["schema"] == 1);
    CHECK(j["generator"] == json::parse("[[2,1],[5,2]]"));
    CHECK(j["det"] == -1);
    CHECK(j["lambda"] == "2+sqrt(5)");
    CHECK(j["pell"]["n"] == 5);
    CHECK(j["pell"]["rhs"] == -1);
    CHECK(j["pell"]["x"] == 2);
    CHECK(j["pell"]["y"] == 1);
}

TEST_CASE("pell subcommand covers solvable and unsolvable equations") {
    auto r = run({"--json", "pell", "7", "1"});
    REQUIRE(r.code == 0);
    auto j = out_json(r);
    CHECK(j["x"] == 8);
    CHECK(j["y"] == 3);

    auto u = run({"--json", "pell", "7", "-1"});
    REQUIRE(u.code == 0);
    CHECK(out_json(u)["solvable"] == false);

    auto k2 = run({"--json", "pell", "5", "-1", "--index", "2"});
    REQUIRE(k2.code == 0);
    auto j2 = out_json(k2);
    CHECK(j2["x"] == 38);
    CHECK(j2["y"] == 17);
}

TEST_CASE("iso and aut-iso agree with the final-remark example") {
    auto r = run({"--json", "iso", "sqrt(5)", "(1+sqrt(5))/2"});
    REQUIRE(r.code == 0);
    CHECK(out_json(r)["isomorphic"] == false);

    auto a = run({"--json", "aut-iso", "sqrt(5)", "(1+sqrt(5))/2"});
    REQUIRE(a.code == 0);  // "no" is a definite answer
    auto ja = out_json(a);
    CHECK(ja["verdict"] == "no");
    CHECK(ja["reason"].get<std::string>().find("trace") != std::string::npos);

    auto y = run({"--json", "iso", "sqrt(5)", "2+sqrt(5)"});
    REQUIRE(y.code == 0);
    auto jy = out_json(y);
    CHECK(jy["isomorphic"] == true);
    CHECK(jy["verified"] == true);
}

TEST_CASE("check subcommand validates matrices against an algebra") {
    auto r = run({"--json", "check", "sqrt(5)", "[[2,1],[5,2]]"});
    REQUIRE(r.code == 0);
    auto j = out_json(r);
    CHECK(j["automorphism"] == true);
    CHECK(j["lambda"] == "2+sqrt(5)");

    auto n = run({"--json", "check", "sqrt(5)", "[[0,1],[1,1]]"});
    REQUIRE(n.code == 0);
    CHECK(out_json(n)["automorphism"] == false);

    auto bad = run({"--json", "check", "sqrt(5)", "[[2,0],[0,2]]"});
    CHECK(bad.code == 1);  // determinant 4
}

TEST_CASE("gen answers 'torus only' for a non-quadratic irrational") {
    auto r = run({"--json", "gen", "sqrt(2)+sqrt(3)"});
    REQUIRE(r.code == 0);  // a definite answer, not an error
    auto j = out_json(r);
    CHECK(j["automorphisms"] == "torus only");
    CHECK(j.find("generator") == j.end());
}

TEST_CASE("conjecture over an empty corpus reports an empty result set") {
    std::string path = "conjecture_empty_test.txt";
    { std::ofstream f(path, std::ios::trunc); }
    auto r = run({"--json", "conjecture", path});
    REQUIRE(r.code == 0);
    auto j = out_json(r);
    CHECK(j["results"] == json::array());
    std::remove(path.c_str());
}

TEST_CASE("input errors exit with status 1 and a located message") {
    auto r = run({"gen", "sqrt(5"});
    CHECK(r.code == 1);
    CHECK(r.err.find("position") != std::string::npos);

    auto d = run({"gen", "sqrt(9)"});
    CHECK(d.code == 1);
    CHECK(d.err.find("rational") != std::string::npos);

    auto m = run({"pell", "nine", "1"});
    CHECK(m.code == 1);

    auto s = run({"frobnicate"});
    CHECK(s.code == 1);
}

TEST_CASE("aut-iso reports unknown with exit 2 when the bound is exhausted") {
    // the two generators for N = 10 share determinant and trace but no
    // conjugator turns up within the bound
    auto r = run({"--json", "aut-iso", "sqrt(10)", "sqrt(2/5)"});
    CHECK(r.code == 2);
    auto j = out_json(r);
    CHECK(j["verdict"] == "unknown");
    CHECK(j["bound"] == 100);
}

TEST_CASE("unknown verdicts exit with status 2") {
    // parabolic matrices with equal trace and determinant but no conjugator
    // are not reachable through alpha inputs, so force an unknown through a
    // tiny bound on a pair whose conjugators all have large entries
    std::string path = "conjecture_corpus_test.txt";
    {
        std::ofstream f(path, std::ios::trunc);
        f << "(1+sqrt(7))/3\n";
    }
    auto tiny = run({"--json", "--bound", "1", "conjecture", path});
    auto j = out_json(tiny);
    // with bound 1 the scan must complete; verdict yes or unknown, and the
    // exit code must match
    std::string verdict = j["results"][0]["conjugate_to_inverse"].get<std::string>();
    if (verdict == "unknown") CHECK(tiny.code == 2);
    else CHECK(tiny.code == 0);
    std::remove(path.c_str());
}

TEST_CASE("conjecture scan over a corpus file") {
    std::string path = "conjecture_corpus_test2.txt";
    {
        std::ofstream f(path, std::ios::trunc);
        f << "sqrt(7)\n";
        f << "(1+sqrt(5))/2\n";
    }
    auto r = run({"--json", "conjecture", path});
    REQUIRE(r.code == 0);
    auto j = out_json(r);
    CHECK(j["results"].size() == 2);
    CHECK(j["results"][0]["alpha"] == "sqrt(7)");
    CHECK(j["results"][0]["conjugate_to_inverse"] == "yes");
    CHECK(j["results"][1]["conjugate_to_inverse"] == "not_applicable");
    CHECK(j["counts"]["yes"] == 1);
    CHECK(j["counts"]["not_applicable"] == 1);
    std::remove(path.c_str());
}

TEST_CASE("corpus enumerates canonical values without duplicates") {
    auto r = run({"corpus", "0", "1", "1", "7"});
    REQUIRE(r.code == 0);
    CHECK(r.out == "sqrt(2)\nsqrt(3)\nsqrt(5)\nsqrt(6)\nsqrt(7)\n");

    auto rich = run({"corpus", "2", "2", "2", "5"});
    REQUIRE(rich.code == 0);
    // (2+2*sqrt(5))/2 normalizes to 1+sqrt(5) and appears exactly once
    std::string lines = "\n" + rich.out;
    std::string needle = "\n1+sqrt(5)\n";
    std::size_t first = lines.find(needle);
    REQUIRE(first != std::string::npos);
    CHECK(lines.find(needle, first + 1) == std::string::npos);
    CHECK(lines.find("\n(1+sqrt(5))/2\n") != std::string::npos);
}

TEST_CASE("identical invocations produce byte-identical reports") {
    auto a = run({"--json", "gen", "(1+sqrt(7))/3"});
    auto b = run({"--json", "gen", "(1+sqrt(7))/3"});
    CHECK(a.out == b.out);
    auto c = run({"corpus", "1", "2", "2", "11"});
    auto d = run({"corpus", "1", "2", "2", "11"});
    CHECK(c.out == d.out);
}

TEST_CASE("configuration precedence: flags beat the environment") {
    setenv("TORALG_BOUND", "17", 1);
    auto env_only = run({"--json", "aut-iso", "sqrt(5)", "sqrt(5)"});
    CHECK(out_json(env_only)["bound"] == 17);
    auto flag_wins = run({"--json", "--bound", "23", "aut-iso", "sqrt(5)", "sqrt(5)"});
    CHECK(out_json(flag_wins)["bound"] == 23);
    unsetenv("TORALG_BOUND");
    auto fallback = run({"--json", "aut-iso", "sqrt(5)", "sqrt(5)"});
    CHECK(out_json(fallback)["bound"] == 100);
}

TEST_CASE("the Pell cache file is created, reused, and safely rewritten") {
    std::string path = "cli_cache_test.txt";
    std::remove(path.c_str());
    auto r = run({"--json", "--cache", path, "pell", "5", "-1"});
    REQUIRE(r.code == 0);
    std::ifstream in(path);
    REQUIRE(in.good());
    std::string line;
    std::getline(in, line);
    CHECK(line == "5 -1 2 1");
    // reuse does not corrupt the file
    auto again = run({"--json", "--cache", path, "gen", "sqrt(5)"});
    REQUIRE(again.code == 0);
    CHECK(out_json(again)["generator"] == json::parse("[[2,1],[5,2]]"));
    std::remove(path.c_str());
}

TEST_CASE("poly subcommands run end to end") {
    std::string path = "cli_poly_test.txt";
    {
        std::ofstream f(path, std::ios::trunc);
        f << "1 0 1.0 0.0\n";
        f << "-1 1 0.5 0.0\n";
    }
    auto member = run({"--json", "poly", "member", path, "sqrt(5)"});
    REQUIRE(member.code == 0);
    CHECK(out_json(member)["member"] == true);

    auto mapped = run({"--json", "poly", "map", path, "[[2,1],[5,2]]", "--c1", "1/4"});
    REQUIRE(mapped.code == 0);
    auto arr = json::parse(mapped.out);
    REQUIRE(arr.is_array());
    CHECK(arr.size() == 2);

    auto ces = run({"poly", "cesaro", path, "1", "1"});
    REQUIRE(ces.code == 0);
    CHECK(ces.out.find("0.5") != std::string::npos);

    auto meas = run({"--json", "poly", "measure", path, "1", "1"});
    REQUIRE(meas.code == 0);
    auto jm = out_json(meas);
    CHECK(jm["mu_k"]["re"] == 0.5);  // (-1)*1 + 1*1 = 0 collides
    CHECK(jm["mu"]["re"] == 0.0);
    CHECK(jm["equal"] == false);
    std::remove(path.c_str());
}

TEST_CASE("text mode emits plain key-value lines") {
    auto r = run({"pell", "7", "1"});
    REQUIRE(r.code == 0);
    CHECK(r.out.find("x: 8") != std::string::npos);
    CHECK(r.out.find("y: 3") != std::string::npos);
    CHECK(r.out.find("schema") == std::string::npos);
}
