#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "covercert/cli.hpp"
#include "covercert/json_io.hpp"

#include <json.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

using namespace covercert;

namespace {

std::string fixture_path(const std::string& name) {
    return std::string(COVERCERT_FIXTURES_DIR) + "/" + name;
}

struct RunResult {
    int code;
    std::string out;
    std::string err;
};

RunResult run_cli(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    const int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

std::string write_temp(const std::string& name, const std::string& content) {
    const std::string path = std::string("/tmp/covercert_test_") + name;
    std::ofstream f(path);
    f << content;
    return path;
}

}  // namespace

TEST_CASE("verify subcommand") {
    const auto ok = run_cli({"verify", fixture_path("azlin1.json")});
    CHECK(ok.code == 0);
    CHECK(ok.out.find("COVERS") == 0);

    const auto ok2 = run_cli({"verify", fixture_path("azlin2.json"), "--threads", "2"});
    CHECK(ok2.code == 0);

    const std::string partial = write_temp(
        "partial.json", R"({"p":2,"k":1,"congruences":[{"residue":"0","modulus":"x"}]})");
    const auto bad = run_cli({"verify", partial});
    CHECK(bad.code == 1);
    CHECK(bad.out.find("DOES NOT COVER") != std::string::npos);
    CHECK(bad.out.find("witness") != std::string::npos);

    const auto json = run_cli({"verify", partial, "--json"});
    CHECK(json.code == 1);
    const auto j = nlohmann::json::parse(json.out);
    CHECK(j.at("covers") == false);
    CHECK(j.at("witness") == "1");
    CHECK(j.at("uncovered_density") == "1/2");
    // the json report re-parses into the module type bit-exactly
    const FieldCtx f2(2, 1);
    const VerifyReport rep = verify_report_from_json(f2, json.out);
    CHECK(rep.uncovered_density == Rational(1, 2));

    CHECK(run_cli({"verify", "/nonexistent/path.json"}).code == 2);
}

TEST_CASE("certify subcommand") {
    const std::string single = write_temp(
        "single.json", R"({"p":2,"k":1,"congruences":[{"residue":"0","modulus":"x"}]})");
    const auto cert = run_cli({"certify", single});
    CHECK(cert.code == 0);  // certificate of non-covering obtained
    CHECK(cert.out.find("CERTIFIED_NOT_COVERING") == 0);
    CHECK(cert.out.find("1/4") != std::string::npos);

    const auto inconclusive = run_cli({"certify", fixture_path("azlin1.json")});
    CHECK(inconclusive.code == 1);
    CHECK(inconclusive.out.find("INCONCLUSIVE") == 0);

    const auto json = run_cli({"certify", single, "--json", "--mode", "mixed", "--deltas", "1/2"});
    CHECK(json.code == 0);
    const auto j = nlohmann::json::parse(json.out);
    CHECK(j.at("verdict") == "CERTIFIED_NOT_COVERING");
    CHECK(j.at("criterion_sum") == "1/4");
    CHECK(j.at("mode") == "mixed");

    CHECK(run_cli({"certify", single, "--mode", "zeroth"}).code == 2);
    CHECK(run_cli({"certify", single, "--deltas", "2/3"}).code == 2);
}

TEST_CASE("bounds subcommand") {
    const auto human = run_cli({"bounds", "--g", "0", "--s", "1"});
    CHECK(human.code == 0);
    CHECK(human.out.find("759") != std::string::npos);

    const auto json = run_cli({"bounds", "--g", "0", "--s", "1", "--json"});
    CHECK(json.code == 0);
    const auto j = nlohmann::json::parse(json.out);
    CHECK(j.at("threshold") == 759);
    CHECK(j.at("series").size() == 5);
    const std::string lo = j.at("threshold_rhs").at("lo_decimal").get<std::string>();
    CHECK(lo.substr(0, 6) == "758.26");

    const auto refined = run_cli({"bounds", "--variant", "refined724", "--json"});
    CHECK(refined.code == 0);
    const auto jr = nlohmann::json::parse(refined.out);
    CHECK(jr.at("threshold") == 725);
    CHECK(jr.contains("remark_comparison"));

    CHECK(run_cli({"bounds", "--variant", "nope"}).code == 2);
}

TEST_CASE("primes subcommand") {
    const auto out = run_cli({"primes", "--p", "2", "--degree", "2"});
    CHECK(out.code == 0);
    CHECK(out.out.find("x^2+x+1") != std::string::npos);

    const auto json = run_cli({"primes", "--p", "3", "--degree", "1", "--json"});
    const auto j = nlohmann::json::parse(json.out);
    CHECK(j.at("count") == 3);
    CHECK(j.at("irreducibles") == nlohmann::json({"x", "x+1", "x+2"}));
}

TEST_CASE("search subcommand") {
    const auto found = run_cli({"search", "--p", "2", "--k", "1", "--max-degree", "2", "--distinct",
                                "--mode", "first", "--json"});
    CHECK(found.code == 0);
    const auto j = nlohmann::json::parse(found.out);
    CHECK(j.at("outcome") == "FOUND");
    CHECK(j.at("system").at("congruences").size() == 3);

    const auto exhausted =
        run_cli({"search", "--p", "3", "--k", "1", "--max-degree", "1", "--distinct", "--mode",
                 "exhaustive"});
    CHECK(exhausted.code == 0);
    CHECK(exhausted.out.find("EXHAUSTED") == 0);

    const auto budget = run_cli({"search", "--p", "3", "--max-degree", "2", "--mode", "exhaustive",
                                 "--budget", "5"});
    CHECK(budget.code == 1);
    CHECK(budget.out.find("BUDGET") == 0);

    CHECK(run_cli({"search", "--p", "2", "--max-degree", "1", "--symmetry", "maybe"}).code == 2);
}

TEST_CASE("usage errors and env cap") {
    CHECK(run_cli({}).code == 2);
    CHECK(run_cli({"frobnicate"}).code == 2);
    CHECK(run_cli({"verify"}).code == 2);  // missing path
    CHECK(run_cli({"--help"}).code == 0);

    setenv("COVERCERT_CAP", "4", 1);
    const auto capped = run_cli({"verify", fixture_path("azlin2.json")});
    unsetenv("COVERCERT_CAP");
    CHECK(capped.code == 2);
    CHECK(capped.err.find("cap") != std::string::npos);

    const auto cap_flag = run_cli({"--cap", "16", "verify", fixture_path("azlin2.json")});
    CHECK(cap_flag.code == 0);
}
