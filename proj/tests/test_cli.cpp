#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "lg/cli.hpp"
#include "lg/csv.hpp"

using namespace lg;
namespace fs = std::filesystem;

namespace {

struct CliResult {
    int code;
    std::string out;
    std::string err;
};

CliResult run(std::vector<std::string> args) {
    std::ostringstream out;
    std::ostringstream err;
    const int code = cli::run_cli(std::move(args), out, err);
    return {code, out.str(), err.str()};
}

fs::path temp_file(const std::string& name, const std::string& content) {
    const fs::path p = fs::temp_directory_path() / name;
    std::ofstream f(p);
    f << content;
    return p;
}

std::string run_binary(const std::string& args, const fs::path& out_path) {
    const std::string cmd = std::string(LG_CLI_PATH) + " " + args + " > " +
                            out_path.string() + " 2>/dev/null";
    const int rc = std::system(cmd.c_str());
    REQUIRE(rc == 0);
    std::ifstream f(out_path);
    std::ostringstream buf;
    buf << f.rdbuf();
    return buf.str();
}

}  // namespace

TEST_CASE("csv ingestion") {
    const auto good = temp_file("lg_good.csv", "time\n1.5\n2.5\r\n0.25\n");
    const Sample s = ingest_csv(good.string());
    CHECK(s.size() == 3);
    CHECK(s.sorted().front() == doctest::Approx(0.25));
    CHECK(s.original_order().front() == doctest::Approx(1.5));

    const auto zero = temp_file("lg_zero.csv", "1.0\n0.0\n2.0\n");
    CHECK_THROWS_AS(ingest_csv(zero.string()), std::invalid_argument);
    try {
        ingest_csv(zero.string());
    } catch (const std::invalid_argument& e) {
        CHECK(std::string(e.what()).find("line 2") != std::string::npos);
    }

    const auto junk = temp_file("lg_junk.csv", "1.0\nhello\n2.0\n");
    CHECK_THROWS_AS(ingest_csv(junk.string()), std::invalid_argument);
    CHECK_THROWS_AS(ingest_csv("/nonexistent/path.csv"), std::runtime_error);

    // header-only numeric first line is data, not header
    const auto nums = temp_file("lg_nums.csv", "3.0\n1.0\n");
    CHECK(ingest_csv(nums.string()).size() == 2);
}

TEST_CASE("sample determinism in-process and via the binary") {
    const auto a = run({"sample", "--p", "0.5", "--theta", "1", "--n", "100", "--seed", "42"});
    const auto b = run({"sample", "--p", "0.5", "--theta", "1", "--n", "100", "--seed", "42"});
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
    const auto c = run({"sample", "--p", "0.5", "--theta", "1", "--n", "100", "--seed", "43"});
    CHECK(c.out != a.out);

    const auto t1 = fs::temp_directory_path() / "lg_cli_s1.txt";
    const auto t2 = fs::temp_directory_path() / "lg_cli_s2.txt";
    const std::string o1 = run_binary("sample --p 0.5 --theta 1 --n 100 --seed 42", t1);
    const std::string o2 = run_binary("sample --p 0.5 --theta 1 --n 100 --seed 42", t2);
    CHECK(o1 == o2);
    CHECK(o1 == a.out);
}

TEST_CASE("sample -> fit round trip recovers the generating parameters") {
    const auto draws = run({"sample", "--p", "0.5", "--theta", "1", "--n", "6000", "--seed", "9"});
    REQUIRE(draws.code == 0);
    const auto path = temp_file("lg_roundtrip.csv", draws.out);
    const auto fit = run({"fit", "--input", path.string(), "--format", "json"});
    REQUIRE(fit.code == 0);
    const auto doc = nlohmann::json::parse(fit.out);
    const double p_hat = doc["result"]["params"]["p"].get<double>();
    const double t_hat = doc["result"]["params"]["theta"].get<double>();
    const double p_se = doc["result"]["std_errors"]["p"].get<double>();
    const double t_se = doc["result"]["std_errors"]["theta"].get<double>();
    CHECK(std::fabs(p_hat - 0.5) < 3.0 * p_se);
    CHECK(std::fabs(t_hat - 1.0) < 3.0 * t_se);
    CHECK(doc["result"]["converged"].get<bool>());
    CHECK(doc["command"] == "fit");
}

TEST_CASE("fit JSON schema is stable") {
    const auto draws = run({"sample", "--p", "0.3", "--theta", "2", "--n", "500", "--seed", "5"});
    const auto path = temp_file("lg_fitschema.csv", draws.out);
    for (const char* method : {"em", "newton"}) {
        const auto fit =
            run({"fit", "--input", path.string(), "--method", method, "--format", "json"});
        REQUIRE(fit.code == 0);
        const auto doc = nlohmann::json::parse(fit.out);
        for (const char* key : {"command", "config_echo", "result", "diagnostics"}) {
            CHECK(doc.contains(key));
        }
        const auto& res = doc["result"];
        for (const char* key :
             {"model", "method", "params", "std_errors", "ci95", "loglik", "neg2loglik",
              "iterations", "converged"}) {
            CHECK(res.contains(key));
        }
        CHECK(doc["diagnostics"].contains("lr_test_vs_lindley"));
    }
}

TEST_CASE("eval command") {
    const auto q = run({"eval", "--p", "0", "--theta", "1", "--xi", "0.4481808"});
    CHECK(q.code == 0);
    CHECK(q.out.find("quantile") != std::string::npos);

    const auto j = run({"eval", "--p", "0.5", "--theta", "1", "--xi", "0.5", "--format", "json"});
    const auto doc = nlohmann::json::parse(j.out);
    const double med = doc["result"]["quantile"]["value"].get<double>();
    CHECK(doc["result"]["quantile"]["cdf_roundtrip"].get<double>() ==
          doctest::Approx(0.5).epsilon(1e-9));
    CHECK(med > 0.0);

    const auto pts = temp_file("lg_evalpts.csv", "0.5\n1.0\n2.0\n");
    const auto e = run({"eval", "--p", "0.5", "--theta", "1", "--input", pts.string(),
                        "--format", "json"});
    const auto edoc = nlohmann::json::parse(e.out);
    REQUIRE(edoc["result"]["points"].size() == 3);
    CHECK(edoc["result"]["points"][1]["pdf"].get<double>() ==
          doctest::Approx(pdf(LGParams(0.5, 1.0), 1.0)).epsilon(1e-12));

    // neither --xi nor --input is a validation error
    CHECK(run({"eval", "--p", "0.5", "--theta", "1"}).code == 2);
}

TEST_CASE("shape command") {
    const auto s = run({"shape", "--p", "0.9", "--theta", "1", "--format", "json"});
    REQUIRE(s.code == 0);
    const auto doc = nlohmann::json::parse(s.out);
    CHECK(doc["result"]["hazard"]["theorem_branch"] == "bathtub");
    CHECK(doc["result"]["hazard"]["pattern"] == "bathtub");
    CHECK(doc["result"]["density"]["kind"] == "decreasing");

    const auto u = run({"shape", "--p", "-2", "--theta", "0.5", "--format", "json"});
    const auto udoc = nlohmann::json::parse(u.out);
    CHECK(udoc["result"]["density"]["kind"] == "unimodal");
    CHECK(udoc["result"]["density"].contains("mode"));
}

TEST_CASE("curves command emits a well-formed grid") {
    const auto c = run({"curves", "--p", "0.5", "--theta", "1", "--curve", "lorenz",
                        "--points", "10"});
    REQUIRE(c.code == 0);
    std::istringstream lines(c.out);
    std::string line;
    std::getline(lines, line);
    CHECK(line == "y,u,value");
    int rows = 0;
    while (std::getline(lines, line)) ++rows;
    CHECK(rows == 10);

    const auto h = run({"curves", "--p", "0.5", "--theta", "1", "--curve", "hazard",
                        "--points", "5", "--format", "json"});
    const auto doc = nlohmann::json::parse(h.out);
    CHECK(doc["result"]["points"].size() == 5);
}

TEST_CASE("moments command") {
    const auto m = run({"moments", "--p", "0", "--theta", "1", "--format", "json"});
    REQUIRE(m.code == 0);
    const auto doc = nlohmann::json::parse(m.out);
    CHECK(doc["result"]["mean"].get<double>() == doctest::Approx(1.5).epsilon(1e-10));
    CHECK(doc["result"]["raw_moments"].size() == 4);
    CHECK(doc["result"]["variance"].get<double>() > 0.0);
    CHECK(doc["result"]["gini"].get<double>() == doctest::Approx(0.4583333).epsilon(1e-4));
}

TEST_CASE("exit codes and error reporting") {
    // invalid parameter domain
    CHECK(run({"shape", "--p", "1.5", "--theta", "1"}).code == 2);
    // missing required option
    CHECK(run({"fit"}).code == 2);
    // unknown subcommand
    CHECK(run({"frobnicate"}).code == 2);
    // missing file
    const auto r = run({"fit", "--input", "/nonexistent.csv", "--format", "json"});
    CHECK(r.code == 2);
    CHECK(nlohmann::json::parse(r.err).contains("error"));
    // bad data file (nonpositive value)
    const auto bad = temp_file("lg_badfit.csv", "1.0\n-3.0\n2.0\n");
    CHECK(run({"fit", "--input", bad.string()}).code == 2);
    // non-convergence maps to exit 3
    const auto draws =
        run({"sample", "--p", "0.5", "--theta", "1", "--n", "400", "--seed", "77"});
    const auto path = temp_file("lg_noconv.csv", draws.out);
    const auto nc = run({"fit", "--input", path.string(), "--max-iter", "1", "--tol", "1e-14"});
    CHECK(nc.code == 3);
    // help exits cleanly
    CHECK(run({"--help"}).code == 0);
}

TEST_CASE("compare runs end to end on the fixtures" *
          doctest::skip(!fs::exists(std::string(LG_DATA_DIR) + "/vinyl_chloride.csv"))) {
    const std::string input = std::string(LG_DATA_DIR) + "/vinyl_chloride.csv";
    const auto c = run({"compare", "--input", input, "--format", "json"});
    REQUIRE(c.code == 0);
    const auto doc = nlohmann::json::parse(c.out);
    REQUIRE(doc["result"]["rows"].size() == 5);
    for (const auto& row : doc["result"]["rows"]) {
        CHECK(row.contains("model"));
        CHECK(row.contains("mles"));
        CHECK(row.contains("aic"));
        CHECK(row["converged"].get<bool>());
    }
    // determinism of the whole report
    const auto c2 = run({"compare", "--input", input, "--format", "json"});
    CHECK(c.out == c2.out);
}
