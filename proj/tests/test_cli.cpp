#include "bernint/cli.hpp"
#include "bernint/numeric.hpp"

#include <doctest.h>
#include <json.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

using bernint::cli::run;

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result call(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    const int code = run(args, out, err);
    return {code, out.str(), err.str()};
}

}  // namespace

TEST_CASE("documented examples") {
    CHECK(call({"round", "--rule", "half-even", "--value", "5/2"}).out == "2\n");
    CHECK(call({"apply", "--op", "btilde", "--function", "x2", "--n", "2", "--at", "1/2"}).out == "1/4\n");
    CHECK(call({"basis", "--n", "2", "--k", "1", "--at", "1/2"}).out == "1/2\n");
    CHECK(call({"derive", "--op", "bhat", "--rule", "half-even", "--function", "x2", "--n", "16", "--s", "2", "--at", "0"}).out == "4\n");

    const auto rates = call({"rates", "--op", "bhat", "--rule", "half-even", "--function", "x2(1-x)2", "--s", "1", "--n",
                             "8,16,32,64,128,256", "--format", "csv", "--grid", "512", "--steps", "16"});
    REQUIRE(rates.code == 0);
    std::istringstream in(rates.out);
    std::string line;
    std::getline(in, line);
    CHECK(line == "n,sup_error,bound,ratio");
    int rows = 0;
    std::string last;
    while (std::getline(in, line)) {
        if (line.rfind("# slope,", 0) == 0) last = line.substr(8);
        else ++rows;
    }
    CHECK(rows == 6);
    CHECK(std::stod(last) < -0.5);
    CHECK(std::stod(last) > -1.25);
}

TEST_CASE("json output") {
    const auto r = call({"check", "--function", "x2", "--s", "2", "--n-max", "10", "--format", "json"});
    REQUIRE(r.code == 0);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j["kind"] == "hypotheses");
    CHECK(j["integral_endpoints"] == true);
    CHECK(j["vanishing_higher"] == false);
    CHECK(j["derivatives_at_0"][2] == "2");

    const auto m = nlohmann::json::parse(
        call({"moduli", "--function", "x2", "--t", "1/2,invsqrt:4", "--grid", "512", "--format", "json"}).out);
    CHECK(m["estimates"].size() == 2);
    CHECK(m["estimates"][0]["t_squared"] == "1/4");
}

TEST_CASE("exit codes") {
    const auto unknown = call({"round", "--rule", "half-even", "--value", "1", "--bogus"});
    CHECK(unknown.code == 2);
    CHECK(unknown.err.find("--value") != std::string::npos);  // help text
    CHECK(call({"frobnicate"}).code == 2);
    CHECK(call({}).code == 2);
    CHECK(call({"apply", "--function", "nope", "--n", "3"}).code == 2);
    CHECK(call({"round", "--rule", "half-even", "--value", "1/0"}).code == 2);
    CHECK(call({"deviation", "--function", "x2", "--n", "16", "--s", "2"}).code == 4);
    CHECK(call({"deviation", "--function", "x2", "--n", "16", "--s", "2", "--no-hypotheses"}).code == 0);
    CHECK(call({"apply", "--op", "bhat", "--rule", "floor", "--function", "x2", "--n", "3"}).code == 2);
    CHECK(call({"--help"}).code == 0);
}

TEST_CASE("argument round trip") {
    const std::vector<std::vector<std::string>> cases{
        {"rates", "--function", "x3(1-x)3", "--s", "2", "--n", "8,16", "--op", "bhat"},
        {"moduli", "--function", "trunc3", "--t", "0.25,invsqrt:16", "--order", "1"},
        {"round", "--rule", "half-random:9", "--value", "7/2", "--precision", "30"},
        {"necessity", "--function", "neg-x2", "--s", "1", "--op", "btilde", "--n", "4,8", "--format", "json"},
        {"deviation", "--function", "x2(1-x)2", "--n", "32", "--s", "1", "--no-hypotheses", "--out", "x.csv"},
        {"check", "--function", "poly:0,1/2", "--s", "1"},
    };
    for (const auto& args : cases) {
        const auto config = bernint::cli::parse_args(args);
        const auto again = bernint::cli::parse_args(bernint::cli::to_args(config));
        CHECK(config == again);
        CHECK(bernint::cli::to_args(again) == bernint::cli::to_args(config));
    }
    const auto c = bernint::cli::parse_args({"moduli", "--function", "x2", "--t", "0.25"});
    CHECK(c.t_list == std::vector<std::string>{"1/4"});
    CHECK(c.order == "2phi");
    CHECK(c.grid == 4096);
}

TEST_CASE("identical arguments give identical bytes") {
    const std::vector<std::string> args{"rates", "--op", "bhat", "--rule", "half-random:17", "--function", "x3(1-x)3",
                                        "--s", "2", "--n", "8,16,32", "--grid", "256", "--steps", "8", "--format", "json"};
    CHECK(call(args).out == call(args).out);
    const std::vector<std::string> coeffs{"apply", "--op", "bhat", "--rule", "half-random:5", "--function", "poly:0,0,1",
                                          "--n", "40", "--format", "csv"};
    CHECK(call(coeffs).out == call(coeffs).out);
}

TEST_CASE("precision precedence and output files") {
    const std::vector<std::string> base{"moduli", "--function", "x2", "--t", "1/3", "--grid", "128", "--steps", "4"};
    setenv("BERNINT_PRECISION", "20", 1);
    auto env = base;
    const auto from_env = call(env).out;
    env.insert(env.end(), {"--precision", "40"});
    const auto from_flag = call(env).out;
    unsetenv("BERNINT_PRECISION");
    CHECK(from_env.size() < from_flag.size());
    CHECK(bernint::precision_digits() == 40);

    const std::string path = "cli_test_out.json";
    auto to_file = base;
    to_file.insert(to_file.end(), {"--out", path, "--format", "json"});
    const auto r = call(to_file);
    CHECK(r.code == 0);
    CHECK(r.out.empty());
    std::ifstream file(path);
    const auto j = nlohmann::json::parse(file);
    CHECK(j["function"] == "x2");
    std::remove(path.c_str());
    bernint::set_precision_digits(bernint::kDefaultPrecisionDigits);
}
