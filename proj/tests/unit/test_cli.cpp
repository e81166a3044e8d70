#include <catch2/catch_amalgamated.hpp>

#include "cli.hpp"

#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <sstream>

using disjlab::cli::run;
using nlohmann::json;

namespace {

struct Outcome {
    int status;
    std::string out;
    std::string err;
};

Outcome invoke(const std::vector<std::string>& args) {
    std::ostringstream out;
    std::ostringstream err;
    const int status = run(args, out, err);
    return {status, out.str(), err.str()};
}

json invoke_json(const std::vector<std::string>& args, int expect = 0) {
    const Outcome o = invoke(args);
    INFO(o.err);
    REQUIRE(o.status == expect);
    return json::parse(o.out);
}

}  // namespace

TEST_CASE("bound reports exact optima with mode tags") {
    const json j = invoke_json({"bound", "--family", "AND", "--n", "1", "--lp", "lovasz", "--eps", "0"});
    REQUIRE(j["results"].size() == 1);
    CHECK(j["results"][0]["optimum"]["value"] == "1/1");
    CHECK(j["results"][0]["optimum"]["mode"] == "exact-rational");
}

TEST_CASE("smooth bound is compared with the Lovasz bound") {
    const json j = invoke_json({"bound", "--family", "NDISJ", "--n", "2", "--lp", "smooth", "--eps", "0"});
    CHECK(j["results"][0]["optimum"]["value"] == "5/2");
    CHECK(j["comparison"]["smooth_at_least_lovasz"] == true);
}

TEST_CASE("search bound from both solvers") {
    const json j = invoke_json({"bound", "--lp", "search", "--n", "2", "--k", "1", "--sigma", "1", "--solver", "both"});
    REQUIRE(j["results"].size() == 2);
    CHECK(j["results"][0]["optimum"]["value"] == "3/1");
    CHECK(j["results"][1]["optimum"]["mode"] == "float-tol");
    CHECK(j["results"][1]["optimum"]["value"].get<double>() == Catch::Approx(3.0));
}

TEST_CASE("certify checks both verification modes") {
    const json j = invoke_json({"certify", "--construction", "standard", "--n", "3", "--k", "1", "--m", "1", "--alpha", "1",
                                "--beta", "1/3", "--verify", "both"});
    CHECK(j["value"]["value"] == "1/1");
    CHECK(j["modes_agree"] == true);
    CHECK(j["feasible"] == true);
    for (const auto& v : j["verification"]) CHECK(v["max_weight"]["value"] == "1/6");
}

TEST_CASE("an infeasible certificate exits with status 2") {
    const json j = invoke_json(
        {"certify", "--construction", "standard", "--n", "3", "--k", "1", "--m", "1", "--alpha", "1", "--beta", "3"}, 2);
    CHECK(j["feasible"] == false);
}

TEST_CASE("certificates round-trip through a file") {
    const std::string path = "cli_roundtrip_certificate.json";
    invoke_json({"certify", "--construction", "standard", "--n", "3", "--k", "1", "--m", "1", "--alpha", "1", "--beta",
                 "1/3", "--emit", path});
    const json j = invoke_json({"certify", "--in", path});
    CHECK(j["value"]["value"] == "1/1");
    std::remove(path.c_str());
}

TEST_CASE("scan output is byte-identical for a fixed seed") {
    const std::vector<std::string> args = {"scan", "--n", "8", "--seed", "3", "--samples", "50"};
    const Outcome a = invoke(args);
    const Outcome b = invoke(args);
    REQUIRE(a.status == 0);
    CHECK(a.out == b.out);
    CHECK(a.out.rfind("id,", 0) == 0);
    const Outcome c = invoke({"scan", "--n", "8", "--seed", "4", "--samples", "50"});
    CHECK(c.out != a.out);
}

TEST_CASE("scan refuses to run without a seed") {
    const Outcome o = invoke({"scan", "--n", "8"});
    CHECK(o.status == 1);
    CHECK_FALSE(o.err.empty());
}

TEST_CASE("protocol constructions meet their bounds") {
    const json t = invoke_json({"protocol", "--construction", "trivial", "--task", "ndisj", "--n", "3"});
    CHECK(t["measured"]["success"]["value"] == "1/1");
    const json h = invoke_json({"protocol", "--construction", "halving", "--n", "4", "--s", "1"});
    CHECK(h["bits_match_accounting"] == true);
    const json v =
        invoke_json({"protocol", "--construction", "verified", "--n", "2", "--base-success", "1/2", "--lp-bridge"});
    CHECK(v["never_wrong"] == true);
    CHECK(v["lp_bridge"]["feasible"] == true);
}

TEST_CASE("parse errors and bad parameters exit with status 1") {
    CHECK(invoke({"bound", "--frobnicate"}).status == 1);
    CHECK(invoke({}).status == 1);
    CHECK(invoke({"certify", "--construction", "standard", "--n", "3", "--k", "1", "--m", "1", "--alpha", "1/2",
                  "--beta", "0"})
              .status == 1);
    CHECK(invoke({"--help"}).status == 0);
}

TEST_CASE("reports can be written to a file") {
    const std::string path = "cli_report.json";
    const Outcome o = invoke({"bound", "--family", "EQ", "--n", "1", "--lp", "lovasz", "--eps", "0", "--out", path});
    REQUIRE(o.status == 0);
    CHECK(o.out.empty());
    std::ifstream in(path);
    const json j = json::parse(in);
    CHECK(j["results"][0]["optimum"]["value"] == "2/1");
    std::remove(path.c_str());
}
