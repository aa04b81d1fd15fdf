#include <doctest.h>

#include <filesystem>
#include <sstream>

#include <json.hpp>

#include "matsym/cli.hpp"

using namespace matsym;

namespace {

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run run(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

std::vector<std::string> lines(const std::string& s) {
    std::vector<std::string> out;
    std::istringstream is(s);
    for (std::string l; std::getline(is, l);) out.push_back(l);
    return out;
}

cli::StatsRow row_of(const Run& r, std::size_t i = 1) {
    auto ls = lines(r.out);
    REQUIRE(ls.size() > i);
    CHECK(ls[0] == cli::stats_header);
    auto row = cli::parse_stats_row(ls[i]);
    REQUIRE(row.has_value());
    return *row;
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("stats rows round trip") {
    cli::StatsRow r{"bibd-7-7-3-3-1", "doublelex+allperm", 41, 20, 1, 0.125};
    CHECK(cli::parse_stats_row(cli::format_stats_row(r)) == r);
    CHECK_FALSE(cli::parse_stats_row("a,b,1,2").has_value());
    CHECK_FALSE(cli::parse_stats_row("a,b,x,2,3,0.1").has_value());
}

TEST_CASE("solve") {
    auto r = run({"solve", "--problem", "grid", "--rows", "2", "--cols", "2", "--scheme", "none", "--count"});
    CHECK(r.code == cli::exit_success);
    CHECK(row_of(r).solutions == 16);

    auto dl = run({"solve", "--problem", "grid", "--rows", "2", "--cols", "2", "--scheme", "doublelex", "--all",
                   "--solutions", "-"});
    CHECK(dl.code == 0);
    CHECK(lines(dl.out).size() == 7 + 2);

    auto bad = run({"solve", "--problem", "grid", "--scheme", "foo"});
    CHECK(bad.code == cli::exit_usage);
    CHECK(bad.err.find("UnknownScheme") != std::string::npos);

    CHECK(run({"solve"}).code == cli::exit_usage);
    CHECK(run({"frobnicate"}).code == cli::exit_usage);
    CHECK(run({"solve", "--problem", "bibd", "--v", "7", "--b", "7", "--r", "3", "--k", "3", "--lambda", "2"}).code ==
          cli::exit_usage);
}

TEST_CASE("solve exit codes") {
    auto infeasible = run({"solve", "--problem", "rack", "--racks", "2:100:2", "--cards", "1:5", "--count"});
    CHECK(infeasible.code == cli::exit_infeasible);
    CHECK(row_of(infeasible).solutions == 0);
    auto limited = run({"solve", "--problem", "bibd", "--v", "7", "--b", "7", "--r", "3", "--k", "3", "--lambda", "1",
                        "--count", "--node-limit", "100"});
    CHECK(limited.code == cli::exit_limit);
}

TEST_CASE("solve is deterministic") {
    const std::vector<std::string> args{"solve", "--problem", "random", "--rows", "3", "--cols", "3", "--seed", "7",
                                        "--domain-size", "3", "--density", "0.5", "--scheme", "doublelex", "--count",
                                        "--var-order", "smallest-domain"};
    auto a = row_of(run(args));
    auto b = row_of(run(args));
    a.seconds = b.seconds = 0;
    CHECK(a == b);
}

TEST_CASE("model files") {
    const auto path = std::filesystem::temp_directory_path() / "matsym_cli_bibd.json";
    CHECK(run({"problem", "bibd", "--v", "3", "--b", "3", "--r", "2", "--k", "2", "--lambda", "1", "-o",
               path.string()})
              .code == 0);
    auto r = run({"solve", "--model", path.string(), "--count", "--instance", "b3"});
    CHECK(row_of(r).solutions == 6);
    CHECK(row_of(r).instance == "b3");
    CHECK(run({"solve", "--model", path.string(), "--problem", "grid"}).code == cli::exit_usage);
    CHECK(run({"solve", "--model", "/nonexistent/model.json"}).code == cli::exit_usage);
    std::filesystem::remove(path);
}

TEST_CASE("verify") {
    auto r = run({"verify", "--problem", "grid", "--rows", "3", "--cols", "2", "--schemes", "doublelex,lexleader"});
    REQUIRE(r.code == 0);
    auto j = nlohmann::json::parse(r.out);
    REQUIRE(j.size() == 2);
    CHECK(j[0]["sound"] == true);
    CHECK(j[0]["complete"] == false);
    CHECK(j[1]["complete"] == true);

    auto two = run({"verify", "--problem", "grid", "--rows", "2", "--cols", "2", "--scheme", "lexleader"});
    CHECK(nlohmann::json::parse(two.out)[0]["survivor_count"] == 7);

    auto big = run({"verify", "--problem", "bibd", "--v", "7", "--b", "7", "--r", "3", "--k", "3", "--lambda", "1",
                    "--scheme", "lexleader"});
    CHECK(big.code == cli::exit_limit);
    CHECK(big.err.find("25401600") != std::string::npos);

    auto budget = run({"verify", "--problem", "grid", "--rows", "3", "--cols", "3", "--enum-budget", "100"});
    CHECK(budget.code == cli::exit_limit);
}

TEST_CASE("compare") {
    auto r = run({"compare", "--problem", "grid", "--rows", "3", "--cols", "2", "--schemes",
                  "none,doublelex,doublelex+allperm", "--jobs", "2"});
    REQUIRE(r.code == 0);
    auto ls = lines(r.out);
    REQUIRE(ls.size() == 4);
    auto none = *cli::parse_stats_row(ls[1]);
    auto dl = *cli::parse_stats_row(ls[2]);
    auto dla = *cli::parse_stats_row(ls[3]);
    CHECK(none.scheme == "none");
    CHECK(dla.scheme == "doublelex+allperm");
    CHECK(none.solutions == 64);
    CHECK(none.solutions >= dl.solutions);
    CHECK(dl.solutions >= dla.solutions);

    CHECK(lines(run({"compare", "--problem", "grid", "--schemes", "doublelex"}).out).size() == 2);
    CHECK(lines(run({"compare", "--problem", "grid", "--schemes", "doublelex,snakelex"}).out).size() == 3);
}

TEST_CASE("sweep") {
    auto r = run({"sweep", "--scheme", "doublelex", "--max-cells", "9"});
    REQUIRE(r.code == 0);
    auto j = nlohmann::json::parse(r.out);
    REQUIRE(!j["witness"].is_null());
    auto text = run({"sweep", "--scheme", "lexleader", "--max-cells", "6", "--text"});
    CHECK(text.out.find("none found") != std::string::npos);
}

}  // TEST_SUITE
