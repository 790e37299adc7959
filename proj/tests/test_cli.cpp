#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "skac/cli.hpp"

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run run(std::vector<std::string> args) {
    args.insert(args.begin(), "skac");
    std::ostringstream out;
    std::ostringstream err;
    const int code = skac::run_cli(args, out, err);
    return {code, out.str(), err.str()};
}

fs::path scratch_dir() {
    auto dir = fs::temp_directory_path() / "skac_cli_test";
    fs::create_directories(dir);
    return dir;
}

std::vector<std::vector<std::string>> csv_rows(const std::string& text) {
    std::vector<std::vector<std::string>> rows;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::vector<std::string> cells;
        std::string cell;
        std::istringstream ls(line);
        while (std::getline(ls, cell, ',')) cells.push_back(cell);
        if (!line.empty() && line.back() == ',') cells.emplace_back();
        rows.push_back(cells);
    }
    return rows;
}

}  // namespace

TEST_CASE("eigen prints exact eigenpairs") {
    const auto r = run({"eigen", "--n", "2", "--alpha", "1", "--beta", "2"});
    REQUIRE(r.code == 0);
    const auto j = json::parse(r.out);
    CHECK(j["eigenvalues"] == json({"0/1", "-3/1", "-6/1"}));
    CHECK(j["vectors"][0] == json({"4/1", "4/1", "1/1"}));
    CHECK(j["vectors"][1] == json({"-2/1", "1/1", "1/1"}));
    CHECK(j["vectors"][2] == json({"1/1", "-2/1", "1/1"}));
    CHECK(j["source"] == "closed-form");

    const auto oracle = run({"eigen", "--n", "2", "--alpha", "1", "--beta", "2", "--source", "oracle"});
    REQUIRE(oracle.code == 0);
    CHECK(json::parse(oracle.out)["vectors"] == j["vectors"]);

    const auto csv = run({"eigen", "--n", "2", "--alpha", "1", "--beta", "2", "--format", "csv"});
    REQUIRE(csv.code == 0);
    const auto rows = csv_rows(csv.out);
    REQUIRE(rows.size() == 4);
    CHECK(rows[0] == std::vector<std::string>{"k", "eigenvalue", "u0", "u1", "u2"});
    CHECK(rows[2] == std::vector<std::string>{"1", "-3", "-2", "1", "1"});

    const auto flt = run({"eigen", "--n", "2", "--alpha", "1/3", "--beta", "1", "--precision", "float"});
    REQUIRE(flt.code == 0);
    CHECK(json::parse(flt.out)["eigenvalues"][1].get<double>() == doctest::Approx(-4.0 / 3));
}

TEST_CASE("usage errors exit with 2") {
    CHECK(run({"eigen", "--n", "0"}).code == 2);
    CHECK(run({"eigen", "--n", "3", "--alpha", "0"}).code == 2);
    CHECK(run({"eigen", "--n", "3", "--beta", "-1"}).code == 2);
    CHECK(run({"eigen", "--n", "3", "--alpha", "0x1p-2"}).code == 2);
    CHECK(run({"eigen", "--n", "3", "--alpha", "nan"}).code == 2);
    CHECK(run({"eigen", "--n", "3", "--format", "xml"}).code == 2);
    CHECK(run({"frobnicate"}).code == 2);
    CHECK(run({}).code == 2);
    CHECK(run({"verify", "--suite", "nope"}).code == 2);
    CHECK(run({"verify", "--max-n", "0"}).code == 2);
    CHECK(run({"evolve", "--n", "3", "--init", "k=4", "--t", "1"}).code == 2);
    CHECK(run({"evolve", "--n", "3", "--init", "sideways", "--t", "1"}).code == 2);
    CHECK(run({"evolve", "--n", "3", "--t", "-1"}).code == 2);
    CHECK(run({"evolve", "--n", "3"}).code == 2);
    CHECK(run({"matrix", "--n", "3", "--kind", "krawtchouk", "--p", "1"}).code == 2);
    CHECK(run({"--help"}).code == 0);
}

TEST_CASE("matrix subcommand") {
    const auto r = run({"matrix", "--n", "2", "--alpha", "1", "--beta", "2"});
    REQUIRE(r.code == 0);
    const auto j = json::parse(r.out);
    CHECK(j["diag"] == json({"-2/1", "-3/1", "-4/1"}));
    CHECK(j["sub"] == json({"2/1", "1/1"}));
    CHECK(j["super"] == json({"2/1", "4/1"}));

    const auto sk = json::parse(run({"matrix", "--n", "3", "--kind", "sylvester-kac"}).out);
    CHECK(sk["sub"] == json({"3/1", "2/1", "1/1"}));
    CHECK(sk["super"] == json({"1/1", "2/1", "3/1"}));

    const auto k = json::parse(run({"matrix", "--n", "1", "--kind", "krawtchouk", "--p", "1/3"}).out);
    CHECK(k["diag"] == json({"-1/3", "-2/3"}));
}

TEST_CASE("verify suites") {
    const auto all = run({"verify", "--suite", "all", "--max-n", "25"});
    CHECK(all.code == 0);
    const auto j = json::parse(all.out);
    CHECK(j["passed"] == true);

    CHECK(run({"verify", "--suite", "mazza", "--max-n", "40"}).code == 0);

    const auto info = run({"verify", "--suite", "krawtchouk-formula-vectors", "--max-n", "5"});
    CHECK(info.code == 0);
}

TEST_CASE("evolve relaxes to equilibrium") {
    const auto r = run({"evolve", "--n", "2", "--alpha", "1", "--beta", "2", "--init", "empty", "--t", "0,1e9,inf"});
    REQUIRE(r.code == 0);
    CHECK(r.out.rfind("# n=2 alpha=1 beta=2", 0) == 0);
    const auto rows = csv_rows(r.out);
    REQUIRE(rows.size() == 4);
    CHECK(rows[0] == std::vector<std::string>{"t", "Q0", "Q1", "Q2", "sum", "coverage"});
    CHECK(std::stod(rows[1][1]) == 1.0);
    CHECK(std::stod(rows[1][2]) == 0.0);
    for (int k = 1; k <= 2; ++k) CHECK(std::abs(std::stod(rows[2][static_cast<size_t>(k)]) - 4.0 / 9) < 1e-12);
    CHECK(std::abs(std::stod(rows[2][3]) - 1.0 / 9) < 1e-12);
    CHECK(std::abs(std::stod(rows[3][1]) - 4.0 / 9) < 1e-15);
    CHECK(std::abs(std::stod(rows[3][5]) - 2.0 / 3) < 1e-15);
}

TEST_CASE("evolve with an RK4 oracle") {
    const auto r = run({"evolve", "--n", "12", "--alpha", "1", "--beta", "2", "--init", "empty", "--t", "0.1,0.5,1,2",
                        "--oracle", "rk4", "--step", "1e-4"});
    REQUIRE(r.code == 0);
    const auto rows = csv_rows(r.out);
    REQUIRE(rows.size() == 5);
    CHECK(rows[0].back() == "max_abs_delta");
    for (size_t i = 1; i < rows.size(); ++i) {
        CHECK(std::abs(std::stod(rows[i].back())) <= 1e-8);
        CHECK(std::abs(std::stod(rows[i][14]) - 1.0) <= 1e-12);
    }
}

TEST_CASE("evolve reads an initial vector file") {
    const auto path = scratch_dir() / "q0.txt";
    {
        std::ofstream f(path);
        f << "1/2, 1/4, 1/4\n";
    }
    const auto r = run({"evolve", "--n", "2", "--init", "file:" + path.string(), "--t", "0"});
    REQUIRE(r.code == 0);
    const auto rows = csv_rows(r.out);
    CHECK(std::stod(rows[1][1]) == 0.5);
    CHECK(std::stod(rows[1][3]) == 0.25);

    {
        std::ofstream f(path);
        f << "1/2, 1/4, 1/2\n";
    }
    CHECK(run({"evolve", "--n", "2", "--init", "file:" + path.string(), "--t", "0"}).code == 2);
}

TEST_CASE("simulate is reproducible") {
    const std::vector<std::string> args{"simulate", "--n", "6", "--alpha", "1", "--beta", "2", "--trials", "2000",
                                        "--seed", "17", "--t", "0.5,1"};
    const auto a = run(args);
    const auto b = run(args);
    REQUIRE(a.code == 0);
    CHECK(a.out == b.out);
    auto more_workers = args;
    more_workers.insert(more_workers.end(), {"--workers", "3"});
    CHECK(run(more_workers).out == a.out);
    auto other_seed = args;
    other_seed[10] = "18";
    CHECK(run(other_seed).out != a.out);
}

TEST_CASE("simulate validation and outputs") {
    CHECK(run({"simulate", "--n", "3", "--t", "1"}).code == 2);
    CHECK(run({"simulate", "--n", "3", "--seed", "1", "--t", "1", "--init", "bernoulli:2"}).code == 2);
    CHECK(run({"simulate", "--n", "3", "--seed", "1", "--t", "inf"}).code == 2);
    CHECK(run({"simulate", "--n", "3", "--seed", "1", "--t", "1", "--mode", "quantum"}).code == 2);
    CHECK(run({"simulate", "--n", "3", "--seed", "1", "--t", "1", "--trials", "0"}).code == 2);

    const auto full = run({"simulate", "--n", "3", "--beta", "0", "--seed", "4", "--t", "100", "--trials", "300"});
    REQUIRE(full.code == 0);
    const auto j = json::parse(full.out);
    CHECK(j["times"][0]["counts"] == json({0, 0, 0, 300}));
    CHECK(j["times"][0]["coverage_mean"] == 3.0);

    const auto csv = run({"simulate", "--n", "1", "--seed", "4", "--t", "0", "--trials", "10", "--format", "csv"});
    REQUIRE(csv.code == 0);
    const auto rows = csv_rows(csv.out);
    REQUIRE(rows.size() == 3);
    CHECK(rows[0] == std::vector<std::string>{"t", "k", "count", "freq", "stderr"});
    CHECK(rows[1][2] == "10");
}

TEST_CASE("simulate coverage agrees with the exact mean") {
    const auto r = run({"simulate", "--n", "10", "--alpha", "1", "--beta", "2", "--seed", "8", "--t", "6", "--trials",
                        "20000", "--init", "empty"});
    REQUIRE(r.code == 0);
    const auto t = json::parse(r.out)["times"][0];
    CHECK(std::abs(t["coverage_mean"].get<double>() - 10.0 / 3) <= 3 * t["coverage_stderr"].get<double>());
}

TEST_CASE("simulate config files and output directory") {
    const auto dir = scratch_dir();
    const auto cfg = dir / "sim.json";
    {
        std::ofstream f(cfg);
        f << R"({"n": 4, "alpha": "3/2", "beta": 1, "trials": 500, "seed": 12, "t": [0.5, "1"]})";
    }
    const auto from_file = run({"simulate", "--config", cfg.string()});
    REQUIRE(from_file.code == 0);
    const auto j = json::parse(from_file.out);
    CHECK(j["n"] == 4);
    CHECK(j["alpha"] == "3/2");
    CHECK(j["trials"] == 500);
    CHECK(j["times"].size() == 2);

    const auto flags = run({"simulate", "--n", "4", "--alpha", "3/2", "--beta", "1", "--trials", "500", "--seed", "12",
                            "--t", "0.5,1"});
    CHECK(flags.out == from_file.out);

    const auto overridden = run({"simulate", "--config", cfg.string(), "--seed", "13"});
    REQUIRE(overridden.code == 0);
    CHECK(json::parse(overridden.out)["seed"] == 13);

    {
        std::ofstream f(cfg);
        f << R"({"n": 4, "alpha": 0.3, "seed": 1, "t": [1]})";
    }
    CHECK(run({"simulate", "--config", cfg.string()}).code == 2);
    {
        std::ofstream f(cfg);
        f << R"({"n": 4, "t": [1]})";
    }
    CHECK(run({"simulate", "--config", cfg.string()}).code == 2);
    {
        std::ofstream f(cfg);
        f << "{not json";
    }
    CHECK(run({"simulate", "--config", cfg.string()}).code == 2);

    ::setenv("SKAC_OUTPUT_DIR", dir.c_str(), 1);
    const auto written = run({"eigen", "--n", "1", "--output", "eig.json"});
    ::unsetenv("SKAC_OUTPUT_DIR");
    REQUIRE(written.code == 0);
    CHECK(written.out.empty());
    std::ifstream in(dir / "eig.json");
    REQUIRE(in.good());
    CHECK(json::parse(in)["n"] == 1);
}
