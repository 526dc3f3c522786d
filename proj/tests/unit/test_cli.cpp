#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "szego/experiment.hpp"

using namespace szego;
namespace fs = std::filesystem;

namespace {
std::string slurp(const fs::path& p) {
    std::ifstream is(p, std::ios::binary);
    std::stringstream ss;
    ss << is.rdbuf();
    return ss.str();
}
}  // namespace

TEST_SUITE("cli") {
TEST_CASE("number formatting") {
    CHECK(format_double(0.1) == "0.10000000000000001");
    CHECK(format_double(2.0) == "2");
    CHECK(format_double(std::nan("")) == "nan");
}

TEST_CASE("config parsing") {
    auto c = parse_config(nlohmann::json::parse(R"({"weights": [1, 1, 3], "nu": 1.5, "k_grid": {"max": 12}})"));
    CHECK(c.weights == std::vector<int>{1, 1, 3});
    CHECK(c.nu == 1.5);
    CHECK(c.k_max == 12);
    CHECK(c.echo()["k_grid"]["min"] == c.k_min);
    CHECK(c.echo()["tolerances"]["chain"] == 0.02);
    CHECK_THROWS_AS(parse_config(nlohmann::json::parse(R"({"weight": [1, 2]})")), ConfigError);
    CHECK_THROWS_AS(parse_config(nlohmann::json::parse(R"({"k_grid": {"mn": 2}})")), ConfigError);
    CHECK_THROWS_AS(parse_config(nlohmann::json::parse(R"({"nu": "one"})")), ConfigError);
    CHECK_THROWS_AS(parse_config(nlohmann::json::parse(R"({"weights": [1, 0]})")), ConfigError);
}

TEST_CASE("configuration errors exit with 1") {
    ExperimentConfig c;
    c.output_dir = "cli_test_bad";
    c.nu = 1.5;
    CHECK(cmd_dims(c) == kExitConfig);
    auto summary = nlohmann::json::parse(slurp(fs::path(c.output_dir) / "summary.json"));
    CHECK(summary["exit_code"] == 1);
    CHECK(summary.contains("error"));
    c.weights = {1, 4};
    CHECK(cmd_loci(c) == kExitConfig);
    fs::remove_all(c.output_dir);
}

TEST_CASE("loci run writes deterministic csv") {
    ExperimentConfig c;
    c.loci_samples = 20;
    c.output_dir = "cli_test_a";
    CHECK(cmd_loci(c) == kExitPass);
    c.output_dir = "cli_test_b";
    CHECK(cmd_loci(c) == kExitPass);
    std::string a = slurp("cli_test_a/loci.csv");
    CHECK(a.find('\r') == std::string::npos);
    CHECK(a.rfind("sample,kind,lambda,locus", 0) == 0);
    CHECK(a == slurp("cli_test_b/loci.csv"));
    fs::remove_all("cli_test_a");
    fs::remove_all("cli_test_b");
}

TEST_CASE("dims run on the two-sphere model") {
    ExperimentConfig c;
    c.k_max = 30;
    c.output_dir = "cli_test_dims";
    CHECK(cmd_dims(c) == kExitPass);
    auto s = nlohmann::json::parse(slurp("cli_test_dims/summary.json"));
    CHECK(s["calibration"]["scale_used"] == 0.5);
    CHECK(s["verdicts"]["exponent"] == true);
    fs::remove_all("cli_test_dims");
}
}
