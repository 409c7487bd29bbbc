#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "linkcap/cli/commands.hpp"
#include "linkcap/cli/config.hpp"
#include "linkcap/cli/driver.hpp"

using namespace linkcap::cli;
namespace fs = std::filesystem;

namespace {

class CliTest : public ::testing::Test {
   protected:
    void SetUp() override {
        dir_ = fs::temp_directory_path() /
               ("linkcap-cli-" + std::string(::testing::UnitTest::GetInstance()
                                                  ->current_test_info()
                                                  ->name()));
        fs::remove_all(dir_);
        fs::create_directories(dir_);
    }
    void TearDown() override { fs::remove_all(dir_); }

    std::string path(const std::string& name) const { return (dir_ / name).string(); }

    std::string write(const std::string& name, const std::string& body) const {
        std::ofstream(path(name)) << body;
        return path(name);
    }

    int run(std::vector<std::string> args) {
        out_.str("");
        err_.str("");
        return run_cli(args, out_, err_);
    }

    static std::string slurp(const fs::path& p) {
        std::ifstream in(p, std::ios::binary);
        return {std::istreambuf_iterator<char>(in), {}};
    }

    fs::path dir_;
    std::ostringstream out_, err_;
};

const char* kSmallConfig =
    R"({"version": 1, "graph": {"generator": "barabasi_albert", "n": 12, "m": 2},
        "traffic": {"lambda": 2}, "frames": [5]})";

}  // namespace

TEST(Config, DefaultsAndOverlay) {
    RunConfig cfg = apply_config({}, nlohmann::json::parse(
                                         R"({"version":1,"c":0.9,"graph":{"n":8,"m":3},
                                             "sweep":{"preset":"paper","sequences":2}})"));
    EXPECT_DOUBLE_EQ(cfg.c, 0.9);
    EXPECT_DOUBLE_EQ(cfg.C, 0.8);
    EXPECT_EQ(cfg.graph.n, 8u);
    EXPECT_EQ(cfg.graph.m, 3u);
    EXPECT_EQ(cfg.sweep.preset, "paper");
    EXPECT_EQ(cfg.sweep.sequences, 2u);
    EXPECT_EQ(cfg.effective_q_values(), std::vector<double>{1.0});
}

TEST(Config, RejectsUnknownFieldsAtEveryLevel) {
    for (const char* doc : {R"({"version":1,"sede":4})", R"({"version":1,"graph":{"nodes":4}})",
                            R"({"version":1,"traffic":{"lamda":4}})",
                            R"({"version":1,"sweep":{"preset":"desk","x":1}})"}) {
        EXPECT_THROW(apply_config({}, nlohmann::json::parse(doc)), ConfigError) << doc;
    }
}

TEST(Config, RejectsMissingOrWrongVersionAndBadTypes) {
    EXPECT_THROW(apply_config({}, nlohmann::json::parse(R"({"c":0.9})")), ConfigError);
    EXPECT_THROW(apply_config({}, nlohmann::json::parse(R"({"version":2})")), ConfigError);
    EXPECT_THROW(apply_config({}, nlohmann::json::parse(R"({"version":1,"c":"high"})")),
                 ConfigError);
    EXPECT_THROW(apply_config({}, nlohmann::json::parse(R"({"version":1,"top_k":2.5})")),
                 ConfigError);
    EXPECT_THROW(apply_config({}, nlohmann::json::parse(R"({"version":1,"seed":-1})")),
                 ConfigError);
    EXPECT_THROW(apply_config({}, nlohmann::json::parse(R"({"version":1,"frames":[30,"x"]})")),
                 ConfigError);
}

TEST(Config, ValidationNamesTheField) {
    RunConfig cfg;
    cfg.q = 1.5;
    try {
        validate(cfg, false);
        FAIL() << "expected ConfigError";
    } catch (const ConfigError& e) {
        EXPECT_NE(std::string(e.what()).find("traffic.q"), std::string::npos);
    }
    cfg = {};
    cfg.frames = {0};
    EXPECT_THROW(validate(cfg, false), ConfigError);
    cfg = {};
    EXPECT_THROW(validate(cfg, true), ConfigError);  // seed missing
    cfg.seed = 1;
    EXPECT_NO_THROW(validate(cfg, true));
}

TEST(Config, SeedRequirement) {
    RunConfig cfg;
    EXPECT_TRUE(needs_seed(cfg, "simulate"));
    EXPECT_TRUE(needs_seed(cfg, "sweep"));
    EXPECT_TRUE(needs_seed(cfg, "pmf"));  // BA graph without its own seed
    cfg.graph.seed = 3;
    EXPECT_FALSE(needs_seed(cfg, "pmf"));
    cfg.graph.generator = "complete";
    cfg.graph.seed.reset();
    EXPECT_FALSE(needs_seed(cfg, "stats"));
    EXPECT_TRUE(needs_seed(cfg, "simulate"));
}

TEST_F(CliTest, ExitCodes) {
    const std::string cfg = write("c.json", kSmallConfig);
    EXPECT_EQ(run({"stats", "--config", cfg, "--seed", "1", "--out", path("o")}), kExitOk);
    EXPECT_EQ(run({"simulate", "--config", cfg, "--out", path("o")}), kExitConfig);
    EXPECT_NE(err_.str().find("seed"), std::string::npos);
    EXPECT_EQ(run({"simulate", "--config", cfg, "--seed", "1", "--frames", "0"}), kExitConfig);
    EXPECT_EQ(run({"bogus"}), kExitConfig);
    EXPECT_EQ(run({"pmf", "--no-such-flag"}), kExitConfig);
    EXPECT_EQ(run({"pmf", "--config", write("bad.json", R"({"version":1,"qq":1})")}),
              kExitConfig);
    EXPECT_EQ(run({"pmf", "--config", write("broken.json", "{\"version\": 1,")}), kExitConfig);
    EXPECT_EQ(run({"allocate", "--config", cfg, "--seed", "1", "--out", path("o"),
                   "--truncation-length", "1"}),
              kExitNumeric);
    EXPECT_NE(err_.str().find("hint"), std::string::npos);
}

TEST_F(CliTest, GraphFileErrorsCarryLineNumbers) {
    const std::string g = write("g.txt", "0 1\n1 2\n2 x\n");
    EXPECT_EQ(run({"stats", "--graph", g, "--out", path("o")}), kExitConfig);
    EXPECT_NE(err_.str().find("3"), std::string::npos) << err_.str();
}

TEST_F(CliTest, FlagsOverrideConfig) {
    const std::string cfg = write("c.json", kSmallConfig);
    ASSERT_EQ(run({"allocate", "--config", cfg, "--seed", "1", "--out", path("o"), "--q", "0.5",
                   "--c", "0.6"}),
              kExitOk);
    auto plan = nlohmann::json::parse(slurp(dir_ / "o" / "plan_q0.5.json"));
    EXPECT_DOUBLE_EQ(plan["provenance"]["criterion"].get<double>(), 0.6);
    EXPECT_DOUBLE_EQ(plan["provenance"]["q"].get<double>(), 0.5);
    EXPECT_DOUBLE_EQ(plan["provenance"]["lambda"].get<double>(), 2.0);
    EXPECT_FALSE(fs::exists(dir_ / "o" / "plan_q1.json"));
}

TEST_F(CliTest, TopKIsClampedWithWarning) {
    const std::string g = write("g.txt", "0 1\n1 2\n");
    ASSERT_EQ(run({"pmf", "--graph", g, "--out", path("o"), "--top-k", "5"}), kExitOk);
    EXPECT_NE(err_.str().find("warning"), std::string::npos);
    EXPECT_TRUE(fs::exists(dir_ / "o" / "pmf_q1_rank2.csv"));
    EXPECT_FALSE(fs::exists(dir_ / "o" / "pmf_q1_rank3.csv"));
}

TEST_F(CliTest, SimulateWithPlanFileAndMismatch) {
    // The graph carries its own seed so the simulation seed can differ.
    const std::string cfg = write("c.json", R"({"version":1,"graph":{"n":12,"m":2,"seed":4}})");
    ASSERT_EQ(run({"allocate", "--config", cfg, "--seed", "1", "--out", path("a")}), kExitOk);
    const std::string plan = path("a/plan_q1.json");
    ASSERT_EQ(run({"simulate", "--config", cfg, "--seed", "2", "--out", path("s"), "--plan", plan,
                   "--frames", "30", "90"}),
              kExitOk);
    for (const char* f : {"histogram_q1_f30.csv", "histogram_q1_f90.csv", "g_curve_q1_f30.csv",
                          "trace_q1_f90.csv"}) {
        EXPECT_TRUE(fs::exists(dir_ / "s" / f)) << f;
    }
    const std::string curve = slurp(dir_ / "s" / "g_curve_q1_f30.csv");
    EXPECT_EQ(curve.rfind("C,g\n0,1\n", 0), 0u) << curve;
    // A plan made for another graph is refused.
    const std::string other = write("o.json", R"({"version":1,"graph":{"generator":"complete","n":12}})");
    EXPECT_EQ(run({"simulate", "--config", other, "--seed", "2", "--out", path("s"), "--plan", plan}),
              kExitConfig);
}

TEST_F(CliTest, TrafficMatrixOverridesListedPairs) {
    const std::string g = write("g.txt", "0 1\n1 2\n");
    const std::string m = write("m.txt", "# m n lambda q\n0 2 6 1\n");
    const std::string cfg = write(
        "c.json", R"({"version":1,"traffic":{"lambda":0,"matrix_file":")" + m + R"("},
                      "graph":{"file":")" + g + R"("}})");
    ASSERT_EQ(run({"allocate", "--config", cfg, "--out", path("o")}), kExitOk);
    // Only 0 -> 2 carries traffic, so both edges see Poisson(6): same capacity.
    const std::string plan = slurp(dir_ / "o" / "plan_q1.csv");
    std::istringstream rows(plan);
    std::string header, r1, r2;
    std::getline(rows, header);
    std::getline(rows, r1);
    std::getline(rows, r2);
    auto cap = [](const std::string& row) {
        std::vector<std::string> cells;
        std::stringstream ss(row);
        for (std::string c; std::getline(ss, c, ',');) cells.push_back(c);
        return cells.at(4);
    };
    EXPECT_EQ(cap(r1), cap(r2));
    EXPECT_EQ(cap(r1), "9");  // P(Poisson(6) <= 8) = 0.847 falls just short of 0.85
    write("bad.txt", "0 0 1 1\n");
    EXPECT_EQ(run({"allocate", "--graph", g, "--out", path("o")}), kExitOk);
    const std::string bad = write(
        "b.json", R"({"version":1,"traffic":{"matrix_file":")" + path("bad.txt") + R"("}})");
    EXPECT_EQ(run({"allocate", "--config", bad, "--graph", g, "--out", path("o")}), kExitConfig);
}

TEST_F(CliTest, DegenerateSweepOnTwoNodes) {
    const std::string cfg = write("c.json", R"({"version":1,"sweep":{"n":2,"q_grid":3}})");
    ASSERT_EQ(run({"sweep", "--config", cfg, "--seed", "5", "--out", path("o")}), kExitOk);
    const std::string csv = slurp(dir_ / "o" / "sweep.csv");
    EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 2) << csv;
}

TEST_F(CliTest, RerunsAreByteIdentical) {
    const std::string cfg = write("c.json", kSmallConfig);
    for (const char* cmd : {"pmf", "allocate", "simulate", "stats"}) {
        ASSERT_EQ(run({cmd, "--config", cfg, "--seed", "9", "--out", path("a")}), kExitOk) << cmd;
        ASSERT_EQ(run({cmd, "--config", cfg, "--seed", "9", "--out", path("b"), "--threads", "3"}),
                  kExitOk)
            << cmd;
    }
    std::size_t files = 0;
    for (const auto& entry : fs::directory_iterator(dir_ / "a")) {
        const fs::path other = dir_ / "b" / entry.path().filename();
        ASSERT_TRUE(fs::exists(other)) << other;
        EXPECT_EQ(slurp(entry.path()), slurp(other)) << entry.path().filename();
        ++files;
    }
    EXPECT_GT(files, 8u);
}

TEST(FormatNumber, RoundTrips) {
    for (double x : {0.1, 1.0 / 3.0, 1e-300, 123456789.125, 0.0}) {
        EXPECT_EQ(std::stod(format_number(x)), x);
    }
    EXPECT_EQ(format_number(1.0), "1");
    EXPECT_EQ(format_number(0.25), "0.25");
}
