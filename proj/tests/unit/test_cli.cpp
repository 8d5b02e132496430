#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <iterator>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "cli.hpp"
#include "erp/analytic/vanilla.hpp"
#include "erp/error.hpp"

using namespace erp;
namespace fs = std::filesystem;

namespace {

struct Invocation {
    int code;
    std::string out;
    std::string err;
};

Invocation invoke(std::vector<std::string> args) {
    args.insert(args.begin(), "erp");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out;
    std::ostringstream err;
    const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

class CliTest : public ::testing::Test {
protected:
    void SetUp() override {
        dir_ = fs::temp_directory_path() /
               ("erp_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
        fs::remove_all(dir_);
        fs::create_directories(dir_);
    }
    void TearDown() override { fs::remove_all(dir_); }
    fs::path dir_;
};

TEST_F(CliTest, PriceWritesRecordMatchingClosedForm) {
    const auto r = invoke({"price", "--S", "5", "--out", dir_.string()});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto rec = nlohmann::json::parse(slurp(dir_ / "price.json"));
    EXPECT_NEAR(rec["result"]["erp"].get<double>(), analytic::erp_call(MarketParams{}, RiskFunction::exp_minus_one(), 5, 5),
                1e-12);
    EXPECT_EQ(rec["config"]["payoff"]["kind"], "call");
    EXPECT_FALSE(rec["config"].contains("threads"));
}

TEST_F(CliTest, CallAtZeroSpotPricesZero) {
    const auto r = invoke({"price", "--S", "0", "--out", dir_.string()});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto rec = nlohmann::json::parse(slurp(dir_ / "price.json"));
    EXPECT_NEAR(rec["result"]["erp"].get<double>(), 0.0, 1e-12);
    EXPECT_TRUE(rec["result"]["rel_diff_pct"].is_null());
}

TEST_F(CliTest, UsageErrors) {
    EXPECT_EQ(invoke({"price", "--payoff", "butterfly", "--out", dir_.string()}).code, 2);
    EXPECT_EQ(invoke({"price", "--bogus", "1"}).code, 2);
    EXPECT_EQ(invoke({}).code, 2);
    EXPECT_EQ(invoke({"mc", "--measure", "p", "--out", dir_.string()}).code, 2);
    EXPECT_EQ(invoke({"hjb", "--grid", "11x11", "--out", dir_.string()}).code, 2);
    EXPECT_EQ(invoke({"price", "--sigma", "-1", "--out", dir_.string()}).code, 2);
}

TEST_F(CliTest, ConfigFileReadAndFlagsWin) {
    const fs::path cfg = dir_ / "run.ini";
    std::ofstream(cfg) << "S=6\nsigma=0.2\npayoff=put\n";
    const char* argv[] = {"erp", "price", "--config", cfg.c_str(), "--S", "4"};
    const auto c = cli::parse(6, argv);
    EXPECT_EQ(c.S, 4.0);
    EXPECT_EQ(c.market.sigma, 0.2);
    EXPECT_EQ(c.payoff_kind, "put");
}

TEST_F(CliTest, UnknownConfigKeyRejected) {
    const fs::path cfg = dir_ / "bad.ini";
    std::ofstream(cfg) << "S=6\nvolatility=0.2\n";
    EXPECT_EQ(invoke({"price", "--config", cfg.string(), "--out", dir_.string()}).code, 2);
}

TEST_F(CliTest, UnwritableOutputIsIoError) {
    const fs::path blocker = dir_ / "file";
    std::ofstream(blocker) << "x";
    EXPECT_EQ(invoke({"price", "--out", (blocker / "sub").string()}).code, 4);
}

TEST_F(CliTest, OverflowIsNumericalFailure) {
    const auto r = invoke({"hjb", "--grid", "11x11x4", "--vmax", "900", "--v0", "0", "--out", dir_.string()});
    EXPECT_EQ(r.code, 3) << r.err;
}

TEST_F(CliTest, ExtractIsIdenticalAcrossThreadCounts) {
    const fs::path a = dir_ / "a";
    const fs::path b = dir_ / "b";
    ASSERT_EQ(invoke({"extract", "--grid", "41x41x80", "--threads", "1", "--out", a.string()}).code, 0);
    ASSERT_EQ(invoke({"extract", "--grid", "41x41x80", "--threads", "3", "--out", b.string()}).code, 0);
    for (const char* f : {"extract.json", "erp_curve.csv"}) {
        const auto x = slurp(a / f);
        EXPECT_FALSE(x.empty()) << f;
        EXPECT_EQ(x, slurp(b / f)) << f;
    }
    EXPECT_EQ(slurp(a / "erp_curve.csv").substr(0, 8), "S,v_erp\n");
}

TEST_F(CliTest, ButterflyDefaultsAndWeights) {
    const char* fly[] = {"erp", "hjb", "--payoff", "butterfly"};
    const auto c = cli::parse(4, fly);
    EXPECT_EQ(c.grid.v_max, 3.0);
    EXPECT_EQ(c.v0, 1.0);
    EXPECT_EQ(c.grid.label(), "81x81x320");
    const char* combo[] = {"erp", "hjb", "--payoff", "combo", "--weights", "1@4,-2@5,1@6"};
    const auto cc = cli::parse(6, combo);
    EXPECT_EQ(cc.payoff().eval(5.0), 1.0);
    const char* bad[] = {"erp", "hjb", "--payoff", "combo", "--weights", "1:4"};
    EXPECT_THROW((void)cli::parse(6, bad), ConfigError);
}

}  // namespace
