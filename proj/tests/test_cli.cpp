#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "mslab/cli.hpp"

namespace fs = std::filesystem;
using mslab::json;

namespace {

struct Run {
    int code;
    std::string out, err;
    json doc() const { return json::parse(out); }
};

Run mslab_run(std::vector<std::string> args) {
    args.insert(args.begin(), "mslab");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int code = mslab::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

class CliTest : public ::testing::Test {
protected:
    fs::path dir;
    void SetUp() override {
        dir = fs::temp_directory_path() / ("mslab_cli_" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()) + "_" +
                                           ::testing::UnitTest::GetInstance()->current_test_info()->name());
        fs::create_directories(dir);
    }
    void TearDown() override { fs::remove_all(dir); }
    std::string write(const std::string& name, const std::string& text) {
        const auto p = dir / name;
        std::ofstream(p) << text;
        return p.string();
    }
};

const char* kPair = R"({"points": ["a", "b"], "diam": "1", "d": [["0", "1/2"], ["1/2", "0"]]})";
const char* kTriangle = R"({"points": ["a", "b", "c"], "diam": "1", "d": [["0", "1/2", "1/2"], ["1/2", "0", "1/2"], ["1/2", "1/2", "0"]]})";

}  // namespace

TEST_F(CliTest, ValidatePassAndFail) {
    auto ok = mslab_run({"validate", write("pair.json", kPair)});
    EXPECT_EQ(ok.code, 0);
    EXPECT_EQ(ok.doc()["verdict"], "pass");
    EXPECT_NE(ok.err.find("validate: pass"), std::string::npos);
    auto bad = mslab_run({"validate", write("bad.json", R"({"points": [0,1,2], "diam": "1", "d": [[0,1,"1/4"],[1,0,"1/2"],["1/4","1/2",0]]})")});
    EXPECT_EQ(bad.code, 1);
    EXPECT_EQ(bad.doc()["verdict"], "fail");
    EXPECT_EQ(bad.doc()["witness"]["kind"], "triangle");
}

TEST_F(CliTest, MalformedInputs) {
    for (auto args : std::vector<std::vector<std::string>>{
             {"validate", (dir / "missing.json").string()},
             {"validate", write("junk.json", "{not json")},
             {"lp", "--p", "x/2"},
             {"lp", "--p", "0"},
             {"rado", "adj", "3", "3"},
             {"rado", "witness", "--u", "1", "--v", "1"},
             {"rado", "basis", "--code", "1:1", "--codes", "2:2", "--scan", "0..3"},
             {"hilbert", "--u", "1,1", "--v", "0,1", "--z", "1,0"},
             {"nosuchcommand"},
         }) {
        auto r = mslab_run(args);
        EXPECT_EQ(r.code, 2) << args[0];
        if (r.code == 2 && !r.out.empty() && r.out[0] == '{') EXPECT_EQ(r.doc()["verdict"], "malformed");
        EXPECT_FALSE(r.err.empty());
    }
}

TEST_F(CliTest, LpSeparation) {
    auto r3 = mslab_run({"lp", "--p", "3"});
    EXPECT_EQ(r3.code, 0);
    EXPECT_EQ(r3.doc()["result"]["exponent_w_v"], "2/3");
    EXPECT_EQ(r3.doc()["result"]["exponent_w_prime_v"], "1/3");
    auto r2 = mslab_run({"lp", "--p", "2"});
    EXPECT_EQ(r2.code, 1);
    EXPECT_EQ(r2.doc()["verdict"], "fail");
    EXPECT_NE(r2.doc()["witness"]["reason"].get<std::string>().find("Hilbert"), std::string::npos);
}

TEST_F(CliTest, KatetovAndUrysohnCommands) {
    const auto pair = write("pair.json", kPair);
    auto en = mslab_run({"katetov", "enumerate", pair, "--denom", "2"});
    EXPECT_EQ(en.code, 0);
    auto ch = mslab_run({"urysohn", "chain", "--r", "1/4", "--s", "1", "--diam", "1"});
    EXPECT_EQ(ch.code, 0);
    auto np = mslab_run({"urysohn", "nonproper", write("tri.json", kTriangle), "--x", "0", "--Z", "1,2", "--lambda", "1/2"});
    EXPECT_EQ(np.code, 0);
    auto ma = mslab_run({"urysohn", "ma", pair, "--x", "0", "--y", "1", "--delta", "1/4"});
    EXPECT_EQ(ma.code, 0);
    const auto approx = (dir / "approx.json").string();
    auto b = mslab_run({"urysohn", "build", pair, "--denom", "4", "--rounds", "1", "--out", approx});
    EXPECT_EQ(b.code, 0);
    auto c = mslab_run({"urysohn", "check", approx, "--round", "0", "--k", "2"});
    EXPECT_EQ(c.code, 0);
}

TEST_F(CliTest, UwmtLiteralReadingFailsWithExitOne) {
    // points 0, 1/4, 1/2, 1 of a line; copying Z = {1/4, 1/2} around the far
    // end with the literal distances breaks a triangle
    const auto line = write("line.json", R"({"points": [0,1,2,3], "diam": "1",
        "d": [[0,"1/4","1/2","1"],["1/4",0,"1/4","3/4"],["1/2","1/4",0,"1/2"],["1","3/4","1/2",0]]})");
    auto amalgam = mslab_run({"urysohn", "uwmt", line, "--x", "0", "--y", "3", "--Z", "1,2"});
    EXPECT_EQ(amalgam.code, 0);
    auto literal = mslab_run({"urysohn", "uwmt", line, "--x", "0", "--y", "3", "--Z", "1,2", "--reading", "literal"});
    EXPECT_EQ(literal.code, 1);
    EXPECT_EQ(literal.doc()["witness"]["error"], "MetricFailure");
}

TEST_F(CliTest, ProfileAndRado) {
    EXPECT_EQ(mslab_run({"profile", "check", "builtin:gurarij-h"}).code, 0);
    auto h2 = mslab_run({"profile", "check", "builtin:ball-h2", "--horizon", "3"});
    EXPECT_EQ(h2.code, 1);
    EXPECT_EQ(mslab_run({"profile", "agree", "builtin:gurarij-h", "builtin:gurarij-h-prime", "--lo", "1", "--hi", "1"}).code, 0);
    EXPECT_EQ(mslab_run({"profile", "agree", "builtin:gurarij-h", "builtin:gurarij-h-prime"}).code, 1);
    EXPECT_EQ(mslab_run({"profile", "check", "builtin:nope"}).code, 2);
    auto adj = mslab_run({"rado", "adj", "0", "1"});
    EXPECT_EQ(adj.code, 0);
    EXPECT_EQ(adj.doc()["result"]["adjacent"], true);
    auto w = mslab_run({"rado", "witness", "--u", "1,3", "--v", "0"});
    EXPECT_EQ(w.doc()["result"]["w"], 26);
    auto bq = mslab_run({"rado", "basis", "--code", "0:1", "--q", "0:1,1:1", "--scan", "0..63"});
    EXPECT_EQ(bq.code, 0);
    EXPECT_EQ(bq.doc()["params"]["mode"], "refinement");
}

TEST_F(CliTest, DisjointFromFile) {
    const auto f = write("d.json", R"({"x": {"x_breaks": ["0","1","2"], "y_breaks": ["0","1"], "values": [["1"],["0"]]},
        "parts": [{"x_breaks": ["0","1","2"], "y_breaks": ["0","1"], "values": [["0"],["2"]]}]})");
    auto r = mslab_run({"disjoint", f, "--p", "3"});
    EXPECT_EQ(r.code, 0);
    auto overlap = write("o.json", R"({"x": {"x_breaks": ["0","2"], "y_breaks": ["0","1"], "values": [["1"]]},
        "parts": [{"x_breaks": ["0","2"], "y_breaks": ["0","1"], "values": [["1"]]},
                  {"x_breaks": ["0","2"], "y_breaks": ["0","1"], "values": [["1"]]}]})");
    EXPECT_EQ(mslab_run({"disjoint", overlap}).code, 2);
}

TEST_F(CliTest, DeterministicOutput) {
    const auto pair = write("pair.json", kPair);
    for (auto args : std::vector<std::vector<std::string>>{
             {"lp", "--p", "3/2"},
             {"--seed", "7", "urysohn", "build", pair, "--denom", "4", "--rounds", "1"},
             {"weak", "net", write("tri.json", kTriangle), "--eps", "1/4"},
         }) {
        auto a = mslab_run(args), b = mslab_run(args);
        EXPECT_EQ(a.code, b.code);
        EXPECT_EQ(a.out, b.out);
        EXPECT_EQ(a.doc()["elapsed_ms"], 0) << args[0];
    }
}

TEST_F(CliTest, GlobalFlagsAfterSubcommand) {
    auto a = mslab_run({"--seed", "9", "lp", "--p", "3"});
    auto b = mslab_run({"lp", "--p", "3", "--seed", "9"});
    EXPECT_EQ(a.code, 0);
    EXPECT_EQ(a.out, b.out);
    auto c = mslab_run({"urysohn", "chain", "--r", "1/4", "--s", "1", "--diam", "1", "--timing"});
    EXPECT_EQ(c.code, 0);
}
