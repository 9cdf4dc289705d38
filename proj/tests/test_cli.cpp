// Copyright 2026 The pcteleport Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>
#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "json.hpp"

namespace fs = std::filesystem;

namespace {

struct Run {
    int code = -1;
    std::string out;
};

// Runs the CLI with stderr discarded unless requested.
Run run(const std::string &args, bool merge_stderr = false) {
    const std::string cmd =
        std::string(PCTELEPORT_CLI) + " " + args + (merge_stderr ? " 2>&1" : " 2>/dev/null");
    Run r;
    FILE *pipe = popen(cmd.c_str(), "r");
    if (pipe == nullptr) {
        return r;
    }
    char buf[4096];
    std::size_t n = 0;
    while ((n = fread(buf, 1, sizeof(buf), pipe)) > 0) {
        r.out.append(buf, n);
    }
    const int status = pclose(pipe);
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

std::string slurp(const fs::path &p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::vector<std::string> lines_of(const std::string &text) {
    std::vector<std::string> lines;
    std::stringstream ss(text);
    std::string line;
    while (std::getline(ss, line)) {
        lines.push_back(line);
    }
    return lines;
}

class Cli : public ::testing::Test {
   protected:
    void SetUp() override {
        dir_ = fs::temp_directory_path() /
               ("pcteleport_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
        fs::create_directories(dir_);
    }
    void TearDown() override { fs::remove_all(dir_); }
    fs::path dir_;
};

}  // namespace

TEST_F(Cli, FidelityUnitGainVacuum) {
    const auto r = run("fidelity --zeta 0 --gain 1 --method g1-series");
    ASSERT_EQ(r.code, 0);
    const auto j = nlohmann::json::parse(r.out);
    EXPECT_EQ(j["value"].get<double>(), 0.5);
    EXPECT_EQ(j["method"], "g1-series");
    for (const char *key : {"truncation_used", "tail_estimate", "quad_residual", "params"}) {
        EXPECT_TRUE(j.contains(key)) << key;
    }
}

TEST_F(Cli, FidelityOptimalZeta) {
    const auto r = run("fidelity --zeta 1.2357 --gain 1 --method g1-series");
    ASSERT_EQ(r.code, 0);
    EXPECT_NEAR(nlohmann::json::parse(r.out)["value"].get<double>(), 0.75884, 1e-5);
}

TEST_F(Cli, FidelitySmearedVacuum) {
    const auto r = run("fidelity --zeta 0 --method smeared");
    ASSERT_EQ(r.code, 0);
    EXPECT_NEAR(nlohmann::json::parse(r.out)["value"].get<double>(), 1.0 / 3.0, 1e-8);
}

TEST_F(Cli, FidelitySeriesAndQuadratureAgree) {
    const auto s = run("fidelity --alpha 1.5 --zeta 1 --gain 0.8 --method series");
    const auto q = run("fidelity --alpha 1.5 --zeta 1 --gain 0.8 --method quadrature");
    ASSERT_EQ(s.code, 0);
    ASSERT_EQ(q.code, 0);
    EXPECT_NEAR(nlohmann::json::parse(s.out)["value"].get<double>(),
                nlohmann::json::parse(q.out)["value"].get<double>(), 1e-8);
}

TEST_F(Cli, UsageErrorsExitTwoWithRecord) {
    EXPECT_EQ(run("fidelity --zeta 1 --gain 0.5 --method g1-series").code, 2);
    EXPECT_EQ(run("fidelity --method exact").code, 2);
    EXPECT_EQ(run("fidelity --zeta -1").code, 2);
    EXPECT_EQ(run("").code, 2);
    const auto r = run("fidelity --zeta 1 --gain 0.5 --method smeared", true);
    EXPECT_EQ(r.code, 2);
    const auto j = nlohmann::json::parse(r.out);
    EXPECT_EQ(j["error"], "usage");
    EXPECT_EQ(j["exit_code"], 2);
}

TEST_F(Cli, NumericalFailureExitsThree) {
    const auto r = run("fidelity --zeta 2 --method quadrature --nmax 3", true);
    EXPECT_EQ(r.code, 3);
    EXPECT_EQ(nlohmann::json::parse(r.out)["error"], "truncation");
}

TEST_F(Cli, ScanWritesHeaderAndRows) {
    const auto out = dir_ / "zeta.csv";
    ASSERT_EQ(run("scan --axis zeta:0:2:3 --method g1-series --out " + out.string()).code, 0);
    const auto lines = lines_of(slurp(out));
    ASSERT_EQ(lines.size(), 4u);
    EXPECT_EQ(lines[0].rfind("zeta,value,", 0), 0u);
}

TEST_F(Cli, ScanJsonFormat) {
    const auto out = dir_ / "scan.json";
    ASSERT_EQ(run("scan --axis gain:0.5:1:3 --zeta 1 --alpha 2 --format json --out " + out.string()).code, 0);
    const auto j = nlohmann::json::parse(slurp(out));
    EXPECT_EQ(j["points"].size(), 3u);
    EXPECT_FALSE(j["argmax"].is_null());
}

TEST_F(Cli, ScanIsByteDeterministic) {
    const auto a = dir_ / "a.csv";
    const auto b = dir_ / "b.csv";
    const std::string args = "scan --axis alpha_abs:0:2:3 --axis gain:0.6:1:3 --zeta 1.2357 --extra f_tmsv --out ";
    ASSERT_EQ(run(args + a.string()).code, 0);
    ASSERT_EQ(run(args + b.string()).code, 0);
    EXPECT_EQ(slurp(a), slurp(b));
}

TEST_F(Cli, ScanPresets) {
    const auto f2 = dir_ / "fig2.csv";
    ASSERT_EQ(run("scan --preset fig2 --axis zeta:0:2:5 --out " + f2.string()).code, 0);
    auto lines = lines_of(slurp(f2));
    ASSERT_EQ(lines.size(), 6u);
    EXPECT_EQ(lines[0], "zeta,f_pair_g1,f_tmsv,f_smeared");
    const auto f1 = dir_ / "fig1.csv";
    ASSERT_EQ(run("scan --preset fig1 --axis alpha_abs:1:3:2 --out " + f1.string()).code, 0);
    lines = lines_of(slurp(f1));
    ASSERT_EQ(lines.size(), 3u);
    EXPECT_EQ(lines[0], "alpha_abs,f_opt,zeta_opt,g_opt");
}

TEST_F(Cli, ScanUsageAndIoErrors) {
    const auto out = dir_ / "x.csv";
    EXPECT_EQ(run("scan --axis theta:0:1:3 --out " + out.string()).code, 2);
    EXPECT_EQ(run("scan --axis zeta:0:1 --out " + out.string()).code, 2);
    EXPECT_EQ(run("scan --axis zeta:1:0:3 --out " + out.string()).code, 2);
    EXPECT_EQ(run("scan --out " + out.string()).code, 2);
    EXPECT_EQ(run("scan --axis zeta:0:1:3 --out " + (dir_ / "missing" / "x.csv").string()).code, 4);
}

TEST_F(Cli, WignerNegativityAndSummary) {
    const auto out = dir_ / "w.csv";
    const auto r = run("wigner --zeta 1 --x re_alpha:-1.5:1.5:13 --y re_beta:-1.5:1.5:13 --out " + out.string());
    ASSERT_EQ(r.code, 0);
    const auto summary = nlohmann::json::parse(r.out);
    EXPECT_LT(summary["min_w"].get<double>(), 0.0);
    EXPECT_TRUE(summary["negative"].get<bool>());
    const auto lines = lines_of(slurp(out));
    ASSERT_EQ(lines.size(), 1u + 13u * 13u);
    EXPECT_EQ(lines[0], "re_alpha,re_beta,w");
}

TEST_F(Cli, WignerGaussianSectionIsPositive) {
    const auto out = dir_ / "w0.csv";
    const auto r = run("wigner --zeta 0 --x re_alpha:-2:2:9 --y im_beta:-2:2:9 --out " + out.string());
    ASSERT_EQ(r.code, 0);
    EXPECT_GT(nlohmann::json::parse(r.out)["min_w"].get<double>(), 0.0);
}

TEST_F(Cli, WignerEmptyGridIsUsageError) {
    const auto out = dir_ / "w.csv";
    EXPECT_EQ(run("wigner --zeta 1 --x re_alpha:-1:1:0 --y re_beta:-1:1:5 --out " + out.string()).code, 2);
    EXPECT_EQ(run("wigner --zeta 1 --x re_alpha:-1:1:5 --y re_alpha:-1:1:5 --out " + out.string()).code, 2);
}
