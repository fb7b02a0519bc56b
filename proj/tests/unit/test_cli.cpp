#include <gtest/gtest.h>

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <string>

#include "experiments.h"

namespace {

struct Result {
    int code = -1;
    std::string out;
};

Result run(const std::string& args) {
    const std::string cmd = std::string(ISAC_ED_PATH) + " " + args + " 2>/dev/null";
    Result r;
    FILE* p = popen(cmd.c_str(), "r");
    if (!p) return r;
    std::array<char, 4096> buf;
    std::size_t n;
    while ((n = fread(buf.data(), 1, buf.size(), p)) > 0) r.out.append(buf.data(), n);
    const int status = pclose(p);
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

std::string scenario(const std::string& name) {
    return std::string(ISAC_SCENARIO_DIR) + "/" + name;
}

std::string first_line(const std::string& s) { return s.substr(0, s.find('\n')); }

std::string joined(const std::vector<std::string>& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + v[i];
    return s;
}

}  // namespace

TEST(Cli, ExitCodes) {
    EXPECT_EQ(run("").code, 2);
    EXPECT_EQ(run("validate-zp --trials abc").code, 2);
    EXPECT_EQ(run("no-such-experiment --scenario " + scenario("zp-lt32.scn")).code, 3);
    EXPECT_EQ(run("validate-zp --scenario /nonexistent.scn").code, 4);
    EXPECT_EQ(run("validate-zp --scenario " + scenario("zp-lt32.scn") +
                  " --trials 0 --out /nonexistent/dir/x.csv").code, 5);
}

TEST(Cli, BadScenarioContentIsCode4) {
    const auto p = std::filesystem::temp_directory_path() / "isac_bad.scn";
    FILE* f = std::fopen(p.c_str(), "w");
    std::fputs("waveform.kind = zp\nwaveform.fft_size = -3\n", f);
    std::fclose(f);
    EXPECT_EQ(run("validate-zp --scenario " + p.string()).code, 4);
    std::filesystem::remove(p);
}

TEST(Cli, ValidateZpHeaderAndRows) {
    const Result r = run("validate-zp --scenario " + scenario("zp-lt32.scn") + " --trials 0");
    ASSERT_EQ(r.code, 0);
    EXPECT_EQ(first_line(r.out), joined(isac::app::experiment_header("validate-zp")));
    EXPECT_EQ(first_line(r.out), "threshold_over_sigma2,pd_exact,pd_gamma,pd_gaussian,pd_sim,sim_stderr");
    int lines = 0;
    for (char c : r.out) lines += c == '\n';
    EXPECT_EQ(lines, 6);
}

TEST(Cli, RerunsAreByteIdentical) {
    const std::string args = "validate-cp --scenario " + scenario("cp-lt64-rsi0db.scn") + " --trials 2000 --seed 5";
    const Result a = run(args + " --workers 1");
    const Result b = run(args + " --workers 3");
    ASSERT_EQ(a.code, 0);
    EXPECT_EQ(a.out, b.out);
    EXPECT_EQ(first_line(a.out), joined(isac::app::experiment_header("validate-cp")));
}

TEST(Cli, OutFileMatchesStdout) {
    const auto p = std::filesystem::temp_directory_path() / "isac_cli_out.csv";
    const std::string args = "validate-zp --scenario " + scenario("zp-lt64.scn") + " --trials 0";
    const Result a = run(args);
    ASSERT_EQ(run(args + " --out " + p.string()).code, 0);
    FILE* f = std::fopen(p.c_str(), "r");
    std::string content;
    std::array<char, 4096> buf;
    std::size_t n;
    while ((n = fread(buf.data(), 1, buf.size(), f)) > 0) content.append(buf.data(), n);
    std::fclose(f);
    EXPECT_EQ(content, a.out);
    std::filesystem::remove(p);
}

TEST(Cli, ConformanceNeedsNoScenario) {
    const Result r = run("conformance");
    ASSERT_EQ(r.code, 0);
    EXPECT_EQ(first_line(r.out), joined(isac::app::experiment_header("conformance")));
}

TEST(Cli, ExperimentHeadersAreDistinct) {
    for (const auto& name : isac::app::experiment_names())
        EXPECT_FALSE(isac::app::experiment_header(name).empty()) << name;
}
