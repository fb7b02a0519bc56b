#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "csv.h"
#include "scenario.h"

using namespace isac::app;

namespace {

const char* kMinimal =
    "waveform.kind = zp\n"
    "channel.target_delay_bins = 32\n"
    "detect.pfa = 1e-3\n";

std::string read_file(const std::filesystem::path& p) {
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void expect_error(const std::string& text, const std::string& key, int line) {
    try {
        parse_scenario(text);
        FAIL() << "accepted: " << text;
    } catch (const ScenarioError& e) {
        EXPECT_EQ(e.key(), key) << e.what();
        EXPECT_EQ(e.line(), line) << e.what();
    }
}

}  // namespace

TEST(Scenario, Defaults) {
    const Scenario s = parse_scenario(kMinimal);
    EXPECT_EQ(s.system.tx_power_dbm, 20.0);
    EXPECT_EQ(s.waveform.fft_size, 512);
    EXPECT_TRUE(std::isinf(s.channel.rsi_db));
    EXPECT_EQ(s.channel.target_delay_bins, 32);
    EXPECT_FALSE(s.channel.target_distance_m);
    EXPECT_EQ(s.sim.trials, 100000);
    EXPECT_EQ(s.detect.model, "auto");
}

TEST(Scenario, RoundTripsShippedFiles) {
    for (const auto& entry : std::filesystem::directory_iterator(ISAC_SCENARIO_DIR)) {
        if (entry.path().extension() != ".scn") continue;
        const Scenario s = load_scenario(entry.path().string());
        const std::string text = serialize_scenario(s);
        EXPECT_EQ(parse_scenario(text), s) << entry.path();
        EXPECT_EQ(serialize_scenario(parse_scenario(text)), text) << entry.path();
    }
}

TEST(Scenario, RangesExpandInclusive) {
    const Scenario s = parse_scenario(std::string(kMinimal) +
                                      "sweep.distances_m = 20:2:26, 40\n"
                                      "sweep.rsi_db = -1:0.5:0\n");
    EXPECT_EQ(s.sweep.distances_m, (std::vector<double>{20, 22, 24, 26, 40}));
    EXPECT_EQ(s.sweep.rsi_db, (std::vector<double>{-1, -0.5, 0}));
}

TEST(Scenario, CommentsAndBlankLines) {
    const Scenario s = parse_scenario("# header\n\nwaveform.kind = cp  # trailing\n"
                                      "channel.target_distance_m = 48\ndetect.pfa = 0.01\n");
    EXPECT_EQ(s.waveform.kind, isac::WaveformKind::cp);
    EXPECT_EQ(s.channel.target_distance_m, 48.0);
}

TEST(Scenario, ErrorsNameKeyAndLine) {
    expect_error(std::string(kMinimal) + "system.bogus = 1\n", "system.bogus", 4);
    expect_error(std::string(kMinimal) + "waveform.fft_size = 12x\n", "waveform.fft_size", 4);
    expect_error(std::string(kMinimal) + "detect.pfa = 0.1\n", "detect.pfa", 4);
    expect_error("waveform.kind = ofdm\n", "waveform.kind", 1);
    expect_error("waveform.kind = zp\nno equals sign\n", "no equals sign", 2);
    expect_error("waveform.kind = zp\ndetect.pfa = 1e-3\n", "channel.target_distance_m", 0);
    expect_error("channel.target_delay_bins = 3\n", "detect.pfa", 0);
    expect_error(std::string(kMinimal) + "sim.trials = -5\n", "sim.trials", 4);
}

TEST(Scenario, LoadMissingFile) {
    EXPECT_THROW(load_scenario("/nonexistent/x.scn"), std::runtime_error);
}

TEST(Csv, FormatsShortestRoundTrip) {
    EXPECT_EQ(format_number(0.1), "0.1");
    EXPECT_EQ(format_number(1e-300), "1e-300");
    EXPECT_EQ(format_number(std::nan("")), "nan");
    EXPECT_EQ(format_number(-INFINITY), "-inf");
    const double x = 0.9905046012345678;
    EXPECT_EQ(std::stod(format_number(x)), x);
}

TEST(Csv, TableWidthChecked) {
    CsvTable t({"a", "b"});
    t.row() << 1 << "x";
    EXPECT_EQ(t.str(), "a,b\n1,x\n");
    t.row() << 2;
    EXPECT_THROW(t.str(), std::logic_error);
}

TEST(Csv, AtomicWrite) {
    const auto dir = std::filesystem::temp_directory_path() / "isac_csv_test";
    std::filesystem::create_directories(dir);
    const auto p = dir / "out.csv";
    write_atomic(p.string(), "a\n1\n");
    EXPECT_EQ(read_file(p), "a\n1\n");
    write_atomic(p.string(), "a\n2\n");
    EXPECT_EQ(read_file(p), "a\n2\n");
    EXPECT_THROW(write_atomic((dir / "missing" / "x.csv").string(), "a\n"), OutputError);
    std::filesystem::remove_all(dir);
}
