#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "isac/model.h"
#include "isac/scene.h"

namespace isac::app {

// Malformed scenario: offending key and 1-based line (0 when the problem is
// a missing key rather than a specific line).
class ScenarioError : public std::runtime_error {
public:
    ScenarioError(std::string key, int line, const std::string& message);
    const std::string& key() const { return key_; }
    int line() const { return line_; }

private:
    std::string key_;
    int line_;
};

// How CP thresholds in detect.thresholds_over_sigma2 are normalized.
enum class ThresholdReference { noise, noise_plus_rsi };

struct SystemSection {
    double tx_power_dbm = 20.0;
    double antenna_gain = 16.0;
    double carrier_freq_hz = 2.4e9;
    double bandwidth_hz = 100e6;
    double rcs_m2 = 10.0;
    double pathloss_exp = 2.0;
    double noise_psd_dbm_hz = -174.0;
    double propagation_speed_mps = kSpeedOfLight;

    SystemConfig config() const;
    bool operator==(const SystemSection&) const = default;
};

struct WaveformSection {
    WaveformKind kind = WaveformKind::zp;
    int fft_size = 512;
    int guard_size = 128;
    int sample_shift = 0;

    WaveformConfig config() const { return {kind, fft_size, guard_size, sample_shift}; }
    bool operator==(const WaveformSection&) const = default;
};

struct ChannelSection {
    double rsi_db = -std::numeric_limits<double>::infinity();
    double clutter_total_db = -std::numeric_limits<double>::infinity();
    std::vector<int> clutter_delays;
    std::optional<double> target_distance_m;
    std::optional<int> target_delay_bins;

    bool operator==(const ChannelSection&) const = default;
};

struct DetectSection {
    std::string model = "auto";  // exact | gamma | gaussian | auto
    std::optional<double> pfa;
    std::vector<double> thresholds_over_sigma2;
    Model cfar_model = Model::gamma;
    ThresholdReference threshold_reference = ThresholdReference::noise;

    bool operator==(const DetectSection&) const = default;
};

struct SimSection {
    long trials = 100000;  // 0 disables simulation columns
    std::uint64_t seed = 1;

    bool operator==(const SimSection&) const = default;
};

struct SweepSection {
    std::vector<double> distances_m;
    std::vector<int> guard_sizes;
    std::vector<int> fft_sizes;
    std::vector<double> rsi_db;
    std::vector<double> sim_rsi_db;
    std::vector<double> rci_db;
    std::vector<int> sample_shifts;
    std::vector<int> clutter_counts;
    double pd_target = 0.9;

    bool operator==(const SweepSection&) const = default;
};

struct Scenario {
    SystemSection system;
    WaveformSection waveform;
    ChannelSection channel;
    DetectSection detect;
    SimSection sim;
    SweepSection sweep;

    bool operator==(const Scenario&) const = default;
};

// `key = value` lines; '#' starts a comment. Lists are comma separated and each
// item may be a range `start:step:stop` (inclusive). Throws ScenarioError.
Scenario parse_scenario(const std::string& text);
Scenario load_scenario(const std::string& path);

// Canonical text form; parse_scenario(serialize_scenario(s)) == s.
std::string serialize_scenario(const Scenario& s);

}  // namespace isac::app
