#pragma once

#include <vector>

namespace isac {

inline constexpr double kSpeedOfLight = 2.99792458e8;

struct SystemConfig {
    double tx_power_w = 0.1;
    double antenna_gain = 16.0;
    double carrier_freq_hz = 2.4e9;
    double bandwidth_hz = 100e6;
    double rcs_m2 = 10.0;
    double pathloss_exp = 2.0;
    double noise_psd_w_hz = 3.981071705534986e-21;  // -174 dBm/Hz
    double propagation_speed = kSpeedOfLight;

    void validate() const;
};

enum class WaveformKind { zp, cp };

struct WaveformConfig {
    WaveformKind kind = WaveformKind::zp;
    int fft_size = 512;
    int guard_size = 128;
    int sample_shift = 0;  // ZP only

    int total() const { return fft_size + guard_size; }
    double power_factor() const { return static_cast<double>(total()) / fft_size; }
    void validate() const;
};

enum class Hypothesis { h0, h1 };

struct ChannelScene {
    double noise_power = 0.0;        // sigma^2, watts
    double rsi_ratio = 0.0;          // rho_si
    double clutter_ratio = 0.0;      // rho_ci, total over all clutters
    std::vector<int> clutter_delays; // strictly ascending
    int target_delay = 0;
    double target_gain_sq = 0.0;     // |h_t|^2, watts
    Hypothesis hypothesis = Hypothesis::h1;

    void validate() const;
    double rsi_gain_sq() const { return rsi_ratio * noise_power; }
    // Power of each clutter echo: equal split of the total.
    double clutter_gain_sq() const;
    // |h_t|^2 under H1, zero under H0.
    double effective_target_gain_sq() const;
    ChannelScene under(Hypothesis h) const;
};

double dbm_to_watts(double dbm);
double db_to_linear(double db);
double linear_to_db(double x);

double noise_power(const SystemConfig& cfg);
double target_gain(const SystemConfig& cfg, double distance_m);
int delay_bins(double distance_m, double bandwidth_hz, double speed = kSpeedOfLight);
double distance_from_bins(int bins, double bandwidth_hz, double speed = kSpeedOfLight);
// Inverse of target_gain.
double distance_for_gain(const SystemConfig& cfg, double gain_sq);

ChannelScene build_scene(const SystemConfig& cfg, const WaveformConfig& wf, double distance_m,
                         double rsi_ratio, double clutter_ratio, std::vector<int> clutter_delays,
                         Hypothesis hypothesis);

// Variant driven by a delay in bins; the gain uses the distance of that bin.
ChannelScene build_scene_at_delay(const SystemConfig& cfg, const WaveformConfig& wf, int delay,
                                  double rsi_ratio, double clutter_ratio,
                                  std::vector<int> clutter_delays, Hypothesis hypothesis);

}  // namespace isac
