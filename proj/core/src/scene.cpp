#include "isac/scene.h"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace isac {
namespace {

void require_positive(double v, const char* name) {
    if (!(std::isfinite(v) && v > 0.0))
        throw std::invalid_argument(std::string(name) + " must be positive and finite");
}

// P G^2 (c/f)^2 sigma_rcs / (4 pi)^3, the distance-free part of the radar equation.
double radar_constant(const SystemConfig& cfg) {
    const double wavelength = cfg.propagation_speed / cfg.carrier_freq_hz;
    return cfg.tx_power_w * cfg.antenna_gain * cfg.antenna_gain * wavelength * wavelength *
           cfg.rcs_m2 / std::pow(4.0 * std::numbers::pi, 3);
}

}  // namespace

void SystemConfig::validate() const {
    require_positive(tx_power_w, "tx_power");
    require_positive(antenna_gain, "antenna_gain");
    require_positive(carrier_freq_hz, "carrier_freq");
    require_positive(bandwidth_hz, "bandwidth");
    require_positive(rcs_m2, "rcs");
    require_positive(noise_psd_w_hz, "noise_psd");
    require_positive(propagation_speed, "propagation_speed");
    if (!(std::isfinite(pathloss_exp) && pathloss_exp >= 1.0))
        throw std::invalid_argument("pathloss_exp must be >= 1");
}

void WaveformConfig::validate() const {
    if (fft_size < 1) throw std::invalid_argument("fft_size must be >= 1");
    if (guard_size < 1) throw std::invalid_argument("guard_size must be >= 1");
    if (kind == WaveformKind::zp) {
        if (sample_shift < -fft_size || sample_shift >= guard_size)
            throw std::invalid_argument("sample_shift must lie in [-fft_size, guard_size)");
    } else if (sample_shift != 0) {
        throw std::invalid_argument("sample_shift applies to ZP waveforms only");
    }
}

void ChannelScene::validate() const {
    if (!(std::isfinite(noise_power) && noise_power > 0.0))
        throw std::invalid_argument("noise power must be positive");
    if (!(std::isfinite(rsi_ratio) && rsi_ratio >= 0.0))
        throw std::invalid_argument("rsi ratio must be nonnegative");
    if (!(std::isfinite(clutter_ratio) && clutter_ratio >= 0.0))
        throw std::invalid_argument("clutter ratio must be nonnegative");
    for (std::size_t i = 0; i < clutter_delays.size(); ++i) {
        if (clutter_delays[i] < 0) throw std::invalid_argument("clutter delays must be >= 0");
        if (i > 0 && clutter_delays[i] <= clutter_delays[i - 1])
            throw std::invalid_argument("clutter delays must be strictly ascending");
    }
    if (clutter_ratio > 0.0 && clutter_delays.empty())
        throw std::invalid_argument("clutter power given without clutter delays");
    if (target_delay < 0) throw std::invalid_argument("target delay must be >= 0");
    if (!(std::isfinite(target_gain_sq) && target_gain_sq >= 0.0))
        throw std::invalid_argument("target gain must be nonnegative");
}

double ChannelScene::clutter_gain_sq() const {
    if (clutter_delays.empty()) return 0.0;
    return clutter_ratio / static_cast<double>(clutter_delays.size()) * noise_power;
}

double ChannelScene::effective_target_gain_sq() const {
    return hypothesis == Hypothesis::h1 ? target_gain_sq : 0.0;
}

ChannelScene ChannelScene::under(Hypothesis h) const {
    ChannelScene s = *this;
    s.hypothesis = h;
    return s;
}

double dbm_to_watts(double dbm) { return std::pow(10.0, (dbm - 30.0) / 10.0); }
double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
double linear_to_db(double x) { return 10.0 * std::log10(x); }

double noise_power(const SystemConfig& cfg) { return cfg.bandwidth_hz * cfg.noise_psd_w_hz; }

double target_gain(const SystemConfig& cfg, double distance_m) {
    require_positive(distance_m, "distance");
    return radar_constant(cfg) / std::pow(distance_m, 2.0 * cfg.pathloss_exp);
}

double distance_for_gain(const SystemConfig& cfg, double gain_sq) {
    require_positive(gain_sq, "gain");
    return std::pow(radar_constant(cfg) / gain_sq, 1.0 / (2.0 * cfg.pathloss_exp));
}

int delay_bins(double distance_m, double bandwidth_hz, double speed) {
    if (!(std::isfinite(distance_m) && distance_m >= 0.0))
        throw std::invalid_argument("distance must be nonnegative");
    // std::round breaks ties away from zero.
    return static_cast<int>(std::round(2.0 * distance_m * bandwidth_hz / speed));
}

double distance_from_bins(int bins, double bandwidth_hz, double speed) {
    if (bins < 0) throw std::invalid_argument("delay bins must be nonnegative");
    return bins * speed / (2.0 * bandwidth_hz);
}

ChannelScene build_scene(const SystemConfig& cfg, const WaveformConfig& wf, double distance_m,
                         double rsi_ratio, double clutter_ratio, std::vector<int> clutter_delays,
                         Hypothesis hypothesis) {
    cfg.validate();
    wf.validate();
    ChannelScene s;
    s.noise_power = noise_power(cfg);
    s.rsi_ratio = rsi_ratio;
    s.clutter_ratio = clutter_ratio;
    s.clutter_delays = std::move(clutter_delays);
    s.hypothesis = hypothesis;
    s.target_delay = delay_bins(distance_m, cfg.bandwidth_hz, cfg.propagation_speed);
    s.target_gain_sq = distance_m > 0.0 ? target_gain(cfg, distance_m) : 0.0;
    s.validate();
    return s;
}

ChannelScene build_scene_at_delay(const SystemConfig& cfg, const WaveformConfig& wf, int delay,
                                  double rsi_ratio, double clutter_ratio,
                                  std::vector<int> clutter_delays, Hypothesis hypothesis) {
    ChannelScene s =
        build_scene(cfg, wf, distance_from_bins(delay, cfg.bandwidth_hz, cfg.propagation_speed),
                    rsi_ratio, clutter_ratio, std::move(clutter_delays), hypothesis);
    s.target_delay = delay;
    return s;
}

}  // namespace isac
