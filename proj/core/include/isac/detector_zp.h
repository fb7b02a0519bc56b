#pragma once

#include <optional>
#include <vector>

#include "isac/model.h"
#include "isac/scene.h"
#include "isac/stats.h"
#include "isac/stream_counts.h"

namespace isac {

struct ZpEnergySplit {
    GammaParams signal_part;                 // k_t = min(L_t, N_zp), theta_t
    std::optional<GammaParams> noise_part;   // k_w = N_zp - k_t, theta_w; absent when k_w = 0
};

Window zp_window(const WaveformConfig& wf);

// Requires a ZP waveform with sample_shift = 0, no clutter and 0 < L_t <= N_f.
ZpEnergySplit energy_split(const ChannelScene& scene, const WaveformConfig& wf);

double pd_exact(double lambda, const ChannelScene& scene, const WaveformConfig& wf);
// +infinity when the target fills the whole window.
double sigma_ratio(const ChannelScene& scene, const WaveformConfig& wf);
double pd_gamma(double lambda, const ChannelScene& scene, const WaveformConfig& wf);

// Closed forms for the window counts.
long long count_mean_zp(int delay, const WaveformConfig& wf);
long long count_cov_zp(int delay_j, int delay_jp, const WaveformConfig& wf);

struct ZpCounts {
    std::vector<long long> mean;  // per tap
    CountMatrix cross;            // per unordered tap pair (symmetric)
};

// Enumeration over the window; ground truth for both closed forms.
ZpCounts oracle_counts_zp(const UnifiedChannel& channel, const WaveformConfig& wf);

GaussianMoments gaussian_moments_zp(const ChannelScene& scene, const WaveformConfig& wf);

double pd_gaussian_zp(double lambda, const ChannelScene& scene, const WaveformConfig& wf);

// Dispatches to pd_exact / pd_gamma / pd_gaussian_zp.
double pd_zp(double lambda, const ChannelScene& scene, const WaveformConfig& wf, Model model);

// H0 law: Gamma(W, sigma^2 / W) for exact/gamma (requires that no interference
// reaches the window), Gaussian moments otherwise.
double pfa_zp(double lambda, const ChannelScene& scene, const WaveformConfig& wf, Model model);
double threshold_for_pfa_zp(double pfa, const ChannelScene& scene, const WaveformConfig& wf,
                            Model model);

}  // namespace isac
