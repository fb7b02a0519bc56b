#pragma once

#include <vector>

#include "isac/model.h"
#include "isac/scene.h"
#include "isac/stats.h"
#include "isac/stream_counts.h"

namespace isac {

struct CpMomentBreakdown {
    double mean = 0.0;
    double variance = 0.0;
    double covariance_fraction = 0.0;  // share of the variance due to sample covariances

    GaussianMoments moments() const { return {mean, variance}; }
};

// Gamma(N, (|h_i|^2 + |h_t|^2 + sigma^2) / N). Rejects scenes with clutter.
GammaParams gamma_params_cp(const ChannelScene& scene, const WaveformConfig& wf);
double pd_gamma_cp(double lambda, const ChannelScene& scene, const WaveformConfig& wf);

// Closed forms. The cross form is evaluated verbatim with the guard
// length in place of the ZP size; cp_stream_oracle is authoritative.
long long count_cov_cp_self(int delay, const WaveformConfig& wf);
long long count_cov_cp_cross(int delay_j, int delay_jp, const WaveformConfig& wf);

struct CpCounts {
    CountMatrix cross;             // covariance weight per unordered tap pair
    std::vector<long long> self;   // repeated-sample pairs per tap
};

CpCounts cp_stream_oracle(const UnifiedChannel& channel, const WaveformConfig& wf);

// Moments with the oracle counts.
CpMomentBreakdown gaussian_moments_cp(const ChannelScene& scene, const WaveformConfig& wf);
// Same expression driven by the closed-form counts; kept for comparison only.
CpMomentBreakdown gaussian_moments_cp_closed_form(const ChannelScene& scene,
                                                  const WaveformConfig& wf);

double pd_gaussian_cp(double lambda, const ChannelScene& scene, const WaveformConfig& wf);
// Model::exact is treated as Model::gamma (no exact CP law is available).
double pd_cp(double lambda, const ChannelScene& scene, const WaveformConfig& wf, Model model);
double pfa_cp(double lambda, const ChannelScene& scene, const WaveformConfig& wf, Model model);
double threshold_for_pfa_cp(double pfa, const ChannelScene& scene, const WaveformConfig& wf,
                            Model model);

}  // namespace isac
