#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "isac/rng.h"
#include "isac/scene.h"
#include "isac/stats.h"
#include "isac/stream_counts.h"

namespace isac {

using Sample = std::complex<double>;

// Three consecutive symbols; element s holds stream index s - 2N, so the
// current symbol is the last block and any delay 0 <= L < 2N is covered.
std::vector<Sample> gen_symbol_stream(const WaveformConfig& wf, TrialRng& rng);

// Received current symbol y[0..N). Phases are drawn per call, then noise.
std::vector<Sample> apply_channel(const std::vector<Sample>& stream, const ChannelScene& scene,
                                  const WaveformConfig& wf, Hypothesis hypothesis, TrialRng& rng);

double decision_stat(const std::vector<Sample>& received, const Window& window);

struct TrialPlan {
    ChannelScene scene;
    WaveformConfig waveform;
    std::vector<double> thresholds;  // ascending, watts
    long trials = 100000;
    std::uint64_t master_seed = 1;
    int workers = 0;  // 0: hardware concurrency
};

struct EmpiricalEstimate {
    double threshold = 0.0;
    double rate = 0.0;
    double std_error = 0.0;
    long trials = 0;
};

struct SampleMoments {
    double mean = 0.0;
    double variance = 0.0;
    double mean_se = 0.0;
    double variance_se = 0.0;
    long n = 0;
};

// Decision statistics of every trial under both hypotheses; H0 and H1 share
// the data, phases and noise of a trial and differ only by the target echo.
struct TrialSamples {
    std::vector<double> h0;
    std::vector<double> h1;
};

TrialSamples simulate_statistics(const ChannelScene& scene, const WaveformConfig& wf, long trials,
                                 std::uint64_t master_seed, int workers = 0);

struct PlanResult {
    std::vector<EmpiricalEstimate> pfa;  // per threshold, H0
    std::vector<EmpiricalEstimate> pd;   // per threshold, H1
    SampleMoments h0;
    SampleMoments h1;
};

PlanResult run_plan(const TrialPlan& plan);

std::vector<EmpiricalEstimate> exceedance(const std::vector<double>& samples,
                                          const std::vector<double>& thresholds);
SampleMoments sample_moments(const std::vector<double>& samples);

struct RocPoint {
    double threshold = 0.0;
    double pfa = 0.0;
    double pd = 0.0;
};

std::vector<RocPoint> empirical_roc(const TrialPlan& plan);

// Per-trial statistic as a function of the target amplitude a:
// Z(a) = a0 + 2 a b + a^2 c, with the trial's target phase folded into b.
struct TargetQuadratic {
    double a0 = 0.0;
    double b = 0.0;
    double c = 0.0;
    double at(double gain_sq) const;
};

std::vector<TargetQuadratic> simulate_target_quadratics(const ChannelScene& scene,
                                                        const WaveformConfig& wf, long trials,
                                                        std::uint64_t master_seed, int workers = 0);

double empirical_pd_at_gain(const std::vector<TargetQuadratic>& q, double gain_sq, double lambda);

// Smallest |h_t|^2 (bisection in log scale over [lo, hi]) at which the
// empirical PD reaches `pd`.
double gain_for_empirical_pd(const std::vector<TargetQuadratic>& q, double lambda, double pd,
                             double lo, double hi);

}  // namespace isac
