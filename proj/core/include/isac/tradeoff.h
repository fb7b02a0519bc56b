#pragma once

#include <functional>
#include <string>

#include "isac/model.h"
#include "isac/scene.h"
#include "isac/stats.h"

namespace isac {

// CP-vs-ZP range comparison query. `cfar` selects the H0 law used to set the
// threshold: Model::gamma inverts the exact noise-only Gamma law, Model::gaussian
// uses the Gaussian H0 approximation (which, for CP, depends on the RSI level).
struct RangeQuery {
    double pd = 0.9;
    double pfa = 1e-3;
    int fft_size = 1024;
    int guard_size = 128;
    double pathloss_exp = 2.0;
    double rsi_ratio = 0.0;
    Model cfar = Model::gamma;

    void validate() const;
    double overhead() const { return static_cast<double>(guard_size) / (fft_size + guard_size); }
    double power_factor() const { return static_cast<double>(fft_size + guard_size) / fft_size; }
    WaveformConfig zp() const { return {WaveformKind::zp, fft_size, guard_size, 0}; }
    WaveformConfig cp() const { return {WaveformKind::cp, fft_size, guard_size, 0}; }
};

// CFAR thresholds normalized as lambda N_zp / sigma^2 and lambda N / (sigma^2 (1 + rho_si)).
double lambda_norm_zp(const RangeQuery& rq);
double lambda_norm_cp(const RangeQuery& rq);

// Required SNR / SINR for a PD target; throws std::domain_error when infeasible (pd <= pfa).
double snr_required_zp(double pd, double pfa, int n_zp);
double snr_required_cp(double pd, double pfa, int n);
double snr_required_zp(const RangeQuery& rq);
double snr_required_cp(const RangeQuery& rq);

// Distance at which the link budget yields `snr` for the given waveform.
double range_from_snr(const SystemConfig& cfg, double snr, const WaveformConfig& wf,
                      double rsi_ratio);

// d_cp / d_zp. When `cfg` is given the implied ZP delay is checked against 0 < L <= N_f.
double delta_ratio(const RangeQuery& rq, const SystemConfig* cfg = nullptr);

struct EqualRange {
    bool feasible = false;  // false when ZP already reaches farther at rho_si = 0
    double rsi_ratio = 0.0;
    double rsi_db = 0.0;
};

// Closed-form rearrangement at delta = 1 (fixed-point when the CP threshold depends on rho_si).
EqualRange equal_range_rsi(const RangeQuery& rq);
// Bisection on delta over rho_si in [1e-6, 1e6]; independent cross-check.
EqualRange equal_range_rsi_bisect(const RangeQuery& rq);

struct KldPair {
    double zp = 0.0;
    double cp = 0.0;
};

KldPair kld_compare(const ChannelScene& scene_zp, const WaveformConfig& wf_zp,
                    const ChannelScene& scene_cp, const WaveformConfig& wf_cp);

struct ModelThresholds {
    double sigma_ratio = 300.0;
    double covariance_fraction = 0.01;
};

struct ModelSelection {
    Model model = Model::gaussian;
    double sigma_ratio = 0.0;          // ZP diagnostic (NaN when not defined)
    double covariance_fraction = 0.0;  // CP diagnostic (NaN when not defined)
    bool gamma_acceptable = false;
    std::string reason;
};

ModelSelection model_select(const ChannelScene& scene, const WaveformConfig& wf,
                            const ModelThresholds& th = {});

// ZP PD of a clutter-free, RSI-free scene at `distance` with a CFAR threshold at `pfa`.
double zp_pd_at_distance(const SystemConfig& cfg, const WaveformConfig& wf, double distance_m,
                         double pfa, Model cfar, Model pd_model = Model::exact);

// PD with the guard length set equal to the target delay (FFT size scaled to keep eta).
double pd_upper_bound(const SystemConfig& cfg, const WaveformConfig& reference, double distance_m,
                      double pfa, Model cfar);

// First argument in [lo, hi] where a nonincreasing f crosses `target` (bisection).
double find_crossing(const std::function<double(double)>& f, double lo, double hi, double target,
                     double tol = 1e-6);

}  // namespace isac
