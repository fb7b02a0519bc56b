#include "isac/tradeoff.h"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "isac/detector_cp.h"
#include "isac/detector_zp.h"

namespace isac {
namespace {

ChannelScene unit_noise_scene(double rsi_ratio) {
    ChannelScene s;
    s.noise_power = 1.0;
    s.rsi_ratio = rsi_ratio;
    s.hypothesis = Hypothesis::h0;
    return s;
}

void require_prob(double p, const char* name) {
    if (!(p > 0.0 && p < 1.0)) throw std::invalid_argument(std::string(name) + " must lie in (0, 1)");
}

double required_snr(double lambda_norm, double pd, int k) {
    const double rho = lambda_norm / gamma_inv_sf(pd, {static_cast<double>(k), 1.0}) - 1.0;
    if (!(rho > 0.0)) throw std::domain_error("PD target not reachable above the false-alarm rate");
    return rho;
}

double delta_from(const RangeQuery& rq, double rsi) {
    RangeQuery q = rq;
    q.rsi_ratio = rsi;
    const double rz = snr_required_zp(q);
    const double rc = snr_required_cp(q);
    return std::pow(rz / (q.power_factor() * (1.0 + rsi) * rc), 1.0 / (2.0 * q.pathloss_exp));
}

EqualRange make_equal_range(double rsi) {
    return {true, rsi, linear_to_db(rsi)};
}

}  // namespace

void RangeQuery::validate() const {
    require_prob(pd, "pd");
    require_prob(pfa, "pfa");
    if (fft_size < 1 || guard_size < 1) throw std::invalid_argument("waveform sizes must be >= 1");
    if (!(pathloss_exp >= 1.0)) throw std::invalid_argument("pathloss_exp must be >= 1");
    if (!(rsi_ratio >= 0.0)) throw std::invalid_argument("rsi must be nonnegative");
}

double lambda_norm_zp(const RangeQuery& rq) {
    rq.validate();
    if (rq.cfar != Model::gaussian)
        return gamma_inv_sf(rq.pfa, {static_cast<double>(rq.guard_size), 1.0});
    return threshold_for_pfa_zp(rq.pfa, unit_noise_scene(rq.rsi_ratio), rq.zp(), Model::gaussian) *
           rq.guard_size;
}

double lambda_norm_cp(const RangeQuery& rq) {
    rq.validate();
    const int n = rq.fft_size + rq.guard_size;
    if (rq.cfar != Model::gaussian) return gamma_inv_sf(rq.pfa, {static_cast<double>(n), 1.0});
    return threshold_for_pfa_cp(rq.pfa, unit_noise_scene(rq.rsi_ratio), rq.cp(), Model::gaussian) *
           n / (1.0 + rq.rsi_ratio);
}

double snr_required_zp(double pd, double pfa, int n_zp) {
    require_prob(pd, "pd");
    require_prob(pfa, "pfa");
    return required_snr(gamma_inv_sf(pfa, {static_cast<double>(n_zp), 1.0}), pd, n_zp);
}

double snr_required_cp(double pd, double pfa, int n) { return snr_required_zp(pd, pfa, n); }

double snr_required_zp(const RangeQuery& rq) {
    return required_snr(lambda_norm_zp(rq), rq.pd, rq.guard_size);
}

double snr_required_cp(const RangeQuery& rq) {
    return required_snr(lambda_norm_cp(rq), rq.pd, rq.fft_size + rq.guard_size);
}

double range_from_snr(const SystemConfig& cfg, double snr, const WaveformConfig& wf,
                      double rsi_ratio) {
    if (!(snr > 0.0)) throw std::invalid_argument("snr must be positive");
    const double s2 = noise_power(cfg);
    const double gain = wf.kind == WaveformKind::zp ? s2 * snr / wf.power_factor()
                                                    : s2 * (1.0 + rsi_ratio) * snr;
    return distance_for_gain(cfg, gain);
}

double delta_ratio(const RangeQuery& rq, const SystemConfig* cfg) {
    rq.validate();
    if (cfg) {
        const double d_zp = range_from_snr(*cfg, snr_required_zp(rq), rq.zp(), 0.0);
        const int l = delay_bins(d_zp, cfg->bandwidth_hz, cfg->propagation_speed);
        if (l <= 0 || l > rq.fft_size)
            throw std::domain_error("implied ZP delay " + std::to_string(l) +
                                    " outside (0, N_f]; range comparison not valid");
    }
    return delta_from(rq, rq.rsi_ratio);
}

EqualRange equal_range_rsi(const RangeQuery& rq) {
    rq.validate();
    if (delta_from(rq, 0.0) <= 1.0) return {};
    // delta = 1  <=>  1 + rho = rho_zp / (eta rho_cp(rho)).
    RangeQuery q = rq;
    q.rsi_ratio = 0.0;
    const double rz = snr_required_zp(q);
    double rho = rz / (q.power_factor() * snr_required_cp(q)) - 1.0;
    if (rq.cfar != Model::gaussian) return make_equal_range(rho);
    for (int it = 0; it < 500; ++it) {
        q.rsi_ratio = rho;
        const double next = rz / (q.power_factor() * snr_required_cp(q)) - 1.0;
        if (std::abs(next - rho) <= 1e-14 * (1.0 + rho)) return make_equal_range(next);
        rho = next;
    }
    return equal_range_rsi_bisect(rq);
}

EqualRange equal_range_rsi_bisect(const RangeQuery& rq) {
    rq.validate();
    double lo = 1e-6, hi = 1e6;
    if (delta_from(rq, lo) <= 1.0) return {};
    if (delta_from(rq, hi) > 1.0) throw std::domain_error("equal-range RSI above the search bracket");
    for (int it = 0; it < 400 && hi / lo - 1.0 > 1e-15; ++it) {
        const double mid = std::sqrt(lo * hi);
        if (delta_from(rq, mid) > 1.0)
            lo = mid;
        else
            hi = mid;
    }
    return make_equal_range(std::sqrt(lo * hi));
}

KldPair kld_compare(const ChannelScene& scene_zp, const WaveformConfig& wf_zp,
                    const ChannelScene& scene_cp, const WaveformConfig& wf_cp) {
    KldPair out;
    out.zp = kld_gaussian(gaussian_moments_zp(scene_zp.under(Hypothesis::h0), wf_zp),
                          gaussian_moments_zp(scene_zp.under(Hypothesis::h1), wf_zp));
    out.cp = kld_gaussian(gaussian_moments_cp(scene_cp.under(Hypothesis::h0), wf_cp).moments(),
                          gaussian_moments_cp(scene_cp.under(Hypothesis::h1), wf_cp).moments());
    return out;
}

ModelSelection model_select(const ChannelScene& scene, const WaveformConfig& wf,
                            const ModelThresholds& th) {
    constexpr double nan = std::numeric_limits<double>::quiet_NaN();
    ModelSelection sel;
    const ChannelScene h1 = scene.under(Hypothesis::h1);
    if (wf.kind == WaveformKind::cp) {
        sel.sigma_ratio = nan;
        sel.covariance_fraction = gaussian_moments_cp(h1, wf).covariance_fraction;
        const bool clutter = scene.clutter_gain_sq() > 0.0;
        sel.gamma_acceptable = !clutter && sel.covariance_fraction < th.covariance_fraction;
        sel.model = sel.gamma_acceptable ? Model::gamma : Model::gaussian;
        sel.reason = clutter ? "clutter present" : (sel.gamma_acceptable ? "covariance fraction below limit"
                                                                         : "covariance fraction above limit");
        return sel;
    }
    sel.covariance_fraction = nan;
    ZpEnergySplit split{GammaParams(1.0, 1.0), std::nullopt};
    try {
        split = energy_split(h1, wf);
    } catch (const std::invalid_argument& e) {
        sel.sigma_ratio = nan;
        sel.model = Model::gaussian;
        sel.reason = e.what();
        return sel;
    }
    sel.sigma_ratio = sigma_ratio(h1, wf);
    sel.gamma_acceptable = sel.sigma_ratio > th.sigma_ratio;
    if (split.noise_part) {
        try {
            const GaussianMoments m = gaussian_moments_zp(h1, wf);
            (void)pd_exact(m.mean, h1, wf);
        } catch (const ConvergenceError&) {
            sel.model = sel.gamma_acceptable ? Model::gamma : Model::gaussian;
            sel.reason = "sum-Gamma quadrature unstable";
            return sel;
        }
    }
    sel.model = Model::exact;
    sel.reason = split.noise_part ? "clutter-free, exact sum-Gamma stable" : "target fills the window";
    return sel;
}

double zp_pd_at_distance(const SystemConfig& cfg, const WaveformConfig& wf, double distance_m,
                         double pfa, Model cfar, Model pd_model) {
    const ChannelScene s = build_scene(cfg, wf, distance_m, 0.0, 0.0, {}, Hypothesis::h1);
    const double lambda = threshold_for_pfa_zp(pfa, s, wf, cfar);
    return pd_zp(lambda, s, wf, pd_model);
}

double pd_upper_bound(const SystemConfig& cfg, const WaveformConfig& reference, double distance_m,
                      double pfa, Model cfar) {
    const int l = delay_bins(distance_m, cfg.bandwidth_hz, cfg.propagation_speed);
    if (l <= 0 || l > reference.fft_size)
        throw std::domain_error("upper bound needs 0 < L_t <= N_f");
    const long fft = std::lround(static_cast<double>(l) * reference.fft_size / reference.guard_size);
    const WaveformConfig wf{WaveformKind::zp, static_cast<int>(std::max(fft, static_cast<long>(l))), l, 0};
    return zp_pd_at_distance(cfg, wf, distance_m, pfa, cfar, Model::exact);
}

double find_crossing(const std::function<double(double)>& f, double lo, double hi, double target,
                     double tol) {
    if (!(f(lo) >= target && f(hi) <= target))
        throw std::domain_error("crossing not bracketed");
    while (hi - lo > tol) {
        const double mid = 0.5 * (lo + hi);
        if (f(mid) >= target)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

}  // namespace isac
