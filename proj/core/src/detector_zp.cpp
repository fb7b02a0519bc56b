#include "isac/detector_zp.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace isac {
namespace {

void require_zp(const WaveformConfig& wf) {
    wf.validate();
    if (wf.kind != WaveformKind::zp) throw std::invalid_argument("ZP waveform required");
}

// True when no RSI or clutter energy lands inside the window.
bool interference_free_window(const ChannelScene& scene, const WaveformConfig& wf) {
    const UnifiedChannel ch = unified_channel(scene);
    std::vector<int> delays;
    for (const auto& t : ch) delays.push_back(t.delay);
    const StreamCounts c = count_stream(delays, wf);
    for (std::size_t j = 0; j + 1 < ch.size(); ++j)
        if (ch[j].gain_sq > 0.0 && c.mean_counts[j] > 0) return false;
    return true;
}

GammaParams h0_gamma(const ChannelScene& scene, const WaveformConfig& wf) {
    const double w = zp_window(wf).length;
    return {w, scene.noise_power / w};
}

}  // namespace

Window zp_window(const WaveformConfig& wf) {
    require_zp(wf);
    return detection_window(wf);
}

ZpEnergySplit energy_split(const ChannelScene& scene, const WaveformConfig& wf) {
    require_zp(wf);
    scene.validate();
    if (wf.sample_shift != 0)
        throw std::invalid_argument("energy split requires sample_shift = 0; use the Gaussian path");
    if (scene.clutter_gain_sq() > 0.0)
        throw std::invalid_argument("energy split requires a clutter-free scene; use the Gaussian path");
    if (scene.target_delay <= 0 || scene.target_delay > wf.fft_size)
        throw std::invalid_argument("energy split requires 0 < L_t <= N_f");
    const int nzp = wf.guard_size;
    const int kt = std::min(scene.target_delay, nzp);
    const double s2 = scene.noise_power;
    const double theta_t = (scene.effective_target_gain_sq() * wf.power_factor() + s2) / nzp;
    const double theta_w = s2 / nzp;
    ZpEnergySplit out{GammaParams(kt, theta_t), std::nullopt};
    if (kt < nzp) out.noise_part = GammaParams(nzp - kt, theta_w);
    return out;
}

double pd_exact(double lambda, const ChannelScene& scene, const WaveformConfig& wf) {
    const ZpEnergySplit e = energy_split(scene, wf);
    if (!e.noise_part) return gamma_sf(lambda, e.signal_part);
    if (e.signal_part.scale == e.noise_part->scale)
        return gamma_sf(lambda, {static_cast<double>(wf.guard_size), e.signal_part.scale});
    return 1.0 - sum_gamma_cdf(lambda, {e.signal_part, *e.noise_part});
}

double sigma_ratio(const ChannelScene& scene, const WaveformConfig& wf) {
    const ZpEnergySplit e = energy_split(scene, wf);
    if (!e.noise_part) return std::numeric_limits<double>::infinity();
    const double st = e.signal_part.scale, sw = e.noise_part->scale;
    return std::sqrt(st * st * e.signal_part.shape / (sw * sw * e.noise_part->shape));
}

double pd_gamma(double lambda, const ChannelScene& scene, const WaveformConfig& wf) {
    return gamma_sf(lambda, energy_split(scene, wf).signal_part);
}

long long count_mean_zp(int delay, const WaveformConfig& wf) {
    require_zp(wf);
    const long long ds = wf.sample_shift, l = delay, nzp = wf.guard_size, nf = wf.fft_size;
    if (ds < l - nzp - nf) return -ds;
    return std::max(std::min(-ds + std::min(l, nzp), std::min(-l + nzp, 0LL) + nf), 0LL);
}

long long count_cov_zp(int delay_j, int delay_jp, const WaveformConfig& wf) {
    require_zp(wf);
    const long long ds = wf.sample_shift, lj = delay_j, ljp = delay_jp;
    const long long nzp = wf.guard_size, nf = wf.fft_size;
    const long long left = std::max(nzp + lj + std::min({-ds, nf - ljp, 0LL}), 0LL);
    const long long right = std::max({lj, std::min(ds, nf - lj), 0LL});
    return std::min(left, right);
}

ZpCounts oracle_counts_zp(const UnifiedChannel& channel, const WaveformConfig& wf) {
    require_zp(wf);
    std::vector<int> delays;
    for (const auto& t : channel) delays.push_back(t.delay);
    const StreamCounts c = count_stream(delays, wf);
    ZpCounts out{c.mean_counts, CountMatrix(delays.size())};
    for (std::size_t j = 0; j < delays.size(); ++j)
        for (std::size_t k = 0; k < delays.size(); ++k)
            out.cross.at(j, k) = j == k ? 0 : c.cross_weight(j, k);
    return out;
}

GaussianMoments gaussian_moments_zp(const ChannelScene& scene, const WaveformConfig& wf) {
    require_zp(wf);
    scene.validate();
    return stream_moments(unified_channel(scene), wf, scene.noise_power);
}

double pd_gaussian_zp(double lambda, const ChannelScene& scene, const WaveformConfig& wf) {
    return gaussian_sf(lambda, gaussian_moments_zp(scene, wf));
}

double pd_zp(double lambda, const ChannelScene& scene, const WaveformConfig& wf, Model model) {
    switch (model) {
        case Model::exact: return pd_exact(lambda, scene, wf);
        case Model::gamma: return pd_gamma(lambda, scene, wf);
        case Model::gaussian: return pd_gaussian_zp(lambda, scene, wf);
    }
    throw std::invalid_argument("unknown model");
}

double pfa_zp(double lambda, const ChannelScene& scene, const WaveformConfig& wf, Model model) {
    require_zp(wf);
    const ChannelScene h0 = scene.under(Hypothesis::h0);
    if (model == Model::gaussian) return gaussian_sf(lambda, gaussian_moments_zp(h0, wf));
    if (!interference_free_window(h0, wf))
        throw std::invalid_argument("Gamma H0 law needs an interference-free window");
    return gamma_sf(lambda, h0_gamma(h0, wf));
}

double threshold_for_pfa_zp(double pfa, const ChannelScene& scene, const WaveformConfig& wf,
                            Model model) {
    require_zp(wf);
    if (!(pfa > 0.0 && pfa < 1.0)) throw std::invalid_argument("pfa must lie in (0, 1)");
    const ChannelScene h0 = scene.under(Hypothesis::h0);
    if (model == Model::gaussian) {
        const GaussianMoments m = gaussian_moments_zp(h0, wf);
        return m.mean - m.stddev() * normal_quantile(pfa);
    }
    if (!interference_free_window(h0, wf))
        throw std::invalid_argument("Gamma H0 law needs an interference-free window");
    return gamma_inv_sf(pfa, h0_gamma(h0, wf));
}

}  // namespace isac
