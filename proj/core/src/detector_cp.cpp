#include "isac/detector_cp.h"

#include <algorithm>
#include <stdexcept>

namespace isac {
namespace {

void require_cp(const WaveformConfig& wf) {
    wf.validate();
    if (wf.kind != WaveformKind::cp) throw std::invalid_argument("CP waveform required");
}

CpMomentBreakdown breakdown(double mean, double variance, int n) {
    CpMomentBreakdown b;
    b.mean = mean;
    b.variance = variance;
    b.covariance_fraction = variance > 0.0 ? 1.0 - mean * mean / (variance * n) : 0.0;
    return b;
}

}  // namespace

GammaParams gamma_params_cp(const ChannelScene& scene, const WaveformConfig& wf) {
    require_cp(wf);
    scene.validate();
    if (scene.clutter_gain_sq() > 0.0)
        throw std::invalid_argument("CP Gamma law does not model clutter; use the Gaussian path");
    const double n = wf.total();
    return {n, (scene.rsi_gain_sq() + scene.effective_target_gain_sq() + scene.noise_power) / n};
}

double pd_gamma_cp(double lambda, const ChannelScene& scene, const WaveformConfig& wf) {
    return gamma_sf(lambda, gamma_params_cp(scene, wf));
}

long long count_cov_cp_self(int delay, const WaveformConfig& wf) {
    require_cp(wf);
    const long long l = delay;
    return std::max(wf.guard_size - l, 0LL) + std::max(l - wf.fft_size, 0LL);
}

long long count_cov_cp_cross(int delay_j, int delay_jp, const WaveformConfig& wf) {
    require_cp(wf);
    const long long lj = delay_j, ljp = delay_jp;
    const long long ng = wf.guard_size, nf = wf.fft_size, n = wf.total();
    return std::min(n - ljp, ng) + std::max(nf - ljp, 0LL) + 2 * std::max(ng - ljp, 0LL) +
           std::max(std::min(2 * (ng - lj) + nf - ljp, ng - lj), 0LL) + lj;
}

CpCounts cp_stream_oracle(const UnifiedChannel& channel, const WaveformConfig& wf) {
    require_cp(wf);
    std::vector<int> delays;
    for (const auto& t : channel) delays.push_back(t.delay);
    const StreamCounts c = count_stream(delays, wf);
    CpCounts out{CountMatrix(delays.size()), c.self_counts};
    for (std::size_t j = 0; j < delays.size(); ++j)
        for (std::size_t k = 0; k < delays.size(); ++k)
            out.cross.at(j, k) = j == k ? 0 : c.cross_weight(j, k);
    return out;
}

CpMomentBreakdown gaussian_moments_cp(const ChannelScene& scene, const WaveformConfig& wf) {
    require_cp(wf);
    scene.validate();
    const GaussianMoments m = stream_moments(unified_channel(scene), wf, scene.noise_power);
    return breakdown(m.mean, m.variance, wf.total());
}

CpMomentBreakdown gaussian_moments_cp_closed_form(const ChannelScene& scene,
                                                  const WaveformConfig& wf) {
    require_cp(wf);
    scene.validate();
    const UnifiedChannel ch = unified_channel(scene);
    const double n = wf.total();
    double mean = scene.noise_power;
    for (const auto& t : ch) mean += t.gain_sq;
    double var = mean * mean / n;
    for (std::size_t j = 0; j < ch.size(); ++j) {
        const double gj = ch[j].gain_sq;
        var += 2.0 / (n * n) * count_cov_cp_self(ch[j].delay, wf) * gj * gj;
        for (std::size_t k = j + 1; k < ch.size(); ++k) {
            const int a = std::min(ch[j].delay, ch[k].delay), b = std::max(ch[j].delay, ch[k].delay);
            var += 2.0 / (n * n) * count_cov_cp_cross(a, b, wf) * gj * ch[k].gain_sq;
        }
    }
    return breakdown(mean, var, wf.total());
}

double pd_gaussian_cp(double lambda, const ChannelScene& scene, const WaveformConfig& wf) {
    return gaussian_sf(lambda, gaussian_moments_cp(scene, wf).moments());
}

double pd_cp(double lambda, const ChannelScene& scene, const WaveformConfig& wf, Model model) {
    if (model == Model::gaussian) return pd_gaussian_cp(lambda, scene, wf);
    return pd_gamma_cp(lambda, scene, wf);
}

double pfa_cp(double lambda, const ChannelScene& scene, const WaveformConfig& wf, Model model) {
    return pd_cp(lambda, scene.under(Hypothesis::h0), wf, model);
}

double threshold_for_pfa_cp(double pfa, const ChannelScene& scene, const WaveformConfig& wf,
                            Model model) {
    if (!(pfa > 0.0 && pfa < 1.0)) throw std::invalid_argument("pfa must lie in (0, 1)");
    const ChannelScene h0 = scene.under(Hypothesis::h0);
    if (model == Model::gaussian) {
        const GaussianMoments m = gaussian_moments_cp(h0, wf).moments();
        return m.mean - m.stddev() * normal_quantile(pfa);
    }
    return gamma_inv_sf(pfa, gamma_params_cp(h0, wf));
}

}  // namespace isac
