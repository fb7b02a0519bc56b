#include "isac/stream_counts.h"

#include <algorithm>
#include <stdexcept>
#include <utility>

namespace isac {
namespace {

int floor_div(int a, int b) {
    int q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

// Data-sample id carried by stream index i (current symbol occupies [0, N),
// the two previous symbols [-2N, 0)). Returns -1 for a padded zero.
int data_id(int i, const WaveformConfig& wf) {
    const int n = wf.total();
    const int k = floor_div(i, n);
    int p = i - k * n;
    if (wf.kind == WaveformKind::zp) {
        if (p >= wf.fft_size) return -1;
    } else if (p < wf.guard_size) {
        p += wf.fft_size;  // cyclic prefix repeats the symbol tail
    }
    return (k + 2) * n + p;
}

}  // namespace

UnifiedChannel unified_channel(const ChannelScene& scene) {
    UnifiedChannel ch;
    ch.push_back({scene.rsi_gain_sq(), 0});
    const double gc = scene.clutter_gain_sq();
    for (int d : scene.clutter_delays) ch.push_back({gc, d});
    ch.push_back({scene.effective_target_gain_sq(), scene.target_delay});
    return ch;
}

Window detection_window(const WaveformConfig& wf) {
    wf.validate();
    if (wf.kind == WaveformKind::cp) return {0, wf.total()};
    return {wf.fft_size + wf.sample_shift, wf.guard_size - wf.sample_shift};
}

long long StreamCounts::cross_weight(std::size_t j, std::size_t k) const {
    const long long d = diag_counts.at(j, k);
    return pair_counts.at(j, k) + d * d + joint_dup_counts.at(j, k);
}

StreamCounts count_stream(const std::vector<int>& delays, const WaveformConfig& wf) {
    const Window w = detection_window(wf);
    const int n_total = wf.total();
    const std::size_t taps = delays.size();
    for (int d : delays)
        if (d < 0 || d >= 2 * n_total)
            throw std::invalid_argument("delay outside the three-symbol stream coverage");

    // ids[j][n]: data sample seen by tap j at window position n.
    std::vector<std::vector<int>> ids(taps, std::vector<int>(w.length));
    for (std::size_t j = 0; j < taps; ++j)
        for (int n = 0; n < w.length; ++n) ids[j][n] = data_id(w.start + n - delays[j], wf);

    StreamCounts out;
    out.window = w;
    out.mean_counts.assign(taps, 0);
    out.overlap_counts = CountMatrix(taps);
    out.pair_counts = CountMatrix(taps);
    out.diag_counts = CountMatrix(taps);
    out.joint_dup_counts = CountMatrix(taps);
    out.self_counts.assign(taps, 0);

    const int id_range = 3 * n_total;
    std::vector<std::vector<int>> hist(taps, std::vector<int>(id_range, 0));
    for (std::size_t j = 0; j < taps; ++j)
        for (int id : ids[j])
            if (id >= 0) {
                ++hist[j][id];
                ++out.mean_counts[j];
            }

    for (std::size_t j = 0; j < taps; ++j) {
        for (std::size_t k = j; k < taps; ++k) {
            long long overlap = 0, diag = 0, pairs = 0;
            for (int n = 0; n < w.length; ++n) {
                const int a = ids[j][n];
                if (a < 0) continue;
                pairs += hist[k][a];
                const int b = ids[k][n];
                if (b < 0) continue;
                ++overlap;
                if (a == b) ++diag;
            }
            out.overlap_counts.at(j, k) = out.overlap_counts.at(k, j) = overlap;
            out.diag_counts.at(j, k) = out.diag_counts.at(k, j) = diag;
            out.pair_counts.at(j, k) = out.pair_counts.at(k, j) = pairs;
        }
    }

    // Repeated samples within one tap (CP duplication) and their joint occurrences.
    for (std::size_t j = 0; j < taps; ++j) {
        std::vector<std::pair<int, int>> by_id;
        for (int n = 0; n < w.length; ++n)
            if (ids[j][n] >= 0 && hist[j][ids[j][n]] > 1) by_id.emplace_back(ids[j][n], n);
        std::sort(by_id.begin(), by_id.end());
        std::vector<std::pair<int, int>> dup_pairs;
        for (std::size_t a = 0; a < by_id.size(); ++a)
            for (std::size_t b = a + 1; b < by_id.size() && by_id[b].first == by_id[a].first; ++b)
                dup_pairs.emplace_back(by_id[a].second, by_id[b].second);
        out.self_counts[j] = static_cast<long long>(dup_pairs.size());
        for (std::size_t k = j + 1; k < taps; ++k) {
            long long q = 0;
            for (auto [n, m] : dup_pairs)
                if (ids[k][n] >= 0 && ids[k][n] == ids[k][m]) q += 2;  // ordered (n,m), (m,n)
            out.joint_dup_counts.at(j, k) = out.joint_dup_counts.at(k, j) = q;
        }
    }
    return out;
}

GaussianMoments stream_moments(const UnifiedChannel& channel, const WaveformConfig& wf,
                               double noise_power) {
    std::vector<int> delays;
    for (const auto& t : channel) delays.push_back(t.delay);
    const StreamCounts c = count_stream(delays, wf);
    const double v = wf.kind == WaveformKind::zp ? wf.power_factor() : 1.0;
    const double w = c.window.length;
    const double s2 = noise_power;
    const std::size_t taps = channel.size();

    double mean_sum = 0.0;     // sum_n (mu_n - sigma^2) / v
    double mu_sq_cross = 0.0;  // sum_{j,k} g_j g_k O_jk
    double cov = 0.0;          // covariance counts, already doubled for ordered pairs
    for (std::size_t j = 0; j < taps; ++j) {
        const double gj = channel[j].gain_sq;
        mean_sum += gj * c.mean_counts[j];
        mu_sq_cross += gj * gj * c.overlap_counts.at(j, j);
        cov += 2.0 * gj * gj * c.self_counts[j];
        for (std::size_t k = j + 1; k < taps; ++k) {
            const double gg = gj * channel[k].gain_sq;
            mu_sq_cross += 2.0 * gg * c.overlap_counts.at(j, k);
            cov += 2.0 * gg * c.cross_weight(j, k);
        }
    }
    const double mean = s2 + v * mean_sum / w;
    // sum_n mu_n^2 = W s2^2 + 2 s2 v sum_j g_j M_j + v^2 sum_{j,k} g_j g_k O_jk
    const double sum_mu_sq = w * s2 * s2 + 2.0 * s2 * v * mean_sum + v * v * mu_sq_cross;
    const double variance = (sum_mu_sq + v * v * cov) / (w * w);
    return {mean, variance};
}

}  // namespace isac
