#pragma once

// Brute-force mean and variance of the windowed energy statistic, by expanding
// E[|y_n|^2 |y_m|^2] over tap quadruples with Isserlis' theorem. Independent of
// the count bookkeeping in core; only practical for small waveforms.

#include <cstddef>
#include <vector>

#include "isac/scene.h"
#include "isac/stats.h"
#include "isac/stream_counts.h"

namespace oracle {

struct Term {
    double amp_sq = 0.0;  // tap power
    long long id = -1;    // data or noise sample id, -1 for zero
    double var = 0.0;     // variance of that sample
};

// Sample at stream index i in [-2N, N); -1 when the ZP guard is zero.
inline long long stream_id(int i, const isac::WaveformConfig& wf) {
    const int n = wf.total();
    const int block = (i + 2 * n) / n;  // 0, 1, 2
    int p = (i + 2 * n) % n;
    if (wf.kind == isac::WaveformKind::zp) return p < wf.fft_size ? block * n + p : -1;
    if (p < wf.guard_size) p += wf.fft_size;
    return block * n + p;
}

inline isac::GaussianMoments energy_moments(const isac::UnifiedChannel& ch,
                                            const isac::WaveformConfig& wf, double s2) {
    const isac::Window w = isac::detection_window(wf);
    const double data_var = wf.kind == isac::WaveformKind::zp ? wf.power_factor() : 1.0;
    const std::size_t taps = ch.size();
    // terms[n][t]: tap t (last one is noise) at window position n
    std::vector<std::vector<Term>> terms(w.length);
    for (int n = 0; n < w.length; ++n) {
        for (const auto& tap : ch) {
            const long long id = stream_id(w.start + n - tap.delay, wf);
            terms[n].push_back({tap.gain_sq, id, id < 0 ? 0.0 : data_var});
        }
        terms[n].push_back({1.0, 1000000 + n, s2});
    }
    const std::size_t t_all = taps + 1;
    auto cov = [](const Term& a, const Term& b) { return a.id >= 0 && a.id == b.id ? a.var : 0.0; };
    // Each tap, noise included, carries an independent uniform phase.
    auto phase = [&](std::size_t j, std::size_t k, std::size_t l, std::size_t p) {
        if ((j == k && l == p) || (j == p && l == k)) return 1.0;
        return 0.0;
    };
    double mean = 0.0;
    for (int n = 0; n < w.length; ++n)
        for (std::size_t j = 0; j < t_all; ++j) mean += terms[n][j].amp_sq * cov(terms[n][j], terms[n][j]);
    double second = 0.0;
    for (int n = 0; n < w.length; ++n)
        for (int m = 0; m < w.length; ++m)
            for (std::size_t j = 0; j < t_all; ++j)
                for (std::size_t k = 0; k < t_all; ++k)
                    for (std::size_t l = 0; l < t_all; ++l)
                        for (std::size_t p = 0; p < t_all; ++p) {
                            if (phase(j, k, l, p) == 0.0) continue;
                            const Term &a = terms[n][j], &b = terms[n][k], &c = terms[m][l],
                                       &d = terms[m][p];
                            // amplitudes: sqrt(g_j g_k g_l g_p); phase pairing makes this g g'
                            const double amp = (j == k) ? a.amp_sq * c.amp_sq : a.amp_sq * b.amp_sq;
                            second += amp * (cov(a, b) * cov(c, d) + cov(a, d) * cov(c, b));
                        }
    const double wl = w.length;
    return {mean / wl, (second - mean * mean) / (wl * wl)};
}

}  // namespace oracle
