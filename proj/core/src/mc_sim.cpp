#include "isac/mc_sim.h"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <thread>

namespace isac {
namespace {

constexpr long kChunk = 256;

int resolve_workers(int workers, long trials) {
    long w = workers > 0 ? workers : static_cast<long>(std::thread::hardware_concurrency());
    w = std::clamp(w, 1L, std::max(1L, (trials + kChunk - 1) / kChunk));
    return static_cast<int>(w);
}

// Runs body(i) for every trial index; each index writes only its own slot, so
// the result does not depend on how chunks land on workers.
template <class Body>
void for_each_trial(long trials, int workers, Body body) {
    const int w = resolve_workers(workers, trials);
    std::atomic<long> next{0};
    auto run = [&] {
        for (;;) {
            const long begin = next.fetch_add(kChunk);
            if (begin >= trials) return;
            const long end = std::min(trials, begin + kChunk);
            for (long i = begin; i < end; ++i) body(i);
        }
    };
    if (w == 1) {
        run();
        return;
    }
    std::vector<std::thread> pool;
    for (int t = 0; t < w; ++t) pool.emplace_back(run);
    for (auto& th : pool) th.join();
}

Sample complex_normal(TrialRng& rng, double variance) {
    const double s = std::sqrt(0.5 * variance);
    const double re = rng.normal();
    const double im = rng.normal();
    return {s * re, s * im};
}

// All random draws of one trial, in a fixed order: stream, tap phases, noise.
struct TrialDraw {
    std::vector<Sample> stream;
    std::vector<Sample> taps;  // h_j including phase; target tap at unit amplitude
    std::vector<Sample> noise;
};

TrialDraw draw_trial(const UnifiedChannel& ch, const WaveformConfig& wf, double noise_power,
                     TrialRng& rng) {
    TrialDraw d;
    d.stream = gen_symbol_stream(wf, rng);
    d.taps.reserve(ch.size());
    for (std::size_t j = 0; j < ch.size(); ++j) {
        const double phi = 2.0 * std::numbers::pi * rng.uniform();
        const double amp = j + 1 == ch.size() ? 1.0 : std::sqrt(ch[j].gain_sq);
        d.taps.push_back(std::polar(amp, phi));
    }
    const int n = wf.total();
    d.noise.resize(n);
    for (int i = 0; i < n; ++i) d.noise[i] = complex_normal(rng, noise_power);
    return d;
}

void check_delays(const UnifiedChannel& ch, const WaveformConfig& wf) {
    for (const auto& t : ch)
        if (t.delay < 0 || t.delay >= 2 * wf.total())
            throw std::invalid_argument("delay outside the simulated stream coverage (0 <= L < 2N)");
}

// Interference-plus-noise part u and unit target echo v over the window.
void window_parts(const TrialDraw& d, const UnifiedChannel& ch, const WaveformConfig& wf,
                  const Window& w, std::vector<Sample>& u, std::vector<Sample>& v) {
    const int base = 2 * wf.total();
    u.assign(w.length, Sample{});
    v.assign(w.length, Sample{});
    for (int n = 0; n < w.length; ++n) u[n] = d.noise[w.start + n];
    for (std::size_t j = 0; j + 1 < ch.size(); ++j) {
        if (ch[j].gain_sq == 0.0) continue;
        const Sample h = d.taps[j];
        const Sample* x = d.stream.data() + base + w.start - ch[j].delay;
        for (int n = 0; n < w.length; ++n) u[n] += h * x[n];
    }
    const Sample* xt = d.stream.data() + base + w.start - ch.back().delay;
    for (int n = 0; n < w.length; ++n) v[n] = xt[n];
}

}  // namespace

std::vector<Sample> gen_symbol_stream(const WaveformConfig& wf, TrialRng& rng) {
    wf.validate();
    const int n = wf.total(), nf = wf.fft_size, ng = wf.guard_size;
    std::vector<Sample> s(3 * static_cast<std::size_t>(n));
    for (int sym = 0; sym < 3; ++sym) {
        Sample* x = s.data() + sym * n;
        if (wf.kind == WaveformKind::zp) {
            const double eta = wf.power_factor();
            for (int p = 0; p < nf; ++p) x[p] = complex_normal(rng, eta);
        } else {
            for (int p = ng; p < n; ++p) x[p] = complex_normal(rng, 1.0);
            for (int p = 0; p < ng; ++p) x[p] = x[p + nf];
        }
    }
    return s;
}

std::vector<Sample> apply_channel(const std::vector<Sample>& stream, const ChannelScene& scene,
                                  const WaveformConfig& wf, Hypothesis hypothesis, TrialRng& rng) {
    const UnifiedChannel ch = unified_channel(scene.under(hypothesis));
    check_delays(ch, wf);
    const int n = wf.total();
    if (stream.size() != 3 * static_cast<std::size_t>(n))
        throw std::invalid_argument("stream must span three symbols");
    std::vector<Sample> taps;
    for (const auto& t : ch)
        taps.push_back(std::polar(std::sqrt(t.gain_sq), 2.0 * std::numbers::pi * rng.uniform()));
    std::vector<Sample> y(n);
    for (int i = 0; i < n; ++i) y[i] = complex_normal(rng, scene.noise_power);
    for (std::size_t j = 0; j < ch.size(); ++j) {
        if (ch[j].gain_sq == 0.0) continue;
        const Sample* x = stream.data() + 2 * n - ch[j].delay;
        for (int i = 0; i < n; ++i) y[i] += taps[j] * x[i];
    }
    return y;
}

double decision_stat(const std::vector<Sample>& received, const Window& window) {
    if (window.length <= 0) throw std::invalid_argument("empty window");
    if (window.start < 0 || window.start + window.length > static_cast<int>(received.size()))
        throw std::invalid_argument("window outside the received block");
    double acc = 0.0;
    for (int n = 0; n < window.length; ++n) acc += std::norm(received[window.start + n]);
    return acc / window.length;
}

TrialSamples simulate_statistics(const ChannelScene& scene, const WaveformConfig& wf, long trials,
                                 std::uint64_t master_seed, int workers) {
    if (trials < 1) throw std::invalid_argument("trials must be >= 1");
    scene.validate();
    const UnifiedChannel ch = unified_channel(scene.under(Hypothesis::h1));
    check_delays(ch, wf);
    const Window w = detection_window(wf);
    const double ht = std::sqrt(scene.target_gain_sq);
    TrialSamples out;
    out.h0.resize(trials);
    out.h1.resize(trials);
    for_each_trial(trials, workers, [&](long i) {
        TrialRng rng(trial_seed(master_seed, static_cast<std::uint64_t>(i)));
        const TrialDraw d = draw_trial(ch, wf, scene.noise_power, rng);
        std::vector<Sample> u, v;
        window_parts(d, ch, wf, w, u, v);
        const Sample h = ht * d.taps.back();
        double z0 = 0.0, z1 = 0.0;
        for (int n = 0; n < w.length; ++n) {
            z0 += std::norm(u[n]);
            z1 += std::norm(u[n] + h * v[n]);
        }
        out.h0[i] = z0 / w.length;
        out.h1[i] = z1 / w.length;
    });
    return out;
}

std::vector<EmpiricalEstimate> exceedance(const std::vector<double>& samples,
                                          const std::vector<double>& thresholds) {
    std::vector<double> sorted = samples;
    std::sort(sorted.begin(), sorted.end());
    const long n = static_cast<long>(sorted.size());
    std::vector<EmpiricalEstimate> out;
    for (double t : thresholds) {
        const long above = n - (std::upper_bound(sorted.begin(), sorted.end(), t) - sorted.begin());
        const double p = n ? static_cast<double>(above) / n : 0.0;
        out.push_back({t, p, n ? std::sqrt(p * (1.0 - p) / n) : 0.0, n});
    }
    return out;
}

SampleMoments sample_moments(const std::vector<double>& samples) {
    SampleMoments m;
    m.n = static_cast<long>(samples.size());
    if (m.n < 2) throw std::invalid_argument("need at least two samples");
    long double sum = 0.0L;
    for (double x : samples) sum += x;
    const long double mean = sum / m.n;
    long double m2 = 0.0L, m4 = 0.0L;
    for (double x : samples) {
        const long double d = x - mean;
        m2 += d * d;
        m4 += d * d * d * d;
    }
    m.mean = static_cast<double>(mean);
    m.variance = static_cast<double>(m2 / (m.n - 1));
    m.mean_se = std::sqrt(m.variance / m.n);
    const double c2 = static_cast<double>(m2 / m.n), c4 = static_cast<double>(m4 / m.n);
    m.variance_se = std::sqrt(std::max(0.0, c4 - c2 * c2) / m.n);
    return m;
}

PlanResult run_plan(const TrialPlan& plan) {
    if (!std::is_sorted(plan.thresholds.begin(), plan.thresholds.end()))
        throw std::invalid_argument("thresholds must be ascending");
    const TrialSamples s =
        simulate_statistics(plan.scene, plan.waveform, plan.trials, plan.master_seed, plan.workers);
    PlanResult r;
    r.pfa = exceedance(s.h0, plan.thresholds);
    r.pd = exceedance(s.h1, plan.thresholds);
    r.h0 = sample_moments(s.h0);
    r.h1 = sample_moments(s.h1);
    return r;
}

std::vector<RocPoint> empirical_roc(const TrialPlan& plan) {
    const TrialSamples s =
        simulate_statistics(plan.scene, plan.waveform, plan.trials, plan.master_seed, plan.workers);
    std::vector<double> th = plan.thresholds;
    if (th.empty()) {
        const auto [lo0, hi0] = std::minmax_element(s.h0.begin(), s.h0.end());
        const auto [lo1, hi1] = std::minmax_element(s.h1.begin(), s.h1.end());
        const double lo = std::min(*lo0, *lo1), hi = std::max(*hi0, *hi1);
        constexpr int points = 400;
        for (int i = 0; i <= points; ++i) th.push_back(lo + (hi - lo) * i / points);
        th.front() = std::nextafter(lo, -std::numeric_limits<double>::infinity());  // (1, 1) corner
    }
    std::sort(th.begin(), th.end());
    const auto pf = exceedance(s.h0, th);
    const auto pd = exceedance(s.h1, th);
    std::vector<RocPoint> out;
    for (std::size_t i = 0; i < th.size(); ++i) out.push_back({th[i], pf[i].rate, pd[i].rate});
    return out;
}

double TargetQuadratic::at(double gain_sq) const {
    const double a = std::sqrt(gain_sq);
    return a0 + 2.0 * a * b + gain_sq * c;
}

std::vector<TargetQuadratic> simulate_target_quadratics(const ChannelScene& scene,
                                                        const WaveformConfig& wf, long trials,
                                                        std::uint64_t master_seed, int workers) {
    if (trials < 1) throw std::invalid_argument("trials must be >= 1");
    scene.validate();
    const UnifiedChannel ch = unified_channel(scene.under(Hypothesis::h1));
    check_delays(ch, wf);
    const Window w = detection_window(wf);
    std::vector<TargetQuadratic> out(trials);
    for_each_trial(trials, workers, [&](long i) {
        TrialRng rng(trial_seed(master_seed, static_cast<std::uint64_t>(i)));
        const TrialDraw d = draw_trial(ch, wf, scene.noise_power, rng);
        std::vector<Sample> u, v;
        window_parts(d, ch, wf, w, u, v);
        const Sample rot = d.taps.back();
        double a0 = 0.0, b = 0.0, c = 0.0;
        for (int n = 0; n < w.length; ++n) {
            a0 += std::norm(u[n]);
            b += std::real(rot * v[n] * std::conj(u[n]));
            c += std::norm(v[n]);
        }
        out[i] = {a0 / w.length, b / w.length, c / w.length};
    });
    return out;
}

double empirical_pd_at_gain(const std::vector<TargetQuadratic>& q, double gain_sq, double lambda) {
    long above = 0;
    for (const auto& t : q)
        if (t.at(gain_sq) > lambda) ++above;
    return q.empty() ? 0.0 : static_cast<double>(above) / q.size();
}

double gain_for_empirical_pd(const std::vector<TargetQuadratic>& q, double lambda, double pd,
                             double lo, double hi) {
    if (!(lo > 0.0 && hi > lo)) throw std::invalid_argument("gain bracket must satisfy 0 < lo < hi");
    if (empirical_pd_at_gain(q, lo, lambda) >= pd || empirical_pd_at_gain(q, hi, lambda) < pd)
        throw std::domain_error("empirical PD target not bracketed by the gain interval");
    for (int it = 0; it < 200 && hi / lo - 1.0 > 1e-12; ++it) {
        const double mid = std::sqrt(lo * hi);
        if (empirical_pd_at_gain(q, mid, lambda) >= pd)
            hi = mid;
        else
            lo = mid;
    }
    return hi;
}

}  // namespace isac
