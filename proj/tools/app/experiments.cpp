#include "experiments.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <map>
#include <sstream>

#include "isac/detector_cp.h"
#include "isac/detector_zp.h"
#include "isac/mc_sim.h"
#include "isac/stats.h"
#include "isac/tradeoff.h"

namespace isac::app {
namespace {

constexpr double kNan = std::numeric_limits<double>::quiet_NaN();

const std::map<std::string, std::vector<std::string>>& headers() {
    static const std::map<std::string, std::vector<std::string>> h = {
        {"validate-zp", {"threshold_over_sigma2", "pd_exact", "pd_gamma", "pd_gaussian", "pd_sim", "sim_stderr"}},
        {"validate-cp",
         {"threshold_norm", "pd_gamma", "pd_gaussian", "pd_sim", "sim_stderr", "covariance_fraction"}},
        {"upper-bound", {"kind", "guard_size", "fft_size", "distance_m", "delay_bins", "pd_fixed", "pd_upper_bound"}},
        {"range-ratio",
         {"guard_size", "fft_size", "overhead", "rsi_db", "delta", "equal_range_rsi_db", "delta_sim"}},
        {"range-curves", {"kind", "waveform", "rsi_db", "distance_m", "delay_bins", "pd"}},
        {"clutter", {"panel", "source", "kind", "sample_shift", "rsi_db", "rci_db", "x", "y"}},
        {"conformance",
         {"quantity", "fft_size", "guard_size", "sample_shift", "delay_j", "delay_k", "formula", "oracle", "match"}},
    };
    return h;
}

struct Context {
    const Scenario& sc;
    SystemConfig cfg;
    long trials;
    std::uint64_t seed;
    std::string model;
    int workers;

    Context(const Scenario& s, const RunOptions& o)
        : sc(s),
          cfg(s.system.config()),
          trials(o.trials.value_or(s.sim.trials)),
          seed(o.seed.value_or(s.sim.seed)),
          model(o.model.value_or(s.detect.model)),
          workers(o.workers) {}

    double rsi() const { return db_to_linear(sc.channel.rsi_db); }
    double rci() const { return db_to_linear(sc.channel.clutter_total_db); }

    ChannelScene scene(const WaveformConfig& wf, double rsi_ratio, double rci_ratio,
                       std::vector<int> clutter) const {
        if (sc.channel.target_delay_bins)
            return build_scene_at_delay(cfg, wf, *sc.channel.target_delay_bins, rsi_ratio, rci_ratio,
                                        std::move(clutter), Hypothesis::h1);
        return build_scene(cfg, wf, *sc.channel.target_distance_m, rsi_ratio, rci_ratio, std::move(clutter),
                           Hypothesis::h1);
    }
    ChannelScene scene(const WaveformConfig& wf) const {
        return scene(wf, rsi(), rci(), sc.channel.clutter_delays);
    }

    double pfa() const {
        if (!sc.detect.pfa) throw ScenarioError("detect.pfa", 0, "this experiment needs a false-alarm rate");
        return *sc.detect.pfa;
    }

    Model pd_model(const ChannelScene& s, const WaveformConfig& wf) const {
        if (model == "auto") return model_select(s, wf).model;
        return parse_model(model);
    }

    // (fft, guard) pairs from the sweep, falling back to the waveform section.
    std::vector<std::pair<int, int>> sizes() const {
        std::vector<std::pair<int, int>> out;
        if (sc.sweep.guard_sizes.empty()) {
            out.emplace_back(sc.waveform.fft_size, sc.waveform.guard_size);
            return out;
        }
        for (std::size_t i = 0; i < sc.sweep.guard_sizes.size(); ++i)
            out.emplace_back(sc.sweep.fft_sizes.empty() ? sc.waveform.fft_size : sc.sweep.fft_sizes[i],
                             sc.sweep.guard_sizes[i]);
        return out;
    }

    void require_kind(WaveformKind k, const char* experiment) const {
        if (sc.waveform.kind != k)
            throw ScenarioError("waveform.kind", 0,
                                std::string(experiment) + " needs waveform.kind = " +
                                    (k == WaveformKind::zp ? "zp" : "cp"));
    }

    void require_sweep(bool present, const char* key) const {
        if (!present) throw ScenarioError(key, 0, "required by this experiment");
    }
};

template <class F>
double or_nan(F&& f) {
    try {
        return f();
    } catch (const std::invalid_argument&) {
    } catch (const std::domain_error&) {
    } catch (const ConvergenceError&) {
    }
    return kNan;
}

// Thresholds in watts paired with their normalized value as written to the CSV.
struct Thresholds {
    std::vector<double> watts;
    std::vector<double> normalized;
};

Thresholds thresholds(const Context& cx, const ChannelScene& s, double scale,
                      const std::function<double(double)>& from_pfa) {
    Thresholds out;
    const double unit = s.noise_power * scale;
    if (cx.sc.detect.pfa) {
        out.watts.push_back(from_pfa(*cx.sc.detect.pfa));
        out.normalized.push_back(out.watts.back() / unit);
    } else {
        for (double t : cx.sc.detect.thresholds_over_sigma2) {
            out.watts.push_back(t * unit);
            out.normalized.push_back(t);
        }
    }
    return out;
}

CsvTable validate_zp(const Context& cx) {
    cx.require_kind(WaveformKind::zp, "validate-zp");
    const WaveformConfig wf = cx.sc.waveform.config();
    const ChannelScene s = cx.scene(wf);
    const Thresholds th = thresholds(cx, s, 1.0, [&](double pfa) {
        return threshold_for_pfa_zp(pfa, s, wf, cx.sc.detect.cfar_model);
    });
    const auto& lambdas = th.watts;
    CsvTable t(experiment_header("validate-zp"));
    std::vector<EmpiricalEstimate> sim;
    if (cx.trials > 0) sim = run_plan({s, wf, lambdas, cx.trials, cx.seed, cx.workers}).pd;
    for (std::size_t i = 0; i < lambdas.size(); ++i) {
        const double l = lambdas[i];
        t.row() << th.normalized[i] << or_nan([&] { return pd_exact(l, s, wf); })
                << or_nan([&] { return pd_gamma_clutter_blind_zp(l, s, wf); }) << pd_gaussian_zp(l, s, wf)
                << (sim.empty() ? kNan : sim[i].rate) << (sim.empty() ? kNan : sim[i].std_error);
    }
    return t;
}

CsvTable validate_cp(const Context& cx) {
    cx.require_kind(WaveformKind::cp, "validate-cp");
    const WaveformConfig wf = cx.sc.waveform.config();
    const ChannelScene s = cx.scene(wf);
    const double scale =
        cx.sc.detect.threshold_reference == ThresholdReference::noise_plus_rsi ? 1.0 + s.rsi_ratio : 1.0;
    const Thresholds th = thresholds(cx, s, scale, [&](double pfa) {
        return threshold_for_pfa_cp(pfa, s, wf, cx.sc.detect.cfar_model);
    });
    const auto& lambdas = th.watts;
    const double cfrac = gaussian_moments_cp(s, wf).covariance_fraction;
    CsvTable t(experiment_header("validate-cp"));
    std::vector<EmpiricalEstimate> sim;
    if (cx.trials > 0) sim = run_plan({s, wf, lambdas, cx.trials, cx.seed, cx.workers}).pd;
    for (std::size_t i = 0; i < lambdas.size(); ++i) {
        const double l = lambdas[i];
        t.row() << th.normalized[i] << or_nan([&] { return pd_gamma_lumped_cp(l, s, wf); })
                << pd_gaussian_cp(l, s, wf) << (sim.empty() ? kNan : sim[i].rate)
                << (sim.empty() ? kNan : sim[i].std_error) << cfrac;
    }
    return t;
}

CsvTable upper_bound(const Context& cx) {
    cx.require_sweep(!cx.sc.sweep.distances_m.empty(), "sweep.distances_m");
    const double pfa = cx.pfa();
    const Model cfar = cx.sc.detect.cfar_model;
    const double c = cx.cfg.propagation_speed, b = cx.cfg.bandwidth_hz;
    const auto& dist = cx.sc.sweep.distances_m;
    const double target = cx.sc.sweep.pd_target;
    CsvTable t(experiment_header("upper-bound"));
    for (const auto& [fft, guard] : cx.sizes()) {
        const WaveformConfig wf{WaveformKind::zp, fft, guard, 0};
        const Model m = cx.model == "auto" ? Model::exact : parse_model(cx.model);
        auto fixed = [&](double d) { return zp_pd_at_distance(cx.cfg, wf, d, pfa, cfar, m); };
        auto upper = [&](double d) { return pd_upper_bound(cx.cfg, wf, d, pfa, cfar); };
        for (double d : dist)
            t.row() << "curve" << guard << fft << d << delay_bins(d, b, c) << or_nan([&] { return fixed(d); })
                    << or_nan([&] { return upper(d); });
        const double lo = dist.front();
        const double hi = std::min(dist.back(), distance_from_bins(fft, b, c));
        const double xf = or_nan([&] { return find_crossing(fixed, lo, hi, target, 1e-6); });
        const double xu = or_nan([&] { return find_crossing(upper, lo, hi, target, 1e-6); });
        t.row() << "crossing_fixed" << guard << fft << xf
                << (std::isnan(xf) ? std::string("nan") : std::to_string(delay_bins(xf, b, c))) << target << kNan;
        t.row() << "crossing_upper" << guard << fft << xu
                << (std::isnan(xu) ? std::string("nan") : std::to_string(delay_bins(xu, b, c))) << kNan << target;
    }
    return t;
}

// |h_t|^2 at which the simulated PD reaches the target, unit noise power.
double simulated_gain(const ChannelScene& s, const WaveformConfig& wf, double lambda, double pd,
                      const Context& cx) {
    const auto q = simulate_target_quadratics(s, wf, cx.trials, cx.seed, cx.workers);
    return gain_for_empirical_pd(q, lambda, pd, 1e-9, 1e9);
}

CsvTable range_ratio(const Context& cx) {
    const double pfa = cx.pfa();
    std::vector<double> grid = cx.sc.sweep.rsi_db;
    grid.insert(grid.end(), cx.sc.sweep.sim_rsi_db.begin(), cx.sc.sweep.sim_rsi_db.end());
    std::sort(grid.begin(), grid.end());
    grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
    cx.require_sweep(!grid.empty(), "sweep.rsi_db");
    CsvTable t(experiment_header("range-ratio"));
    for (const auto& [fft, guard] : cx.sizes()) {
        RangeQuery rq;
        rq.pd = cx.sc.sweep.pd_target;
        rq.pfa = pfa;
        rq.fft_size = fft;
        rq.guard_size = guard;
        rq.pathloss_exp = cx.cfg.pathloss_exp;
        rq.cfar = cx.sc.detect.cfar_model;
        const EqualRange eq = equal_range_rsi(rq);
        const double eq_db = eq.feasible ? eq.rsi_db : kNan;

        double g_zp = kNan;
        const bool any_sim = cx.trials > 0 && !cx.sc.sweep.sim_rsi_db.empty();
        if (any_sim) {
            ChannelScene s;
            s.noise_power = 1.0;
            s.target_delay = guard;
            s.target_gain_sq = 1.0;
            g_zp = simulated_gain(s, rq.zp(), lambda_norm_zp(rq) / guard, rq.pd, cx);
        }
        for (double db : grid) {
            RangeQuery q = rq;
            q.rsi_ratio = db_to_linear(db);
            double sim = kNan;
            if (any_sim && std::find(cx.sc.sweep.sim_rsi_db.begin(), cx.sc.sweep.sim_rsi_db.end(), db) !=
                               cx.sc.sweep.sim_rsi_db.end()) {
                ChannelScene s;
                s.noise_power = 1.0;
                s.rsi_ratio = q.rsi_ratio;
                s.target_delay = guard;
                s.target_gain_sq = 1.0;
                const int n = fft + guard;
                const double g_cp =
                    simulated_gain(s, q.cp(), lambda_norm_cp(q) * (1.0 + q.rsi_ratio) / n, q.pd, cx);
                sim = std::pow(g_zp / g_cp, 1.0 / (2.0 * q.pathloss_exp));
            }
            t.row() << guard << fft << q.overhead() << db << delta_ratio(q) << eq_db << sim;
        }
    }
    return t;
}

CsvTable range_curves(const Context& cx) {
    cx.require_sweep(!cx.sc.sweep.distances_m.empty(), "sweep.distances_m");
    const double pfa = cx.pfa();
    const Model cfar = cx.sc.detect.cfar_model;
    const double c = cx.cfg.propagation_speed, b = cx.cfg.bandwidth_hz;
    const auto& dist = cx.sc.sweep.distances_m;
    const double target = cx.sc.sweep.pd_target;
    const int fft = cx.sc.waveform.fft_size, guard = cx.sc.waveform.guard_size;
    const WaveformConfig zp{WaveformKind::zp, fft, guard, 0};
    const WaveformConfig cp{WaveformKind::cp, fft, guard, 0};
    CsvTable t(experiment_header("range-curves"));

    auto pd_zp_at = [&](double d) {
        const ChannelScene s = build_scene(cx.cfg, zp, d, 0.0, 0.0, {}, Hypothesis::h1);
        return zp_pd_at_distance(cx.cfg, zp, d, pfa, cfar, cx.pd_model(s, zp));
    };
    const double inf = -std::numeric_limits<double>::infinity();
    for (double d : dist) t.row() << "curve" << "zp" << inf << d << delay_bins(d, b, c) << or_nan([&] { return pd_zp_at(d); });
    const double hi_zp = std::min(dist.back(), distance_from_bins(fft, b, c));
    const double xz = or_nan([&] { return find_crossing(pd_zp_at, dist.front(), hi_zp, target, 1e-6); });
    t.row() << "crossing" << "zp" << inf << xz << (std::isnan(xz) ? std::string("nan") : std::to_string(delay_bins(xz, b, c)))
            << target;

    for (double db : cx.sc.sweep.rsi_db) {
        const double r = db_to_linear(db);
        auto pd_cp_at = [&](double d) {
            const ChannelScene s = build_scene(cx.cfg, cp, d, r, 0.0, {}, Hypothesis::h1);
            const double lambda = threshold_for_pfa_cp(pfa, s, cp, cfar);
            return pd_cp(lambda, s, cp, cx.pd_model(s, cp));
        };
        for (double d : dist) t.row() << "curve" << "cp" << db << d << delay_bins(d, b, c) << or_nan([&] { return pd_cp_at(d); });
        const double hi = std::min(dist.back(), distance_from_bins(2 * (fft + guard) - 1, b, c));
        const double xc = or_nan([&] { return find_crossing(pd_cp_at, dist.front(), hi, target, 1e-6); });
        t.row() << "crossing" << "cp" << db << xc
                << (std::isnan(xc) ? std::string("nan") : std::to_string(delay_bins(xc, b, c))) << target;
    }
    return t;
}

std::vector<int> spread_delays(int count, int farthest) {
    std::vector<int> out;
    for (int q = 1; q <= count; ++q) out.push_back(static_cast<int>(std::lround(static_cast<double>(farthest) * q / count)));
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

CsvTable clutter(const Context& cx) {
    const auto& ch = cx.sc.channel;
    cx.require_sweep(!ch.clutter_delays.empty(), "channel.clutter_delays");
    const int fft = cx.sc.waveform.fft_size, guard = cx.sc.waveform.guard_size;
    const WaveformConfig cp{WaveformKind::cp, fft, guard, 0};
    auto zp = [&](int shift) { return WaveformConfig{WaveformKind::zp, fft, guard, shift}; };
    const double rsi_db = ch.rsi_db, rci_db = ch.clutter_total_db;
    CsvTable t(experiment_header("clutter"));
    const std::string na = "nan";

    // Panel a: Gaussian ROC and simulated ROC on a shared threshold grid.
    std::vector<double> pfa_grid;
    for (int i = 0; i < 60; ++i) pfa_grid.push_back(std::pow(10.0, -6.0 + 6.0 * i / 60.0));
    for (double p : {0.9, 0.99, 0.999}) pfa_grid.push_back(p);
    auto roc = [&](const std::string& source, const WaveformConfig& wf, const std::string& shift) {
        const ChannelScene s = cx.scene(wf);
        std::vector<double> lambdas;
        for (double p : pfa_grid) {
            const double l = wf.kind == WaveformKind::zp ? threshold_for_pfa_zp(p, s, wf, Model::gaussian)
                                                         : threshold_for_pfa_cp(p, s, wf, Model::gaussian);
            lambdas.push_back(l);
        }
        std::sort(lambdas.begin(), lambdas.end());
        for (double l : lambdas) {
            const double pf = wf.kind == WaveformKind::zp ? pfa_zp(l, s, wf, Model::gaussian)
                                                          : pfa_cp(l, s, wf, Model::gaussian);
            const double pd = wf.kind == WaveformKind::zp ? pd_gaussian_zp(l, s, wf) : pd_gaussian_cp(l, s, wf);
            t.row() << "a" << source << "roc_analytic" << shift << rsi_db << rci_db << pf << pd;
        }
        if (cx.trials > 0) {
            const PlanResult r = run_plan({s, wf, lambdas, cx.trials, cx.seed, cx.workers});
            for (std::size_t i = 0; i < lambdas.size(); ++i)
                t.row() << "a" << source << "roc_sim" << shift << rsi_db << rci_db << r.pfa[i].rate << r.pd[i].rate;
        }
    };
    for (int shift : cx.sc.sweep.sample_shifts) roc("zp", zp(shift), std::to_string(shift));
    roc("cp", cp, na);

    auto kld = [&](const WaveformConfig& wf, double rsi, double rci, const std::vector<int>& delays) {
        const ChannelScene s = cx.scene(wf, rsi, rci, delays);
        if (wf.kind == WaveformKind::zp)
            return kld_gaussian(gaussian_moments_zp(s.under(Hypothesis::h0), wf),
                                gaussian_moments_zp(s.under(Hypothesis::h1), wf));
        return kld_gaussian(gaussian_moments_cp(s.under(Hypothesis::h0), wf).moments(),
                            gaussian_moments_cp(s.under(Hypothesis::h1), wf).moments());
    };

    // Panel b: KLD over the ZP window shift for each clutter count.
    std::vector<int> shifts;
    const int step = std::max(1, (fft + guard) / 80);
    for (int d = -fft; d < guard; d += step) shifts.push_back(d);
    shifts.insert(shifts.end(), cx.sc.sweep.sample_shifts.begin(), cx.sc.sweep.sample_shifts.end());
    std::sort(shifts.begin(), shifts.end());
    shifts.erase(std::unique(shifts.begin(), shifts.end()), shifts.end());
    std::vector<int> counts = cx.sc.sweep.clutter_counts;
    if (counts.empty()) counts.push_back(static_cast<int>(ch.clutter_delays.size()));
    for (int n : counts) {
        const auto delays =
            n == static_cast<int>(ch.clutter_delays.size()) ? ch.clutter_delays : spread_delays(n, ch.clutter_delays.back());
        const std::string kind = "kld_nc" + std::to_string(n);
        const double k_cp = kld(cp, cx.rsi(), cx.rci(), delays);
        for (int d : shifts) {
            t.row() << "b" << "zp" << kind << d << rsi_db << rci_db << static_cast<double>(d)
                    << kld(zp(d), cx.rsi(), cx.rci(), delays);
            t.row() << "b" << "cp" << kind << na << rsi_db << rci_db << static_cast<double>(d) << k_cp;
        }
    }

    // Panel c: KLD over the clutter level; ZP uses the scenario shift.
    const int zshift = cx.sc.waveform.sample_shift;
    const std::string zs = std::to_string(zshift);
    const auto& rci_grid = cx.sc.sweep.rci_db;
    if (!rci_grid.empty()) {
        const double k_zp = kld(zp(zshift), cx.rsi(), cx.rci(), ch.clutter_delays);
        for (double x : rci_grid)
            t.row() << "c" << "zp" << "kld" << zs << rsi_db << x << x
                    << kld(zp(zshift), cx.rsi(), db_to_linear(x), ch.clutter_delays);
        for (double r : cx.sc.sweep.rsi_db) {
            auto f = [&](double x) { return kld(cp, db_to_linear(r), db_to_linear(x), ch.clutter_delays); };
            for (double x : rci_grid) t.row() << "c" << "cp" << "kld" << na << r << x << x << f(x);
            const double cross = or_nan([&] { return find_crossing(f, rci_grid.front(), rci_grid.back(), k_zp, 1e-9); });
            t.row() << "c" << "cp" << "kld_crossing" << na << r << cross << cross << k_zp;
        }
    }
    return t;
}

}  // namespace

const std::vector<std::string>& experiment_names() {
    static const std::vector<std::string> names = {"validate-zp", "validate-cp",  "upper-bound", "range-ratio",
                                                   "range-curves", "clutter", "conformance"};
    return names;
}

const std::vector<std::string>& experiment_header(const std::string& name) {
    const auto it = headers().find(name);
    if (it == headers().end()) throw UnknownExperiment("unknown experiment '" + name + "'");
    return it->second;
}

CsvTable run_experiment(const std::string& name, const Scenario& scenario, const RunOptions& opt) {
    (void)experiment_header(name);
    if (name == "conformance") return conformance_report();
    if (opt.model && *opt.model != "auto") (void)parse_model(*opt.model);
    const Context cx(scenario, opt);
    if (name == "validate-zp") return validate_zp(cx);
    if (name == "validate-cp") return validate_cp(cx);
    if (name == "upper-bound") return upper_bound(cx);
    if (name == "range-ratio") return range_ratio(cx);
    if (name == "range-curves") return range_curves(cx);
    return clutter(cx);
}

double pd_gamma_clutter_blind_zp(double lambda, const ChannelScene& scene, const WaveformConfig& wf) {
    ChannelScene s = scene;
    s.clutter_ratio = 0.0;
    s.clutter_delays.clear();
    return pd_gamma(lambda, s, wf);
}

double pd_gamma_lumped_cp(double lambda, const ChannelScene& scene, const WaveformConfig& wf) {
    ChannelScene s = scene;
    s.rsi_ratio += s.clutter_ratio;
    s.clutter_ratio = 0.0;
    s.clutter_delays.clear();
    return pd_gamma_cp(lambda, s, wf);
}

CsvTable conformance_report() {
    CsvTable t(experiment_header("conformance"));
    const std::string na = "nan";
    auto emit = [&](const char* q, const WaveformConfig& wf, int lj, const std::string& lk, long long formula,
                    long long oracle) {
        t.row() << q << wf.fft_size << wf.guard_size << wf.sample_shift << lj << lk << formula << oracle
                << (formula == oracle ? "1" : "0");
    };
    for (int nf : {8, 16, 32}) {
        for (int ng : {2, 4, 8}) {
            const int n = nf + ng;
            for (int ds = -nf; ds < ng; ++ds) {
                const WaveformConfig wf{WaveformKind::zp, nf, ng, ds};
                for (int l = 0; l < n; ++l)
                    emit("C_zp_j", wf, l, na, count_mean_zp(l, wf), count_stream({l}, wf).mean_counts[0]);
                for (int l1 = 0; l1 < n; ++l1)
                    for (int l2 = l1 + 1; l2 < n; ++l2)
                        emit("C_zp_jk", wf, l1, std::to_string(l2), count_cov_zp(l1, l2, wf),
                             count_stream({l1, l2}, wf).cross_weight(0, 1));
            }
            const WaveformConfig wf{WaveformKind::cp, nf, ng, 0};
            for (int l = 0; l < n; ++l)
                emit("C_cp_j", wf, l, na, count_cov_cp_self(l, wf), count_stream({l}, wf).self_counts[0]);
            for (int l1 = 0; l1 < n; ++l1)
                for (int l2 = l1 + 1; l2 < n; ++l2)
                    emit("C_cp_jk", wf, l1, std::to_string(l2), count_cov_cp_cross(l1, l2, wf),
                         count_stream({l1, l2}, wf).cross_weight(0, 1));
        }
    }
    return t;
}

std::string print_scene(const Scenario& sc) {
    const Context cx(sc, RunOptions{});
    const WaveformConfig wf = sc.waveform.config();
    const ChannelScene s = cx.scene(wf);
    const bool is_zp = wf.kind == WaveformKind::zp;
    std::ostringstream o;
    auto line = [&](const std::string& k, const std::string& v) { o << k << ": " << v << '\n'; };
    auto num = [](double v) {
        if (!std::isfinite(v)) return format_number(v);
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.6g", v);
        return std::string(buf);
    };
    line("waveform", std::string(is_zp ? "zp" : "cp") + " N_f=" + std::to_string(wf.fft_size) +
                         (is_zp ? " N_zp=" : " N_cp=") + std::to_string(wf.guard_size) +
                         " sample_shift=" + std::to_string(wf.sample_shift) + " N=" + std::to_string(wf.total()));
    if (is_zp) line("eta", num(wf.power_factor()));
    line("noise power sigma2", num(s.noise_power) + " W (" + num(linear_to_db(s.noise_power) + 30.0) + " dBm)");
    line("target distance", num(distance_from_bins(s.target_delay, cx.cfg.bandwidth_hz, cx.cfg.propagation_speed)) +
                                " m" + (sc.channel.target_distance_m ? " (requested " + num(*sc.channel.target_distance_m) + " m)" : ""));
    line("target delay L_t", std::to_string(s.target_delay) + " bins");
    line("target gain |h_t|^2", num(s.target_gain_sq) + " W");
    const double snr = s.target_gain_sq / s.noise_power;
    line("target SNR", num(linear_to_db(snr)) + " dB");
    if (is_zp) line("target SNR incl. eta", num(linear_to_db(snr * wf.power_factor())) + " dB");
    line("rsi rho_si", num(s.rsi_ratio) + " (" + num(sc.channel.rsi_db) + " dB)");
    line("rci rho_ci", num(s.clutter_ratio) + " (" + num(sc.channel.clutter_total_db) + " dB)");
    std::string cd;
    for (int d : s.clutter_delays) cd += (cd.empty() ? "" : ",") + std::to_string(d);
    line("clutter delays", cd.empty() ? "none" : cd + " bins");
    const Window w = detection_window(wf);
    line("window", "[" + std::to_string(w.start) + ", " + std::to_string(w.start + w.length) + ") samples");
    const GaussianMoments m0 = is_zp ? gaussian_moments_zp(s.under(Hypothesis::h0), wf)
                                     : gaussian_moments_cp(s.under(Hypothesis::h0), wf).moments();
    const GaussianMoments m1 = is_zp ? gaussian_moments_zp(s, wf) : gaussian_moments_cp(s, wf).moments();
    line("H0 mean / variance", num(m0.mean) + " W / " + num(m0.variance) + " W^2");
    line("H1 mean / variance", num(m1.mean) + " W / " + num(m1.variance) + " W^2");
    const ModelSelection sel = model_select(s, wf);
    if (is_zp)
        line("sigma_R", std::isnan(sel.sigma_ratio) ? std::string("n/a") : num(sel.sigma_ratio));
    else
        line("C_tilde", num(sel.covariance_fraction));
    line("selected model", std::string(to_string(sel.model)) + " (" + sel.reason + ")");
    if (sc.detect.pfa) {
        const double p = *sc.detect.pfa;
        const Model cfar = sc.detect.cfar_model;
        const double l = or_nan([&] {
            return is_zp ? threshold_for_pfa_zp(p, s, wf, cfar) : threshold_for_pfa_cp(p, s, wf, cfar);
        });
        line("threshold at pfa " + num(p), num(l) + " W (" + num(l / s.noise_power) + " x sigma2, " +
                                               std::string(to_string(cfar)) + " CFAR)");
        const double pd = or_nan([&] {
            return is_zp ? pd_zp(l, s, wf, sel.model) : pd_cp(l, s, wf, sel.model);
        });
        line("pd (" + std::string(to_string(sel.model)) + ")", num(pd));
    }
    return o.str();
}

}  // namespace isac::app
