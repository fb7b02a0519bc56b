#include "scenario.h"

#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include "csv.h"

namespace isac::app {
namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    std::istringstream in(s);
    while (std::getline(in, cur, sep)) out.push_back(trim(cur));
    if (!s.empty() && s.back() == sep) out.emplace_back();
    return out;
}

struct Field {
    std::string key;
    std::string value;
    int line;

    [[noreturn]] void fail(const std::string& msg) const { throw ScenarioError(key, line, msg); }

    double real(const std::string& text) const {
        double v = 0.0;
        const auto res = std::from_chars(text.data(), text.data() + text.size(), v);
        if (text.empty() || res.ec != std::errc() || res.ptr != text.data() + text.size())
            fail("expected a number, got '" + text + "'");
        return v;
    }
    double real() const { return real(value); }

    long long integer(const std::string& text) const {
        long long v = 0;
        const auto res = std::from_chars(text.data(), text.data() + text.size(), v);
        if (text.empty() || res.ec != std::errc() || res.ptr != text.data() + text.size())
            fail("expected an integer, got '" + text + "'");
        return v;
    }
    long long integer() const { return integer(value); }

    int small_int() const {
        const long long v = integer();
        if (v < std::numeric_limits<int>::min() || v > std::numeric_limits<int>::max())
            fail("integer out of range");
        return static_cast<int>(v);
    }

    double positive() const {
        const double v = real();
        if (!(v > 0.0) || !std::isfinite(v)) fail("must be positive and finite");
        return v;
    }

    double finite() const {
        const double v = real();
        if (!std::isfinite(v)) fail("must be finite");
        return v;
    }

    std::vector<double> real_list() const {
        std::vector<double> out;
        if (value.empty()) return out;
        for (const auto& item : split(value, ',')) {
            const auto parts = split(item, ':');
            if (parts.size() == 1) {
                out.push_back(real(parts[0]));
            } else if (parts.size() == 3) {
                const double a = real(parts[0]), step = real(parts[1]), b = real(parts[2]);
                if (!std::isfinite(a) || !std::isfinite(b) || !(step != 0.0) || !std::isfinite(step) ||
                    (b - a) / step < 0.0)
                    fail("bad range '" + item + "'");
                const long n = static_cast<long>(std::floor((b - a) / step + 1e-9)) + 1;
                if (n > 1000000) fail("range too long '" + item + "'");
                for (long i = 0; i < n; ++i) out.push_back(a + static_cast<double>(i) * step);
            } else {
                fail("bad list item '" + item + "'");
            }
        }
        return out;
    }

    std::vector<int> int_list() const {
        std::vector<int> out;
        if (value.empty()) return out;
        for (const auto& item : split(value, ',')) {
            const auto parts = split(item, ':');
            if (parts.size() == 1) {
                out.push_back(static_cast<int>(integer(parts[0])));
            } else if (parts.size() == 3) {
                const long long a = integer(parts[0]), step = integer(parts[1]), b = integer(parts[2]);
                if (step == 0 || (b - a) / step < 0) fail("bad range '" + item + "'");
                if ((b - a) / step > 1000000) fail("range too long '" + item + "'");
                for (long long v = a; step > 0 ? v <= b : v >= b; v += step)
                    out.push_back(static_cast<int>(v));
            } else {
                fail("bad list item '" + item + "'");
            }
        }
        return out;
    }
};

using Handler = std::function<void(Scenario&, const Field&)>;

const std::map<std::string, Handler>& handlers() {
    static const std::map<std::string, Handler> table = {
        {"system.tx_power_dbm", [](Scenario& s, const Field& f) { s.system.tx_power_dbm = f.finite(); }},
        {"system.antenna_gain", [](Scenario& s, const Field& f) { s.system.antenna_gain = f.positive(); }},
        {"system.carrier_freq_hz", [](Scenario& s, const Field& f) { s.system.carrier_freq_hz = f.positive(); }},
        {"system.bandwidth_hz", [](Scenario& s, const Field& f) { s.system.bandwidth_hz = f.positive(); }},
        {"system.rcs_m2", [](Scenario& s, const Field& f) { s.system.rcs_m2 = f.positive(); }},
        {"system.pathloss_exp",
         [](Scenario& s, const Field& f) {
             s.system.pathloss_exp = f.finite();
             if (s.system.pathloss_exp < 1.0) f.fail("must be >= 1");
         }},
        {"system.noise_psd_dbm_hz", [](Scenario& s, const Field& f) { s.system.noise_psd_dbm_hz = f.finite(); }},
        {"system.propagation_speed_mps",
         [](Scenario& s, const Field& f) { s.system.propagation_speed_mps = f.positive(); }},
        {"waveform.kind",
         [](Scenario& s, const Field& f) {
             if (f.value == "zp")
                 s.waveform.kind = WaveformKind::zp;
             else if (f.value == "cp")
                 s.waveform.kind = WaveformKind::cp;
             else
                 f.fail("expected zp or cp");
         }},
        {"waveform.fft_size",
         [](Scenario& s, const Field& f) {
             s.waveform.fft_size = f.small_int();
             if (s.waveform.fft_size < 1) f.fail("must be >= 1");
         }},
        {"waveform.guard_size",
         [](Scenario& s, const Field& f) {
             s.waveform.guard_size = f.small_int();
             if (s.waveform.guard_size < 1) f.fail("must be >= 1");
         }},
        {"waveform.sample_shift", [](Scenario& s, const Field& f) { s.waveform.sample_shift = f.small_int(); }},
        {"channel.rsi_db",
         [](Scenario& s, const Field& f) {
             s.channel.rsi_db = f.real();
             if (std::isnan(s.channel.rsi_db) || s.channel.rsi_db == std::numeric_limits<double>::infinity())
                 f.fail("must be finite or -inf");
         }},
        {"channel.clutter_total_db",
         [](Scenario& s, const Field& f) {
             s.channel.clutter_total_db = f.real();
             if (std::isnan(s.channel.clutter_total_db) ||
                 s.channel.clutter_total_db == std::numeric_limits<double>::infinity())
                 f.fail("must be finite or -inf");
         }},
        {"channel.clutter_delays",
         [](Scenario& s, const Field& f) {
             s.channel.clutter_delays = f.int_list();
             for (std::size_t i = 0; i < s.channel.clutter_delays.size(); ++i) {
                 if (s.channel.clutter_delays[i] < 0) f.fail("delays must be >= 0");
                 if (i && s.channel.clutter_delays[i] <= s.channel.clutter_delays[i - 1])
                     f.fail("delays must be strictly ascending");
             }
         }},
        {"channel.target_distance_m",
         [](Scenario& s, const Field& f) {
             const double d = f.finite();
             if (d < 0.0) f.fail("must be >= 0");
             s.channel.target_distance_m = d;
         }},
        {"channel.target_delay_bins",
         [](Scenario& s, const Field& f) {
             const int l = f.small_int();
             if (l < 0) f.fail("must be >= 0");
             s.channel.target_delay_bins = l;
         }},
        {"detect.model",
         [](Scenario& s, const Field& f) {
             if (f.value != "auto") {
                 try {
                     (void)parse_model(f.value);
                 } catch (const std::invalid_argument&) {
                     f.fail("expected exact, gamma, gaussian or auto");
                 }
             }
             s.detect.model = f.value;
         }},
        {"detect.pfa",
         [](Scenario& s, const Field& f) {
             const double p = f.real();
             if (!(p > 0.0 && p < 1.0)) f.fail("must lie in (0, 1)");
             s.detect.pfa = p;
         }},
        {"detect.thresholds_over_sigma2",
         [](Scenario& s, const Field& f) {
             s.detect.thresholds_over_sigma2 = f.real_list();
             if (s.detect.thresholds_over_sigma2.empty()) f.fail("empty list");
             for (std::size_t i = 0; i < s.detect.thresholds_over_sigma2.size(); ++i) {
                 const double t = s.detect.thresholds_over_sigma2[i];
                 if (!(t > 0.0) || !std::isfinite(t)) f.fail("thresholds must be positive");
                 if (i && t <= s.detect.thresholds_over_sigma2[i - 1]) f.fail("thresholds must ascend");
             }
         }},
        {"detect.cfar_model",
         [](Scenario& s, const Field& f) {
             if (f.value == "gamma")
                 s.detect.cfar_model = Model::gamma;
             else if (f.value == "gaussian")
                 s.detect.cfar_model = Model::gaussian;
             else
                 f.fail("expected gamma or gaussian");
         }},
        {"detect.threshold_reference",
         [](Scenario& s, const Field& f) {
             if (f.value == "noise")
                 s.detect.threshold_reference = ThresholdReference::noise;
             else if (f.value == "noise_plus_rsi")
                 s.detect.threshold_reference = ThresholdReference::noise_plus_rsi;
             else
                 f.fail("expected noise or noise_plus_rsi");
         }},
        {"sim.trials",
         [](Scenario& s, const Field& f) {
             const long long t = f.integer();
             if (t < 0) f.fail("must be >= 0");
             s.sim.trials = static_cast<long>(t);
         }},
        {"sim.seed",
         [](Scenario& s, const Field& f) {
             std::uint64_t v = 0;
             const auto& t = f.value;
             const auto res = std::from_chars(t.data(), t.data() + t.size(), v);
             if (t.empty() || res.ec != std::errc() || res.ptr != t.data() + t.size())
                 f.fail("expected an unsigned 64-bit integer");
             s.sim.seed = v;
         }},
        {"sweep.distances_m", [](Scenario& s, const Field& f) { s.sweep.distances_m = f.real_list(); }},
        {"sweep.guard_sizes", [](Scenario& s, const Field& f) { s.sweep.guard_sizes = f.int_list(); }},
        {"sweep.fft_sizes", [](Scenario& s, const Field& f) { s.sweep.fft_sizes = f.int_list(); }},
        {"sweep.rsi_db", [](Scenario& s, const Field& f) { s.sweep.rsi_db = f.real_list(); }},
        {"sweep.sim_rsi_db", [](Scenario& s, const Field& f) { s.sweep.sim_rsi_db = f.real_list(); }},
        {"sweep.rci_db", [](Scenario& s, const Field& f) { s.sweep.rci_db = f.real_list(); }},
        {"sweep.sample_shifts", [](Scenario& s, const Field& f) { s.sweep.sample_shifts = f.int_list(); }},
        {"sweep.clutter_counts",
         [](Scenario& s, const Field& f) {
             s.sweep.clutter_counts = f.int_list();
             for (int n : s.sweep.clutter_counts)
                 if (n < 1) f.fail("counts must be >= 1");
         }},
        {"sweep.pd_target",
         [](Scenario& s, const Field& f) {
             const double p = f.real();
             if (!(p > 0.0 && p < 1.0)) f.fail("must lie in (0, 1)");
             s.sweep.pd_target = p;
         }},
    };
    return table;
}

template <class T>
std::string join(const std::vector<T>& v) {
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) out += ", ";
        if constexpr (std::is_floating_point_v<T>)
            out += format_number(v[i]);
        else
            out += std::to_string(v[i]);
    }
    return out;
}

}  // namespace

ScenarioError::ScenarioError(std::string key, int line, const std::string& message)
    : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + key + ": " + message
                                  : key + ": " + message),
      key_(std::move(key)),
      line_(line) {}

SystemConfig SystemSection::config() const {
    SystemConfig c;
    c.tx_power_w = dbm_to_watts(tx_power_dbm);
    c.antenna_gain = antenna_gain;
    c.carrier_freq_hz = carrier_freq_hz;
    c.bandwidth_hz = bandwidth_hz;
    c.rcs_m2 = rcs_m2;
    c.pathloss_exp = pathloss_exp;
    c.noise_psd_w_hz = dbm_to_watts(noise_psd_dbm_hz);
    c.propagation_speed = propagation_speed_mps;
    return c;
}

Scenario parse_scenario(const std::string& text) {
    Scenario s;
    std::map<std::string, int> seen;
    std::istringstream in(text);
    std::string raw;
    int line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        const auto hash = raw.find('#');
        const std::string line = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) throw ScenarioError(line, line_no, "expected 'key = value'");
        Field f{trim(line.substr(0, eq)), trim(line.substr(eq + 1)), line_no};
        const auto it = handlers().find(f.key);
        if (it == handlers().end()) f.fail("unknown key");
        if (seen.count(f.key))
            f.fail("duplicate key (first set on line " + std::to_string(seen[f.key]) + ")");
        seen[f.key] = line_no;
        it->second(s, f);
    }

    auto line_of = [&](const std::string& k) { return seen.count(k) ? seen[k] : 0; };
    const bool dist = s.channel.target_distance_m.has_value();
    const bool bins = s.channel.target_delay_bins.has_value();
    if (dist == bins)
        throw ScenarioError("channel.target_distance_m", dist ? line_of("channel.target_delay_bins") : 0,
                            "exactly one of channel.target_distance_m and channel.target_delay_bins is required");
    const bool pfa = s.detect.pfa.has_value();
    const bool thr = !s.detect.thresholds_over_sigma2.empty();
    if (pfa == thr)
        throw ScenarioError("detect.pfa", pfa ? line_of("detect.thresholds_over_sigma2") : 0,
                            "exactly one of detect.pfa and detect.thresholds_over_sigma2 is required");
    try {
        s.waveform.config().validate();
    } catch (const std::invalid_argument& e) {
        const std::string k = seen.count("waveform.sample_shift") ? "waveform.sample_shift" : "waveform.kind";
        throw ScenarioError(k, line_of(k), e.what());
    }
    try {
        s.system.config().validate();
    } catch (const std::invalid_argument& e) {
        throw ScenarioError("system", 0, e.what());
    }
    if (!s.sweep.fft_sizes.empty() && s.sweep.fft_sizes.size() != s.sweep.guard_sizes.size())
        throw ScenarioError("sweep.fft_sizes", line_of("sweep.fft_sizes"),
                            "must have as many entries as sweep.guard_sizes");
    return s;
}

Scenario load_scenario(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot read scenario " + path);
    std::ostringstream buf;
    buf << f.rdbuf();
    return parse_scenario(buf.str());
}

std::string serialize_scenario(const Scenario& s) {
    std::ostringstream o;
    auto kv = [&](const std::string& k, const std::string& v) { o << k << " = " << v << '\n'; };
    const auto num = format_number;
    kv("system.tx_power_dbm", num(s.system.tx_power_dbm));
    kv("system.antenna_gain", num(s.system.antenna_gain));
    kv("system.carrier_freq_hz", num(s.system.carrier_freq_hz));
    kv("system.bandwidth_hz", num(s.system.bandwidth_hz));
    kv("system.rcs_m2", num(s.system.rcs_m2));
    kv("system.pathloss_exp", num(s.system.pathloss_exp));
    kv("system.noise_psd_dbm_hz", num(s.system.noise_psd_dbm_hz));
    kv("system.propagation_speed_mps", num(s.system.propagation_speed_mps));
    kv("waveform.kind", s.waveform.kind == WaveformKind::zp ? "zp" : "cp");
    kv("waveform.fft_size", std::to_string(s.waveform.fft_size));
    kv("waveform.guard_size", std::to_string(s.waveform.guard_size));
    kv("waveform.sample_shift", std::to_string(s.waveform.sample_shift));
    kv("channel.rsi_db", num(s.channel.rsi_db));
    kv("channel.clutter_total_db", num(s.channel.clutter_total_db));
    kv("channel.clutter_delays", join(s.channel.clutter_delays));
    if (s.channel.target_distance_m) kv("channel.target_distance_m", num(*s.channel.target_distance_m));
    if (s.channel.target_delay_bins) kv("channel.target_delay_bins", std::to_string(*s.channel.target_delay_bins));
    kv("detect.model", s.detect.model);
    if (s.detect.pfa) kv("detect.pfa", num(*s.detect.pfa));
    if (!s.detect.thresholds_over_sigma2.empty())
        kv("detect.thresholds_over_sigma2", join(s.detect.thresholds_over_sigma2));
    kv("detect.cfar_model", std::string(to_string(s.detect.cfar_model)));
    kv("detect.threshold_reference",
       s.detect.threshold_reference == ThresholdReference::noise ? "noise" : "noise_plus_rsi");
    kv("sim.trials", std::to_string(s.sim.trials));
    kv("sim.seed", std::to_string(s.sim.seed));
    kv("sweep.distances_m", join(s.sweep.distances_m));
    kv("sweep.guard_sizes", join(s.sweep.guard_sizes));
    kv("sweep.fft_sizes", join(s.sweep.fft_sizes));
    kv("sweep.rsi_db", join(s.sweep.rsi_db));
    kv("sweep.sim_rsi_db", join(s.sweep.sim_rsi_db));
    kv("sweep.rci_db", join(s.sweep.rci_db));
    kv("sweep.sample_shifts", join(s.sweep.sample_shifts));
    kv("sweep.clutter_counts", join(s.sweep.clutter_counts));
    kv("sweep.pd_target", num(s.sweep.pd_target));
    return o.str();
}

}  // namespace isac::app
