#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "csv.h"
#include "scenario.h"

namespace isac::app {

class UnknownExperiment : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Command-line overrides of scenario values.
struct RunOptions {
    std::optional<long> trials;
    std::optional<std::uint64_t> seed;
    std::optional<std::string> model;  // exact | gamma | gaussian | auto
    int workers = 0;
};

// validate-zp, validate-cp, upper-bound, range-ratio, range-curves, clutter,
// conformance.
const std::vector<std::string>& experiment_names();

// Header of each experiment's CSV output.
const std::vector<std::string>& experiment_header(const std::string& name);

CsvTable run_experiment(const std::string& name, const Scenario& scenario, const RunOptions& opt);

// Closed-form window counts against stream enumeration over small sizes.
CsvTable conformance_report();

std::string print_scene(const Scenario& scenario);

// Gamma columns of the validate experiments. With clutter present the core
// Gamma laws refuse the scene; these report the curves obtained when the ZP
// law ignores the clutter echoes and the CP law lumps their power into the
// interference level.
double pd_gamma_clutter_blind_zp(double lambda, const ChannelScene& scene, const WaveformConfig& wf);
double pd_gamma_lumped_cp(double lambda, const ChannelScene& scene, const WaveformConfig& wf);

}  // namespace isac::app
