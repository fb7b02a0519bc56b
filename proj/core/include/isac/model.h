#pragma once

#include <string>
#include <string_view>

namespace isac {

// Probability law used for a PD/PFA evaluation or for CFAR threshold inversion.
enum class Model { exact, gamma, gaussian };

std::string_view to_string(Model m);
// Accepts "exact", "gamma", "gaussian"; throws std::invalid_argument otherwise.
Model parse_model(std::string_view s);

}  // namespace isac
