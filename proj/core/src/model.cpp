#include "isac/model.h"

#include <stdexcept>

namespace isac {

std::string_view to_string(Model m) {
    switch (m) {
        case Model::exact: return "exact";
        case Model::gamma: return "gamma";
        case Model::gaussian: return "gaussian";
    }
    return "unknown";
}

Model parse_model(std::string_view s) {
    if (s == "exact") return Model::exact;
    if (s == "gamma") return Model::gamma;
    if (s == "gaussian") return Model::gaussian;
    throw std::invalid_argument("unknown model '" + std::string(s) + "'");
}

}  // namespace isac
