#pragma once

#include <functional>
#include <vector>

namespace isac {

struct QuadratureResult {
    double value = 0.0;
    double error = 0.0;
    int panels = 0;
};

struct QuadratureOptions {
    double abs_tol = 1e-8;
    double rel_tol = 0.0;
    int max_panels = 4000;
};

// Adaptive 21-point Gauss-Kronrod on [a, b]. `breakpoints` (optional, inside
// (a, b)) seed the initial panel split; useful for sharply peaked integrands.
// Throws ConvergenceError when max_panels is exhausted.
QuadratureResult integrate_gk21(const std::function<double(double)>& f, double a, double b,
                                const QuadratureOptions& opt = {},
                                const std::vector<double>& breakpoints = {});

}  // namespace isac
