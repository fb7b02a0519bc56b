#pragma once

#include <stdexcept>
#include <string>

namespace isac {

// Raised when an iterative routine exhausts its budget. `achieved` carries the
// last error estimate (or residual) so callers can report it.
class ConvergenceError : public std::runtime_error {
public:
    ConvergenceError(const std::string& what, double achieved)
        : std::runtime_error(what), achieved_(achieved) {}
    double achieved() const noexcept { return achieved_; }

private:
    double achieved_;
};

struct GammaParams {
    double shape = 1.0;
    double scale = 1.0;

    GammaParams() = default;
    GammaParams(double k, double theta);
};

struct GaussianMoments {
    double mean = 0.0;
    double variance = 0.0;

    GaussianMoments() = default;
    GaussianMoments(double mu, double var);
    double stddev() const;
};

struct SumGammaParams {
    GammaParams first;
    GammaParams second;
};

// Regularized lower / upper incomplete gamma P(a, x), Q(a, x).
double gamma_p(double a, double x);
double gamma_q(double a, double x);

// Gamma law of the energy statistic.
double gamma_cdf(double lambda, const GammaParams& p);
double gamma_sf(double lambda, const GammaParams& p);
double gamma_pdf(double x, const GammaParams& p);
double gamma_inv_cdf(double x, const GammaParams& p);
// Quantile at 1 - q, computed without forming 1 - q.
double gamma_inv_sf(double q, const GammaParams& p);
GaussianMoments gamma_moments(const GammaParams& p);

// Confluent hypergeometric 1F1(a; b; z). kummer_1f1 throws std::overflow_error
// when the value is not representable; log_kummer_1f1 covers that range for the
// nonnegative-term case (a >= 0, b > 0 after the Kummer transform).
double kummer_1f1(double a, double b, double z);
double log_kummer_1f1(double a, double b, double z);

double sum_gamma_pdf(double s, const SumGammaParams& p);
double sum_gamma_log_pdf(double s, const SumGammaParams& p);
double sum_gamma_cdf(double lambda, const SumGammaParams& p);

double normal_cdf(double z);
double normal_sf(double z);
double normal_quantile(double p);

double gaussian_cdf(double x, const GaussianMoments& m);
double gaussian_sf(double x, const GaussianMoments& m);
double gaussian_inv_cdf(double p, const GaussianMoments& m);

// D(N(h0) || N(h1)) in nats.
double kld_gaussian(const GaussianMoments& h0, const GaussianMoments& h1);

}  // namespace isac
