#include "isac/stats.h"

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

#include "isac/quadrature.h"

namespace isac {
namespace {

constexpr double kEps = 1e-16;
constexpr int kMaxSeriesTerms = 10'000'000;

void require_finite(double v, const char* what) {
    if (!std::isfinite(v)) throw std::invalid_argument(std::string(what) + " must be finite");
}

void require_unit_open(double p, const char* what) {
    if (!(p > 0.0 && p < 1.0))
        throw std::invalid_argument(std::string(what) + " must lie in (0, 1)");
}

// Series for P(a, x), valid for x < a + 1.
double gamma_p_series(double a, double x) {
    double ap = a;
    double del = 1.0 / a;
    double sum = del;
    for (int n = 0; n < kMaxSeriesTerms; ++n) {
        ap += 1.0;
        del *= x / ap;
        sum += del;
        if (std::abs(del) < std::abs(sum) * kEps)
            return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
    }
    throw ConvergenceError("incomplete gamma series did not converge", std::abs(del / sum));
}

// Modified Lentz continued fraction for Q(a, x), valid for x >= a + 1.
double gamma_q_fraction(double a, double x) {
    constexpr double tiny = 1e-300;
    double b = x + 1.0 - a;
    double c = 1.0 / tiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i < kMaxSeriesTerms; ++i) {
        const double an = -i * (i - a);
        b += 2.0;
        d = an * d + b;
        if (std::abs(d) < tiny) d = tiny;
        c = b + an / c;
        if (std::abs(c) < tiny) c = tiny;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::abs(del - 1.0) < kEps)
            return std::exp(-x + a * std::log(x) - std::lgamma(a)) * h;
    }
    throw ConvergenceError("incomplete gamma continued fraction did not converge", 0.0);
}

void check_gamma_args(double a, double x) {
    require_finite(a, "shape");
    require_finite(x, "argument");
    if (a <= 0.0) throw std::invalid_argument("shape must be positive");
    if (x < 0.0) throw std::invalid_argument("argument must be nonnegative");
}

double unit_gamma_pdf(double k, double y) {
    if (y <= 0.0) return (k == 1.0 && y == 0.0) ? 1.0 : 0.0;
    return std::exp((k - 1.0) * std::log(y) - y - std::lgamma(k));
}

// Solves P(k, y) = p (equivalently Q(k, y) = q, q = 1 - p) on the unit scale.
// The smaller of p and q is used as the target to keep relative precision.
double unit_gamma_quantile(double k, double p, double q) {
    const bool lower = p <= q;
    const double z = lower ? normal_quantile(p) : -normal_quantile(q);

    // Wilson-Hilferty start; fall back to the small-y power law in the far lower tail.
    const double t = 1.0 / (9.0 * k);
    double y = k * std::pow(1.0 - t + z * std::sqrt(t), 3);
    if (!(y > 0.0) || (lower && p < 1e-3 && k < 2.0))
        y = std::exp((std::log(p) + std::lgamma(k + 1.0)) / k);
    if (!(y > 0.0) || !std::isfinite(y)) y = k;

    // residual > 0 means y is above the root.
    auto residual = [&](double v) { return lower ? gamma_p(k, v) - p : q - gamma_q(k, v); };

    double lo = 0.0;
    double hi = std::max(2.0 * y, k + 10.0 * std::sqrt(k) + 10.0);
    while (residual(hi) < 0.0) {
        lo = hi;
        hi *= 2.0;
        if (!std::isfinite(hi)) throw ConvergenceError("gamma quantile bracket overflow", hi);
    }
    y = std::clamp(y, lo, hi);

    for (int it = 0; it < 200; ++it) {
        const double r = residual(y);
        if (r == 0.0) return y;
        if (r > 0.0)
            hi = y;
        else
            lo = y;
        const double dens = unit_gamma_pdf(k, y);
        double next = (dens > 0.0) ? y - r / dens : 0.5 * (lo + hi);
        if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
        if (std::abs(next - y) <= 4.0 * DBL_EPSILON * y || hi - lo <= 4.0 * DBL_EPSILON * hi)
            return next;
        y = next;
    }
    throw ConvergenceError("gamma quantile did not converge in 200 iterations", hi - lo);
}

// log of sum_{n>=0} (a)_n / (b)_n z^n / n! for a >= 0, b > 0, z >= 0 (all terms >= 0).
double log_positive_series(double a, double b, double z) {
    if (a == 0.0 || z == 0.0) return 0.0;
    constexpr double big = 1e280;
    double term = 1.0;
    double sum = 1.0;
    double log_scale = 0.0;
    for (long n = 0; n < kMaxSeriesTerms; ++n) {
        const double ratio = (a + n) * z / ((b + n) * (n + 1.0));
        term *= ratio;
        sum += term;
        if (sum > big) {
            sum /= big;
            term /= big;
            log_scale += std::log(big);
        }
        if (ratio < 1.0 && term < sum * kEps) return log_scale + std::log(sum);
    }
    throw ConvergenceError("1F1 series did not converge", term / sum);
}

double sum_gamma_log_density(double s, const SumGammaParams& p) {
    // Order components so the 1F1 argument is nonnegative.
    GammaParams g1 = p.first, g2 = p.second;
    if (g1.scale < g2.scale) std::swap(g1, g2);
    const double k = g1.shape + g2.shape;
    if (s == 0.0) return k > 1.0 ? -std::numeric_limits<double>::infinity() : -std::log(g2.scale);
    const double z = (1.0 / g2.scale - 1.0 / g1.scale) * s;
    return (k - 1.0) * std::log(s) - s / g2.scale - g1.shape * std::log(g1.scale) -
           g2.shape * std::log(g2.scale) - std::lgamma(k) + log_kummer_1f1(g1.shape, k, z);
}

}  // namespace

GammaParams::GammaParams(double k, double theta) : shape(k), scale(theta) {
    require_finite(k, "shape");
    require_finite(theta, "scale");
    if (k <= 0.0) throw std::invalid_argument("Gamma shape must be positive");
    if (theta <= 0.0) throw std::invalid_argument("Gamma scale must be positive");
}

GaussianMoments::GaussianMoments(double mu, double var) : mean(mu), variance(var) {
    require_finite(mu, "mean");
    require_finite(var, "variance");
    if (var < 0.0) throw std::invalid_argument("variance must be nonnegative");
}

double GaussianMoments::stddev() const { return std::sqrt(variance); }

double gamma_p(double a, double x) {
    check_gamma_args(a, x);
    if (x == 0.0) return 0.0;
    if (x < a + 1.0) return std::clamp(gamma_p_series(a, x), 0.0, 1.0);
    return std::clamp(1.0 - gamma_q_fraction(a, x), 0.0, 1.0);
}

double gamma_q(double a, double x) {
    check_gamma_args(a, x);
    if (x == 0.0) return 1.0;
    if (x < a + 1.0) return std::clamp(1.0 - gamma_p_series(a, x), 0.0, 1.0);
    return std::clamp(gamma_q_fraction(a, x), 0.0, 1.0);
}

double gamma_cdf(double lambda, const GammaParams& p) {
    require_finite(lambda, "threshold");
    if (lambda < 0.0) throw std::invalid_argument("threshold must be nonnegative");
    return gamma_p(p.shape, lambda / p.scale);
}

double gamma_sf(double lambda, const GammaParams& p) {
    require_finite(lambda, "threshold");
    if (lambda < 0.0) throw std::invalid_argument("threshold must be nonnegative");
    return gamma_q(p.shape, lambda / p.scale);
}

double gamma_pdf(double x, const GammaParams& p) {
    require_finite(x, "argument");
    if (x < 0.0) return 0.0;
    return unit_gamma_pdf(p.shape, x / p.scale) / p.scale;
}

double gamma_inv_cdf(double x, const GammaParams& p) {
    require_unit_open(x, "probability");
    return p.scale * unit_gamma_quantile(p.shape, x, 1.0 - x);
}

double gamma_inv_sf(double q, const GammaParams& p) {
    require_unit_open(q, "probability");
    return p.scale * unit_gamma_quantile(p.shape, 1.0 - q, q);
}

GaussianMoments gamma_moments(const GammaParams& p) {
    return {p.shape * p.scale, p.shape * p.scale * p.scale};
}

double log_kummer_1f1(double a, double b, double z) {
    require_finite(a, "a");
    require_finite(b, "b");
    require_finite(z, "z");
    if (b <= 0.0) throw std::invalid_argument("log_kummer_1f1 requires b > 0");
    if (z >= 0.0) {
        if (a < 0.0) throw std::invalid_argument("log_kummer_1f1 requires a >= 0 for z >= 0");
        return log_positive_series(a, b, z);
    }
    // Kummer transform turns the alternating series into a positive one.
    if (b - a < 0.0) throw std::invalid_argument("log_kummer_1f1 requires b >= a for z < 0");
    return z + log_positive_series(b - a, b, -z);
}

double kummer_1f1(double a, double b, double z) {
    require_finite(a, "a");
    require_finite(b, "b");
    require_finite(z, "z");
    if (b <= 0.0 && b == std::floor(b))
        throw std::invalid_argument("1F1 undefined for nonpositive integer b");
    if (z == 0.0) return 1.0;
    const bool positive_terms = b > 0.0 && ((z > 0.0 && a >= 0.0) || (z < 0.0 && b - a >= 0.0));
    if (positive_terms) {
        const double lv = log_kummer_1f1(a, b, z);
        if (lv > std::log(DBL_MAX)) throw std::overflow_error("1F1 value exceeds double range");
        return std::exp(lv);
    }
    // General real parameters: plain ascending series, taken on whichever side
    // of the Kummer transform cancels less. The largest term bounds the
    // rounding error; refuse results that cancellation has wiped out.
    auto series = [](double aa, double bb, double zz, double& loss) {
        double term = 1.0, sum = 1.0, peak = 1.0;
        for (long n = 0; n < kMaxSeriesTerms; ++n) {
            term *= (aa + n) * zz / ((bb + n) * (n + 1.0));
            sum += term;
            peak = std::max(peak, std::abs(term));
            if (!std::isfinite(sum)) throw std::overflow_error("1F1 value exceeds double range");
            if (term == 0.0 || (n > std::abs(zz) && std::abs(term) < std::abs(sum) * kEps)) {
                loss = peak / std::abs(sum);
                return sum;
            }
        }
        throw ConvergenceError("1F1 series did not converge", std::abs(term));
    };
    double loss_direct = 0.0, loss_kummer = 0.0;
    const double direct = series(a, b, z, loss_direct);
    const double kummer = std::exp(z) * series(b - a, b, -z, loss_kummer);
    const double loss = std::min(loss_direct, loss_kummer);
    if (!(loss < 1e6)) throw ConvergenceError("1F1 series lost precision to cancellation", loss * kEps);
    return loss_direct <= loss_kummer ? direct : kummer;
}

double sum_gamma_log_pdf(double s, const SumGammaParams& p) {
    require_finite(s, "argument");
    if (s < 0.0) throw std::invalid_argument("sum-Gamma argument must be nonnegative");
    return sum_gamma_log_density(s, p);
}

double sum_gamma_pdf(double s, const SumGammaParams& p) { return std::exp(sum_gamma_log_pdf(s, p)); }

double sum_gamma_cdf(double lambda, const SumGammaParams& p) {
    require_finite(lambda, "threshold");
    if (lambda < 0.0) throw std::invalid_argument("threshold must be nonnegative");
    if (lambda == 0.0) return 0.0;
    const double m = p.first.shape * p.first.scale + p.second.shape * p.second.scale;
    const double sd = std::sqrt(p.first.shape * p.first.scale * p.first.scale +
                                p.second.shape * p.second.scale * p.second.scale);
    std::vector<double> cuts;
    for (double j : {-12.0, -8.0, -6.0, -4.0, -3.0, -2.0, -1.0, 0.0, 1.0, 2.0, 3.0, 4.0, 6.0, 8.0, 12.0})
        cuts.push_back(m + j * sd);
    auto f = [&p](double s) { return std::exp(sum_gamma_log_density(s, p)); };
    QuadratureOptions opt;
    opt.abs_tol = 1e-8;
    const QuadratureResult r = integrate_gk21(f, 0.0, lambda, opt, cuts);
    return std::clamp(r.value, 0.0, 1.0);
}

double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::numbers::sqrt2); }

double normal_sf(double z) { return 0.5 * std::erfc(z / std::numbers::sqrt2); }

double normal_quantile(double p) {
    require_unit_open(p, "probability");
    // Acklam's rational approximation followed by one Halley step.
    static constexpr double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                                   -2.759285104469687e+02, 1.383577518672690e+02,
                                   -3.066479806614716e+01, 2.506628277459239e+00};
    static constexpr double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                                   -1.556989798598866e+02, 6.680131188771972e+01,
                                   -1.328068155288572e+01};
    static constexpr double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                                   -2.400758277161838e+00, -2.549732539343734e+00,
                                   4.374664141464968e+00,  2.938163982698783e+00};
    static constexpr double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                                   2.445134137142996e+00, 3.754408661907416e+00};
    constexpr double plow = 0.02425;
    double x;
    if (p < plow) {
        const double q = std::sqrt(-2.0 * std::log(p));
        x = (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
            ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    } else if (p <= 1.0 - plow) {
        const double q = p - 0.5;
        const double r = q * q;
        x = (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
            (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
    } else {
        const double q = std::sqrt(-2.0 * std::log1p(-p));
        x = -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
            ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    }
    // Refine against whichever tail is smaller.
    for (int i = 0; i < 2; ++i) {
        const double e = (p < 0.5) ? normal_cdf(x) - p : (1.0 - p) - normal_sf(x);
        const double u = e * std::sqrt(2.0 * std::numbers::pi) * std::exp(0.5 * x * x);
        x -= u / (1.0 + 0.5 * x * u);
    }
    return x;
}

double gaussian_cdf(double x, const GaussianMoments& m) {
    require_finite(x, "argument");
    if (m.variance == 0.0) return x >= m.mean ? 1.0 : 0.0;
    return normal_cdf((x - m.mean) / m.stddev());
}

double gaussian_sf(double x, const GaussianMoments& m) {
    require_finite(x, "argument");
    if (m.variance == 0.0) return x >= m.mean ? 0.0 : 1.0;
    return normal_sf((x - m.mean) / m.stddev());
}

double gaussian_inv_cdf(double p, const GaussianMoments& m) {
    require_unit_open(p, "probability");
    if (!(m.variance > 0.0)) throw std::invalid_argument("inverse CDF needs positive variance");
    return m.mean + m.stddev() * normal_quantile(p);
}

double kld_gaussian(const GaussianMoments& h0, const GaussianMoments& h1) {
    if (!(h0.variance > 0.0) || !(h1.variance > 0.0))
        throw std::invalid_argument("KLD needs positive variances");
    const double r = h0.variance / h1.variance;
    const double dm = h0.mean - h1.mean;
    // 0.5 (r - 1 - ln r) is the variance part; it is >= 0 analytically.
    const double var_part = 0.5 * ((r - 1.0) - std::log1p(r - 1.0));
    return std::max(0.0, var_part) + dm * dm / (2.0 * h1.variance);
}

}  // namespace isac
