#include "lg/special_functions.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "lg/errors.hpp"

namespace lg {

namespace {

void check_args(double s, double t) {
    if (!(s > 0.0) || !std::isfinite(s)) {
        throw std::domain_error("incomplete gamma: shape must be positive, got " +
                                std::to_string(s));
    }
    if (!(t >= 0.0) || !std::isfinite(t)) {
        throw std::domain_error("incomplete gamma: limit must be nonnegative, got " +
                                std::to_string(t));
    }
}

// Series for P(s,t), good for t < s + 1.
double gamma_p_series(double s, double t) {
    double ap = s;
    double del = 1.0 / s;
    double sum = del;
    for (int n = 0; n < 10000; ++n) {
        ap += 1.0;
        del *= t / ap;
        sum += del;
        if (std::fabs(del) < std::fabs(sum) * std::numeric_limits<double>::epsilon()) {
            return sum * std::exp(-t + s * std::log(t) - log_gamma(s));
        }
    }
    throw convergence_error("incomplete gamma series failed to converge (s=" +
                            std::to_string(s) + ", t=" + std::to_string(t) + ")");
}

// Modified Lentz continued fraction for Q(s,t), good for t >= s + 1.
double gamma_q_contfrac(double s, double t) {
    constexpr double tiny = 1e-300;
    double b = t + 1.0 - s;
    double c = 1.0 / tiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i < 10000; ++i) {
        const double an = -static_cast<double>(i) * (static_cast<double>(i) - s);
        b += 2.0;
        d = an * d + b;
        if (std::fabs(d) < tiny) d = tiny;
        c = b + an / c;
        if (std::fabs(c) < tiny) c = tiny;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::fabs(del - 1.0) < std::numeric_limits<double>::epsilon()) {
            return h * std::exp(-t + s * std::log(t) - log_gamma(s));
        }
    }
    throw convergence_error("incomplete gamma continued fraction failed to converge (s=" +
                            std::to_string(s) + ", t=" + std::to_string(t) + ")");
}

}  // namespace

GammaArgs::GammaArgs(double s, double t) : shape(s), limit(t) { check_args(s, t); }

double log_gamma(double s) {
    if (!(s > 0.0) || !std::isfinite(s)) {
        throw std::domain_error("log_gamma: argument must be positive, got " +
                                std::to_string(s));
    }
    return std::lgamma(s);
}

double reg_lower_inc_gamma(double s, double t) {
    check_args(s, t);
    if (t == 0.0) return 0.0;
    return (t < s + 1.0) ? gamma_p_series(s, t) : 1.0 - gamma_q_contfrac(s, t);
}

double reg_upper_inc_gamma(double s, double t) {
    check_args(s, t);
    if (t == 0.0) return 1.0;
    return (t < s + 1.0) ? 1.0 - gamma_p_series(s, t) : gamma_q_contfrac(s, t);
}

double lower_inc_gamma(double s, double t) {
    const double p = reg_lower_inc_gamma(s, t);
    return p > 0.0 ? std::exp(log_gamma(s) + std::log(p)) : 0.0;
}

double upper_inc_gamma(double s, double t) {
    const double q = reg_upper_inc_gamma(s, t);
    return q > 0.0 ? std::exp(log_gamma(s) + std::log(q)) : 0.0;
}

double lower_inc_gamma(const GammaArgs& a) { return lower_inc_gamma(a.shape, a.limit); }
double upper_inc_gamma(const GammaArgs& a) { return upper_inc_gamma(a.shape, a.limit); }

double log_binomial(double n, double k) {
    return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
}

}  // namespace lg
