// Maximum-likelihood estimation for LG(p, theta): log-likelihood, analytic
// score and observed information, an EM algorithm over the latent geometric
// count, a direct Newton ascent, Wald intervals, and the likelihood-ratio
// test against the nested Lindley model.
#ifndef LG_INFERENCE_HPP
#define LG_INFERENCE_HPP

#include <array>
#include <string>
#include <utility>
#include <vector>

#include "lg/distribution.hpp"
#include "lg/sample.hpp"

namespace lg {

struct EMConfig {
    double tol_param = 1e-7;   // stop when max(|dp|, |dtheta|) falls below
    double tol_loglik = 1e-9;  // ... and the log-likelihood gain does too
    int max_iter = 2000;
    // M-step root search bracket for theta; high end 0 means 10x the
    // current theta, expanded on demand.
    std::pair<double, double> theta_bracket = {1e-8, 0.0};

    void validate() const;
};

struct TracePoint {
    int iteration;
    double p;
    double theta;
    double loglik;
};

enum class FitMethod { EM, DirectNewton };

struct FitResult {
    explicit FitResult(LGParams initial) : params(initial) {}

    LGParams params;
    double loglik = 0.0;
    double neg2loglik = 0.0;
    std::array<double, 4> cov{};         // row-major 2x2, order (p, theta)
    std::array<double, 2> std_errors{};  // sqrt of cov diagonal
    int iterations = 0;
    bool converged = false;
    FitMethod method = FitMethod::EM;
    std::vector<TracePoint> trace;
    std::string message;
    bool fd_hessian_used = false;  // covariance fell back to finite differences
};

double log_likelihood(const LGParams& par, const Sample& data);

// (d l/d p, d l/d theta).
std::array<double, 2> score(const LGParams& par, const Sample& data);

// Negated Hessian [[I_pp, I_pt], [I_pt, I_tt]], derived analytically and
// validated against finite differences of log_likelihood in the tests.
std::array<double, 4> observed_information(const LGParams& par, const Sample& data);

// Lindley MLE: the positive root of ybar theta^2 + (ybar - 1) theta - 2 = 0.
double lindley_mle(const Sample& data);

// theta0 = Lindley MLE; p0 = 0.25 in the ascent direction of the p-score
// (p = 0 is a fixed point of the EM map, so the EM start must be offset).
LGParams default_init(const Sample& data);

FitResult fit_em(const Sample& data, const LGParams& init, const EMConfig& cfg = {});
FitResult fit_em(const Sample& data);  // default_init + default config

FitResult fit_direct(const Sample& data, const LGParams& init);
FitResult fit_direct(const Sample& data);

struct Interval {
    double lo;
    double hi;
};

// 100(1-gamma)% Wald intervals for p and theta.
std::pair<Interval, Interval> wald_ci(const FitResult& fit, double gamma);

struct LrResult {
    double statistic;         // w = 2(l_full - l_restricted), clamped at 0
    double p_value;           // chi-square_1 tail probability
    int df;                   // 1
    double restricted_theta;  // Lindley MLE
    double restricted_loglik;
};

enum class NullConstraint { PEqualsZero };

LrResult lr_test(const Sample& data, const FitResult& fit_full,
                 NullConstraint constraint = NullConstraint::PEqualsZero);

}  // namespace lg

#endif
