// Gamma-family kernels used by the series expansions: log-gamma and the
// incomplete gamma functions, plus regularized variants.
//
// gamma_low(s, t) = integral_0^t x^(s-1) e^(-x) dx
// gamma_up(s, t)  = integral_t^inf x^(s-1) e^(-x) dx
//
// The regularized forms P = gamma_low/Gamma(s) and Q = gamma_up/Gamma(s)
// stay in [0,1] and are safe at large s where the raw values overflow.
#ifndef LG_SPECIAL_FUNCTIONS_HPP
#define LG_SPECIAL_FUNCTIONS_HPP

namespace lg {

// Validated (shape, limit) pair: shape > 0, limit >= 0.
struct GammaArgs {
    double shape;
    double limit;
    GammaArgs(double s, double t);
};

// ln Gamma(s) for s > 0. Relative error below 1e-13 on [1e-3, 1e6].
double log_gamma(double s);

// Regularized lower/upper incomplete gamma. P + Q = 1 exactly.
double reg_lower_inc_gamma(double s, double t);
double reg_upper_inc_gamma(double s, double t);

// Unnormalized gamma_low / gamma_up. Overflow at roughly s > 170 is the
// caller's concern; the series code assembles terms in log space instead.
double lower_inc_gamma(double s, double t);
double upper_inc_gamma(double s, double t);

double lower_inc_gamma(const GammaArgs& a);
double upper_inc_gamma(const GammaArgs& a);

// ln C(n, k) via log-gamma; n >= k >= 0.
double log_binomial(double n, double k);

}  // namespace lg

#endif
