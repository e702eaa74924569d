// Series-based moment machinery: raw moments, the mean, term-wise MGF
// evaluation, and probability weighted moments.
//
// Every series here expands (1 - p c(y))^(-k) geometrically and integrates
// term by term, which converges for |p| < 1. For p <= -1 the expansions
// diverge and the operations fall back to direct quadrature of the defining
// integral (flagged in MomentResult::fallback_used).
#ifndef LG_MOMENTS_HPP
#define LG_MOMENTS_HPP

#include "lg/distribution.hpp"
#include "lg/series.hpp"

namespace lg {

// E[Y^r] for integer r >= 1. Exact closed form at p = 0 (Lindley):
// r! (theta + r + 1) / (theta^r (theta + 1)).
MomentResult raw_moment(const LGParams& par, int r, const SeriesControl& ctl = {});

// E[Y] through the dedicated mean expansion; agrees with raw_moment(1)
// term by term.
MomentResult lg_mean(const LGParams& par, const SeriesControl& ctl = {});

// M(t) = sum_{k=0}^{k_max} t^k/k! E[Y^k]. Requires t < theta.
double mgf_eval(const LGParams& par, double t, int k_max, const SeriesControl& ctl = {});

// tau_{s,r} = E[Y^s F(Y)^r] for s >= 1, r >= 0. pwm(s, 0) equals
// raw_moment(s).
MomentResult pwm(const LGParams& par, int s, int r, const SeriesControl& ctl = {});

}  // namespace lg

#endif
