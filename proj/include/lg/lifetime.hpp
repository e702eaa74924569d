// Reliability functionals: residual and reversed residual life, Bonferroni /
// Lorenz / scaled-TTT curves, the Gini index, and mean deviations.
//
// Each series expansion agrees with direct quadrature of its defining
// integral for |p| < 1 and falls back to quadrature for p <= -1.
#ifndef LG_LIFETIME_HPP
#define LG_LIFETIME_HPP

#include <vector>

#include "lg/distribution.hpp"
#include "lg/series.hpp"

namespace lg {

// A point on a probability-scale curve: abscissa u in [0,1], ordinate value.
struct CurvePoint {
    double u;
    double value;
};

// I(b) = integral_0^b y f(y) dy. Tends to the mean as b -> infinity.
double partial_mean(const LGParams& par, double b, const SeriesControl& ctl = {});

// mu_r(t) = E[(Y-t)^r | Y > t]. Throws lg::numeric_error once S(t) underflows.
double residual_moment(const LGParams& par, double t, int r, const SeriesControl& ctl = {});

// mu(t) = mu_1(t); mu(0) = E[Y].
double mean_residual_life(const LGParams& par, double t, const SeriesControl& ctl = {});

// m_r(t) = E[(t-Y)^r | Y <= t]; bounded by t^r.
double reversed_residual_moment(const LGParams& par, double t, int r,
                                const SeriesControl& ctl = {});

// B_F[F(y)] = I(y) / (mu F(y)).
CurvePoint bonferroni_curve(const LGParams& par, double y, const SeriesControl& ctl = {});

// L_F[F(y)] = B_F[F(y)] F(y) = I(y) / mu.
CurvePoint lorenz_curve(const LGParams& par, double y, const SeriesControl& ctl = {});

// S_F[F(t)] = (1/mu) integral_0^t S(u) du; rises from 0 to 1.
CurvePoint scaled_ttt(const LGParams& par, double t, const SeriesControl& ctl = {});

// G = 1 - integral_0^inf S_F[F(t)] f(t) dt.
double gini_index(const LGParams& par, const SeriesControl& ctl = {});

// delta_1 = 2 mu F(mu) - 2 I(mu).
double mean_deviation_about_mean(const LGParams& par, const SeriesControl& ctl = {});

// delta_2 = mu - 2 I(M) with M the median.
double mean_deviation_about_median(const LGParams& par, const SeriesControl& ctl = {});

// Plot-ready grids. Probability-scale curves (Lorenz, Bonferroni, TTT) and
// the y-scale diagnostics (hazard, MRL) share the same u-grid
// u_i = i/(points+1) mapped through the quantile function.
enum class CurveKind { Lorenz, Bonferroni, TTT, Hazard, MRL };

struct CurveRow {
    double y;      // evaluation abscissa
    double u;      // F(y)
    double value;  // curve ordinate
};

std::vector<CurveRow> curve_grid(const LGParams& par, CurveKind kind, int points = 200,
                                 const SeriesControl& ctl = {});

}  // namespace lg

#endif
