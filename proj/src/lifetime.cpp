#include "lg/lifetime.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "lg/errors.hpp"
#include "lg/moments.hpp"
#include "lg/quadrature.hpp"
#include "lg/special_functions.hpp"

namespace lg {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double sign_pow(double p, std::size_t j) {
    return (p < 0.0 && (j % 2 == 1)) ? -1.0 : 1.0;
}

// The recurring double sum
//   sum_j (j+1) p^j sum_{k=0}^j C(j,k) (theta/(theta+1))^k
//     [G(k+3; beta t) + beta G(k+2; beta t)] / beta^(k+3),    beta = theta(j+1),
// where G is the lower or the upper incomplete gamma. Multiplied by
// (1-p) theta^2/(theta+1) this is integral_0^t y f (lower) or
// integral_t^inf y f (upper). Assembled in log space with the regularized
// gammas so large k+j indices cannot overflow.
enum class Tail { Lower, Upper };

double young_mass_series(const LGParams& par, double t, Tail tail, const SeriesControl& ctl,
                         const char* op) {
    const double th = par.theta;
    const double lr = std::log(th / (th + 1.0));
    double total = 0.0;
    for (std::size_t j = 0; j < ctl.max_terms; ++j) {
        const double dj = static_cast<double>(j);
        const double beta = th * (dj + 1.0);
        const double lbeta = std::log(beta);
        const double x = beta * t;
        double inner = 0.0;
        for (std::size_t k = 0; k <= j; ++k) {
            const double dk = static_cast<double>(k);
            const double lb = log_binomial(dj, dk) + dk * lr;
            const double r3 = tail == Tail::Lower ? reg_lower_inc_gamma(dk + 3.0, x)
                                                  : reg_upper_inc_gamma(dk + 3.0, x);
            const double r2 = tail == Tail::Lower ? reg_lower_inc_gamma(dk + 2.0, x)
                                                  : reg_upper_inc_gamma(dk + 2.0, x);
            if (r3 > 0.0) {
                inner += std::exp(lb + log_gamma(dk + 3.0) - (dk + 3.0) * lbeta + std::log(r3));
            }
            if (r2 > 0.0) {
                inner += std::exp(lb + log_gamma(dk + 2.0) - (dk + 2.0) * lbeta + std::log(r2));
            }
        }
        const double mag = (dj + 1.0) * std::pow(std::fabs(par.p), dj) * inner;
        total += sign_pow(par.p, j) * mag;
        if (par.p == 0.0) break;
        if (j >= 10 && mag < ctl.rel_tol * std::fabs(total)) break;
        if (j + 1 == ctl.max_terms) {
            throw convergence_error(std::string(op) + ": series hit max_terms before rel_tol");
        }
    }
    return (1.0 - par.p) * th * th / (th + 1.0) * total;
}

double mean_value(const LGParams& par, const SeriesControl& ctl) {
    return lg_mean(par, ctl).value;
}

}  // namespace

double partial_mean(const LGParams& par, double b, const SeriesControl& ctl) {
    ctl.validate();
    if (!(b > 0.0)) throw std::domain_error("partial_mean: b must be positive");
    if (par.p <= -1.0) {
        return integrate([&](double y) { return y * pdf(par, y); }, 0.0, b);
    }
    return young_mass_series(par, b, Tail::Lower, ctl, "partial_mean");
}

double residual_moment(const LGParams& par, double t, int r, const SeriesControl& ctl) {
    ctl.validate();
    if (!(t > 0.0)) throw std::domain_error("residual_moment: t must be positive");
    if (r < 1) throw std::domain_error("residual_moment: r must be a positive integer");
    const double S = survival(par, t);
    if (S < 1e-290) {
        throw numeric_error("residual_moment: survival underflowed at t=" + std::to_string(t));
    }
    if (par.p <= -1.0) {
        return integrate([&](double y) { return std::pow(y - t, r) * pdf(par, y); }, t, kInf) / S;
    }

    const double th = par.theta;
    const double lr_ratio = std::log(th / (th + 1.0));
    double total = 0.0;
    for (std::size_t j = 0; j < ctl.max_terms; ++j) {
        const double dj = static_cast<double>(j);
        const double beta = th * (dj + 1.0);
        const double lbeta = std::log(beta);
        const double x = beta * t;
        double mid = 0.0;
        for (std::size_t k = 0; k <= j; ++k) {
            const double dk = static_cast<double>(k);
            const double lb = log_binomial(dj, dk) + dk * lr_ratio;
            double isum = 0.0;
            for (int i = 0; i <= r; ++i) {
                // binomial expansion of (y-t)^r; the C(r,i) factor matters
                // for r >= 2 (quadrature agreement pins it down)
                const double a = r + dk - i + 2.0;
                const double q_hi = reg_upper_inc_gamma(a, x);
                const double q_lo = reg_upper_inc_gamma(a - 1.0, x);
                double piece = 0.0;
                if (q_hi > 0.0) {
                    piece += std::exp(log_gamma(a) - a * lbeta + std::log(q_hi));
                }
                if (q_lo > 0.0) {
                    piece += std::exp(log_gamma(a - 1.0) - (a - 1.0) * lbeta + std::log(q_lo));
                }
                const double sgn = (i % 2 == 0) ? 1.0 : -1.0;
                isum += sgn * std::exp(log_binomial(r, i) + i * std::log(t)) * piece;
            }
            mid += std::exp(lb) * isum;
        }
        const double term = (dj + 1.0) * std::pow(par.p, dj) * mid;
        total += term;
        if (par.p == 0.0) break;
        if (j >= 10 && std::fabs(term) < ctl.rel_tol * std::fabs(total)) break;
        if (j + 1 == ctl.max_terms) {
            throw convergence_error("residual_moment: series hit max_terms before rel_tol");
        }
    }
    return (1.0 - par.p) * th * th / ((th + 1.0) * S) * total;
}

double mean_residual_life(const LGParams& par, double t, const SeriesControl& ctl) {
    ctl.validate();
    if (!(t >= 0.0)) throw std::domain_error("mean_residual_life: t must be nonnegative");
    if (t == 0.0) return mean_value(par, ctl);
    const double S = survival(par, t);
    if (S < 1e-290) {
        throw numeric_error("mean_residual_life: survival underflowed at t=" +
                            std::to_string(t));
    }
    if (par.p <= -1.0) {
        return integrate([&](double y) { return (y - t) * pdf(par, y); }, t, kInf) / S;
    }
    return young_mass_series(par, t, Tail::Upper, ctl, "mean_residual_life") / S - t;
}

double reversed_residual_moment(const LGParams& par, double t, int r,
                                const SeriesControl& ctl) {
    ctl.validate();
    if (!(t > 0.0)) throw std::domain_error("reversed_residual_moment: t must be positive");
    if (r < 1) throw std::domain_error("reversed_residual_moment: r must be positive");
    const double F = cdf(par, t);
    if (F < 1e-12) {
        throw numeric_error("reversed_residual_moment: F(t) degenerate at t=" +
                            std::to_string(t));
    }
    if (par.p <= -1.0) {
        return integrate([&](double y) { return std::pow(t - y, r) * pdf(par, y); }, 0.0, t) / F;
    }

    const double th = par.theta;
    const double lr_ratio = std::log(th / (th + 1.0));
    double total = 0.0;
    for (std::size_t j = 0; j < ctl.max_terms; ++j) {
        const double dj = static_cast<double>(j);
        const double beta = th * (dj + 1.0);
        const double lbeta = std::log(beta);
        const double x = beta * t;
        double mid = 0.0;
        for (std::size_t k = 0; k <= j; ++k) {
            const double dk = static_cast<double>(k);
            const double lb = log_binomial(dj, dk) + dk * lr_ratio;
            double isum = 0.0;
            for (int i = 0; i <= r; ++i) {
                const double a = r + dk - i + 2.0;
                const double p_hi = reg_lower_inc_gamma(a, x);
                const double p_lo = reg_lower_inc_gamma(a - 1.0, x);
                double piece = 0.0;
                if (p_hi > 0.0) {
                    piece += std::exp(log_gamma(a) - a * lbeta + std::log(p_hi));
                }
                if (p_lo > 0.0) {
                    piece += std::exp(log_gamma(a - 1.0) - (a - 1.0) * lbeta + std::log(p_lo));
                }
                const double sgn = ((r + i) % 2 == 0) ? 1.0 : -1.0;
                isum += sgn * std::exp(log_binomial(r, i) + i * std::log(t)) * piece;
            }
            mid += std::exp(lb) * isum;
        }
        const double term = (dj + 1.0) * std::pow(par.p, dj) * mid;
        total += term;
        if (par.p == 0.0) break;
        if (j >= 10 && std::fabs(term) < ctl.rel_tol * std::fabs(total)) break;
        if (j + 1 == ctl.max_terms) {
            throw convergence_error(
                "reversed_residual_moment: series hit max_terms before rel_tol");
        }
    }
    return (1.0 - par.p) * th * th / ((th + 1.0) * F) * total;
}

CurvePoint bonferroni_curve(const LGParams& par, double y, const SeriesControl& ctl) {
    ctl.validate();
    if (!(y > 0.0)) throw std::domain_error("bonferroni_curve: y must be positive");
    const double F = cdf(par, y);
    if (F < 1e-12) {
        throw numeric_error("bonferroni_curve: F(y) degenerate at y=" + std::to_string(y));
    }
    const double mu = mean_value(par, ctl);
    return {F, partial_mean(par, y, ctl) / (mu * F)};
}

CurvePoint lorenz_curve(const LGParams& par, double y, const SeriesControl& ctl) {
    ctl.validate();
    if (!(y > 0.0)) throw std::domain_error("lorenz_curve: y must be positive");
    const double mu = mean_value(par, ctl);
    return {cdf(par, y), partial_mean(par, y, ctl) / mu};
}

CurvePoint scaled_ttt(const LGParams& par, double t, const SeriesControl& ctl) {
    ctl.validate();
    if (!(t > 0.0)) throw std::domain_error("scaled_ttt: t must be positive");
    const double mu = mean_value(par, ctl);
    if (par.p <= -1.0) {
        const double v = integrate([&](double u) { return survival(par, u); }, 0.0, t);
        return {cdf(par, t), v / mu};
    }

    // (1-p)/mu sum_j p^j sum_{k=0}^{j+1} C(j+1,k) (theta/(theta+1))^k
    //   gamma_low(k+1; beta t) / beta^(k+1),   beta = theta (j+1)
    const double th = par.theta;
    const double lr_ratio = std::log(th / (th + 1.0));
    double total = 0.0;
    for (std::size_t j = 0; j < ctl.max_terms; ++j) {
        const double dj = static_cast<double>(j);
        const double beta = th * (dj + 1.0);
        const double lbeta = std::log(beta);
        const double x = beta * t;
        double inner = 0.0;
        for (std::size_t k = 0; k <= j + 1; ++k) {
            const double dk = static_cast<double>(k);
            const double pk = reg_lower_inc_gamma(dk + 1.0, x);
            if (pk > 0.0) {
                inner += std::exp(log_binomial(dj + 1.0, dk) + dk * lr_ratio -
                                  (dk + 1.0) * lbeta + log_gamma(dk + 1.0) + std::log(pk));
            }
        }
        const double term = std::pow(par.p, dj) * inner;
        total += term;
        if (par.p == 0.0) break;
        if (j >= 10 && std::fabs(term) < ctl.rel_tol * std::fabs(total)) break;
        if (j + 1 == ctl.max_terms) {
            throw convergence_error("scaled_ttt: series hit max_terms before rel_tol");
        }
    }
    return {cdf(par, t), (1.0 - par.p) * total / mu};
}

double gini_index(const LGParams& par, const SeriesControl& ctl) {
    ctl.validate();
    const double cf = integrate(
        [&](double t) {
            return t > 0.0 ? scaled_ttt(par, t, ctl).value * pdf(par, t) : 0.0;
        },
        0.0, kInf, 1e-9);
    return 1.0 - cf;
}

double mean_deviation_about_mean(const LGParams& par, const SeriesControl& ctl) {
    ctl.validate();
    const double mu = mean_value(par, ctl);
    return 2.0 * mu * cdf(par, mu) - 2.0 * partial_mean(par, mu, ctl);
}

double mean_deviation_about_median(const LGParams& par, const SeriesControl& ctl) {
    ctl.validate();
    const double mu = mean_value(par, ctl);
    const double med = quantile(par, 0.5, 1e-12);
    return mu - 2.0 * partial_mean(par, med, ctl);
}

std::vector<CurveRow> curve_grid(const LGParams& par, CurveKind kind, int points,
                                 const SeriesControl& ctl) {
    ctl.validate();
    if (points < 1) throw std::domain_error("curve_grid: points must be positive");
    std::vector<CurveRow> rows;
    rows.reserve(points);
    for (int i = 1; i <= points; ++i) {
        const double u = static_cast<double>(i) / (points + 1.0);
        const double y = quantile(par, u, 1e-10);
        double value = 0.0;
        switch (kind) {
            case CurveKind::Lorenz: value = lorenz_curve(par, y, ctl).value; break;
            case CurveKind::Bonferroni: value = bonferroni_curve(par, y, ctl).value; break;
            case CurveKind::TTT: value = scaled_ttt(par, y, ctl).value; break;
            case CurveKind::Hazard: value = hazard(par, y); break;
            case CurveKind::MRL: value = mean_residual_life(par, y, ctl); break;
        }
        rows.push_back({y, u, value});
    }
    return rows;
}

}  // namespace lg
