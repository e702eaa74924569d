#include "lg/inference.hpp"

#include <boost/math/distributions/normal.hpp>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "lg/errors.hpp"
#include "lg/special_functions.hpp"

namespace lg {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// Per-observation kernel c = (1 + theta y/(theta+1)) e^(-theta y) and its
// first two theta-derivatives.
struct Kernel {
    double c;
    double c_t;
    double c_tt;
};

Kernel kernel(double y, double t) {
    const double e = (t * y > 700.0) ? 0.0 : std::exp(-t * y);
    const double A = 1.0 + t * y / (t + 1.0);
    const double A_t = y / ((t + 1.0) * (t + 1.0));
    const double A_tt = -2.0 * y / ((t + 1.0) * (t + 1.0) * (t + 1.0));
    Kernel k;
    k.c = e * A;
    k.c_t = e * (A_t - y * A);
    k.c_tt = e * (A_tt - 2.0 * y * A_t + y * y * A);
    return k;
}

void check_fit_sample(const Sample& data) {
    if (data.size() < 2) {
        throw std::invalid_argument("fit: need at least 2 observations");
    }
}

std::array<double, 4> invert_2x2(const std::array<double, 4>& m) {
    const double det = m[0] * m[3] - m[1] * m[2];
    if (!(std::fabs(det) > 0.0) || !std::isfinite(det)) {
        throw numeric_error("observed information matrix is singular");
    }
    return {m[3] / det, -m[1] / det, -m[2] / det, m[0] / det};
}

// Central-difference Hessian of the log-likelihood; the fallback covariance
// route when the analytic matrix disagrees with it.
std::array<double, 4> fd_information(const LGParams& par, const Sample& data) {
    auto ll = [&](double p, double t) { return log_likelihood(LGParams(p, t), data); };
    const double hp = 1e-5 * std::max(1.0, std::fabs(par.p));
    const double ht = 1e-5 * std::max(1.0, std::fabs(par.theta));
    const double p = par.p;
    const double t = par.theta;
    const double lpp =
        (ll(p + hp, t) - 2.0 * ll(p, t) + ll(p - hp, t)) / (hp * hp);
    const double ltt =
        (ll(p, t + ht) - 2.0 * ll(p, t) + ll(p, t - ht)) / (ht * ht);
    const double lpt = (ll(p + hp, t + ht) - ll(p + hp, t - ht) - ll(p - hp, t + ht) +
                        ll(p - hp, t - ht)) /
                       (4.0 * hp * ht);
    return {-lpp, -lpt, -lpt, -ltt};
}

// Fill covariance and standard errors from the observed information at the
// final parameters; falls back to finite differences when the analytic and
// numeric Hessians disagree beyond 0.5% on some element.
void finalize_cov(FitResult& fit, const Sample& data) {
    std::array<double, 4> info;
    bool used_fd = false;
    try {
        info = observed_information(fit.params, data);
        const auto fd = fd_information(fit.params, data);
        for (int i = 0; i < 4; ++i) {
            const double scale = std::max({std::fabs(info[i]), std::fabs(fd[i]), 1e-8});
            if (std::fabs(info[i] - fd[i]) > 5e-3 * scale) {
                info = fd;
                used_fd = true;
                break;
            }
        }
    } catch (const std::exception&) {
        info = fd_information(fit.params, data);
        used_fd = true;
    }
    try {
        fit.cov = invert_2x2(info);
        fit.std_errors = {fit.cov[0] > 0.0 ? std::sqrt(fit.cov[0]) : kNaN,
                          fit.cov[3] > 0.0 ? std::sqrt(fit.cov[3]) : kNaN};
    } catch (const numeric_error&) {
        fit.cov = {kNaN, kNaN, kNaN, kNaN};
        fit.std_errors = {kNaN, kNaN};
        if (!fit.message.empty()) fit.message += "; ";
        fit.message += "observed information not invertible";
    }
    fit.fd_hessian_used = used_fd;
}

}  // namespace

void EMConfig::validate() const {
    if (!(tol_param > 0.0) || !(tol_loglik > 0.0)) {
        throw std::invalid_argument("EMConfig: tolerances must be positive");
    }
    if (max_iter < 1) {
        throw std::invalid_argument("EMConfig: max_iter must be at least 1");
    }
    if (!(theta_bracket.first > 0.0)) {
        throw std::invalid_argument("EMConfig: theta bracket low end must be positive");
    }
    if (theta_bracket.second != 0.0 && !(theta_bracket.second > theta_bracket.first)) {
        throw std::invalid_argument("EMConfig: theta bracket must satisfy low < high");
    }
}

double log_likelihood(const LGParams& par, const Sample& data) {
    const double t = par.theta;
    const double n = static_cast<double>(data.size());
    double acc = 0.0;
    for (double y : data.sorted()) {
        acc += std::log1p(y) - t * y - 2.0 * std::log1p(-par.p * kernel(y, t).c);
    }
    return n * (2.0 * std::log(t) - std::log(1.0 + t) + std::log1p(-par.p)) + acc;
}

std::array<double, 2> score(const LGParams& par, const Sample& data) {
    const double t = par.theta;
    const double n = static_cast<double>(data.size());
    double sp = 0.0;
    double st = 0.0;
    for (double y : data.sorted()) {
        const Kernel k = kernel(y, t);
        const double u = 1.0 - par.p * k.c;
        sp += k.c / u;
        st += k.c_t / u;
    }
    return {-n / (1.0 - par.p) + 2.0 * sp,
            2.0 * n / t - n / (1.0 + t) - data.sum() + 2.0 * par.p * st};
}

std::array<double, 4> observed_information(const LGParams& par, const Sample& data) {
    const double t = par.theta;
    const double n = static_cast<double>(data.size());
    double sum_cc = 0.0;   // c^2/u^2
    double sum_ct = 0.0;   // c_t/u^2
    double sum_t1 = 0.0;   // c_tt/u
    double sum_t2 = 0.0;   // c_t^2/u^2
    for (double y : data.sorted()) {
        const Kernel k = kernel(y, t);
        const double u = 1.0 - par.p * k.c;
        sum_cc += k.c * k.c / (u * u);
        sum_ct += k.c_t / (u * u);
        sum_t1 += k.c_tt / u;
        sum_t2 += k.c_t * k.c_t / (u * u);
    }
    const double ipp = n / ((1.0 - par.p) * (1.0 - par.p)) - 2.0 * sum_cc;
    const double ipt = -2.0 * sum_ct;
    const double itt = 2.0 * n / (t * t) - n / ((1.0 + t) * (1.0 + t)) -
                       2.0 * par.p * sum_t1 - 2.0 * par.p * par.p * sum_t2;
    return {ipp, ipt, ipt, itt};
}

double lindley_mle(const Sample& data) {
    const double yb = data.mean();
    return (-(yb - 1.0) + std::sqrt((yb - 1.0) * (yb - 1.0) + 8.0 * yb)) / (2.0 * yb);
}

LGParams default_init(const Sample& data) {
    check_fit_sample(data);
    const double t0 = lindley_mle(data);
    const auto sc = score(LGParams(0.0, t0), data);
    const double p0 = sc[0] > 0.0 ? 0.25 : -0.25;
    return LGParams(p0, t0);
}

namespace {

// Complete-data theta score with the E-step weights held fixed:
//   g(t) = 2n/t - n/(t+1) - sum y_i + sum (z_i - 1) c_t(t, y_i)/c(t, y_i).
double mstep_theta_score(double t, const Sample& data, const std::vector<double>& z) {
    const double n = static_cast<double>(data.size());
    double acc = 0.0;
    const auto& ys = data.sorted();
    for (std::size_t i = 0; i < ys.size(); ++i) {
        const Kernel k = kernel(ys[i], t);
        if (k.c > 0.0) acc += (z[i] - 1.0) * (k.c_t / k.c);
    }
    return 2.0 * n / t - n / (1.0 + t) - data.sum() + acc;
}

double mstep_theta_score_deriv(double t, const Sample& data, const std::vector<double>& z) {
    const double n = static_cast<double>(data.size());
    double acc = 0.0;
    const auto& ys = data.sorted();
    for (std::size_t i = 0; i < ys.size(); ++i) {
        const Kernel k = kernel(ys[i], t);
        if (k.c > 0.0) {
            const double ratio = k.c_t / k.c;
            acc += (z[i] - 1.0) * (k.c_tt / k.c - ratio * ratio);
        }
    }
    return -2.0 * n / (t * t) + n / ((1.0 + t) * (1.0 + t)) + acc;
}

double solve_mstep_theta(const Sample& data, const std::vector<double>& z, double theta_now,
                         const EMConfig& cfg) {
    double lo = cfg.theta_bracket.first;
    double hi = cfg.theta_bracket.second > 0.0 ? cfg.theta_bracket.second : 10.0 * theta_now;
    double glo = mstep_theta_score(lo, data, z);
    double ghi = mstep_theta_score(hi, data, z);
    int expand = 0;
    while (glo * ghi > 0.0) {
        hi *= 2.0;
        ghi = mstep_theta_score(hi, data, z);
        if (++expand > 200) {
            throw convergence_error("EM M-step: no sign change for theta in bracket (" +
                                    std::to_string(lo) + ", " + std::to_string(hi) + ")");
        }
    }
    for (int it = 0; it < 200 && (hi - lo) > 1e-10 * std::max(1.0, hi); ++it) {
        const double mid = 0.5 * (lo + hi);
        const double gm = mstep_theta_score(mid, data, z);
        if ((gm <= 0.0) == (glo <= 0.0)) {
            lo = mid;
            glo = gm;
        } else {
            hi = mid;
        }
    }
    double t = 0.5 * (lo + hi);
    for (int k = 0; k < 2; ++k) {
        const double d = mstep_theta_score_deriv(t, data, z);
        if (d == 0.0) break;
        const double next = t - mstep_theta_score(t, data, z) / d;
        if (next > lo && next < hi) t = next;
    }
    return t;
}

}  // namespace

FitResult fit_em(const Sample& data, const LGParams& init, const EMConfig& cfg) {
    check_fit_sample(data);
    cfg.validate();
    double p = init.p;
    double t = init.theta;
    if (p == 0.0) {
        // p = 0 makes every E-step weight 1 and the p-update returns 0, so
        // the iteration would never leave the Lindley submodel.
        p = score(LGParams(0.0, t), data)[0] > 0.0 ? 0.25 : -0.25;
    }

    FitResult fit(LGParams(p, t));
    fit.method = FitMethod::EM;
    const double n = static_cast<double>(data.size());
    const auto& ys = data.sorted();
    std::vector<double> z(ys.size());
    double ll = log_likelihood(LGParams(p, t), data);
    fit.trace.push_back({0, p, t, ll});

    for (int iter = 1; iter <= cfg.max_iter; ++iter) {
        for (std::size_t i = 0; i < ys.size(); ++i) {
            const double pc = p * kernel(ys[i], t).c;
            z[i] = (1.0 + pc) / (1.0 - pc);
        }
        double zsum = 0.0;
        for (double zi : z) zsum += zi;
        const double p_next = 1.0 - n / zsum;
        const double t_next = solve_mstep_theta(data, z, t, cfg);

        const double ll_next = log_likelihood(LGParams(p_next, t_next), data);
        const double dp = std::fabs(p_next - p);
        const double dt = std::fabs(t_next - t);
        const double dll = std::fabs(ll_next - ll);
        p = p_next;
        t = t_next;
        ll = ll_next;
        fit.trace.push_back({iter, p, t, ll});
        fit.iterations = iter;
        if (dp < cfg.tol_param && dt < cfg.tol_param && dll < cfg.tol_loglik) {
            fit.converged = true;
            break;
        }
    }
    fit.params = LGParams(p, t);
    fit.loglik = ll;
    fit.neg2loglik = -2.0 * ll;
    if (!fit.converged) {
        fit.message = "EM reached max_iter=" + std::to_string(cfg.max_iter) +
                      " before the tolerances";
    }
    finalize_cov(fit, data);
    return fit;
}

FitResult fit_em(const Sample& data) { return fit_em(data, default_init(data), EMConfig{}); }

FitResult fit_direct(const Sample& data, const LGParams& init) {
    check_fit_sample(data);
    // Ascent in (u, theta) with p = 1 - e^(-u), so p ranges over (-inf, 1)
    // unconstrained; theta stays positive through the line search.
    double p = init.p;
    double t = init.theta;
    double ll = log_likelihood(LGParams(p, t), data);

    FitResult fit(LGParams(p, t));
    fit.method = FitMethod::DirectNewton;
    fit.trace.push_back({0, p, t, ll});
    const double n = static_cast<double>(data.size());
    const double gtol = 1e-9 * n;
    bool converged = false;
    std::string boundary_note;

    int iter = 0;
    for (; iter < 500; ++iter) {
        const auto g = score(LGParams(p, t), data);
        const auto info = observed_information(LGParams(p, t), data);
        const double pu = 1.0 - p;  // dp/du
        // Gradient and negated Hessian in (u, theta) coordinates.
        const double gu = g[0] * pu;
        const double gt = g[1];
        double iuu = info[0] * pu * pu + g[0] * pu;  // -l_uu
        double iut = info[1] * pu;
        double itt = info[3];

        if (std::fabs(gu) < gtol && std::fabs(gt) < gtol) {
            converged = true;
            break;
        }

        // Newton direction from the negated Hessian; ridge it into positive
        // definiteness when needed so the step stays an ascent direction.
        double det = iuu * itt - iut * iut;
        if (!(iuu > 0.0) || !(det > 0.0)) {
            const double ridge = 1e-4 + std::max(0.0, -std::min(iuu, itt));
            iuu += ridge;
            itt += ridge;
            det = iuu * itt - iut * iut;
            if (!(det > 0.0)) {
                iut = 0.0;
                det = iuu * itt;
            }
        }
        double du = (itt * gu - iut * gt) / det;
        double dt = (-iut * gu + iuu * gt) / det;

        const double slope = gu * du + gt * dt;  // > 0 by construction
        double lambda = 1.0;
        bool stepped = false;
        const double u_now = -std::log1p(-p);
        for (int half = 0; half < 60; ++half, lambda *= 0.5) {
            const double u_new = u_now + lambda * du;
            const double t_new = t + lambda * dt;
            if (!(t_new > 0.0) || !std::isfinite(u_new)) continue;
            const double p_new = 1.0 - std::exp(-u_new);
            if (!(p_new < 1.0)) continue;
            const double ll_new = log_likelihood(LGParams(p_new, t_new), data);
            if (std::isfinite(ll_new) && ll_new >= ll + 1e-4 * lambda * slope) {
                p = p_new;
                t = t_new;
                ll = ll_new;
                stepped = true;
                break;
            }
        }
        fit.trace.push_back({iter + 1, p, t, ll});
        if (!stepped) {
            boundary_note = "line search stalled";
            break;
        }
        if (t < 1e-8) {
            boundary_note = "theta converged to the lower boundary";
            break;
        }
        if (p < -1e8 || -std::log1p(-p) > 40.0) {
            boundary_note = p < 0 ? "p diverged towards -infinity"
                                  : "p converged to the upper boundary 1";
            break;
        }
    }

    fit.params = LGParams(p, t);
    fit.loglik = ll;
    fit.neg2loglik = -2.0 * ll;
    fit.iterations = iter;
    fit.converged = converged;
    if (!converged) {
        fit.message = boundary_note.empty()
                          ? "Newton ascent reached the iteration cap"
                          : boundary_note;
    }
    finalize_cov(fit, data);
    return fit;
}

FitResult fit_direct(const Sample& data) { return fit_direct(data, default_init(data)); }

std::pair<Interval, Interval> wald_ci(const FitResult& fit, double gamma) {
    if (!(gamma > 0.0) || !(gamma < 1.0)) {
        throw std::domain_error("wald_ci: gamma must lie in (0,1)");
    }
    if (!std::isfinite(fit.std_errors[0]) || !std::isfinite(fit.std_errors[1])) {
        throw numeric_error("wald_ci: standard errors unavailable (singular information)");
    }
    const boost::math::normal_distribution<double> norm;
    const double z = boost::math::quantile(norm, 1.0 - gamma / 2.0);
    const Interval ip{fit.params.p - z * fit.std_errors[0], fit.params.p + z * fit.std_errors[0]};
    const Interval it{fit.params.theta - z * fit.std_errors[1],
                      fit.params.theta + z * fit.std_errors[1]};
    return {ip, it};
}

LrResult lr_test(const Sample& data, const FitResult& fit_full, NullConstraint constraint) {
    if (constraint != NullConstraint::PEqualsZero) {
        throw std::invalid_argument("lr_test: unsupported constraint");
    }
    if (!fit_full.converged) {
        throw std::invalid_argument("lr_test: full fit did not converge");
    }
    const double t0 = lindley_mle(data);
    const double ll0 = log_likelihood(LGParams(0.0, t0), data);
    double w = 2.0 * (fit_full.loglik - ll0);
    if (w < -1e-6) {
        throw numeric_error("lr_test: restricted fit beats the full fit (w=" +
                            std::to_string(w) + "); full optimum is suspect");
    }
    if (w < 0.0) w = 0.0;
    LrResult out;
    out.statistic = w;
    out.df = 1;
    out.p_value = reg_upper_inc_gamma(0.5, w / 2.0);
    out.restricted_theta = t0;
    out.restricted_loglik = ll0;
    return out;
}

}  // namespace lg
