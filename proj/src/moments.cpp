#include "lg/moments.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "lg/errors.hpp"
#include "lg/quadrature.hpp"
#include "lg/special_functions.hpp"

namespace lg {

namespace {

// Geometric-majorant bound on the dropped tail sum_{j>J} (j+1)|p|^j x inner,
// using the last term as the inner scale.
double tail_estimate(double absp, std::size_t last_j, double last_term) {
    if (absp == 0.0) return 0.0;
    const double j = static_cast<double>(last_j);
    double rho = absp * (j + 2.0) / (j + 1.0);
    if (rho >= 1.0) rho = absp;
    return std::fabs(last_term) * rho / (1.0 - rho);
}

double sign_pow(double p, std::size_t j) {
    return (p < 0.0 && (j % 2 == 1)) ? -1.0 : 1.0;
}

}  // namespace

void SeriesControl::validate() const {
    if (!(rel_tol > 0.0) || rel_tol > 1e-3) {
        throw std::invalid_argument("SeriesControl: rel_tol must lie in (0, 1e-3]");
    }
    if (max_terms < 100) {
        throw std::invalid_argument("SeriesControl: max_terms must be at least 100");
    }
    if (!(warn_threshold > 0.0) || !(warn_threshold < 1.0)) {
        throw std::invalid_argument("SeriesControl: warn_threshold must lie in (0,1)");
    }
}

MomentResult raw_moment(const LGParams& par, int r, const SeriesControl& ctl) {
    ctl.validate();
    if (r < 1) {
        throw std::domain_error("raw_moment: r must be a positive integer");
    }
    const double t = par.theta;
    MomentResult out;
    out.slow_series_warning = std::fabs(par.p) > ctl.warn_threshold;

    if (par.p == 0.0) {
        out.value = std::exp(log_gamma(r + 1.0)) * (t + r + 1.0) / (std::pow(t, r) * (t + 1.0));
        out.terms_used = 1;
        return out;
    }
    if (par.p <= -1.0) {
        out.value = integrate([&](double y) { return std::pow(y, r) * pdf(par, y); }, 0.0,
                              std::numeric_limits<double>::infinity());
        out.fallback_used = true;
        return out;
    }

    const double pref = t * t * (1.0 - par.p) / (t + 1.0);
    const double lr = std::log(t / (t + 1.0));
    const double labsp = std::log(std::fabs(par.p));
    double total = 0.0;
    for (std::size_t j = 0; j < ctl.max_terms; ++j) {
        const double beta = t * (j + 1.0);
        const double lbeta = std::log(beta);
        double inner = 0.0;
        for (std::size_t i = 0; i <= j; ++i) {
            const double a = r + static_cast<double>(i) + 1.0;
            const double lt = log_binomial(static_cast<double>(j), static_cast<double>(i)) +
                              static_cast<double>(i) * lr + log_gamma(a) - a * lbeta;
            inner += std::exp(lt) * (1.0 + a / beta);
        }
        const double mag = (j + 1.0) * std::exp(static_cast<double>(j) * labsp) * inner;
        total += sign_pow(par.p, j) * mag;
        out.terms_used = j + 1;
        if (j >= 10 && mag < ctl.rel_tol * std::fabs(total)) {
            out.truncation_estimate = pref * tail_estimate(std::fabs(par.p), j, mag);
            out.value = pref * total;
            return out;
        }
    }
    throw convergence_error("raw_moment: series hit max_terms=" + std::to_string(ctl.max_terms) +
                            " before rel_tol at p=" + std::to_string(par.p));
}

MomentResult lg_mean(const LGParams& par, const SeriesControl& ctl) {
    ctl.validate();
    const double t = par.theta;
    MomentResult out;
    out.slow_series_warning = std::fabs(par.p) > ctl.warn_threshold;

    if (par.p == 0.0) {
        out.value = (t + 2.0) / (t * (t + 1.0));
        out.terms_used = 1;
        return out;
    }
    if (par.p <= -1.0) {
        out.value = integrate([&](double y) { return y * pdf(par, y); }, 0.0,
                              std::numeric_limits<double>::infinity());
        out.fallback_used = true;
        return out;
    }

    // (j+1)!/(j-i)! p^j (theta/(theta+1))^i (i+1)/(theta(j+1))^(i+2)
    //   x (1 + (i+2)/(theta(j+1)))
    const double pref = t * t * (1.0 - par.p) / (t + 1.0);
    const double lr = std::log(t / (t + 1.0));
    const double labsp = std::log(std::fabs(par.p));
    double total = 0.0;
    for (std::size_t j = 0; j < ctl.max_terms; ++j) {
        const double beta = t * (j + 1.0);
        const double lbeta = std::log(beta);
        double inner = 0.0;
        for (std::size_t i = 0; i <= j; ++i) {
            const double di = static_cast<double>(i);
            const double lt = log_gamma(static_cast<double>(j) + 2.0) -
                              log_gamma(static_cast<double>(j - i) + 1.0) + di * lr -
                              (di + 2.0) * lbeta + std::log(di + 1.0);
            inner += std::exp(lt) * (1.0 + (di + 2.0) / beta);
        }
        const double mag = std::exp(static_cast<double>(j) * labsp) * inner;
        total += sign_pow(par.p, j) * mag;
        out.terms_used = j + 1;
        if (j >= 10 && mag < ctl.rel_tol * std::fabs(total)) {
            out.truncation_estimate = pref * tail_estimate(std::fabs(par.p), j, mag);
            out.value = pref * total;
            return out;
        }
    }
    throw convergence_error("mean: series hit max_terms before rel_tol at p=" +
                            std::to_string(par.p));
}

double mgf_eval(const LGParams& par, double t, int k_max, const SeriesControl& ctl) {
    ctl.validate();
    if (!(t < par.theta)) {
        throw std::domain_error("mgf_eval: requires t < theta (MGF existence boundary)");
    }
    if (k_max < 1 || k_max > 170) {
        throw std::domain_error("mgf_eval: k_max must lie in [1, 170]");
    }
    if (t == 0.0) return 1.0;
    double total = 1.0;  // k = 0 term
    double tk_over_kfact = 1.0;
    for (int k = 1; k <= k_max; ++k) {
        tk_over_kfact *= t / k;
        total += tk_over_kfact * raw_moment(par, k, ctl).value;
    }
    return total;
}

MomentResult pwm(const LGParams& par, int s, int r, const SeriesControl& ctl) {
    ctl.validate();
    if (s < 1) throw std::domain_error("pwm: s must be a positive integer");
    if (r < 0) throw std::domain_error("pwm: r must be nonnegative");
    const double t = par.theta;
    MomentResult out;
    out.slow_series_warning = std::fabs(par.p) > ctl.warn_threshold;

    auto by_quadrature = [&]() {
        return integrate(
            [&](double y) { return std::pow(y, s) * std::pow(cdf(par, y), r) * pdf(par, y); },
            0.0, std::numeric_limits<double>::infinity());
    };
    if (par.p <= -1.0) {
        out.value = by_quadrature();
        out.fallback_used = true;
        return out;
    }

    // tau_{s,r} = theta^2 (1-p)/(theta+1)
    //   sum_k C(r+1+k, k) p^k sum_{l=0}^r (-1)^l C(r,l) sum_{m=0}^{k+l} C(k+l, m)
    //   (theta/(theta+1))^m [Gamma(s+m+1)/beta^(s+m+1) + Gamma(s+m+2)/beta^(s+m+2)],
    // beta = theta (k+l+1). Obtained from F^r f by expanding (1-pc)^-(r+2)
    // and (1-c)^r; the k = l = 0 index is regular here.
    const double pref = t * t * (1.0 - par.p) / (t + 1.0);
    const double lr_ratio = std::log(t / (t + 1.0));
    const double labsp = par.p == 0.0 ? 0.0 : std::log(std::fabs(par.p));
    double total = 0.0;
    for (std::size_t k = 0; k < ctl.max_terms; ++k) {
        const double dk = static_cast<double>(k);
        const double lck = log_gamma(r + 2.0 + dk) - log_gamma(r + 2.0) - log_gamma(dk + 1.0);
        double outer = 0.0;
        for (int l = 0; l <= r; ++l) {
            const double m_top = dk + l;
            const double beta = t * (m_top + 1.0);
            const double lbeta = std::log(beta);
            double inner = 0.0;
            for (double m = 0.0; m <= m_top; m += 1.0) {
                const double lb = log_binomial(m_top, m) + m * lr_ratio;
                inner += std::exp(lb + log_gamma(s + m + 1.0) - (s + m + 1.0) * lbeta) +
                         std::exp(lb + log_gamma(s + m + 2.0) - (s + m + 2.0) * lbeta);
            }
            outer += ((l % 2 == 0) ? 1.0 : -1.0) * std::exp(log_binomial(r, l)) * inner;
        }
        const double weight = std::exp(lck + dk * labsp);
        total += sign_pow(par.p, k) * weight * outer;
        out.terms_used = k + 1;
        if (par.p == 0.0) break;
        if (k >= 10 && weight * std::fabs(outer) < ctl.rel_tol * std::fabs(total)) {
            out.truncation_estimate = pref * tail_estimate(std::fabs(par.p), k, weight * outer);
            break;
        }
        if (k + 1 == ctl.max_terms) {
            out.value = by_quadrature();
            out.fallback_used = true;
            return out;
        }
    }
    out.value = pref * total;
    return out;
}

}  // namespace lg
