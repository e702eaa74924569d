#include "lg/order_statistics.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "lg/errors.hpp"
#include "lg/quadrature.hpp"
#include "lg/special_functions.hpp"

namespace lg {

namespace {

double log_beta(double a, double b) {
    return log_gamma(a) + log_gamma(b) - log_gamma(a + b);
}

void require_series_p(double p, const char* op) {
    if (p <= -1.0) {
        throw std::domain_error(std::string(op) +
                                ": series route needs |p| < 1, got p=" + std::to_string(p));
    }
}

}  // namespace

OrderStatSpec::OrderStatSpec(int rank_, int n_) : rank(rank_), n(n_) {
    if (n < 1 || rank < 1 || rank > n) {
        throw std::domain_error("OrderStatSpec: need 1 <= rank <= n, got rank=" +
                                std::to_string(rank_) + ", n=" + std::to_string(n_));
    }
}

double orderstat_pdf(const LGParams& par, const OrderStatSpec& spec, double y) {
    const double F = cdf(par, y);
    const double S = 1.0 - F;
    const double norm = std::exp(-log_beta(spec.rank, spec.n - spec.rank + 1.0));
    return norm * std::pow(F, spec.rank - 1) * std::pow(S, spec.n - spec.rank) * pdf(par, y);
}

MomentResult orderstat_moment(const LGParams& par, const OrderStatSpec& spec, int k,
                              const SeriesControl& ctl) {
    ctl.validate();
    if (k < 1) throw std::domain_error("orderstat_moment: k must be a positive integer");
    MomentResult out;
    out.value = integrate(
        [&](double y) { return std::pow(y, k) * orderstat_pdf(par, spec, y); }, 0.0,
        std::numeric_limits<double>::infinity());
    return out;
}

// f_{r:n}(y) = [1/Be(r, n-r+1)] theta^2 (1-p)^(n-r+1) / (theta+1) (1+y) e^(-theta y)
//   sum_j sum_{i=0}^{r-1} (-1)^i C(r-1, i) C(n+j, j) p^j c(y)^(n-r+i+j)
// from expanding (1-c)^(r-1) binomially and (1-pc)^-(n+1) geometrically.
double orderstat_pdf_series(const LGParams& par, const OrderStatSpec& spec, double y,
                            const SeriesControl& ctl) {
    ctl.validate();
    require_series_p(par.p, "orderstat_pdf_series");
    const double t = par.theta;
    const int r = spec.rank;
    const int n = spec.n;
    const double c = lindley_survival_kernel(y, t);
    const double pref = std::exp(-log_beta(r, n - r + 1.0)) * t * t *
                        std::pow(1.0 - par.p, n - r + 1.0) / (t + 1.0) * (1.0 + y) *
                        std::exp(-t * y);
    double total = 0.0;
    for (std::size_t j = 0; j < ctl.max_terms; ++j) {
        const double dj = static_cast<double>(j);
        const double cnj = std::exp(log_gamma(n + 1.0 + dj) - log_gamma(n + 1.0) -
                                    log_gamma(dj + 1.0));
        double inner = 0.0;
        for (int i = 0; i < r; ++i) {
            const double sgn = (i % 2 == 0) ? 1.0 : -1.0;
            inner += sgn * std::exp(log_binomial(r - 1.0, i)) *
                     std::pow(c, n - r + i + dj);
        }
        const double term = cnj * std::pow(par.p, dj) * inner;
        total += term;
        if (j >= 10 && std::fabs(term) < ctl.rel_tol * std::fabs(total)) {
            return pref * total;
        }
        if (par.p == 0.0) return pref * total;
    }
    throw convergence_error("orderstat_pdf_series: hit max_terms before rel_tol");
}

// E[Y_{r:n}^k] with the y-integral done term by term:
//   integral y^(k+m) (1+y) e^(-beta y) dy
//     = Gamma(k+m+1)/beta^(k+m+1) + Gamma(k+m+2)/beta^(k+m+2),
// beta = theta (n-r+i+j+1), after the extra binomial expansion of c^M.
MomentResult orderstat_moment_series(const LGParams& par, const OrderStatSpec& spec, int k,
                                     const SeriesControl& ctl) {
    ctl.validate();
    require_series_p(par.p, "orderstat_moment_series");
    if (k < 1) throw std::domain_error("orderstat_moment_series: k must be positive");
    const double t = par.theta;
    const int r = spec.rank;
    const int n = spec.n;
    const double lr_ratio = std::log(t / (t + 1.0));
    const double pref = std::exp(-log_beta(r, n - r + 1.0)) * t * t *
                        std::pow(1.0 - par.p, n - r + 1.0) / (t + 1.0);
    MomentResult out;
    out.slow_series_warning = std::fabs(par.p) > ctl.warn_threshold;
    double total = 0.0;
    for (std::size_t j = 0; j < ctl.max_terms; ++j) {
        const double dj = static_cast<double>(j);
        const double lcnj = log_gamma(n + 1.0 + dj) - log_gamma(n + 1.0) - log_gamma(dj + 1.0);
        double outer = 0.0;
        for (int i = 0; i < r; ++i) {
            const double m_top = n - r + i + dj;
            const double beta = t * (m_top + 1.0);
            const double lbeta = std::log(beta);
            double inner = 0.0;
            for (double m = 0.0; m <= m_top; m += 1.0) {
                const double lb = log_binomial(m_top, m) + m * lr_ratio;
                inner += std::exp(lb + log_gamma(k + m + 1.0) - (k + m + 1.0) * lbeta) +
                         std::exp(lb + log_gamma(k + m + 2.0) - (k + m + 2.0) * lbeta);
            }
            const double sgn = (i % 2 == 0) ? 1.0 : -1.0;
            outer += sgn * std::exp(log_binomial(r - 1.0, i)) * inner;
        }
        const double term = std::exp(lcnj) * std::pow(par.p, dj) * outer;
        total += term;
        out.terms_used = j + 1;
        if (par.p == 0.0) break;
        if (j >= 10 && std::fabs(term) < ctl.rel_tol * std::fabs(total)) break;
        if (j + 1 == ctl.max_terms) {
            throw convergence_error("orderstat_moment_series: hit max_terms before rel_tol");
        }
    }
    out.value = pref * total;
    return out;
}

}  // namespace lg
