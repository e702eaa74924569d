#include "lg/models.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>

#include "lg/distribution.hpp"
#include "lg/errors.hpp"
#include "lg/inference.hpp"

namespace lg {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

void check_count(ModelName name, const std::vector<double>& params, std::size_t k) {
    if (params.size() != k) {
        throw std::domain_error("model " + model_label(name) + ": expected " +
                                std::to_string(k) + " parameters, got " +
                                std::to_string(params.size()));
    }
}

std::pair<double, double> el_pdf_cdf(double alpha, double gamma, double theta, double y) {
    if (!(theta > 0.0) || !(gamma > 0.0) || !(alpha <= 0.0 || alpha == 1.0)) {
        throw std::domain_error("EL: need theta, gamma > 0 and alpha <= 0 or alpha = 1");
    }
    const double w = 1.0 + theta + theta * y;
    const double ty_g = std::pow(theta * y, gamma);
    const double bracket = gamma * w * std::pow(theta * y, gamma - 1.0) - alpha;
    const double shape = std::pow(w / (1.0 + theta), alpha);
    // S(x) = ((1+theta+theta x)/(1+theta))^alpha e^(-(theta x)^gamma);
    // differentiating recovers the density below.
    const double surv = shape * std::exp(-ty_g);
    const double dens = theta / w * shape * bracket * std::exp(-ty_g);
    return {dens, 1.0 - surv};
}

// --- generic helpers for the numeric fits -------------------------------

using Objective = std::function<double(const std::vector<double>&)>;

// Finite-difference observed information of the log-likelihood in the
// natural parameters; returns sqrt of the inverse diagonal.
std::vector<double> fd_std_errors(ModelName name, const std::vector<double>& params,
                                  const Sample& data) {
    const std::size_t d = params.size();
    auto nll = [&](const std::vector<double>& x) {
        return -model_log_likelihood(name, x, data);
    };
    std::vector<double> h(d);
    for (std::size_t i = 0; i < d; ++i) h[i] = 1e-5 * std::max(1.0, std::fabs(params[i]));
    std::vector<std::vector<double>> H(d, std::vector<double>(d, 0.0));
    const double f0 = nll(params);
    for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t j = i; j < d; ++j) {
            auto shift = [&](double si, double sj) {
                std::vector<double> x = params;
                x[i] += si;
                x[j] += sj;
                return nll(x);
            };
            double v;
            if (i == j) {
                v = (shift(h[i], 0.0) - 2.0 * f0 + shift(-h[i], 0.0)) / (h[i] * h[i]);
            } else {
                v = (shift(h[i], h[j]) - shift(h[i], -h[j]) - shift(-h[i], h[j]) +
                     shift(-h[i], -h[j])) /
                    (4.0 * h[i] * h[j]);
            }
            H[i][j] = H[j][i] = v;
        }
    }
    // Gauss-Jordan inverse.
    std::vector<std::vector<double>> inv(d, std::vector<double>(d, 0.0));
    for (std::size_t i = 0; i < d; ++i) inv[i][i] = 1.0;
    for (std::size_t col = 0; col < d; ++col) {
        std::size_t piv = col;
        for (std::size_t r = col + 1; r < d; ++r) {
            if (std::fabs(H[r][col]) > std::fabs(H[piv][col])) piv = r;
        }
        if (!(std::fabs(H[piv][col]) > 0.0)) {
            return std::vector<double>(d, kNaN);
        }
        std::swap(H[piv], H[col]);
        std::swap(inv[piv], inv[col]);
        const double scale = H[col][col];
        for (std::size_t j = 0; j < d; ++j) {
            H[col][j] /= scale;
            inv[col][j] /= scale;
        }
        for (std::size_t r = 0; r < d; ++r) {
            if (r == col) continue;
            const double m = H[r][col];
            for (std::size_t j = 0; j < d; ++j) {
                H[r][j] -= m * H[col][j];
                inv[r][j] -= m * inv[col][j];
            }
        }
    }
    std::vector<double> se(d);
    for (std::size_t i = 0; i < d; ++i) se[i] = inv[i][i] > 0.0 ? std::sqrt(inv[i][i]) : kNaN;
    return se;
}

// Nelder-Mead minimizer, small and dependency-free; used for the EL fit.
std::pair<std::vector<double>, double> nelder_mead(const Objective& f,
                                                   std::vector<double> x0, double scale,
                                                   int max_iter) {
    const std::size_t d = x0.size();
    std::vector<std::vector<double>> simplex(d + 1, x0);
    for (std::size_t i = 0; i < d; ++i) simplex[i + 1][i] += scale;
    std::vector<double> fx(d + 1);
    for (std::size_t i = 0; i <= d; ++i) fx[i] = f(simplex[i]);

    for (int it = 0; it < max_iter; ++it) {
        std::vector<std::size_t> idx(d + 1);
        for (std::size_t i = 0; i <= d; ++i) idx[i] = i;
        std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
            return fx[a] < fx[b];
        });
        const std::size_t best = idx[0];
        const std::size_t worst = idx[d];
        const std::size_t second = idx[d - 1];
        if (std::fabs(fx[worst] - fx[best]) <
            1e-12 * (std::fabs(fx[best]) + 1e-12) + 1e-14) {
            break;
        }
        std::vector<double> centroid(d, 0.0);
        for (std::size_t i = 0; i <= d; ++i) {
            if (i == worst) continue;
            for (std::size_t j = 0; j < d; ++j) centroid[j] += simplex[i][j] / d;
        }
        auto blend = [&](double w) {
            std::vector<double> x(d);
            for (std::size_t j = 0; j < d; ++j) {
                x[j] = centroid[j] + w * (simplex[worst][j] - centroid[j]);
            }
            return x;
        };
        const auto reflected = blend(-1.0);
        const double fr = f(reflected);
        if (fr < fx[best]) {
            const auto expanded = blend(-2.0);
            const double fe = f(expanded);
            if (fe < fr) {
                simplex[worst] = expanded;
                fx[worst] = fe;
            } else {
                simplex[worst] = reflected;
                fx[worst] = fr;
            }
        } else if (fr < fx[second]) {
            simplex[worst] = reflected;
            fx[worst] = fr;
        } else {
            const auto contracted = blend(0.5);
            const double fc = f(contracted);
            if (fc < fx[worst]) {
                simplex[worst] = contracted;
                fx[worst] = fc;
            } else {
                for (std::size_t i = 0; i <= d; ++i) {
                    if (i == best) continue;
                    for (std::size_t j = 0; j < d; ++j) {
                        simplex[i][j] = 0.5 * (simplex[i][j] + simplex[best][j]);
                    }
                    fx[i] = f(simplex[i]);
                }
            }
        }
    }
    std::size_t best = 0;
    for (std::size_t i = 1; i <= d; ++i) {
        if (fx[i] < fx[best]) best = i;
    }
    return {simplex[best], fx[best]};
}

ModelFit fit_exponential(const Sample& data) {
    ModelFit fit;
    fit.spec = ModelSpec::make(ModelName::Exp);
    fit.labels = {"theta"};
    fit.params = {1.0 / data.mean()};
    fit.loglik = model_log_likelihood(ModelName::Exp, fit.params, data);
    fit.std_errors = fd_std_errors(ModelName::Exp, fit.params, data);
    fit.converged = true;
    return fit;
}

ModelFit fit_lindley(const Sample& data) {
    ModelFit fit;
    fit.spec = ModelSpec::make(ModelName::Lindley);
    fit.labels = {"theta"};
    fit.params = {lindley_mle(data)};
    fit.loglik = model_log_likelihood(ModelName::Lindley, fit.params, data);
    fit.std_errors = fd_std_errors(ModelName::Lindley, fit.params, data);
    fit.converged = true;
    return fit;
}

// Profile score in gamma: n/gamma + sum log y - n sum(y^g log y)/sum(y^g).
ModelFit fit_weibull(const Sample& data) {
    const auto& ys = data.sorted();
    const double n = static_cast<double>(ys.size());
    double sum_log = 0.0;
    for (double y : ys) sum_log += std::log(y);
    auto profile = [&](double g) {
        double s = 0.0;
        double sl = 0.0;
        for (double y : ys) {
            const double yg = std::pow(y, g);
            s += yg;
            sl += yg * std::log(y);
        }
        return n / g + sum_log - n * sl / s;
    };
    double lo = 1e-3;
    double hi = 1.0;
    int expand = 0;
    while (profile(hi) > 0.0) {
        hi *= 2.0;
        if (++expand > 60) throw convergence_error("Weibull fit: no profile root");
    }
    double plo = profile(lo);
    for (int it = 0; it < 200 && (hi - lo) > 1e-12 * hi; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double pm = profile(mid);
        if ((pm <= 0.0) == (plo <= 0.0)) {
            lo = mid;
            plo = pm;
        } else {
            hi = mid;
        }
    }
    const double gamma = 0.5 * (lo + hi);
    double sum_g = 0.0;
    for (double y : ys) sum_g += std::pow(y, gamma);
    ModelFit fit;
    fit.spec = ModelSpec::make(ModelName::Weibull);
    fit.labels = {"gamma", "theta"};
    fit.params = {gamma, n / sum_g};
    fit.loglik = model_log_likelihood(ModelName::Weibull, fit.params, data);
    fit.std_errors = fd_std_errors(ModelName::Weibull, fit.params, data);
    fit.converged = true;
    return fit;
}

ModelFit fit_el(const Sample& data) {
    // Continuous branch: alpha = -e^a < 0 with log-parameterized gamma and
    // theta; multi-start covers the boundary alpha -> 0 and interior optima.
    auto nll_neg_branch = [&](const std::vector<double>& x) {
        const double alpha = -std::exp(x[0]);
        const double gamma = std::exp(x[1]);
        const double theta = std::exp(x[2]);
        if (!std::isfinite(alpha) || !std::isfinite(gamma) || !std::isfinite(theta)) {
            return 1e30;
        }
        const double ll =
            model_log_likelihood(ModelName::EL, {alpha, gamma, theta}, data);
        return std::isfinite(ll) ? -ll : 1e30;
    };

    // Seed gamma/theta from the Weibull fit (the alpha -> 0 limit of EL,
    // with theta_EL = theta_W^(1/gamma)).
    const ModelFit wb = fit_weibull(data);
    const double g0 = std::log(wb.params[0]);
    const double t0 = std::log(std::pow(wb.params[1], 1.0 / wb.params[0]));

    std::vector<double> best;
    double best_val = std::numeric_limits<double>::infinity();
    for (double a0 : {std::log(2.0), std::log(1.0), std::log(0.5), std::log(1e-8)}) {
        auto [x, val] = nelder_mead(nll_neg_branch, {a0, g0, t0}, 0.4, 4000);
        std::tie(x, val) = nelder_mead(nll_neg_branch, x, 0.05, 4000);
        if (val < best_val) {
            best_val = val;
            best = {-std::exp(x[0]), std::exp(x[1]), std::exp(x[2])};
        }
    }
    // Isolated alpha = 1 case (2 free parameters).
    auto nll_alpha1 = [&](const std::vector<double>& x) {
        const double ll = model_log_likelihood(
            ModelName::EL, {1.0, std::exp(x[0]), std::exp(x[1])}, data);
        return std::isfinite(ll) ? -ll : 1e30;
    };
    {
        auto [x, val] = nelder_mead(nll_alpha1, {g0, t0}, 0.3, 3000);
        if (val < best_val) {
            best_val = val;
            best = {1.0, std::exp(x[0]), std::exp(x[1])};
        }
    }

    ModelFit fit;
    fit.spec = ModelSpec::make(ModelName::EL);
    fit.labels = {"alpha", "gamma", "theta"};
    fit.params = best;
    fit.loglik = -best_val;
    fit.converged = std::isfinite(best_val);
    fit.std_errors = fd_std_errors(ModelName::EL, fit.params, data);
    if (!fit.converged) fit.message = "EL multi-start exhausted without a finite optimum";
    return fit;
}

ModelFit fit_lg(const Sample& data) {
    // EM for global behavior, Newton polish from the EM point.
    FitResult em = fit_em(data);
    FitResult fin = fit_direct(data, em.params);
    const FitResult& use = (fin.converged && fin.loglik >= em.loglik) ? fin : em;
    ModelFit fit;
    fit.spec = ModelSpec::make(ModelName::LG);
    fit.labels = {"theta", "p"};
    fit.params = {use.params.theta, use.params.p};
    fit.std_errors = {use.std_errors[1], use.std_errors[0]};
    fit.loglik = use.loglik;
    fit.iterations = em.iterations + fin.iterations;
    fit.converged = use.converged;
    fit.message = use.message;
    return fit;
}

}  // namespace

ModelSpec ModelSpec::make(ModelName name) {
    switch (name) {
        case ModelName::LG: return {name, 2};
        case ModelName::EL: return {name, 3};
        case ModelName::Lindley: return {name, 1};
        case ModelName::Weibull: return {name, 2};
        case ModelName::Exp: return {name, 1};
    }
    throw std::invalid_argument("unknown model");
}

std::vector<ModelSpec> ModelSpec::all() {
    return {make(ModelName::LG), make(ModelName::EL), make(ModelName::Lindley),
            make(ModelName::Weibull), make(ModelName::Exp)};
}

std::string model_label(ModelName name) {
    switch (name) {
        case ModelName::LG: return "LG";
        case ModelName::EL: return "EL";
        case ModelName::Lindley: return "Lindley";
        case ModelName::Weibull: return "Weibull";
        case ModelName::Exp: return "Exp";
    }
    return "?";
}

std::pair<double, double> model_pdf_cdf(ModelName name, const std::vector<double>& params,
                                        double y) {
    if (!(y >= 0.0) || !std::isfinite(y)) {
        throw std::domain_error("model_pdf_cdf: y must be nonnegative");
    }
    switch (name) {
        case ModelName::LG: {
            check_count(name, params, 2);
            const LGParams par(params[1], params[0]);
            return {pdf(par, y), cdf(par, y)};
        }
        case ModelName::EL: {
            check_count(name, params, 3);
            return el_pdf_cdf(params[0], params[1], params[2], y);
        }
        case ModelName::Lindley: {
            check_count(name, params, 1);
            const double t = params[0];
            if (!(t > 0.0)) throw std::domain_error("Lindley: theta must be positive");
            const double c = lindley_survival_kernel(y, t);
            return {t * t / (t + 1.0) * (1.0 + y) * std::exp(-t * y), 1.0 - c};
        }
        case ModelName::Weibull: {
            check_count(name, params, 2);
            const double g = params[0];
            const double t = params[1];
            if (!(t > 0.0) || !(g > 0.0)) {
                throw std::domain_error("Weibull: parameters must be positive");
            }
            const double yg = std::pow(y, g);
            return {t * g * std::pow(y, g - 1.0) * std::exp(-t * yg), 1.0 - std::exp(-t * yg)};
        }
        case ModelName::Exp: {
            check_count(name, params, 1);
            const double t = params[0];
            if (!(t > 0.0)) throw std::domain_error("Exp: theta must be positive");
            return {t * std::exp(-t * y), 1.0 - std::exp(-t * y)};
        }
    }
    throw std::invalid_argument("unknown model");
}

double model_log_likelihood(ModelName name, const std::vector<double>& params,
                            const Sample& data) {
    double acc = 0.0;
    for (double y : data.sorted()) {
        const double dens = model_pdf_cdf(name, params, y).first;
        if (!(dens > 0.0) || !std::isfinite(dens)) {
            return -std::numeric_limits<double>::infinity();
        }
        acc += std::log(dens);
    }
    return acc;
}

ModelFit fit_model(const ModelSpec& spec, const Sample& data) {
    if (data.size() <= static_cast<std::size_t>(spec.k) + 1) {
        throw std::invalid_argument("fit_model: need n > k + 1 observations");
    }
    switch (spec.name) {
        case ModelName::LG: return fit_lg(data);
        case ModelName::EL: return fit_el(data);
        case ModelName::Lindley: return fit_lindley(data);
        case ModelName::Weibull: return fit_weibull(data);
        case ModelName::Exp: return fit_exponential(data);
    }
    throw std::invalid_argument("unknown model");
}

}  // namespace lg
