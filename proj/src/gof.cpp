#include "lg/gof.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace lg {

double ks_statistic(const std::vector<double>& F) {
    const double n = static_cast<double>(F.size());
    if (F.empty()) throw std::invalid_argument("ks_statistic: empty input");
    double d = 0.0;
    for (std::size_t i = 0; i < F.size(); ++i) {
        const double hi = (i + 1.0) / n - F[i];
        const double lo = F[i] - static_cast<double>(i) / n;
        d = std::max({d, hi, lo});
    }
    return d;
}

double kolmogorov_pvalue(double d, std::size_t n) {
    const double lambda = std::sqrt(static_cast<double>(n)) * d;
    if (lambda <= 0.0) return 1.0;
    double sum = 0.0;
    for (int k = 1; k <= 100; ++k) {
        const double term = std::exp(-2.0 * k * k * lambda * lambda);
        sum += (k % 2 == 1) ? term : -term;
    }
    return std::clamp(2.0 * sum, 0.0, 1.0);
}

double ad_statistic(const std::vector<double>& F) {
    const std::size_t n = F.size();
    if (n == 0) throw std::invalid_argument("ad_statistic: empty input");
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        acc += (2.0 * i + 1.0) * (std::log(F[i]) + std::log1p(-F[n - 1 - i]));
    }
    return -static_cast<double>(n) - acc / static_cast<double>(n);
}

double cm_statistic(const std::vector<double>& F) {
    const std::size_t n = F.size();
    if (n == 0) throw std::invalid_argument("cm_statistic: empty input");
    double acc = 1.0 / (12.0 * static_cast<double>(n));
    for (std::size_t i = 0; i < n; ++i) {
        const double d = F[i] - (2.0 * i + 1.0) / (2.0 * static_cast<double>(n));
        acc += d * d;
    }
    return acc;
}

GofReport gof_statistics(const ModelFit& fit, const Sample& data) {
    if (!fit.converged) {
        throw std::invalid_argument("gof_statistics: fit did not converge");
    }
    const auto& ys = data.sorted();
    std::vector<double> F(ys.size());
    bool boundary = false;
    for (std::size_t i = 0; i < ys.size(); ++i) {
        F[i] = model_pdf_cdf(fit.spec.name, fit.params, ys[i]).second;
        if (F[i] <= 0.0 || F[i] >= 1.0) boundary = true;
    }
    const double n = static_cast<double>(ys.size());
    const double k = static_cast<double>(fit.spec.k);

    GofReport rep;
    rep.fit = fit;
    rep.ks = ks_statistic(F);
    rep.ks_pvalue = kolmogorov_pvalue(rep.ks, ys.size());
    rep.neg2loglik = -2.0 * fit.loglik;
    rep.aic = rep.neg2loglik + 2.0 * k;
    rep.aicc = rep.aic + 2.0 * k * (k + 1.0) / (n - k - 1.0);
    rep.bic = rep.neg2loglik + k * std::log(n);
    rep.cm = cm_statistic(F);
    if (boundary) {
        rep.ad = std::numeric_limits<double>::quiet_NaN();
        rep.diagnostics = "fitted cdf hit 0 or 1 at an observation; AD undefined";
    } else {
        rep.ad = ad_statistic(F);
    }
    return rep;
}

std::vector<GofReport> compare_models(const Sample& data, const std::vector<ModelSpec>& specs) {
    std::vector<GofReport> reports;
    reports.reserve(specs.size());
    for (const auto& spec : specs) {
        try {
            reports.push_back(gof_statistics(fit_model(spec, data), data));
        } catch (const std::exception& e) {
            GofReport rep;
            rep.fit.spec = spec;
            rep.fit.converged = false;
            rep.ks = rep.ks_pvalue = rep.neg2loglik = rep.aic = rep.aicc = rep.bic =
                rep.ad = rep.cm = std::numeric_limits<double>::quiet_NaN();
            rep.diagnostics = std::string("fit failed: ") + e.what();
            reports.push_back(std::move(rep));
        }
    }
    std::sort(reports.begin(), reports.end(), [](const GofReport& a, const GofReport& b) {
        const bool a_ok = std::isfinite(a.aic);
        const bool b_ok = std::isfinite(b.aic);
        if (a_ok != b_ok) return a_ok;
        if (a_ok && a.aic != b.aic) return a.aic < b.aic;
        if (a_ok && a.bic != b.bic) return a.bic < b.bic;
        return model_label(a.fit.spec.name) < model_label(b.fit.spec.name);
    });
    return reports;
}

}  // namespace lg
