// Goodness-of-fit statistics and the model comparison table: K-S with its
// asymptotic p-value, Anderson-Darling, Cramer-von Mises, and the
// information criteria. All statistics plug the estimated parameters into
// the fitted cdf (no small-sample correction).
#ifndef LG_GOF_HPP
#define LG_GOF_HPP

#include <string>
#include <vector>

#include "lg/models.hpp"
#include "lg/sample.hpp"

namespace lg {

struct GofReport {
    ModelFit fit;
    double ks = 0.0;
    double ks_pvalue = 0.0;
    double neg2loglik = 0.0;
    double aic = 0.0;   // neg2loglik + 2k
    double aicc = 0.0;  // aic + 2k(k+1)/(n-k-1)
    double bic = 0.0;   // neg2loglik + k ln n
    double ad = 0.0;
    double cm = 0.0;
    std::string diagnostics;
};

// D_n = max_i max(i/n - F_(i), F_(i) - (i-1)/n) over the fitted cdf values
// at the sorted sample.
double ks_statistic(const std::vector<double>& sorted_cdf_values);

// Asymptotic Kolmogorov tail 2 sum (-1)^(k-1) e^(-2 k^2 lambda^2) at
// lambda = sqrt(n) D, truncated at 100 terms.
double kolmogorov_pvalue(double d, std::size_t n);

// A^2 = -n - (1/n) sum (2i-1)[ln F_(i) + ln(1 - F_(n+1-i))].
// W^2 = 1/(12n) + sum (F_(i) - (2i-1)/(2n))^2.
double ad_statistic(const std::vector<double>& sorted_cdf_values);
double cm_statistic(const std::vector<double>& sorted_cdf_values);

GofReport gof_statistics(const ModelFit& fit, const Sample& data);

// One report per spec, fitted to the same data, sorted by AIC ascending
// (ties by BIC, then model name). Per-model failures land in the row's
// diagnostics instead of aborting the batch.
std::vector<GofReport> compare_models(const Sample& data, const std::vector<ModelSpec>& specs);

}  // namespace lg

#endif
