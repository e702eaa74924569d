// Competitor lifetime models fitted alongside LG: extended Lindley (EL),
// Lindley, Weibull, and exponential, each with its ML strategy.
//
// Parameter orders (matching the labels()):
//   LG      {theta, p}
//   EL      {alpha, gamma, theta}   alpha <= 0 or alpha == 1
//   Lindley {theta}
//   Weibull {gamma, theta}          f = theta gamma x^(gamma-1) e^(-theta x^gamma)
//   Exp     {theta}
#ifndef LG_MODELS_HPP
#define LG_MODELS_HPP

#include <string>
#include <utility>
#include <vector>

#include "lg/sample.hpp"

namespace lg {

enum class ModelName { LG, EL, Lindley, Weibull, Exp };

struct ModelSpec {
    ModelName name;
    int k;  // number of free parameters

    static ModelSpec make(ModelName name);
    static std::vector<ModelSpec> all();  // LG, EL, Lindley, Weibull, Exp
};

std::string model_label(ModelName name);

struct ModelFit {
    ModelSpec spec{ModelName::LG, 2};
    std::vector<double> params;
    std::vector<std::string> labels;
    std::vector<double> std_errors;
    double loglik = 0.0;
    int iterations = 0;
    bool converged = false;
    std::string message;
};

// (pdf, cdf) at y >= 0. Throws std::domain_error for out-of-domain params.
std::pair<double, double> model_pdf_cdf(ModelName name, const std::vector<double>& params,
                                        double y);

double model_log_likelihood(ModelName name, const std::vector<double>& params,
                            const Sample& data);

// Per-model MLE: Exp closed form, Lindley closed form, Weibull profile
// root, EL multi-start Nelder-Mead over the alpha <= 0 branch plus the
// isolated alpha = 1 case, LG delegated to the inference module. Standard
// errors come from the finite-difference observed information.
ModelFit fit_model(const ModelSpec& spec, const Sample& data);

}  // namespace lg

#endif
