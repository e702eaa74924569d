// The Lindley-geometric distribution LG(p, theta): evaluation, quantiles,
// sampling, and the density / hazard shape classifiers.
//
// The family is the law of min(X_1, ..., X_N) for i.i.d. Lindley(theta)
// variables and an independent geometric count N when 0 < p < 1, and is
// extended to every p < 1 through its distribution function
//
//   F(y) = (1 - c(y)) / (1 - p c(y)),   c(y) = (1 + theta y/(theta+1)) e^(-theta y).
//
// p = 0 recovers the Lindley distribution.
#ifndef LG_DISTRIBUTION_HPP
#define LG_DISTRIBUTION_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "lg/sample.hpp"

namespace lg {

struct LGParams {
    double p;      // concentration parameter, strictly below 1
    double theta;  // rate-like parameter, strictly positive

    LGParams(double p_, double theta_);  // validates the invariants above
};

// c(y) = (1 + theta y/(theta+1)) e^(-theta y), the Lindley survival kernel.
// Returns exactly 0 once theta*y > 700 (e^(-theta y) underflow guard).
double lindley_survival_kernel(double y, double theta);

double pdf(const LGParams& par, double y);
double log_pdf(const LGParams& par, double y);
double cdf(const LGParams& par, double y);
double survival(const LGParams& par, double y);
double hazard(const LGParams& par, double y);           // pdf / survival, y >= 0
double reversed_hazard(const LGParams& par, double y);  // pdf / cdf, y > 0

// Solves F(x) = xi by bracketing + bisection + Newton polish.
// Postcondition: |cdf(result) - xi| <= tol.
double quantile(const LGParams& par, double xi, double tol = 1e-10);

enum class SamplePath {
    Auto,              // Compound when 0 < p < 1, inverse transform otherwise
    Compound,          // geometric count of Lindley draws; requires 0 < p < 1
    InverseTransform,  // quantile of uniforms; valid for every p < 1
};

// n i.i.d. draws, deterministic for a fixed seed. The draw order is kept in
// the Sample's original-order view.
Sample sample(const LGParams& par, std::size_t n, std::uint64_t seed,
              SamplePath path = SamplePath::Auto);

// Density shape per the threshold p vs (1 - theta^2)/(1 + theta^2):
// above it the density falls from f(0); at or below it the density is
// unimodal with an interior mode located by sign change of (log f)'.
struct DensityShape {
    enum class Kind { Decreasing, Unimodal };
    Kind kind;
    std::optional<double> mode;  // present iff Unimodal
    double threshold;            // (1 - theta^2)/(1 + theta^2)
};
DensityShape classify_density(const LGParams& par);

// Hazard shape. The theorem branch follows the p vs 1/(1 + theta^2)
// threshold; the turning points come from a dense sign scan of (log h)'
// (4096 log-spaced points on (0, 50/theta), bisection-refined) and are the
// authoritative description. The two disagree for part of the parameter
// space (e.g. p <= 0 gives a monotone increasing hazard), which
// matches_theorem records.
struct HazardShape {
    enum class TheoremBranch { Bathtub, IncreasingThenBathtub };
    TheoremBranch theorem_branch;
    double threshold;  // 1/(1 + theta^2)
    std::vector<double> turning_points;
    bool initially_increasing;
    bool matches_theorem;

    // "increasing", "bathtub", "increasing-decreasing-increasing", ...
    std::string pattern() const;
};
HazardShape classify_hazard(const LGParams& par);

}  // namespace lg

#endif
