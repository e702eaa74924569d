// Truncation policy and result metadata for the infinite-series formulas.
#ifndef LG_SERIES_HPP
#define LG_SERIES_HPP

#include <cstddef>

namespace lg {

// Controls the outer geometric-in-p sums. A sum stops once its current
// term falls below rel_tol times the running total (and at least 10 terms
// were taken); hitting max_terms first raises lg::convergence_error.
struct SeriesControl {
    double rel_tol = 1e-12;
    std::size_t max_terms = 20000;
    double warn_threshold = 0.95;  // flag slow convergence when |p| exceeds this

    void validate() const;  // rel_tol in (0, 1e-3], max_terms >= 100
};

struct MomentResult {
    double value = 0.0;
    std::size_t terms_used = 0;        // outer terms; 0 when quadrature produced the value
    double truncation_estimate = 0.0;  // geometric-majorant bound on the discarded tail
    bool fallback_used = false;        // value came from direct quadrature
    bool slow_series_warning = false;  // |p| above warn_threshold
};

}  // namespace lg

#endif
