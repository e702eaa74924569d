// Density and moments of order statistics from an LG sample.
//
// The beta-kernel form
//   f_{r:n}(y) = F(y)^(r-1) (1-F(y))^(n-r) f(y) / Be(r, n-r+1)
// is the primary evaluation path; the geometric series expansion of the
// same density is kept as a secondary route for cross-checks.
#ifndef LG_ORDER_STATISTICS_HPP
#define LG_ORDER_STATISTICS_HPP

#include "lg/distribution.hpp"
#include "lg/series.hpp"

namespace lg {

struct OrderStatSpec {
    int rank;  // r, 1-based
    int n;     // sample size
    OrderStatSpec(int rank_, int n_);  // validates 1 <= rank <= n
};

double orderstat_pdf(const LGParams& par, const OrderStatSpec& spec, double y);

// E[Y_{r:n}^k] by quadrature of the kernel form.
MomentResult orderstat_moment(const LGParams& par, const OrderStatSpec& spec, int k,
                              const SeriesControl& ctl = {});

// Series routes (cross-checks; require |p| < 1).
double orderstat_pdf_series(const LGParams& par, const OrderStatSpec& spec, double y,
                            const SeriesControl& ctl = {});
MomentResult orderstat_moment_series(const LGParams& par, const OrderStatSpec& spec, int k,
                                     const SeriesControl& ctl = {});

}  // namespace lg

#endif
