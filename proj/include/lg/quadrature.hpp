// Adaptive Gauss-Kronrod integration used as the direct-integral route
// wherever a series expansion needs a companion value or a fallback.
#ifndef LG_QUADRATURE_HPP
#define LG_QUADRATURE_HPP

#include <functional>

namespace lg {

// Integrates f over [a, b]; b may be +infinity. Throws lg::numeric_error
// when the error estimate stays above the requested tolerance.
double integrate(const std::function<double(double)>& f, double a, double b,
                 double tol = 1e-10);

}  // namespace lg

#endif
