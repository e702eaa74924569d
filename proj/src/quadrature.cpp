#include "lg/quadrature.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <string>

#include "lg/errors.hpp"

namespace lg {

double integrate(const std::function<double(double)>& f, double a, double b, double tol) {
    using boost::math::quadrature::gauss_kronrod;
    double err = 0.0;
    double l1 = 0.0;
    const double value = gauss_kronrod<double, 15>::integrate(f, a, b, 15, tol, &err, &l1);
    const double scale = std::max(std::fabs(value), l1);
    if (err > 1e-6 * scale && err > 1e-12) {
        throw numeric_error("quadrature did not reach tolerance (estimate " +
                            std::to_string(err) + " on scale " + std::to_string(scale) + ")");
    }
    return value;
}

}  // namespace lg
