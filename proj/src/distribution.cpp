#include "lg/distribution.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>
#include <string>

#include "lg/errors.hpp"

namespace lg {

namespace {

void check_y(double y, const char* op) {
    if (!(y >= 0.0) || !std::isfinite(y)) {
        throw std::domain_error(std::string(op) + ": y must be nonnegative and finite, got " +
                                std::to_string(y));
    }
}

// Uniform draw on the open interval (0,1); never returns an endpoint.
double uniform01(std::mt19937_64& rng) {
    return (static_cast<double>(rng() >> 11) + 0.5) * 0x1.0p-53;
}

double lindley_draw(double theta, std::mt19937_64& rng) {
    // Mixture: Exp(theta) with weight theta/(theta+1), else Gamma(2, theta)
    // as the sum of two exponentials.
    if (uniform01(rng) <= theta / (theta + 1.0)) {
        return -std::log(uniform01(rng)) / theta;
    }
    return -(std::log(uniform01(rng)) + std::log(uniform01(rng))) / theta;
}

}  // namespace

LGParams::LGParams(double p_, double theta_) : p(p_), theta(theta_) {
    if (!std::isfinite(p) || !(p < 1.0)) {
        throw std::invalid_argument("LGParams: p must be finite and < 1, got " +
                                    std::to_string(p_));
    }
    if (!std::isfinite(theta) || !(theta > 0.0)) {
        throw std::invalid_argument("LGParams: theta must be finite and > 0, got " +
                                    std::to_string(theta_));
    }
}

double lindley_survival_kernel(double y, double theta) {
    if (theta * y > 700.0) return 0.0;
    return (1.0 + theta * y / (theta + 1.0)) * std::exp(-theta * y);
}

double pdf(const LGParams& par, double y) {
    check_y(y, "pdf");
    const double t = par.theta;
    if (t * y > 700.0) return 0.0;
    const double c = lindley_survival_kernel(y, t);
    const double denom = 1.0 - par.p * c;
    return t * t / (t + 1.0) * (1.0 - par.p) * (1.0 + y) * std::exp(-t * y) / (denom * denom);
}

double log_pdf(const LGParams& par, double y) {
    check_y(y, "log_pdf");
    const double t = par.theta;
    const double c = lindley_survival_kernel(y, t);
    return 2.0 * std::log(t) - std::log(t + 1.0) + std::log1p(-par.p) + std::log1p(y) -
           t * y - 2.0 * std::log1p(-par.p * c);
}

double cdf(const LGParams& par, double y) {
    check_y(y, "cdf");
    const double c = lindley_survival_kernel(y, par.theta);
    if (c == 0.0) return 1.0;
    return (1.0 - c) / (1.0 - par.p * c);
}

double survival(const LGParams& par, double y) {
    check_y(y, "survival");
    const double c = lindley_survival_kernel(y, par.theta);
    if (c == 0.0) return 0.0;
    return (1.0 - par.p) * c / (1.0 - par.p * c);
}

double hazard(const LGParams& par, double y) {
    check_y(y, "hazard");
    const double t = par.theta;
    const double c = lindley_survival_kernel(y, t);
    return t * t * (1.0 + y) / ((t * y + t + 1.0) * (1.0 - par.p * c));
}

double reversed_hazard(const LGParams& par, double y) {
    if (!(y > 0.0) || !std::isfinite(y)) {
        throw std::domain_error("reversed_hazard: y must be strictly positive, got " +
                                std::to_string(y));
    }
    const double F = cdf(par, y);
    return pdf(par, y) / F;
}

double quantile(const LGParams& par, double xi, double tol) {
    if (!(xi > 0.0) || !(xi < 1.0)) {
        throw std::domain_error("quantile: xi must lie in (0,1), got " + std::to_string(xi));
    }
    if (!(tol > 0.0)) {
        throw std::domain_error("quantile: tol must be positive");
    }
    double lo = 0.0;
    double hi = 1.0 / par.theta;
    int expand = 0;
    while (cdf(par, hi) < xi) {
        hi *= 2.0;
        if (++expand > 200) {
            throw convergence_error("quantile: bracket expansion failed at xi=" +
                                    std::to_string(xi));
        }
    }
    // Bisection until the bracket is narrow, then Newton polish.
    for (int it = 0; it < 200 && (hi - lo) > tol * std::max(1.0, hi); ++it) {
        const double mid = 0.5 * (lo + hi);
        (cdf(par, mid) < xi ? lo : hi) = mid;
    }
    double x = 0.5 * (lo + hi);
    for (int k = 0; k < 2; ++k) {
        const double fx = pdf(par, x);
        if (fx <= 0.0) break;
        const double step = (cdf(par, x) - xi) / fx;
        const double next = x - step;
        if (next > lo && next < hi) x = next;
    }
    for (int it = 0; it < 200; ++it) {
        const double err = cdf(par, x) - xi;
        if (std::fabs(err) <= tol) return x;
        (err < 0.0 ? lo : hi) = x;
        x = 0.5 * (lo + hi);
    }
    throw convergence_error("quantile: did not reach tolerance at xi=" + std::to_string(xi));
}

Sample sample(const LGParams& par, std::size_t n, std::uint64_t seed, SamplePath path) {
    if (n == 0) {
        throw std::invalid_argument("sample: n must be at least 1");
    }
    if (path == SamplePath::Compound && !(par.p > 0.0)) {
        throw std::invalid_argument(
            "sample: the compounding path needs 0 < p < 1 (geometric count undefined for p <= 0)");
    }
    const bool compound =
        (path == SamplePath::Compound) || (path == SamplePath::Auto && par.p > 0.0);

    std::mt19937_64 rng(seed);
    std::vector<double> draws;
    draws.reserve(n);
    if (compound) {
        const double logp = std::log(par.p);
        for (std::size_t i = 0; i < n; ++i) {
            const double u = uniform01(rng);
            auto count = static_cast<std::uint64_t>(std::ceil(std::log(u) / logp));
            if (count < 1) count = 1;
            double m = lindley_draw(par.theta, rng);
            for (std::uint64_t k = 1; k < count; ++k) {
                m = std::min(m, lindley_draw(par.theta, rng));
            }
            draws.push_back(m);
        }
    } else {
        for (std::size_t i = 0; i < n; ++i) {
            draws.push_back(quantile(par, uniform01(rng), 1e-12));
        }
    }
    return Sample(std::move(draws));
}

namespace {

// Numerator of d/dy log f(y): g1(y) - g2(y) with
//   g1(y) = e^(theta y) (1+theta)(1 - theta - y theta)
//   g2(y) = p (1 + (1+y)^2 theta^2).
// IEEE semantics keep the sign meaningful when e^(theta y) overflows.
double density_slope_sign_fn(const LGParams& par, double y) {
    const double t = par.theta;
    const double g1 = std::exp(t * y) * (1.0 + t) * (1.0 - t - y * t);
    const double g2 = par.p * (1.0 + (1.0 + y) * (1.0 + y) * t * t);
    return g1 - g2;
}

// Numerator of d/dy log h(y): h1(y) - h2(y) with
//   h1(y) = e^(theta y) (1+theta)
//   h2(y) = p (1 + theta + theta y)(1 + (1+y)^2 theta^2).
double hazard_slope_sign_fn(const LGParams& par, double y) {
    const double t = par.theta;
    const double h1 = std::exp(t * y) * (1.0 + t);
    const double h2 = par.p * (1.0 + t + t * y) * (1.0 + (1.0 + y) * (1.0 + y) * t * t);
    return h1 - h2;
}

template <typename F>
double bisect_sign_change(F&& f, double lo, double hi) {
    double flo = f(lo);
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double fm = f(mid);
        if ((flo <= 0.0) == (fm <= 0.0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
        if ((hi - lo) <= 1e-12 * std::max(1.0, hi)) break;
    }
    return 0.5 * (lo + hi);
}

}  // namespace

DensityShape classify_density(const LGParams& par) {
    const double t = par.theta;
    const double threshold = (1.0 - t * t) / (1.0 + t * t);
    DensityShape shape;
    shape.threshold = threshold;
    if (par.p > threshold) {
        shape.kind = DensityShape::Kind::Decreasing;
        return shape;
    }
    shape.kind = DensityShape::Kind::Unimodal;
    auto f = [&](double y) { return density_slope_sign_fn(par, y); };
    double hi = 1.0 / t;
    int expand = 0;
    while (f(hi) > 0.0) {
        hi *= 2.0;
        if (++expand > 200) {
            throw convergence_error("classify_density: no sign change found for the mode");
        }
    }
    shape.mode = bisect_sign_change(f, 0.0, hi);
    return shape;
}

HazardShape classify_hazard(const LGParams& par) {
    const double t = par.theta;
    HazardShape shape;
    shape.threshold = 1.0 / (1.0 + t * t);
    shape.theorem_branch = (par.p > shape.threshold)
                               ? HazardShape::TheoremBranch::Bathtub
                               : HazardShape::TheoremBranch::IncreasingThenBathtub;
    // Sign of (log h)' at 0+: (1+theta)(1 - p(1+theta^2)).
    shape.initially_increasing = par.p * (1.0 + t * t) < 1.0;

    auto f = [&](double y) { return hazard_slope_sign_fn(par, y); };
    const double hi = 50.0 / t;
    const double lo = hi * 1e-9;
    const int grid = 4096;
    const double ratio = std::pow(hi / lo, 1.0 / (grid - 1));
    double prev_y = 0.0;
    double prev_sign = shape.initially_increasing ? 1.0 : -1.0;
    double y = lo;
    for (int i = 0; i < grid; ++i, y *= ratio) {
        const double v = f(y);
        const double sign = v > 0.0 ? 1.0 : -1.0;
        if (sign != prev_sign) {
            shape.turning_points.push_back(bisect_sign_change(f, prev_y, y));
            prev_sign = sign;
        }
        prev_y = y;
    }
    const std::size_t count = shape.turning_points.size();
    shape.matches_theorem =
        (shape.theorem_branch == HazardShape::TheoremBranch::Bathtub)
            ? (count == 1 && !shape.initially_increasing)
            : (count == 2 && shape.initially_increasing);
    return shape;
}

std::string HazardShape::pattern() const {
    if (turning_points.empty()) {
        return initially_increasing ? "increasing" : "decreasing";
    }
    if (turning_points.size() == 1 && !initially_increasing) return "bathtub";
    std::string out = initially_increasing ? "increasing" : "decreasing";
    bool up = initially_increasing;
    for (std::size_t i = 0; i < turning_points.size(); ++i) {
        up = !up;
        out += up ? "-increasing" : "-decreasing";
    }
    return out;
}

}  // namespace lg
