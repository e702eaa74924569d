// Error types shared across the library. Domain violations throw
// std::domain_error / std::invalid_argument; these cover the rest.
#ifndef LG_ERRORS_HPP
#define LG_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace lg {

// An iterative procedure (series, root search, optimizer) hit its cap
// before meeting its tolerance.
struct convergence_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A value became unrepresentable or degenerate (underflowed survival,
// singular information matrix, ...).
struct numeric_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace lg

#endif
