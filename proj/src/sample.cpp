#include "lg/sample.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace lg {

Sample::Sample(std::vector<double> values) : original_(std::move(values)) {
    if (original_.empty()) {
        throw std::invalid_argument("sample: no observations");
    }
    std::string bad;
    for (std::size_t i = 0; i < original_.size(); ++i) {
        const double v = original_[i];
        if (!std::isfinite(v) || v <= 0.0) {
            if (!bad.empty()) bad += ", ";
            bad += "position " + std::to_string(i + 1) + " (" + std::to_string(v) + ")";
        }
    }
    if (!bad.empty()) {
        throw std::invalid_argument("sample: lifetimes must be strictly positive and finite: " + bad);
    }
    sorted_ = original_;
    std::sort(sorted_.begin(), sorted_.end());
    sum_ = 0.0;
    for (double v : sorted_) sum_ += v;
}

}  // namespace lg
