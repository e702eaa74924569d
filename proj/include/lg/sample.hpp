// A validated vector of lifetimes: strictly positive, finite, kept sorted
// with the original observation order retained alongside.
#ifndef LG_SAMPLE_HPP
#define LG_SAMPLE_HPP

#include <cstddef>
#include <vector>

namespace lg {

class Sample {
  public:
    // Throws std::invalid_argument when empty or when any value is
    // nonpositive or non-finite (the message lists offending positions).
    explicit Sample(std::vector<double> values);

    const std::vector<double>& sorted() const { return sorted_; }
    const std::vector<double>& original_order() const { return original_; }
    std::size_t size() const { return sorted_.size(); }
    double sum() const { return sum_; }
    double mean() const { return sum_ / static_cast<double>(sorted_.size()); }
    double min() const { return sorted_.front(); }
    double max() const { return sorted_.back(); }

  private:
    std::vector<double> original_;
    std::vector<double> sorted_;
    double sum_ = 0.0;
};

}  // namespace lg

#endif
