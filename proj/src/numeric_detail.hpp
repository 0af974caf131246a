#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

namespace interlacing::detail {

// Neumaier compensated summation.
class CompensatedSum {
 public:
  void add(double x) {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
      comp_ += (sum_ - t) + x;
    } else {
      comp_ += (x - t) + sum_;
    }
    sum_ = t;
  }
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

// Values of a polynomial at nodes 0..n-1 -> its monomial coefficients.
void nodes_to_monomial(std::vector<double>& v);

double binomial(std::size_t n, std::size_t k);

}  // namespace interlacing::detail
