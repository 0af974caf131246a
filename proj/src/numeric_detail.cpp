#include "numeric_detail.hpp"

namespace interlacing::detail {

void nodes_to_monomial(std::vector<double>& v) {
  const std::size_t n = v.size();
  if (n == 0) return;
  // Divided differences on the integer nodes.
  for (std::size_t k = 1; k < n; ++k) {
    for (std::size_t j = n - 1; j >= k; --j) v[j] = (v[j] - v[j - 1]) / static_cast<double>(k);
  }
  // Newton form -> monomial form by Horner: poly = poly * (x - k) + c_k.
  std::vector<double> poly{v[n - 1]};
  for (std::size_t kk = n - 1; kk-- > 0;) {
    const double node = static_cast<double>(kk);
    poly.push_back(0.0);
    for (std::size_t j = poly.size() - 1; j > 0; --j) poly[j] = poly[j - 1] - node * poly[j];
    poly[0] = -node * poly[0] + v[kk];
  }
  poly.resize(n, 0.0);
  v = std::move(poly);
}

double binomial(std::size_t n, std::size_t k) {
  if (k > n) return 0.0;
  if (k > n - k) k = n - k;
  double r = 1.0;
  for (std::size_t i = 1; i <= k; ++i) r = r * static_cast<double>(n - k + i) / static_cast<double>(i);
  return std::round(r);
}

}  // namespace interlacing::detail
