#include "locpriv/numeric.hpp"

#include <algorithm>

namespace locpriv {

double log_sum_exp(const std::vector<double>& terms) {
  double hi = kNegInf;
  for (double t : terms) hi = std::max(hi, t);
  if (hi == kNegInf) return kNegInf;
  double acc = 0.0;
  for (double t : terms) acc += std::exp(t - hi);
  return hi + std::log(acc);
}

double entropy(const Eigen::Ref<const Eigen::VectorXd>& p) {
  double h = 0.0;
  for (Eigen::Index i = 0; i < p.size(); ++i) {
    const double pi = p(i);
    if (pi > 0.0) h -= pi * std::log(pi);
  }
  return h;
}

double log_binomial(long long n, long long k) {
  if (k < 0 || k > n) return kNegInf;
  if (k == 0 || k == n) return 0.0;
  if (k > n - k) k = n - k;
  if (n <= 62) {
    // Exact: C(62, 31) fits in 64 bits; intermediates widened to 128.
    unsigned long long c = 1;
    for (long long i = 1; i <= k; ++i) {
      const unsigned __int128 wide =
          static_cast<unsigned __int128>(c) * static_cast<unsigned long long>(n - k + i);
      c = static_cast<unsigned long long>(wide / static_cast<unsigned long long>(i));
    }
    return std::log(static_cast<double>(c));
  }
  return std::lgamma(static_cast<double>(n + 1)) -
         std::lgamma(static_cast<double>(k + 1)) -
         std::lgamma(static_cast<double>(n - k + 1));
}

}  // namespace locpriv
