#pragma once

#include <algorithm>
#include <numeric>
#include <vector>

#include "locpriv/markov.hpp"
#include "locpriv/rng.hpp"

namespace test_util {

// Random row-stochastic matrix; entries bounded away from zero unless
// zero_prob asks for structural zeros.
inline Eigen::MatrixXd random_stochastic(locpriv::Rng& rng, int m,
                                         double zero_prob = 0.0) {
  Eigen::MatrixXd p(m, m);
  for (int i = 0; i < m; ++i) {
    double row_sum = 0.0;
    for (int j = 0; j < m; ++j) {
      double v = 0.05 + rng.uniform();
      if (zero_prob > 0.0 && rng.uniform() < zero_prob) v = 0.0;
      p(i, j) = v;
      row_sum += v;
    }
    if (row_sum == 0.0) {
      p(i, i) = 1.0;
      row_sum = 1.0;
    }
    p.row(i) /= row_sum;
  }
  return p;
}

inline Eigen::VectorXd random_prob_vector(locpriv::Rng& rng, int m,
                                          double zero_prob = 0.0) {
  Eigen::VectorXd v(m);
  double sum = 0.0;
  for (int i = 0; i < m; ++i) {
    double x = 0.05 + rng.uniform();
    if (zero_prob > 0.0 && rng.uniform() < zero_prob) x = 0.0;
    v(i) = x;
    sum += x;
  }
  if (sum == 0.0) {
    v(0) = 1.0;
    sum = 1.0;
  }
  return v / sum;
}

inline locpriv::MarkovPrior random_prior(locpriv::Rng& rng, int m,
                                         double zero_prob = 0.0) {
  return locpriv::validate_prior(random_prob_vector(rng, m, zero_prob),
                                 random_stochastic(rng, m, zero_prob));
}

// Stationary distribution to machine precision via a direct linear solve:
// (P^T - I) pi = 0 with sum(pi) = 1. The residual of power iteration
// (~1e-10) would otherwise dominate DP-vs-enumeration comparisons.
inline Eigen::VectorXd exact_stationary(const Eigen::MatrixXd& p) {
  const int m = static_cast<int>(p.rows());
  Eigen::MatrixXd a = p.transpose() - Eigen::MatrixXd::Identity(m, m);
  a.row(m - 1).setOnes();
  Eigen::VectorXd b = Eigen::VectorXd::Zero(m);
  b(m - 1) = 1.0;
  Eigen::VectorXd pi = a.fullPivLu().solve(b);
  for (int i = 0; i < m; ++i)
    if (pi(i) < 0.0) pi(i) = 0.0;
  return pi / pi.sum();
}

inline locpriv::MarkovPrior random_stationary_prior(locpriv::Rng& rng, int m) {
  const Eigen::MatrixXd p = random_stochastic(rng, m);
  return locpriv::validate_prior(exact_stationary(p), p);
}

inline std::vector<double> ranks(const std::vector<double>& x) {
  const size_t n = x.size();
  std::vector<size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](size_t a, size_t b) { return x[a] < x[b]; });
  std::vector<double> r(n);
  size_t i = 0;
  while (i < n) {
    size_t j = i;
    while (j + 1 < n && x[order[j + 1]] == x[order[i]]) ++j;
    const double avg = 0.5 * (i + j) + 1.0;  // average rank for ties
    for (size_t k = i; k <= j; ++k) r[order[k]] = avg;
    i = j + 1;
  }
  return r;
}

inline double spearman(const std::vector<double>& x,
                       const std::vector<double>& y) {
  const auto rx = ranks(x);
  const auto ry = ranks(y);
  const size_t n = x.size();
  double mx = 0, my = 0;
  for (size_t i = 0; i < n; ++i) {
    mx += rx[i];
    my += ry[i];
  }
  mx /= n;
  my /= n;
  double sxy = 0, sxx = 0, syy = 0;
  for (size_t i = 0; i < n; ++i) {
    sxy += (rx[i] - mx) * (ry[i] - my);
    sxx += (rx[i] - mx) * (rx[i] - mx);
    syy += (ry[i] - my) * (ry[i] - my);
  }
  return sxy / std::sqrt(sxx * syy);
}

}  // namespace test_util
