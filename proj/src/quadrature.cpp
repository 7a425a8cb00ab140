#include "quadrature.hpp"

#include <algorithm>
#include <map>
#include <mutex>

#include <boost/math/special_functions/legendre.hpp>

#include "bargmann/types.hpp"

namespace bargmann::detail {

namespace {

GaussRule make_rule(int n) {
  GaussRule rule;
  // Boost returns the nonnegative zeros of P_n in ascending order.
  const std::vector<double> half = boost::math::legendre_p_zeros<double>(n);
  std::vector<double> x;
  for (auto it = half.rbegin(); it != half.rend(); ++it) {
    if (*it != 0.0) x.push_back(-*it);
  }
  for (const double v : half) x.push_back(v);
  std::sort(x.begin(), x.end());
  for (const double v : x) {
    const double dp = boost::math::legendre_p_prime<double>(n, v);
    rule.nodes.push_back(v);
    rule.weights.push_back(2.0 / ((1.0 - v * v) * dp * dp));
  }
  return rule;
}

}  // namespace

const GaussRule& gauss_legendre(int n) {
  if (n < 1 || n > 2000) throw Error(ErrorCode::InvalidArgument, "quadrature order out of range");
  static std::mutex mu;
  static std::map<int, GaussRule> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(n, make_rule(n)).first;
  return it->second;
}

}  // namespace bargmann::detail
