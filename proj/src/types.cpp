#include "fadesplit/types.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

namespace fadesplit {

Channel Channel::from_power(double R, double P, double sigma2) {
  if (!(R > 0.0) || !(P > 0.0) || !(sigma2 > 0.0))
    throw std::invalid_argument("channel: R, P, sigma2 must be positive");
  return Channel{R, P, sigma2, (std::exp2(R) - 1.0) / (P * sigma2)};
}

Channel Channel::from_theta(double R, double theta) {
  if (!(R > 0.0) || !(theta > 0.0))
    throw std::invalid_argument("channel: R, theta must be positive");
  double sigma2 = (std::exp2(R) - 1.0) / theta;
  return Channel{R, 1.0, sigma2, theta};
}

std::vector<double> validate_importance(std::vector<double> d) {
  if (d.empty()) throw std::invalid_argument("importance: empty vector");
  for (std::size_t i = 0; i < d.size(); ++i) {
    if (!(d[i] > 0.0))
      throw std::invalid_argument("importance: entries must be positive");
    if (i + 1 < d.size() && !(d[i] - d[i + 1] > 1e-12))
      throw std::invalid_argument("importance: entries must strictly decrease");
  }
  double sum = std::accumulate(d.begin(), d.end(), 0.0);
  if (std::abs(sum - 1.0) > 1e-9)
    throw std::invalid_argument("importance: entries must sum to 1");
  if (std::abs(sum - 1.0) > 1e-12)
    for (auto& v : d) v /= sum;
  return d;
}

int count_active(const std::vector<double>& split) {
  int n = 0;
  for (double v : split)
    if (v > 0.0) ++n;
  return n;
}

}  // namespace fadesplit
