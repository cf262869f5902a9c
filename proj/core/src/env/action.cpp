#include "slicerl/env/action.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace slicerl::env {

ActionShares ActionShares::from_logits(std::vector<double> logits) {
  if (logits.empty()) throw std::invalid_argument("ActionShares: empty logits");
  ActionShares a;
  a.shares.resize(logits.size());
  double mx = *std::max_element(logits.begin(), logits.end());
  double z = 0;
  for (size_t i = 0; i < logits.size(); ++i) {
    a.shares[i] = std::exp(logits[i] - mx);
    z += a.shares[i];
  }
  for (double& s : a.shares) s /= z;
  a.logits = std::move(logits);
  return a;
}

ActionShares ActionShares::from_shares(std::vector<double> shares) {
  if (shares.empty()) throw std::invalid_argument("ActionShares: empty shares");
  double sum = 0;
  for (double s : shares) {
    if (!(s >= 0)) throw std::invalid_argument("ActionShares: negative share");
    sum += s;
  }
  if (std::abs(sum - 1.0) > 1e-6)
    throw std::invalid_argument("ActionShares: shares sum to " + std::to_string(sum));
  ActionShares a;
  a.shares = std::move(shares);
  return a;
}

std::vector<int> action_to_allocation(const ActionShares& shares, int total_rbgs) {
  if (total_rbgs < 0) throw std::invalid_argument("action_to_allocation: negative RBG count");
  size_t n = shares.shares.size();
  std::vector<int> counts(n);
  std::vector<double> remainder(n);
  int assigned = 0;
  for (size_t i = 0; i < n; ++i) {
    double exact = shares.shares[i] * total_rbgs;
    counts[i] = static_cast<int>(std::floor(exact));
    remainder[i] = exact - counts[i];
    assigned += counts[i];
  }
  std::vector<size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&remainder](size_t a, size_t b) { return remainder[a] > remainder[b]; });
  for (size_t k = 0; assigned < total_rbgs; ++k) {
    counts[order[k % n]] += 1;
    ++assigned;
  }
  return counts;
}

}  // namespace slicerl::env
