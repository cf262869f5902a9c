#pragma once

#include <vector>

namespace slicerl::env {

// Per-slice share vector on the N-simplex, produced by a softmax over N
// logits. The pre-squash logits ride along so a stored action's log-density
// can be recomputed exactly later.
struct ActionShares {
  std::vector<double> shares;
  std::vector<double> logits;  // empty when constructed from bare shares

  // Softmax of the logits (max-shifted, numerically safe).
  static ActionShares from_logits(std::vector<double> logits);

  // Validates simplex membership: entries >= 0, sum within 1e-6 of 1.
  // Throws std::invalid_argument otherwise.
  static ActionShares from_shares(std::vector<double> shares);

  int size() const { return static_cast<int>(shares.size()); }
};

// Largest-remainder rounding of shares * total_rbgs to integer counts that
// sum to exactly total_rbgs. Each count lands in [floor, ceil] of its exact
// share; remainder ties go to the lowest slice index.
std::vector<int> action_to_allocation(const ActionShares& shares, int total_rbgs);

}  // namespace slicerl::env
