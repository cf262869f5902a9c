#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "slicerl/common/rng.hpp"
#include "slicerl/env/environment.hpp"

namespace slicerl::rl {

// Fixed-capacity ring of transitions, FIFO eviction, uniform sampling with
// replacement.
class ReplayBuffer {
 public:
  explicit ReplayBuffer(std::size_t capacity);

  void push(env::Transition t);

  std::size_t size() const { return full_ ? items_.size() : head_; }
  std::size_t capacity() const { return items_.size(); }

  // i = 0 is the oldest stored transition.
  const env::Transition& at(std::size_t i) const;

  // nullopt until size() >= min_size. Pointers stay valid until the next push.
  std::optional<std::vector<const env::Transition*>> sample(std::size_t batch_size,
                                                            std::size_t min_size, Rng& rng) const;

 private:
  std::vector<env::Transition> items_;
  std::size_t head_ = 0;  // next write slot
  bool full_ = false;
};

}  // namespace slicerl::rl
