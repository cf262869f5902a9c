#include "slicerl/rl/replay.hpp"

#include <stdexcept>

namespace slicerl::rl {

ReplayBuffer::ReplayBuffer(std::size_t capacity) {
  if (capacity == 0) throw std::invalid_argument("ReplayBuffer: capacity must be >= 1");
  items_.resize(capacity);
}

void ReplayBuffer::push(env::Transition t) {
  items_[head_] = std::move(t);
  head_ = (head_ + 1) % items_.size();
  if (head_ == 0) full_ = true;
}

const env::Transition& ReplayBuffer::at(std::size_t i) const {
  if (i >= size()) throw std::out_of_range("ReplayBuffer::at: index past size");
  std::size_t oldest = full_ ? head_ : 0;
  return items_[(oldest + i) % items_.size()];
}

std::optional<std::vector<const env::Transition*>> ReplayBuffer::sample(std::size_t batch_size,
                                                                        std::size_t min_size,
                                                                        Rng& rng) const {
  if (batch_size == 0) throw std::invalid_argument("ReplayBuffer::sample: batch_size must be >= 1");
  std::size_t n = size();
  if (n < min_size || n < 1) return std::nullopt;
  std::uniform_int_distribution<std::size_t> pick(0, n - 1);
  std::vector<const env::Transition*> out;
  out.reserve(batch_size);
  std::size_t oldest = full_ ? head_ : 0;
  for (std::size_t k = 0; k < batch_size; ++k)
    out.push_back(&items_[(oldest + pick(rng)) % items_.size()]);
  return out;
}

}  // namespace slicerl::rl
