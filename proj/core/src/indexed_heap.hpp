#pragma once

#include <cstdint>
#include <limits>
#include <utility>
#include <vector>

namespace pmds::detail {

/// Indexed 4-ary min-heap over ids [0, capacity) with keys of type Key.
/// Entries compare by (key, id), so equal keys pop in ascending id order.
template <typename Key>
class IndexedMinHeap {
 public:
  explicit IndexedMinHeap(std::size_t capacity)
      : keys_(capacity), pos_(capacity, kAbsent) {
    heap_.reserve(capacity);
  }

  bool empty() const noexcept { return heap_.empty(); }
  std::size_t size() const noexcept { return heap_.size(); }
  bool contains(std::uint32_t id) const noexcept { return pos_[id] != kAbsent; }
  const Key& key(std::uint32_t id) const { return keys_[id]; }
  std::uint32_t top() const { return heap_.front(); }

  void push(std::uint32_t id, Key key) {
    keys_[id] = std::move(key);
    pos_[id] = heap_.size();
    heap_.push_back(id);
    sift_up(pos_[id]);
  }

  /// Sets a new key for an id already in the heap.
  void update(std::uint32_t id, Key key) {
    const bool decreased = key < keys_[id];
    keys_[id] = std::move(key);
    if (decreased) {
      sift_up(pos_[id]);
    } else {
      sift_down(pos_[id]);
    }
  }

  std::uint32_t pop() {
    const std::uint32_t id = heap_.front();
    const std::uint32_t last = heap_.back();
    heap_.pop_back();
    pos_[id] = kAbsent;
    if (!heap_.empty()) {
      heap_[0] = last;
      pos_[last] = 0;
      sift_down(0);
    }
    return id;
  }

 private:
  static constexpr std::size_t kAbsent = std::numeric_limits<std::size_t>::max();
  static constexpr std::size_t kArity = 4;

  bool less(std::uint32_t a, std::uint32_t b) const {
    if (keys_[a] < keys_[b]) return true;
    if (keys_[b] < keys_[a]) return false;
    return a < b;
  }

  void place(std::size_t i, std::uint32_t id) {
    heap_[i] = id;
    pos_[id] = i;
  }

  void sift_up(std::size_t i) {
    const std::uint32_t id = heap_[i];
    while (i > 0) {
      const std::size_t parent = (i - 1) / kArity;
      if (!less(id, heap_[parent])) break;
      place(i, heap_[parent]);
      i = parent;
    }
    place(i, id);
  }

  void sift_down(std::size_t i) {
    const std::uint32_t id = heap_[i];
    const std::size_t n = heap_.size();
    for (;;) {
      const std::size_t first = i * kArity + 1;
      if (first >= n) break;
      std::size_t best = first;
      const std::size_t last = std::min(first + kArity, n);
      for (std::size_t c = first + 1; c < last; ++c) {
        if (less(heap_[c], heap_[best])) best = c;
      }
      if (!less(heap_[best], id)) break;
      place(i, heap_[best]);
      i = best;
    }
    place(i, id);
  }

  std::vector<Key> keys_;
  std::vector<std::size_t> pos_;
  std::vector<std::uint32_t> heap_;
};

}  // namespace pmds::detail
