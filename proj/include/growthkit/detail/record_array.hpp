#pragma once

#include <algorithm>
#include <cstdint>
#include <cstring>
#include <numeric>
#include <vector>

namespace growthkit::detail {

/// Flat array of fixed-width byte records. Sorting is by memcmp order,
/// which is the canonical order used for deterministic merges.
class RecordArray {
 public:
  explicit RecordArray(std::size_t width = 0) : width_(width) {}

  std::size_t width() const noexcept { return width_; }
  std::size_t size() const noexcept { return count_; }
  bool empty() const noexcept { return count_ == 0; }
  std::size_t bytes() const noexcept { return data_.size(); }

  const std::uint8_t* operator[](std::size_t i) const { return data_.data() + i * width_; }

  void reserve(std::size_t n) { data_.reserve(n * width_); }
  void clear() {
    data_.clear();
    count_ = 0;
  }

  void push(const std::uint8_t* rec) {
    data_.insert(data_.end(), rec, rec + width_);
    ++count_;
  }

  void append(const RecordArray& other) {
    data_.insert(data_.end(), other.data_.begin(), other.data_.end());
    count_ += other.count_;
  }

  void sort() {
    if (count_ < 2) return;
    std::vector<std::uint32_t> idx(count_);
    std::iota(idx.begin(), idx.end(), 0u);
    const std::uint8_t* base = data_.data();
    const std::size_t w = width_;
    std::sort(idx.begin(), idx.end(), [base, w](std::uint32_t a, std::uint32_t b) {
      return std::memcmp(base + a * w, base + b * w, w) < 0;
    });
    std::vector<std::uint8_t> out(data_.size());
    for (std::size_t i = 0; i < count_; ++i) std::memcpy(out.data() + i * w, base + idx[i] * w, w);
    data_.swap(out);
  }

  /// Requires sorted order.
  bool has_adjacent_duplicate() const {
    for (std::size_t i = 1; i < count_; ++i)
      if (std::memcmp((*this)[i - 1], (*this)[i], width_) == 0) return true;
    return false;
  }

  /// Requires sorted order.
  void unique() {
    if (count_ < 2) return;
    std::size_t out = 1;
    for (std::size_t i = 1; i < count_; ++i) {
      if (std::memcmp(data_.data() + (out - 1) * width_, (*this)[i], width_) != 0) {
        if (out != i) std::memmove(data_.data() + out * width_, (*this)[i], width_);
        ++out;
      }
    }
    count_ = out;
    data_.resize(out * width_);
  }

  /// Requires sorted order.
  bool contains(const std::uint8_t* rec) const {
    std::size_t lo = 0, hi = count_;
    while (lo < hi) {
      const std::size_t mid = lo + (hi - lo) / 2;
      const int c = std::memcmp((*this)[mid], rec, width_);
      if (c == 0) return true;
      if (c < 0)
        lo = mid + 1;
      else
        hi = mid;
    }
    return false;
  }

 private:
  std::size_t width_;
  std::size_t count_ = 0;
  std::vector<std::uint8_t> data_;
};

}  // namespace growthkit::detail
