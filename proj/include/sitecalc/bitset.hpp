#ifndef SITECALC_BITSET_HPP
#define SITECALC_BITSET_HPP

#include <bit>
#include <compare>
#include <cstdint>
#include <vector>

namespace sitecalc {

// Set of morphism ids over a fixed universe size. Sieves and presieves are
// these, so closure and membership stay word-parallel.
class MorSet {
 public:
  MorSet() = default;
  explicit MorSet(int universe) : n_(universe), w_((universe + 63) / 64, 0) {}

  int universe() const { return n_; }

  bool test(int i) const { return (w_[i >> 6] >> (i & 63)) & 1; }
  void set(int i) { w_[i >> 6] |= std::uint64_t{1} << (i & 63); }
  void reset(int i) { w_[i >> 6] &= ~(std::uint64_t{1} << (i & 63)); }

  int count() const {
    int c = 0;
    for (auto w : w_) c += std::popcount(w);
    return c;
  }

  bool empty() const {
    for (auto w : w_)
      if (w) return false;
    return true;
  }

  bool subset_of(const MorSet& o) const {
    for (std::size_t i = 0; i < w_.size(); ++i)
      if (w_[i] & ~o.w_[i]) return false;
    return true;
  }

  bool intersects(const MorSet& o) const {
    for (std::size_t i = 0; i < w_.size(); ++i)
      if (w_[i] & o.w_[i]) return true;
    return false;
  }

  MorSet& operator|=(const MorSet& o) {
    for (std::size_t i = 0; i < w_.size(); ++i) w_[i] |= o.w_[i];
    return *this;
  }
  MorSet& operator&=(const MorSet& o) {
    for (std::size_t i = 0; i < w_.size(); ++i) w_[i] &= o.w_[i];
    return *this;
  }

  friend MorSet operator|(MorSet a, const MorSet& b) { return a |= b; }
  friend MorSet operator&(MorSet a, const MorSet& b) { return a &= b; }

  bool operator==(const MorSet& o) const { return w_ == o.w_; }

  // Canonical order: word-lexicographic. Only determinism matters.
  std::strong_ordering operator<=>(const MorSet& o) const {
    if (auto c = n_ <=> o.n_; c != 0) return c;
    for (std::size_t i = 0; i < w_.size(); ++i)
      if (auto c = w_[i] <=> o.w_[i]; c != 0) return c;
    return std::strong_ordering::equal;
  }

  template <typename Fn>
  void for_each(Fn&& fn) const {
    for (std::size_t k = 0; k < w_.size(); ++k) {
      std::uint64_t w = w_[k];
      while (w) {
        int b = std::countr_zero(w);
        fn(static_cast<int>(k * 64 + b));
        w &= w - 1;
      }
    }
  }

  std::vector<int> members() const {
    std::vector<int> out;
    out.reserve(count());
    for_each([&](int i) { out.push_back(i); });
    return out;
  }

 private:
  int n_ = 0;
  std::vector<std::uint64_t> w_;
};

}  // namespace sitecalc

#endif
