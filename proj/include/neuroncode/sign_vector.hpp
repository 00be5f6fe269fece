#pragma once

#include <compare>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace neuroncode {

inline constexpr std::size_t kDefaultEnumerationCap = 24;

// A ±1-valued vector, bit-packed: bit i set means entry i equals -1.
class SignVector {
 public:
  explicit SignVector(std::size_t size);
  static SignVector all_ones(std::size_t size);
  static SignVector from_entries(std::span<const int> entries);
  static SignVector from_entries(std::initializer_list<int> entries);
  // low `size` bits of `bits`, bit i -> entry i; size <= 64
  static SignVector from_bit_pattern(std::size_t size, std::uint64_t bits);

  std::size_t size() const { return size_; }
  int operator[](std::size_t index) const;
  void set(std::size_t index, int value);
  bool is_negative(std::size_t index) const;

  // number of -1 entries
  std::size_t hamming_weight() const;
  // packed representation, size <= 64 only
  std::uint64_t bit_pattern() const;
  const std::vector<std::uint64_t>& words() const { return words_; }

  std::vector<int> to_entries() const;
  std::string to_string() const;

  friend bool operator==(const SignVector&, const SignVector&) = default;
  // lexicographic entry order with +1 before -1; shorter vectors first
  std::strong_ordering operator<=>(const SignVector& other) const;

 private:
  std::size_t size_ = 0;
  std::vector<std::uint64_t> words_;
};

// pointwise product; the ±1 representation of XOR
SignVector xor_product(const SignVector& a, const SignVector& b);

std::size_t hamming_weight(const SignVector& x);

// parity monomial: product of the entries selected by subset_mask
// (bit i of the mask selects coordinate i); mask must fit inside [0, n)
int chi(std::uint64_t subset_mask, const SignVector& x);

// product of all entries, any length
int parity(const SignVector& x);

long long inner_product(const SignVector& x, const SignVector& w);

// --- hypercube enumeration -------------------------------------------------
//
// Fixed order: index k in [0, 2^n) maps to the vector whose entry i is -1
// exactly when bit (n-1-i) of k is set. This is lexicographic order with
// +1 < -1, so witness reports are reproducible.

std::uint64_t hypercube_size(std::size_t n,
                             std::size_t cap = kDefaultEnumerationCap);
SignVector point_from_index(std::size_t n, std::uint64_t index);
std::uint64_t index_of_point(const SignVector& x);

class HypercubeRange {
 public:
  class iterator {
   public:
    using value_type = SignVector;
    using difference_type = std::ptrdiff_t;

    iterator(std::size_t n, std::uint64_t index) : n_(n), index_(index) {}
    SignVector operator*() const { return point_from_index(n_, index_); }
    iterator& operator++() {
      ++index_;
      return *this;
    }
    iterator operator++(int) {
      iterator copy = *this;
      ++index_;
      return copy;
    }
    friend bool operator==(const iterator&, const iterator&) = default;

   private:
    std::size_t n_;
    std::uint64_t index_;
  };

  HypercubeRange(std::size_t n, std::size_t cap);
  iterator begin() const { return {n_, 0}; }
  iterator end() const { return {n_, count_}; }
  std::uint64_t size() const { return count_; }

 private:
  std::size_t n_;
  std::uint64_t count_;
};

HypercubeRange enumerate_hypercube(std::size_t n,
                                   std::size_t cap = kDefaultEnumerationCap);

// A coded word under noise: entries in {-1, 0, +1}, zeros are exactly the
// erased coordinates.
class NoisySignVector {
 public:
  explicit NoisySignVector(std::vector<int> entries);
  explicit NoisySignVector(const SignVector& clean);

  std::size_t size() const { return entries_.size(); }
  int operator[](std::size_t index) const;
  void erase_at(std::size_t index);
  void negate_at(std::size_t index);
  bool is_erased(std::size_t index) const;
  std::string to_string() const;

  friend bool operator==(const NoisySignVector&,
                         const NoisySignVector&) = default;

 private:
  std::vector<std::int8_t> entries_;
};

}  // namespace neuroncode
