#include "neuroncode/sign_vector.hpp"

#include <bit>
#include <sstream>

#include "neuroncode/errors.hpp"

namespace neuroncode {
namespace {

constexpr std::size_t kWordBits = 64;

std::size_t word_count(std::size_t size) {
  return (size + kWordBits - 1) / kWordBits;
}

}  // namespace

SignVector::SignVector(std::size_t size)
    : size_(size), words_(word_count(size), 0) {
  if (size == 0) throw dimension_error("sign vector length must be positive");
}

SignVector SignVector::all_ones(std::size_t size) { return SignVector(size); }

SignVector SignVector::from_entries(std::span<const int> entries) {
  SignVector result(entries.size());
  for (std::size_t i = 0; i < entries.size(); ++i) result.set(i, entries[i]);
  return result;
}

SignVector SignVector::from_entries(std::initializer_list<int> entries) {
  return from_entries(std::span<const int>(entries.begin(), entries.size()));
}

SignVector SignVector::from_bit_pattern(std::size_t size, std::uint64_t bits) {
  if (size > kWordBits) {
    throw dimension_error("bit pattern construction limited to 64 entries");
  }
  SignVector result(size);
  result.words_[0] = size == kWordBits ? bits : (bits & ((1ull << size) - 1));
  return result;
}

int SignVector::operator[](std::size_t index) const {
  if (index >= size_) throw dimension_error("sign vector index out of range");
  return (words_[index / kWordBits] >> (index % kWordBits)) & 1 ? -1 : +1;
}

void SignVector::set(std::size_t index, int value) {
  if (index >= size_) throw dimension_error("sign vector index out of range");
  if (value != 1 && value != -1) {
    throw domain_error("sign vector entries must be +1 or -1");
  }
  std::uint64_t mask = 1ull << (index % kWordBits);
  if (value == -1) {
    words_[index / kWordBits] |= mask;
  } else {
    words_[index / kWordBits] &= ~mask;
  }
}

bool SignVector::is_negative(std::size_t index) const {
  return (*this)[index] == -1;
}

std::size_t SignVector::hamming_weight() const {
  std::size_t total = 0;
  for (std::uint64_t word : words_) total += std::popcount(word);
  return total;
}

std::uint64_t SignVector::bit_pattern() const {
  if (size_ > kWordBits) {
    throw dimension_error("bit pattern only available up to 64 entries");
  }
  return words_[0];
}

std::vector<int> SignVector::to_entries() const {
  std::vector<int> entries(size_);
  for (std::size_t i = 0; i < size_; ++i) entries[i] = (*this)[i];
  return entries;
}

std::string SignVector::to_string() const {
  std::ostringstream out;
  out << '(';
  for (std::size_t i = 0; i < size_; ++i) {
    if (i > 0) out << ',';
    out << (*this)[i];
  }
  out << ')';
  return out.str();
}

std::strong_ordering SignVector::operator<=>(const SignVector& other) const {
  std::size_t common_words = std::min(words_.size(), other.words_.size());
  for (std::size_t w = 0; w < common_words; ++w) {
    std::uint64_t diff = words_[w] ^ other.words_[w];
    if (diff != 0) {
      std::size_t bit = std::countr_zero(diff);
      bool mine = (words_[w] >> bit) & 1;
      // +1 (bit clear) sorts before -1 (bit set)
      return mine ? std::strong_ordering::greater : std::strong_ordering::less;
    }
  }
  return size_ <=> other.size_;
}

SignVector xor_product(const SignVector& a, const SignVector& b) {
  if (a.size() != b.size()) {
    throw dimension_error("pointwise product requires equal lengths");
  }
  SignVector result(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a.is_negative(i) != b.is_negative(i)) result.set(i, -1);
  }
  return result;
}

std::size_t hamming_weight(const SignVector& x) { return x.hamming_weight(); }

int chi(std::uint64_t subset_mask, const SignVector& x) {
  // a 64-bit mask addresses at most the first 64 coordinates
  if (x.size() < 64 && (subset_mask >> x.size()) != 0) {
    throw dimension_error("subset index out of range");
  }
  return std::popcount(subset_mask & x.words()[0]) % 2 == 0 ? +1 : -1;
}

int parity(const SignVector& x) {
  return x.hamming_weight() % 2 == 0 ? +1 : -1;
}

long long inner_product(const SignVector& x, const SignVector& w) {
  if (x.size() != w.size()) {
    throw dimension_error("inner product requires equal lengths");
  }
  std::size_t disagreements = 0;
  for (std::size_t i = 0; i < x.words().size(); ++i) {
    disagreements += std::popcount(x.words()[i] ^ w.words()[i]);
  }
  return static_cast<long long>(x.size()) -
         2 * static_cast<long long>(disagreements);
}

std::uint64_t hypercube_size(std::size_t n, std::size_t cap) {
  if (n == 0) throw dimension_error("hypercube dimension must be positive");
  if (n > cap) {
    throw resource_error("hypercube dimension " + std::to_string(n) +
                         " exceeds enumeration cap " + std::to_string(cap));
  }
  return 1ull << n;
}

SignVector point_from_index(std::size_t n, std::uint64_t index) {
  SignVector x(n);
  for (std::size_t i = 0; i < n; ++i) {
    if ((index >> (n - 1 - i)) & 1) x.set(i, -1);
  }
  return x;
}

std::uint64_t index_of_point(const SignVector& x) {
  std::size_t n = x.size();
  if (n > 63) throw dimension_error("point index limited to 63 entries");
  std::uint64_t index = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (x.is_negative(i)) index |= 1ull << (n - 1 - i);
  }
  return index;
}

HypercubeRange::HypercubeRange(std::size_t n, std::size_t cap)
    : n_(n), count_(hypercube_size(n, cap)) {}

HypercubeRange enumerate_hypercube(std::size_t n, std::size_t cap) {
  return HypercubeRange(n, cap);
}

NoisySignVector::NoisySignVector(std::vector<int> entries) {
  entries_.reserve(entries.size());
  for (int value : entries) {
    if (value != -1 && value != 0 && value != 1) {
      throw domain_error("noisy entries must be -1, 0, or +1");
    }
    entries_.push_back(static_cast<std::int8_t>(value));
  }
  if (entries_.empty()) {
    throw dimension_error("noisy vector length must be positive");
  }
}

NoisySignVector::NoisySignVector(const SignVector& clean) {
  entries_.reserve(clean.size());
  for (std::size_t i = 0; i < clean.size(); ++i) {
    entries_.push_back(static_cast<std::int8_t>(clean[i]));
  }
}

int NoisySignVector::operator[](std::size_t index) const {
  if (index >= entries_.size()) {
    throw dimension_error("noisy vector index out of range");
  }
  return entries_[index];
}

void NoisySignVector::erase_at(std::size_t index) {
  if (index >= entries_.size()) {
    throw dimension_error("noisy vector index out of range");
  }
  entries_[index] = 0;
}

void NoisySignVector::negate_at(std::size_t index) {
  if (index >= entries_.size()) {
    throw dimension_error("noisy vector index out of range");
  }
  entries_[index] = static_cast<std::int8_t>(-entries_[index]);
}

bool NoisySignVector::is_erased(std::size_t index) const {
  return (*this)[index] == 0;
}

std::string NoisySignVector::to_string() const {
  std::ostringstream out;
  out << '(';
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    if (i > 0) out << ',';
    out << int(entries_[i]);
  }
  out << ')';
  return out.str();
}

}  // namespace neuroncode
