#pragma once

#include <cstdint>
#include <string_view>

namespace pivotboot {

constexpr std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// FNV-1a, used to turn purpose tags into stream keys.
constexpr std::uint64_t hash_tag(std::string_view tag) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (char c : tag) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001b3ULL;
  }
  return h;
}

// Counter-based random stream. The k-th output is mix64(key + k * gamma), so a
// stream is fully determined by its key and position. Child streams are keyed
// by (parent key, tag, index), which makes results independent of the order
// in which replicates are evaluated and of the number of worker threads.
//
// Satisfies UniformRandomBitGenerator, so it plugs into <random> distributions.
class Stream {
 public:
  using result_type = std::uint64_t;

  constexpr Stream() = default;
  explicit constexpr Stream(std::uint64_t seed) : key_(mix64(seed ^ kSeedSalt)) {}

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return ~result_type{0}; }

  constexpr result_type operator()() { return mix64(key_ + (++counter_) * kGamma); }

  // Uniform on the open interval (0, 1), 53 bits of resolution.
  constexpr double uniform() {
    return (static_cast<double>((*this)() >> 11) + 0.5) * 0x1.0p-53;
  }

  constexpr Stream split(std::string_view tag, std::uint64_t index = 0) const {
    return split(hash_tag(tag), index);
  }

  constexpr Stream split(std::uint64_t tag, std::uint64_t index) const {
    Stream child;
    child.key_ = mix64(mix64(key_ ^ mix64(tag + kGamma)) + mix64(index + 1) * kGamma);
    return child;
  }

  constexpr std::uint64_t key() const { return key_; }
  constexpr std::uint64_t position() const { return counter_; }

  friend constexpr bool operator==(const Stream&, const Stream&) = default;

 private:
  static constexpr std::uint64_t kGamma = 0x9e3779b97f4a7c15ULL;
  static constexpr std::uint64_t kSeedSalt = 0x2545f4914f6cdd1dULL;

  std::uint64_t key_ = 0;
  std::uint64_t counter_ = 0;
};

// Binomial(trials, p) draw. Small means use sequential-search inversion; large
// means defer to std::binomial_distribution.
std::int64_t draw_binomial(std::int64_t trials, double p, Stream& stream);

// Poisson(lambda) by sequential-search inversion.
std::int64_t draw_poisson(double lambda, Stream& stream);

double draw_standard_normal(Stream& stream);

double draw_unit_exponential(Stream& stream);

}  // namespace pivotboot
