#pragma once

#include <array>
#include <cstdint>
#include <string_view>

namespace obsel {

// Seedable, splittable random source.
//
// Each stream is a xoshiro256** generator whose state is filled by SplitMix64
// from a stream key. The root stream's key is the seed itself; substream k of
// a stream with key s has key mix(s, k), so substreams are independent of
// each other and of how much of any sibling has been consumed. Normal
// deviates use inversion of the uniform draw, which keeps every stream
// identical across standard libraries.
class RandomSource {
 public:
  static constexpr std::string_view kAlgorithm = "xoshiro256**/splitmix64";

  explicit RandomSource(std::uint64_t seed);

  std::uint64_t seed() const noexcept { return seed_; }
  std::uint64_t key() const noexcept { return key_; }
  std::string_view algorithm() const noexcept { return kAlgorithm; }

  RandomSource substream(std::uint64_t index) const;

  std::uint64_t next_u64();
  // Uniform on the open interval (0, 1); never returns 0 or 1.
  double uniform();
  double normal();
  double normal(double mean, double sd) { return mean + sd * normal(); }

  // Satisfies UniformRandomBitGenerator.
  using result_type = std::uint64_t;
  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return ~result_type{0}; }
  result_type operator()() { return next_u64(); }

 private:
  RandomSource(std::uint64_t seed, std::uint64_t key);

  std::uint64_t seed_;
  std::uint64_t key_;
  std::array<std::uint64_t, 4> state_{};
};

// Neumaier-compensated running sum.
class CompensatedSum {
 public:
  void add(double x);
  double value() const noexcept { return sum_ + compensation_; }

 private:
  double sum_ = 0.0;
  double compensation_ = 0.0;
};

}  // namespace obsel
