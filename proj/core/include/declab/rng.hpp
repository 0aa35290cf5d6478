#pragma once

#include <cmath>
#include <cstdint>

namespace declab {

/// Counter-based splittable generator. Each draw applies a SplitMix64-style
/// finalizer to (key, counter), so a stream is a pure function of its key and
/// position; `split` derives an independent key per (run, round) without
/// consuming state from the parent. Output is identical across platforms.
class SplitRng {
 public:
  explicit SplitRng(std::uint64_t seed) : key_(finalize(seed ^ kDomain)) {}

  /// Derives an independent child stream for the given label.
  SplitRng split(std::uint64_t stream) const {
    return SplitRng(Raw{}, finalize(key_ ^ finalize(stream + kSplitDomain)));
  }

  std::uint64_t next_u64() {
    counter_ += kGamma;
    return finalize(key_ + counter_);
  }

  /// Uniform on [0, 1) with 53 random bits.
  double next_double() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  /// Standard normal via Box-Muller (two uniforms per draw, no cached spare).
  double next_gaussian() {
    const double u1 =
        (static_cast<double>(next_u64() >> 11) + 1.0) * 0x1.0p-53;  // (0, 1]
    const double u2 = next_double();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * kPi * u2);
  }

  /// Uniform integer in [0, n).
  std::uint64_t next_below(std::uint64_t n) {
    return next_u64() % n;
  }

 private:
  struct Raw {};
  SplitRng(Raw, std::uint64_t key) : key_(key) {}

  static std::uint64_t finalize(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  static constexpr std::uint64_t kGamma = 0x9E3779B97F4A7C15ULL;
  static constexpr std::uint64_t kDomain = 0xD1B54A32D192ED03ULL;
  static constexpr std::uint64_t kSplitDomain = 0x8CB92BA72F3D8DD7ULL;
  static constexpr double kPi = 3.14159265358979323846;

  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

}  // namespace declab
