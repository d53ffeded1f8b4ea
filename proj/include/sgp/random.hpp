#pragma once

#include <cstdint>
#include <random>

namespace sgp {

/// Seeded uniform doubles with a platform-independent bit stream:
/// mt19937_64 output is fixed by the standard and the conversion to
/// [0, 1) uses the top 53 bits directly.
class UniformSource {
 public:
  explicit UniformSource(std::uint64_t seed) : engine_(seed) {}

  double unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * unit(); }

 private:
  std::mt19937_64 engine_;
};

}  // namespace sgp
