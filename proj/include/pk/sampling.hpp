#pragma once

#include <cstdint>
#include <random>

namespace pk {

// Seedable sampling source used by the verification sweeps. The generator
// is std::mt19937_64 and uniforms are produced by the 53-bit mantissa map
//   u = (next() >> 11) * 2^-53  in [0, 1),
// which is implementation-independent, so a fixed seed reproduces the
// exact sample stream anywhere.
class SampleRng {
  public:
    explicit SampleRng(std::uint64_t seed) : eng_(seed) {}

    std::uint64_t raw() { return eng_(); }

    double unit() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * unit(); }

  private:
    std::mt19937_64 eng_;
};

}  // namespace pk
