#pragma once

#include <cstdint>
#include <random>

namespace qdilemma {

/// Deterministic uniform sampler. Doubles are derived from the top 53 bits
/// of mt19937_64 output so a seed produces the same stream on every
/// platform (std::uniform_real_distribution makes no such promise).
class Rng {
  public:
    explicit Rng(uint64_t seed) : gen_(seed) {}

    double uniform01() {
        return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
    }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  private:
    std::mt19937_64 gen_;
};

}  // namespace qdilemma
