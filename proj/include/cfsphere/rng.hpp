#ifndef CFSPHERE_RNG_HPP
#define CFSPHERE_RNG_HPP

#include <cmath>
#include <cstdint>

namespace cfs {

// Counter-based generator (splitmix64 over seed/counter): reproducible,
// partitionable by construction, no hidden state beyond the counter.
class CounterRng {
  public:
    explicit CounterRng(std::uint64_t seed, std::uint64_t stream = 0)
        : seed_(seed ^ (0x9e3779b97f4a7c15ULL * (stream + 1))), ctr_(0) {}

    std::uint64_t next_u64() { return mix(seed_ + 0x9e3779b97f4a7c15ULL * (++ctr_)); }

    // uniform in [0, 1)
    double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    // uniform in [a, b)
    double uniform(double a, double b) { return a + (b - a) * next_double(); }

    // standard normal by Box-Muller on a pair of uniforms
    double normal() {
        double u1 = 0.0;
        while (u1 == 0.0) u1 = next_double();
        double u2 = next_double();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586 * u2);
    }

  private:
    static std::uint64_t mix(std::uint64_t z) {
        z ^= z >> 30;
        z *= 0xbf58476d1ce4e5b9ULL;
        z ^= z >> 27;
        z *= 0x94d049bb133111ebULL;
        z ^= z >> 31;
        return z;
    }

    std::uint64_t seed_;
    std::uint64_t ctr_;
};

}  // namespace cfs

#endif
