#ifndef RICCATI_RNG_HPP
#define RICCATI_RNG_HPP

#include <cstdint>
#include <random>

namespace riccati {

/// Seeded generator with an explicit uniform mapping, so identical seeds
/// give identical streams on every platform and standard library.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next() { return engine_(); }

    double uniform01() {
        return static_cast<double>(next() >> 11) * 0x1.0p-53;
    }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

    int uniform_int(int lo, int hi) {  // inclusive bounds
        return lo + static_cast<int>(next() % static_cast<std::uint64_t>(hi - lo + 1));
    }

private:
    std::mt19937_64 engine_;
};

} // namespace riccati

#endif
