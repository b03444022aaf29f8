#ifndef PMFD_RNG_HPP
#define PMFD_RNG_HPP

#include <cstdint>
#include <cstddef>

namespace pmfd {

/// Advances a splitmix64 state and returns the next value.
std::uint64_t splitmix64(std::uint64_t& state);

/// Deterministic pseudo-random generator (xoshiro256** seeded via splitmix64).
/// Output is identical across platforms and compilers for a given seed, which
/// is what makes runs byte-for-byte reproducible. The standard <random>
/// distributions are implementation-defined, so uniform/gaussian are done here.
class Rng {
public:
    explicit Rng(std::uint64_t seed);

    std::uint64_t next_u64();

    /// Uniform double in [0, 1).
    double uniform();
    /// Uniform double in [lo, hi).
    double uniform(double lo, double hi);
    /// Uniform index in [0, n); n must be > 0.
    std::size_t uniform_index(std::size_t n);
    /// Standard Box-Muller gaussian.
    double gaussian(double mean, double stddev);

    /// Independent child generator for a named substream.
    Rng derive(std::uint64_t stream) const;

private:
    std::uint64_t state_[4];
    std::uint64_t seed_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

/// Mixes a base seed with a stream index into a fresh seed.
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream);

} // namespace pmfd

#endif
