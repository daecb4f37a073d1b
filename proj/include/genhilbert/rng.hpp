#ifndef GENHILBERT_RNG_HPP
#define GENHILBERT_RNG_HPP

#include <cstdint>

namespace genhilbert
{

///
/// SplitMix64 stream: 64-bit state advanced by 0x9E3779B97F4A7C15 per draw,
/// output mixed with the standard (30, 27, 31) xor-shift-multiply finalizer.
/// `uniform()` maps the top 53 bits to [0, 1). The contract is fixed so
/// seeded runs reproduce across builds and implementations.
///
class SplitMix64
{
public:
    explicit SplitMix64(std::uint64_t seed) : m_state(seed) {}

    std::uint64_t next()
    {
        m_state += 0x9E3779B97F4A7C15ull;
        std::uint64_t z = m_state;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

    double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    /// Uniform integer in [0, bound), bound > 0.
    std::uint64_t below(std::uint64_t bound) { return next() % bound; }

private:
    std::uint64_t m_state;
};

} // namespace genhilbert

#endif
