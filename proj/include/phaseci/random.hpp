#ifndef PHASECI_RANDOM_HPP
#define PHASECI_RANDOM_HPP

#include <cstdint>
#include <string_view>

namespace phaseci {

/// Counter-style pseudo-random stream (splitmix64). Streams are cheap to
/// construct from a 64-bit key, so each Monte Carlo replication gets its own
/// independent stream and results do not depend on evaluation order or
/// thread count.
class RandomStream {
public:
    explicit RandomStream(std::uint64_t key) : state_(key) {}

    std::uint64_t next_u64() {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

    /// Uniform double in [0, 1), 53 random bits.
    double next_unit() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

private:
    std::uint64_t state_;
};

namespace detail {

inline std::uint64_t avalanche64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

inline std::uint64_t hash_combine(std::uint64_t seed, std::uint64_t value) {
    return avalanche64(seed ^ (value + 0x9E3779B97F4A7C15ull + (seed << 6) + (seed >> 2)));
}

inline std::uint64_t fnv1a64(std::string_view text) {
    std::uint64_t h = 0xCBF29CE484222325ull;
    for (unsigned char c : text) {
        h ^= c;
        h *= 0x100000001B3ull;
    }
    return h;
}

} // namespace detail

/// Key for the replication stream of one Monte Carlo cell. Keyed on the
/// master seed plus every cell identifier, never on execution order.
inline std::uint64_t stream_key(std::uint64_t master_seed, std::string_view variant,
                                std::uint64_t atoms, std::uint64_t trials,
                                std::uint64_t replication) {
    std::uint64_t k = detail::avalanche64(master_seed);
    k = detail::hash_combine(k, detail::fnv1a64(variant));
    k = detail::hash_combine(k, atoms);
    k = detail::hash_combine(k, trials);
    k = detail::hash_combine(k, replication);
    return k;
}

} // namespace phaseci

#endif // PHASECI_RANDOM_HPP
