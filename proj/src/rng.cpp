#include "xforge/rng.hpp"

namespace xforge {

namespace {
constexpr std::uint64_t kGamma = 0x9E3779B97F4A7C15ULL;
}

std::uint64_t splitmix64(std::uint64_t x) noexcept {
    x ^= x >> 30;
    x *= 0xBF58476D1CE4E5B9ULL;
    x ^= x >> 27;
    x *= 0x94D049BB133111EBULL;
    x ^= x >> 31;
    return x;
}

CounterRng::CounterRng(std::uint64_t key, std::uint64_t stream) noexcept
    : key_(key), base_(key ^ splitmix64(stream)) {}

std::uint64_t CounterRng::at(std::uint64_t counter) const noexcept {
    return splitmix64(base_ + (counter + 1) * kGamma);
}

std::uint64_t CounterRng::below(std::uint64_t bound) noexcept {
    // reject the top partial block so every residue is equally likely
    const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % bound);
    std::uint64_t v = next();
    while (v >= limit) v = next();
    return v % bound;
}

CounterRng CounterRng::split(std::uint64_t stream) const noexcept {
    return CounterRng(base_, stream);
}

}  // namespace xforge
