#pragma once

#include <cstdint>

namespace xforge {

// Counter-based generator: value i of stream s under key k is
// splitmix64(k ^ splitmix64(s) + (i + 1) * 0x9E3779B97F4A7C15). Every value is
// addressable without generating its predecessors, so splitting work across
// streams never changes the sequence a stream produces.
class CounterRng {
 public:
    static constexpr std::uint64_t kDefaultKey = 0x78666f7267652d31ULL;  // "xforge-1"

    explicit CounterRng(std::uint64_t key = kDefaultKey, std::uint64_t stream = 0) noexcept;

    std::uint64_t at(std::uint64_t counter) const noexcept;
    std::uint64_t next() noexcept { return at(counter_++); }
    // Uniform in [0, bound) by rejection; bound must be positive.
    std::uint64_t below(std::uint64_t bound) noexcept;
    CounterRng split(std::uint64_t stream) const noexcept;

    std::uint64_t key() const noexcept { return key_; }

 private:
    std::uint64_t key_;
    std::uint64_t base_;
    std::uint64_t counter_ = 0;
};

std::uint64_t splitmix64(std::uint64_t x) noexcept;

}  // namespace xforge
