#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace xforge {

// Sequence of bits with an exact length. Bit i lives in byte i/8 at position
// i%8 (least-significant first); the same convention is used for every
// integer and byte conversion.
class BitString {
 public:
    BitString() = default;
    explicit BitString(std::size_t length);

    static BitString from_bytes(std::span<const std::uint8_t> bytes, std::size_t length);
    static BitString from_uint(std::uint64_t value, std::size_t length);
    // "0110..." with character i giving bit i.
    static BitString from_string(std::string_view bits);
    // Hex digits as bytes (two digits per byte, first byte first).
    static BitString from_hex(std::string_view hex, std::size_t length);

    std::size_t size() const noexcept { return length_; }
    bool empty() const noexcept { return length_ == 0; }

    bool operator[](std::size_t i) const noexcept {
        return (words_[i >> 6] >> (i & 63)) & 1U;
    }
    bool at(std::size_t i) const;
    void set(std::size_t i, bool value);
    void flip(std::size_t i);

    // Up to 64 bits starting at `offset`, bit 0 of the result = bit `offset`.
    // Bits past the end read as zero.
    std::uint64_t word_at(std::size_t offset, unsigned count = 64) const noexcept;
    void set_word(std::size_t offset, std::uint64_t value, unsigned count);

    std::uint64_t to_uint() const;
    std::vector<std::uint8_t> to_bytes() const;
    std::string to_string() const;
    std::string to_hex() const;

    BitString slice(std::size_t offset, std::size_t length) const;
    BitString concat(const BitString& tail) const;
    // Copy extended with zeros (or truncated) to `length` bits.
    BitString resized(std::size_t length) const;

    std::size_t popcount() const noexcept;
    BitString& operator^=(const BitString& other);
    friend BitString operator^(BitString lhs, const BitString& rhs) { return lhs ^= rhs; }

    std::span<const std::uint64_t> words() const noexcept { return words_; }

    friend bool operator==(const BitString&, const BitString&) = default;

 private:
    void clear_tail() noexcept;

    std::size_t length_ = 0;
    std::vector<std::uint64_t> words_;
};

}  // namespace xforge
