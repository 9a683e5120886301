#include "xforge/bitstring.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

namespace xforge {

namespace {

constexpr std::size_t word_count(std::size_t bits) { return (bits + 63) / 64; }

int hex_value(char c) {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    if (c >= 'A' && c <= 'F') return c - 'A' + 10;
    return -1;
}

}  // namespace

BitString::BitString(std::size_t length) : length_(length), words_(word_count(length), 0) {}

BitString BitString::from_bytes(std::span<const std::uint8_t> bytes, std::size_t length) {
    if (bytes.size() * 8 < length) {
        throw std::invalid_argument("BitString::from_bytes: " + std::to_string(bytes.size()) +
                                    " bytes cannot hold " + std::to_string(length) + " bits");
    }
    BitString out(length);
    const std::size_t used = (length + 7) / 8;
    for (std::size_t i = 0; i < used; ++i) {
        out.words_[i / 8] |= static_cast<std::uint64_t>(bytes[i]) << (8 * (i % 8));
    }
    out.clear_tail();
    return out;
}

BitString BitString::from_uint(std::uint64_t value, std::size_t length) {
    if (length < 64 && (value >> length) != 0) {
        throw std::invalid_argument("BitString::from_uint: value does not fit in " +
                                    std::to_string(length) + " bits");
    }
    BitString out(length);
    if (length > 0) out.words_[0] = value;
    return out;
}

BitString BitString::from_string(std::string_view bits) {
    BitString out(bits.size());
    for (std::size_t i = 0; i < bits.size(); ++i) {
        if (bits[i] == '1') {
            out.set(i, true);
        } else if (bits[i] != '0') {
            throw std::invalid_argument("BitString::from_string: unexpected character");
        }
    }
    return out;
}

BitString BitString::from_hex(std::string_view hex, std::size_t length) {
    if (hex.size() % 2 != 0) throw std::invalid_argument("BitString::from_hex: odd digit count");
    std::vector<std::uint8_t> bytes(hex.size() / 2);
    for (std::size_t i = 0; i < bytes.size(); ++i) {
        const int hi = hex_value(hex[2 * i]);
        const int lo = hex_value(hex[2 * i + 1]);
        if (hi < 0 || lo < 0) throw std::invalid_argument("BitString::from_hex: bad hex digit");
        bytes[i] = static_cast<std::uint8_t>(hi * 16 + lo);
    }
    return from_bytes(bytes, length);
}

bool BitString::at(std::size_t i) const {
    if (i >= length_) {
        throw std::out_of_range("BitString: index " + std::to_string(i) + " outside length " +
                                std::to_string(length_));
    }
    return (*this)[i];
}

void BitString::set(std::size_t i, bool value) {
    if (i >= length_) {
        throw std::out_of_range("BitString: index " + std::to_string(i) + " outside length " +
                                std::to_string(length_));
    }
    const std::uint64_t mask = std::uint64_t{1} << (i & 63);
    if (value) {
        words_[i >> 6] |= mask;
    } else {
        words_[i >> 6] &= ~mask;
    }
}

void BitString::flip(std::size_t i) { set(i, !at(i)); }

std::uint64_t BitString::word_at(std::size_t offset, unsigned count) const noexcept {
    if (count == 0 || offset >= length_) return 0;
    const std::size_t w = offset >> 6;
    const unsigned shift = offset & 63;
    std::uint64_t value = words_[w] >> shift;
    if (shift != 0 && w + 1 < words_.size()) value |= words_[w + 1] << (64 - shift);
    if (count < 64) value &= (std::uint64_t{1} << count) - 1;
    return value;
}

void BitString::set_word(std::size_t offset, std::uint64_t value, unsigned count) {
    if (count == 0) return;
    if (offset + count > length_) {
        throw std::out_of_range("BitString::set_word: range exceeds length");
    }
    if (count < 64) value &= (std::uint64_t{1} << count) - 1;
    const std::uint64_t mask = count < 64 ? (std::uint64_t{1} << count) - 1 : ~std::uint64_t{0};
    const std::size_t w = offset >> 6;
    const unsigned shift = offset & 63;
    words_[w] = (words_[w] & ~(mask << shift)) | (value << shift);
    if (shift != 0 && shift + count > 64) {
        const unsigned spill = 64 - shift;
        words_[w + 1] = (words_[w + 1] & ~(mask >> spill)) | (value >> spill);
    }
}

std::uint64_t BitString::to_uint() const {
    if (length_ > 64) throw std::out_of_range("BitString::to_uint: longer than 64 bits");
    return length_ == 0 ? 0 : words_[0];
}

std::vector<std::uint8_t> BitString::to_bytes() const {
    std::vector<std::uint8_t> bytes((length_ + 7) / 8);
    for (std::size_t i = 0; i < bytes.size(); ++i) {
        bytes[i] = static_cast<std::uint8_t>(words_[i / 8] >> (8 * (i % 8)));
    }
    return bytes;
}

std::string BitString::to_string() const {
    std::string out(length_, '0');
    for (std::size_t i = 0; i < length_; ++i) {
        if ((*this)[i]) out[i] = '1';
    }
    return out;
}

std::string BitString::to_hex() const {
    static constexpr char digits[] = "0123456789abcdef";
    std::string out;
    for (std::uint8_t b : to_bytes()) {
        out.push_back(digits[b >> 4]);
        out.push_back(digits[b & 15]);
    }
    return out;
}

BitString BitString::slice(std::size_t offset, std::size_t length) const {
    if (offset > length_ || length > length_ - offset) {
        throw std::out_of_range("BitString::slice: [" + std::to_string(offset) + ", " +
                                std::to_string(offset + length) + ") outside length " +
                                std::to_string(length_));
    }
    BitString out(length);
    for (std::size_t i = 0; i < out.words_.size(); ++i) {
        out.words_[i] = word_at(offset + 64 * i);
    }
    out.clear_tail();
    return out;
}

BitString BitString::concat(const BitString& tail) const {
    BitString out = resized(length_ + tail.length_);
    for (std::size_t i = 0; i < tail.words_.size(); ++i) {
        const std::size_t pos = length_ + 64 * i;
        const unsigned count = static_cast<unsigned>(std::min<std::size_t>(64, tail.length_ - 64 * i));
        out.set_word(pos, tail.words_[i], count);
    }
    return out;
}

BitString BitString::resized(std::size_t length) const {
    BitString out = *this;
    out.length_ = length;
    out.words_.resize(word_count(length), 0);
    out.clear_tail();
    return out;
}

std::size_t BitString::popcount() const noexcept {
    std::size_t total = 0;
    for (std::uint64_t w : words_) total += static_cast<std::size_t>(std::popcount(w));
    return total;
}

BitString& BitString::operator^=(const BitString& other) {
    if (other.length_ != length_) {
        throw std::invalid_argument("BitString: xor of lengths " + std::to_string(length_) +
                                    " and " + std::to_string(other.length_));
    }
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] ^= other.words_[i];
    return *this;
}

void BitString::clear_tail() noexcept {
    if (length_ % 64 != 0 && !words_.empty()) {
        words_.back() &= (std::uint64_t{1} << (length_ % 64)) - 1;
    }
}

}  // namespace xforge
