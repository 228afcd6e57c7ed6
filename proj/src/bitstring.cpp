#include "apm/bitstring.hpp"

#include <bit>

#include "apm/errors.hpp"
#include "apm/rng.hpp"

namespace apm {

namespace {
constexpr std::size_t kWordBits = 64;

std::size_t word_count(std::size_t len) {
    return (len + kWordBits - 1) / kWordBits;
}
}  // namespace

BitString::BitString(std::size_t len) : len_(len), words_(word_count(len), 0) {}

void BitString::check_index(std::size_t index) const {
    if (index >= len_) throw domain_error("BitString: index out of range");
}

BitString BitString::parse(const std::string& text) {
    BitString out(text.size());
    for (std::size_t k = 0; k < text.size(); ++k) {
        const char ch = text[k];
        if (ch == '1') {
            out.set(k, true);
        } else if (ch != '0') {
            throw validation_error("BitString: expected only '0'/'1' characters");
        }
    }
    return out;
}

BitString BitString::from_value(std::size_t len, std::uint64_t value) {
    if (len > 64) throw domain_error("BitString::from_value: len must be <= 64");
    if (len < 64 && (value >> len) != 0) {
        throw domain_error("BitString::from_value: value does not fit in len bits");
    }
    BitString out(len);
    if (len > 0) out.words_[0] = value;
    return out;
}

BitString BitString::random(std::size_t len, SeededRng& rng) {
    BitString out(len);
    for (std::size_t w = 0; w < out.words_.size(); ++w) {
        out.words_[w] = rng.next_u64();
    }
    // keep unused high bits zero
    if (len % kWordBits != 0 && !out.words_.empty()) {
        out.words_.back() &= (std::uint64_t{1} << (len % kWordBits)) - 1;
    }
    return out;
}

bool BitString::get(std::size_t index) const {
    check_index(index);
    return (words_[index / kWordBits] >> (index % kWordBits)) & 1;
}

void BitString::set(std::size_t index, bool value) {
    check_index(index);
    const std::uint64_t mask = std::uint64_t{1} << (index % kWordBits);
    if (value) {
        words_[index / kWordBits] |= mask;
    } else {
        words_[index / kWordBits] &= ~mask;
    }
}

void BitString::flip(std::size_t index) {
    check_index(index);
    words_[index / kWordBits] ^= std::uint64_t{1} << (index % kWordBits);
}

std::size_t BitString::weight() const {
    std::size_t total = 0;
    for (std::uint64_t w : words_) total += static_cast<std::size_t>(std::popcount(w));
    return total;
}

int BitString::dot_parity(const BitString& other) const {
    if (len_ != other.len_) throw dimension_error("BitString::dot_parity: length mismatch");
    std::uint64_t acc = 0;
    for (std::size_t w = 0; w < words_.size(); ++w) acc ^= words_[w] & other.words_[w];
    return std::popcount(acc) & 1;
}

BitString BitString::operator^(const BitString& other) const {
    if (len_ != other.len_) throw dimension_error("BitString::operator^: length mismatch");
    BitString out(len_);
    for (std::size_t w = 0; w < words_.size(); ++w) out.words_[w] = words_[w] ^ other.words_[w];
    return out;
}

BitString BitString::complement() const {
    BitString out(len_);
    for (std::size_t w = 0; w < words_.size(); ++w) out.words_[w] = ~words_[w];
    if (len_ % kWordBits != 0 && !out.words_.empty()) {
        out.words_.back() &= (std::uint64_t{1} << (len_ % kWordBits)) - 1;
    }
    return out;
}

std::uint64_t BitString::value() const {
    if (len_ > 64) throw domain_error("BitString::value: len must be <= 64");
    return words_.empty() ? 0 : words_[0];
}

std::string BitString::to_string() const {
    std::string out(len_, '0');
    for (std::size_t k = 0; k < len_; ++k) {
        if (get(k)) out[k] = '1';
    }
    return out;
}

bool BitString::operator<(const BitString& other) const {
    if (len_ != other.len_) return len_ < other.len_;
    for (std::size_t w = words_.size(); w-- > 0;) {
        if (words_[w] != other.words_[w]) return words_[w] < other.words_[w];
    }
    return false;
}

}  // namespace apm
