#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace apm {

class SeededRng;

// Packed bit vector of fixed length. Bit k of the ASCII form "0101..." is
// character k; for len <= 64 the integer form has bit k at position k
// (LSB first). Unused high bits of the last word stay zero, so whole-word
// operations (xor, popcount, comparisons) need no masking.
class BitString {
  public:
    BitString() = default;
    explicit BitString(std::size_t len);

    static BitString parse(const std::string& text);
    static BitString from_value(std::size_t len, std::uint64_t value);
    static BitString random(std::size_t len, SeededRng& rng);

    std::size_t len() const { return len_; }

    bool get(std::size_t index) const;
    void set(std::size_t index, bool value);
    void flip(std::size_t index);

    std::size_t weight() const;

    // Inner product mod 2; lengths must agree.
    int dot_parity(const BitString& other) const;

    BitString operator^(const BitString& other) const;
    BitString complement() const;

    // Integer encoding; only valid for len <= 64.
    std::uint64_t value() const;

    std::string to_string() const;

    bool operator==(const BitString& other) const = default;
    bool operator<(const BitString& other) const;

    const std::vector<std::uint64_t>& words() const { return words_; }

  private:
    std::size_t len_ = 0;
    std::vector<std::uint64_t> words_;

    void check_index(std::size_t index) const;
};

}  // namespace apm
