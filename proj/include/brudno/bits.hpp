#pragma once
// Bit-exact integer encodings used by the tiling-dictionary codec:
//
//   binary(n)    most-significant-bit-first expansion, binary(0) = "0"
//   doubling(n)  every bit of binary(n) written twice
//   hat(n)       doubling(len(binary(n))) ++ "01" ++ binary(n)
//
// The doubled region consists only of the pairs 00/11, so "01" is an
// unambiguous delimiter and a concatenation hat(x1)...hat(xj) parses back
// to exactly (x1,...,xj). Letters of an alphabet {1..k} are packed at the
// fixed width floor(log2 k) + 1 as the value letter-1.

#include <bit>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "common.hpp"

namespace brudno {

class BitString {
    std::vector<u8> bits_;

public:
    BitString() = default;

    static BitString from_string(const std::string& s) {
        BitString b;
        b.bits_.reserve(s.size());
        for (char c : s) {
            if (c != '0' && c != '1') throw validation_error("bit string may contain only '0'/'1'");
            b.bits_.push_back(c == '1');
        }
        return b;
    }

    void push_back(bool bit) { bits_.push_back(bit); }
    void append(const BitString& other) { bits_.insert(bits_.end(), other.bits_.begin(), other.bits_.end()); }
    void reserve(std::size_t n) { bits_.reserve(n); }

    std::size_t size() const { return bits_.size(); }
    bool empty() const { return bits_.empty(); }
    u8 operator[](std::size_t i) const { return bits_[i]; }

    BitString suffix(std::size_t from) const {
        BitString b;
        if (from < bits_.size()) b.bits_.assign(bits_.begin() + static_cast<std::ptrdiff_t>(from), bits_.end());
        return b;
    }

    std::string to_string() const {
        std::string s(bits_.size(), '0');
        for (std::size_t i = 0; i < bits_.size(); ++i)
            if (bits_[i]) s[i] = '1';
        return s;
    }

    friend bool operator==(const BitString& a, const BitString& b) { return a.bits_ == b.bits_; }

    // true iff *this is a (proper or improper) prefix of other
    bool is_prefix_of(const BitString& other) const {
        if (size() > other.size()) return false;
        for (std::size_t i = 0; i < size(); ++i)
            if (bits_[i] != other.bits_[i]) return false;
        return true;
    }
};

// Sequential reader over a BitString; throws codec_error on exhaustion.
class BitReader {
    const BitString* bits_;
    std::size_t pos_ = 0;

public:
    explicit BitReader(const BitString& b) : bits_(&b) {}

    bool read() {
        if (pos_ >= bits_->size()) throw codec_error("bit stream exhausted");
        return (*bits_)[pos_++] != 0;
    }

    std::size_t position() const { return pos_; }
    std::size_t remaining() const { return bits_->size() - pos_; }
    bool done() const { return pos_ == bits_->size(); }
};

// Length of binary(n); binary(0) = "0" has length 1.
inline u32 binary_length(u64 n) { return n == 0 ? 1u : static_cast<u32>(std::bit_width(n)); }

inline void append_binary(BitString& out, u64 n) {
    u32 len = binary_length(n);
    for (u32 i = len; i-- > 0;) out.push_back((n >> i) & 1u);
}

inline BitString encode_binary(u64 n) {
    BitString b;
    append_binary(b, n);
    return b;
}

inline BitString encode_doubling(u64 n) {
    BitString b;
    u32 len = binary_length(n);
    for (u32 i = len; i-- > 0;) {
        bool bit = (n >> i) & 1u;
        b.push_back(bit);
        b.push_back(bit);
    }
    return b;
}

inline void append_hat(BitString& out, u64 n) {
    u32 len = binary_length(n);
    for (u32 i = binary_length(len); i-- > 0;) {
        bool bit = (len >> i) & 1u;
        out.push_back(bit);
        out.push_back(bit);
    }
    out.push_back(false); // delimiter "01"
    out.push_back(true);
    append_binary(out, n);
}

inline BitString encode_hat(u64 n) {
    BitString b;
    append_hat(b, n);
    return b;
}

// Closed-form hat length: 2*len(binary(len(binary(n)))) + 2 + len(binary(n)).
inline u64 hat_length(u64 n) {
    u32 len = binary_length(n);
    return 2ull * binary_length(len) + 2 + len;
}

// Reads one hat code from the stream. Rejects anything the encoder cannot
// produce: a "10" pair or empty region before the delimiter, non-canonical
// length words (leading zero), zero length, and truncated payloads.
inline u64 decode_hat(BitReader& in) {
    std::vector<u8> len_bits;
    for (;;) {
        bool b0 = in.read();
        bool b1 = in.read();
        if (!b0 && b1) break; // "01" delimiter
        if (b0 != b1) throw codec_error("malformed prefix: expected 00/11 pair or 01 delimiter");
        len_bits.push_back(b0);
    }
    if (len_bits.empty()) throw codec_error("malformed prefix: empty length region");
    if (len_bits.size() > 1 && len_bits.front() == 0)
        throw codec_error("malformed prefix: non-canonical length word");
    u64 len = 0;
    for (u8 b : len_bits) len = (len << 1) | b;
    if (len == 0) throw codec_error("malformed prefix: zero payload length");
    if (len > 64) throw codec_error("malformed prefix: payload wider than 64 bits");
    u64 value = 0;
    for (u64 i = 0; i < len; ++i) {
        bool b = in.read();
        if (i == 0 && len > 1 && !b) throw codec_error("malformed prefix: non-canonical payload");
        value = (value << 1) | static_cast<u64>(b);
    }
    return value;
}

// Decodes the leading hat code and returns (value, unconsumed suffix).
inline std::pair<u64, BitString> decode_hat_stream(const BitString& s) {
    BitReader in(s);
    u64 value = decode_hat(in);
    return {value, s.suffix(in.position())};
}

// Fixed width of one letter of the alphabet {1..k}: floor(log2 k) + 1.
inline u32 letter_width(u32 alphabet) {
    if (alphabet == 0) throw validation_error("alphabet size must be at least 1");
    return static_cast<u32>(std::bit_width(alphabet));
}

// Packs letters (each in 1..alphabet) at fixed width as letter-1, MSB first.
inline void append_letter_block(BitString& out, const std::vector<u32>& word, u32 alphabet) {
    u32 w = letter_width(alphabet);
    for (u32 a : word) {
        if (a < 1 || a > alphabet) throw validation_error("letter out of range for alphabet");
        u32 v = a - 1;
        for (u32 i = w; i-- > 0;) out.push_back((v >> i) & 1u);
    }
}

inline BitString encode_letter_block(const std::vector<u32>& word, u32 alphabet) {
    BitString b;
    append_letter_block(b, word, alphabet);
    return b;
}

// Reads `count` fixed-width letters; a width-w value that is not a letter of
// the alphabet makes the block invalid.
inline std::vector<u32> decode_letter_block(BitReader& in, std::size_t count, u32 alphabet) {
    u32 w = letter_width(alphabet);
    std::vector<u32> word;
    word.reserve(count);
    for (std::size_t j = 0; j < count; ++j) {
        u32 v = 0;
        for (u32 i = 0; i < w; ++i) v = (v << 1) | static_cast<u32>(in.read());
        if (v + 1 > alphabet) throw codec_error("letter block value outside alphabet");
        word.push_back(v + 1);
    }
    return word;
}

} // namespace brudno
