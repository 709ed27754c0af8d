#ifndef PEC_BITVEC_HPP
#define PEC_BITVEC_HPP

#include <bit>
#include <cassert>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace pec {

/// Fixed-width bit vector over GF(2). Bit i of a parity vector records the
/// usage parity of color i (0 = even, 1 = odd).
class BitVec {
  public:
    BitVec() = default;

    explicit BitVec(int width) : width_(width), words_((width + 63) / 64, 0) {
        if (width < 0) throw std::invalid_argument("BitVec: negative width");
    }

    static BitVec unit(int width, int bit) {
        BitVec v(width);
        v.set(bit);
        return v;
    }

    /// Leftmost character is bit 0, so "110" has bits {0,1} set.
    static BitVec from_string(const std::string& s) {
        BitVec v(static_cast<int>(s.size()));
        for (int i = 0; i < static_cast<int>(s.size()); ++i) {
            if (s[i] == '1')
                v.set(i);
            else if (s[i] != '0')
                throw std::invalid_argument("BitVec: bad character in bit string");
        }
        return v;
    }

    int width() const { return width_; }

    bool test(int i) const {
        assert(i >= 0 && i < width_);
        return (words_[i >> 6] >> (i & 63)) & 1u;
    }

    void set(int i, bool value = true) {
        assert(i >= 0 && i < width_);
        if (value)
            words_[i >> 6] |= std::uint64_t{1} << (i & 63);
        else
            words_[i >> 6] &= ~(std::uint64_t{1} << (i & 63));
    }

    void flip(int i) {
        assert(i >= 0 && i < width_);
        words_[i >> 6] ^= std::uint64_t{1} << (i & 63);
    }

    BitVec& operator^=(const BitVec& other) {
        if (other.width_ != width_) throw std::invalid_argument("BitVec: width mismatch");
        for (std::size_t w = 0; w < words_.size(); ++w) words_[w] ^= other.words_[w];
        return *this;
    }

    friend BitVec operator^(BitVec a, const BitVec& b) {
        a ^= b;
        return a;
    }

    bool zero() const {
        for (auto w : words_)
            if (w) return false;
        return true;
    }

    int weight() const {
        int c = 0;
        for (auto w : words_) c += std::popcount(w);
        return c;
    }

    /// Index of the lowest set bit, or -1 when the vector is zero.
    int lowest_set_bit() const {
        for (std::size_t w = 0; w < words_.size(); ++w)
            if (words_[w]) return static_cast<int>(w * 64) + std::countr_zero(words_[w]);
        return -1;
    }

    /// True when this and other share no set bit.
    bool disjoint_with(const BitVec& other) const {
        assert(other.width_ == width_);
        for (std::size_t w = 0; w < words_.size(); ++w)
            if (words_[w] & other.words_[w]) return false;
        return true;
    }

    bool operator==(const BitVec& other) const = default;

    std::string to_string() const {
        std::string s(width_, '0');
        for (int i = 0; i < width_; ++i)
            if (test(i)) s[i] = '1';
        return s;
    }

  private:
    int width_ = 0;
    std::vector<std::uint64_t> words_;
};

/// Smallest k with 2^k >= n; 0 for n <= 1.
inline int ceil_log2(int n) {
    return n <= 1 ? 0 : std::bit_width(static_cast<unsigned>(n - 1));
}

/// k-character binary string of value, most significant bit first.
inline std::string bit_string(unsigned value, int k) {
    std::string s(k, '0');
    for (int i = 0; i < k; ++i)
        if (value >> i & 1u) s[k - 1 - i] = '1';
    return s;
}

}  // namespace pec

#endif  // PEC_BITVEC_HPP
