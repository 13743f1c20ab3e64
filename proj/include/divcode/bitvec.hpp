#pragma once

#include <array>
#include <bit>
#include <cstdint>
#include <cstring>
#include <string>

#include "divcode/errors.hpp"

namespace divcode {

// Fixed-capacity bit vector over GF(2).
//
// Coordinate 0 is the leftmost character of the text format and is stored as
// the least significant bit of word 0. Capacity is a compile-time constant;
// every instance in scope here has length <= 96, so the hot loops touch at
// most two machine words.
class BitVec {
public:
    static constexpr int kMaxLen = 192;
    static constexpr int kWords = kMaxLen / 64;

    BitVec() : len_(0), w_{} {}

    explicit BitVec(int n) : len_(check_len(n)), w_{} {}

    int size() const { return len_; }
    int words() const { return (len_ + 63) >> 6; }

    bool get(int i) const { return (w_[i >> 6] >> (i & 63)) & 1u; }

    void set(int i, bool v) {
        uint64_t m = uint64_t{1} << (i & 63);
        if (v)
            w_[i >> 6] |= m;
        else
            w_[i >> 6] &= ~m;
    }

    void flip(int i) { w_[i >> 6] ^= uint64_t{1} << (i & 63); }

    int popcount() const {
        int c = 0;
        for (int i = 0; i < words(); ++i) c += std::popcount(w_[i]);
        return c;
    }

    bool is_zero() const {
        for (int i = 0; i < words(); ++i)
            if (w_[i]) return false;
        return true;
    }

    BitVec& operator^=(const BitVec& o) {
        for (int i = 0; i < words(); ++i) w_[i] ^= o.w_[i];
        return *this;
    }

    friend BitVec operator^(BitVec a, const BitVec& b) { return a ^= b; }

    BitVec operator&(const BitVec& o) const {
        BitVec r(len_);
        for (int i = 0; i < words(); ++i) r.w_[i] = w_[i] & o.w_[i];
        return r;
    }

    int and_weight(const BitVec& o) const {
        int c = 0;
        for (int i = 0; i < words(); ++i) c += std::popcount(w_[i] & o.w_[i]);
        return c;
    }

    // Inner product mod 2.
    bool dot(const BitVec& o) const { return and_weight(o) & 1; }

    // Index of the lowest set bit, or -1.
    int lowest_set() const {
        for (int i = 0; i < words(); ++i)
            if (w_[i]) return (i << 6) + std::countr_zero(w_[i]);
        return -1;
    }

    bool operator==(const BitVec& o) const {
        if (len_ != o.len_) return false;
        for (int i = 0; i < words(); ++i)
            if (w_[i] != o.w_[i]) return false;
        return true;
    }
    bool operator!=(const BitVec& o) const { return !(*this == o); }

    // Deterministic total order (word-wise); used for hashing and normal forms.
    bool operator<(const BitVec& o) const {
        if (len_ != o.len_) return len_ < o.len_;
        for (int i = 0; i < words(); ++i)
            if (w_[i] != o.w_[i]) return w_[i] < o.w_[i];
        return false;
    }

    uint64_t word(int i) const { return w_[i]; }
    void set_word(int i, uint64_t v) { w_[i] = v; }

    uint64_t hash() const {
        uint64_t h = 0xcbf29ce484222325ull ^ uint64_t(len_);
        for (int i = 0; i < words(); ++i) {
            h ^= w_[i];
            h *= 0x100000001b3ull;
        }
        return h;
    }

    std::string to_string() const {
        std::string s(len_, '0');
        for (int i = 0; i < len_; ++i)
            if (get(i)) s[i] = '1';
        return s;
    }

    static BitVec from_string(const std::string& s) {
        BitVec v(int(s.size()));
        for (int i = 0; i < int(s.size()); ++i) {
            if (s[i] == '1')
                v.set(i, true);
            else if (s[i] != '0')
                throw ParseError("bit vector literal may only contain '0'/'1'");
        }
        return v;
    }

    static BitVec ones(int n) {
        BitVec v(n);
        for (int i = 0; i < v.words(); ++i) v.w_[i] = ~uint64_t{0};
        v.trim();
        return v;
    }

    // Clears any bits at positions >= size(); ops keep this as an invariant.
    void trim() {
        if (len_ & 63) w_[len_ >> 6] &= (uint64_t{1} << (len_ & 63)) - 1;
        for (int i = words(); i < kWords; ++i) w_[i] = 0;
    }

private:
    static int check_len(int n) {
        if (n < 0 || n > kMaxLen) throw IndexOutOfRange("bit vector length out of range");
        return n;
    }

    int len_;
    std::array<uint64_t, kWords> w_;
};

}  // namespace divcode
