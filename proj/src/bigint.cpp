#include "divcode/bigint.hpp"

#include <algorithm>
#include <stdexcept>

#include "divcode/errors.hpp"

namespace divcode {

BigInt::BigInt(int64_t v) : sign_(0) {
    uint64_t mag;
    if (v < 0) {
        sign_ = -1;
        mag = uint64_t(-(v + 1)) + 1;
    } else if (v > 0) {
        sign_ = 1;
        mag = uint64_t(v);
    } else {
        return;
    }
    mag_.push_back(uint32_t(mag & 0xffffffffu));
    if (mag >> 32) mag_.push_back(uint32_t(mag >> 32));
}

BigInt BigInt::from_decimal(const std::string& s) {
    BigInt out;
    size_t i = 0;
    int sign = 1;
    if (i < s.size() && (s[i] == '+' || s[i] == '-')) {
        if (s[i] == '-') sign = -1;
        ++i;
    }
    if (i >= s.size()) throw ParseError("empty integer literal");
    for (; i < s.size(); ++i) {
        if (s[i] < '0' || s[i] > '9') throw ParseError("bad digit in integer literal");
        out = out * BigInt(10) + BigInt(s[i] - '0');
    }
    if (sign < 0) out = -out;
    return out;
}

BigInt BigInt::pow2(int e) {
    BigInt out;
    out.sign_ = 1;
    out.mag_.assign(size_t(e / 32) + 1, 0);
    out.mag_.back() = uint32_t{1} << (e % 32);
    return out;
}

BigInt BigInt::operator-() const {
    BigInt out = *this;
    out.sign_ = -out.sign_;
    return out;
}

int BigInt::cmp_mag(const std::vector<uint32_t>& a, const std::vector<uint32_t>& b) {
    if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
    for (size_t i = a.size(); i-- > 0;)
        if (a[i] != b[i]) return a[i] < b[i] ? -1 : 1;
    return 0;
}

std::vector<uint32_t> BigInt::add_mag(const std::vector<uint32_t>& a, const std::vector<uint32_t>& b) {
    const auto& big = a.size() >= b.size() ? a : b;
    const auto& small = a.size() >= b.size() ? b : a;
    std::vector<uint32_t> out(big.size());
    uint64_t carry = 0;
    for (size_t i = 0; i < big.size(); ++i) {
        uint64_t s = carry + big[i] + (i < small.size() ? small[i] : 0);
        out[i] = uint32_t(s);
        carry = s >> 32;
    }
    if (carry) out.push_back(uint32_t(carry));
    return out;
}

std::vector<uint32_t> BigInt::sub_mag(const std::vector<uint32_t>& a, const std::vector<uint32_t>& b) {
    std::vector<uint32_t> out(a.size());
    int64_t borrow = 0;
    for (size_t i = 0; i < a.size(); ++i) {
        int64_t s = int64_t(a[i]) - borrow - (i < b.size() ? int64_t(b[i]) : 0);
        if (s < 0) {
            s += int64_t{1} << 32;
            borrow = 1;
        } else {
            borrow = 0;
        }
        out[i] = uint32_t(s);
    }
    while (!out.empty() && out.back() == 0) out.pop_back();
    return out;
}

void BigInt::normalize() {
    while (!mag_.empty() && mag_.back() == 0) mag_.pop_back();
    if (mag_.empty()) sign_ = 0;
}

BigInt BigInt::operator+(const BigInt& o) const {
    if (sign_ == 0) return o;
    if (o.sign_ == 0) return *this;
    BigInt out;
    if (sign_ == o.sign_) {
        out.sign_ = sign_;
        out.mag_ = add_mag(mag_, o.mag_);
    } else {
        int c = cmp_mag(mag_, o.mag_);
        if (c == 0) return BigInt();
        if (c > 0) {
            out.sign_ = sign_;
            out.mag_ = sub_mag(mag_, o.mag_);
        } else {
            out.sign_ = o.sign_;
            out.mag_ = sub_mag(o.mag_, mag_);
        }
    }
    out.normalize();
    return out;
}

BigInt BigInt::operator-(const BigInt& o) const { return *this + (-o); }

BigInt BigInt::operator*(const BigInt& o) const {
    if (sign_ == 0 || o.sign_ == 0) return BigInt();
    BigInt out;
    out.sign_ = sign_ * o.sign_;
    out.mag_.assign(mag_.size() + o.mag_.size(), 0);
    for (size_t i = 0; i < mag_.size(); ++i) {
        uint64_t carry = 0;
        for (size_t j = 0; j < o.mag_.size(); ++j) {
            uint64_t cur = out.mag_[i + j] + uint64_t(mag_[i]) * o.mag_[j] + carry;
            out.mag_[i + j] = uint32_t(cur);
            carry = cur >> 32;
        }
        size_t p = i + o.mag_.size();
        while (carry) {
            uint64_t cur = out.mag_[p] + carry;
            out.mag_[p] = uint32_t(cur);
            carry = cur >> 32;
            ++p;
        }
    }
    out.normalize();
    return out;
}

bool BigInt::operator<(const BigInt& o) const {
    if (sign_ != o.sign_) return sign_ < o.sign_;
    int c = cmp_mag(mag_, o.mag_);
    return sign_ >= 0 ? c < 0 : c > 0;
}

bool BigInt::divisible_pow2(int e) const {
    if (sign_ == 0) return true;
    int limb = e / 32, bit = e % 32;
    if (size_t(limb) >= mag_.size())
        return false;  // magnitude < 2^e and nonzero
    for (int i = 0; i < limb; ++i)
        if (mag_[i]) return false;
    return bit == 0 || (mag_[limb] & ((uint32_t{1} << bit) - 1)) == 0;
}

BigInt BigInt::div_pow2_exact(int e) const {
    if (sign_ == 0) return BigInt();
    if (!divisible_pow2(e)) throw NotAnEnumerator("value not divisible by 2^" + std::to_string(e));
    BigInt out;
    out.sign_ = sign_;
    int limb = e / 32, bit = e % 32;
    for (size_t i = limb; i < mag_.size(); ++i) {
        uint64_t cur = mag_[i] >> bit;
        if (bit && i + 1 < mag_.size()) cur |= uint64_t(mag_[i + 1]) << (32 - bit);
        out.mag_.push_back(uint32_t(cur));
    }
    out.normalize();
    return out;
}

bool BigInt::fits_int64() const {
    if (mag_.size() > 2) return false;
    uint64_t m = 0;
    if (mag_.size() >= 1) m = mag_[0];
    if (mag_.size() == 2) m |= uint64_t(mag_[1]) << 32;
    if (sign_ >= 0) return m <= uint64_t(INT64_MAX);
    return m <= uint64_t(INT64_MAX) + 1;
}

int64_t BigInt::to_int64() const {
    if (!fits_int64()) throw Error("BigInt out of int64 range: " + to_string());
    uint64_t m = 0;
    if (mag_.size() >= 1) m = mag_[0];
    if (mag_.size() == 2) m |= uint64_t(mag_[1]) << 32;
    if (sign_ >= 0) return int64_t(m);
    return -int64_t(m - 1) - 1;
}

std::string BigInt::to_string() const {
    if (sign_ == 0) return "0";
    std::vector<uint32_t> m = mag_;
    std::string digits;
    while (!m.empty()) {
        // divide magnitude by 1e9, collecting the remainder
        uint64_t rem = 0;
        for (size_t i = m.size(); i-- > 0;) {
            uint64_t cur = (rem << 32) | m[i];
            m[i] = uint32_t(cur / 1000000000u);
            rem = cur % 1000000000u;
        }
        while (!m.empty() && m.back() == 0) m.pop_back();
        std::string chunk = std::to_string(rem);
        if (!m.empty()) chunk = std::string(9 - chunk.size(), '0') + chunk;
        digits = chunk + digits;
    }
    return (sign_ < 0 ? "-" : "") + digits;
}

}  // namespace divcode
