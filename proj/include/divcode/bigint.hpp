#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace divcode {

// Signed arbitrary-precision integer, little-endian 32-bit limbs.
//
// Supports exactly the operations the identity arithmetic needs: ring ops,
// comparisons, exact division by powers of two, and decimal conversion.
class BigInt {
public:
    BigInt() : sign_(0) {}
    BigInt(int64_t v);

    static BigInt from_decimal(const std::string& s);
    static BigInt pow2(int e);

    bool is_zero() const { return sign_ == 0; }
    bool is_negative() const { return sign_ < 0; }

    BigInt operator-() const;
    BigInt operator+(const BigInt& o) const;
    BigInt operator-(const BigInt& o) const;
    BigInt operator*(const BigInt& o) const;
    BigInt& operator+=(const BigInt& o) { return *this = *this + o; }
    BigInt& operator-=(const BigInt& o) { return *this = *this - o; }
    BigInt& operator*=(const BigInt& o) { return *this = *this * o; }

    bool operator==(const BigInt& o) const { return sign_ == o.sign_ && mag_ == o.mag_; }
    bool operator!=(const BigInt& o) const { return !(*this == o); }
    bool operator<(const BigInt& o) const;
    bool operator<=(const BigInt& o) const { return *this < o || *this == o; }
    bool operator>(const BigInt& o) const { return o < *this; }
    bool operator>=(const BigInt& o) const { return o <= *this; }

    // True iff divisible by 2^e.
    bool divisible_pow2(int e) const;

    // Exact division by 2^e; throws if not divisible.
    BigInt div_pow2_exact(int e) const;

    // Value as int64; throws if out of range.
    int64_t to_int64() const;
    bool fits_int64() const;

    std::string to_string() const;

private:
    static int cmp_mag(const std::vector<uint32_t>& a, const std::vector<uint32_t>& b);
    static std::vector<uint32_t> add_mag(const std::vector<uint32_t>& a, const std::vector<uint32_t>& b);
    // Requires |a| >= |b|.
    static std::vector<uint32_t> sub_mag(const std::vector<uint32_t>& a, const std::vector<uint32_t>& b);
    void normalize();

    int sign_;
    std::vector<uint32_t> mag_;
};

}  // namespace divcode
