#pragma once

#include <array>
#include <cstdint>
#include <string>

#include "divcode/bigint.hpp"
#include "divcode/code.hpp"

namespace divcode {

// Exact fraction with small terms; enough for the closed-form evaluations,
// which stay far inside 64 bits.
struct Rat {
    int64_t num = 0;
    int64_t den = 1;

    Rat() = default;
    Rat(int64_t n);
    Rat(int64_t n, int64_t d);

    Rat operator+(const Rat& o) const;
    Rat operator-(const Rat& o) const;
    Rat operator*(const Rat& o) const;
    bool operator==(const Rat& o) const { return num == o.num && den == o.den; }
    bool operator<(const Rat& o) const;

    bool is_integer() const { return den == 1; }
    std::string to_string() const;
};

// Exact MacWilliams transform: the weight enumerator of the dual of any code
// with enumerator w and dimension k, computed by Krawtchouk convolution in
// exact integers. Throws NotAnEnumerator if a coefficient comes out negative
// or fractional, which signals an inconsistent input.
WeightEnumerator macwilliams_dual(const WeightEnumerator& w, int k);

// The first four power moments tie the enumerator of an [n,k] code to the
// dual coefficients a2*, a3*. Residuals are left-minus-right with the second
// and third scaled by 2 and the fourth by 8 so everything stays integral for
// every k >= 0; all four vanish exactly iff the system is consistent.
struct MomentSystem {
    int n = 0;
    int k = 0;
    WeightEnumerator a{0};
    BigInt a2_star;
    BigInt a3_star;
};

struct PowerMomentResiduals {
    std::array<BigInt, 4> r;
    bool all_zero() const;
};

PowerMomentResiduals power_moments_check(const MomentSystem& ms);

// Moment system of a code with a2*, a3* read off the MacWilliams transform.
MomentSystem moment_system_of(const Code& c);

// Closed forms for the count of weight-40 words in an 8-divisible code of
// dimension 12, minimum distance >= 24 and effective length n <= 65, as
// functions of the dual coefficients and the weight-56/64 counts.
Rat lemma_a40(int n, int64_t a2s, int64_t a3s, int64_t a56, int64_t a64);
Rat lemma_a40_plus_a48(int n, int64_t a2s, int64_t a3s, int64_t a56, int64_t a64);

// Parameter constraints on the code associated to a nodal surface of degree s
// with m nodes: a dimension floor, a minimum-distance floor, and the
// divisibility forced by the parity of s.
struct SurfaceConstraint {
    int degree = 0;
    int64_t nodes = 0;
    int64_t k_min = 0;
    int d_min = 0;
    int divisibility = 0;  // 4 for odd degree, 8 for even
};

SurfaceConstraint nodal_code_constraints(int s, int64_t m);

// Length and minimum distance of the projective dual transform D_{alpha,beta}
// of an [n,k] code: length 128*alpha*n + 255*beta, distance 64*(alpha*n +
// 2*beta), defined only for n < 2^k - 1.
std::pair<Rat, Rat> dual_transform_params(int n, int k, const Rat& alpha, const Rat& beta);

}  // namespace divcode
