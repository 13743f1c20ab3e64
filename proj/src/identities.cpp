#include "divcode/identities.hpp"

#include <numeric>
#include <vector>

#include "divcode/errors.hpp"

namespace divcode {

Rat::Rat(int64_t n) : num(n), den(1) {}

Rat::Rat(int64_t n, int64_t d) : num(n), den(d) {
    if (den == 0) throw Error("zero denominator");
    if (den < 0) {
        num = -num;
        den = -den;
    }
    int64_t g = std::gcd(num < 0 ? -num : num, den);
    if (g > 1) {
        num /= g;
        den /= g;
    }
}

Rat Rat::operator+(const Rat& o) const { return Rat(num * o.den + o.num * den, den * o.den); }
Rat Rat::operator-(const Rat& o) const { return Rat(num * o.den - o.num * den, den * o.den); }
Rat Rat::operator*(const Rat& o) const { return Rat(num * o.num, den * o.den); }
bool Rat::operator<(const Rat& o) const { return num * o.den < o.num * den; }

std::string Rat::to_string() const {
    return den == 1 ? std::to_string(num) : std::to_string(num) + "/" + std::to_string(den);
}

WeightEnumerator macwilliams_dual(const WeightEnumerator& w, int k) {
    int n = w.length();
    if (w.total() != BigInt::pow2(k))
        throw NotAnEnumerator("enumerator total is not 2^k");
    // Pascal triangle up to n, exact.
    std::vector<std::vector<BigInt>> C(size_t(n) + 1);
    for (int a = 0; a <= n; ++a) {
        C[size_t(a)].assign(size_t(a) + 1, BigInt(0));
        C[size_t(a)][0] = BigInt(1);
        for (int b = 1; b <= a; ++b)
            C[size_t(a)][size_t(b)] =
                C[size_t(a - 1)][size_t(b - 1)] + (b <= a - 1 ? C[size_t(a - 1)][size_t(b)] : BigInt(0));
    }
    auto binom = [&](int a, int b) -> BigInt {
        if (b < 0 || b > a || a < 0) return BigInt(0);
        return C[size_t(a)][size_t(b)];
    };
    WeightEnumerator dual(n);
    for (int j = 0; j <= n; ++j) {
        BigInt sum;
        for (int i = 0; i <= n; ++i) {
            if (w.coeff(i).is_zero()) continue;
            // binary Krawtchouk K_j(i; n)
            BigInt kraw;
            for (int t = 0; t <= j; ++t) {
                BigInt term = binom(i, t) * binom(n - i, j - t);
                kraw = (t & 1) ? kraw - term : kraw + term;
            }
            sum += w.coeff(i) * kraw;
        }
        if (sum.is_negative() || !sum.divisible_pow2(k))
            throw NotAnEnumerator("transform yields a negative or fractional coefficient at weight " +
                                  std::to_string(j));
        dual.set_coeff(j, sum.div_pow2_exact(k));
    }
    return dual;
}

bool PowerMomentResiduals::all_zero() const {
    for (const auto& x : r)
        if (!x.is_zero()) return false;
    return true;
}

PowerMomentResiduals power_moments_check(const MomentSystem& ms) {
    const int n = ms.n;
    BigInt s0, s1, s2, s3;
    for (int i = 0; i <= ms.a.length(); ++i) {
        const BigInt& a = ms.a.coeff(i);
        if (a.is_zero()) continue;
        if (i > 0) s0 += a;
        BigInt ia = a * BigInt(i);
        s1 += ia;
        ia *= BigInt(i);
        s2 += ia;
        ia *= BigInt(i);
        s3 += ia;
    }
    BigInt p2k = BigInt::pow2(ms.k);
    BigInt bn{int64_t(n)};
    PowerMomentResiduals out;
    out.r[0] = s0 - (p2k - BigInt(1));
    // second and third moments doubled, fourth times eight: integral for all k
    out.r[1] = s1 * BigInt(2) - p2k * bn;
    out.r[2] = s2 * BigInt(2) - p2k * (ms.a2_star + BigInt(int64_t(n) * (n + 1) / 2));
    out.r[3] = s3 * BigInt(8) - p2k * (BigInt(6) * (ms.a2_star * bn - ms.a3_star) +
                                       BigInt(int64_t(n) * n * (int64_t(n) + 3)));
    return out;
}

MomentSystem moment_system_of(const Code& c) {
    MomentSystem ms;
    ms.n = c.length();
    ms.k = c.dimension();
    ms.a = c.weight_enumerator();
    WeightEnumerator dual = macwilliams_dual(ms.a, ms.k);
    ms.a2_star = dual.coeff(std::min(2, ms.n));
    ms.a3_star = ms.n >= 3 ? dual.coeff(3) : BigInt(0);
    if (ms.n < 2) ms.a2_star = BigInt(0);
    return ms;
}

Rat lemma_a40(int n, int64_t a2s, int64_t a3s, int64_t a56, int64_t a64) {
    if (n > 65) throw Inapplicable("closed form derived for n <= 65");
    Rat N(n);
    return Rat(205, 2) * N * N - Rat(6808) * N - Rat(1, 2) * N * N * N +
           Rat(208 - 3 * int64_t(n)) * Rat(a2s) + Rat(3) * Rat(a3s) + Rat(6) * Rat(a56) +
           Rat(20) * Rat(a64) + Rat(147420);
}

Rat lemma_a40_plus_a48(int n, int64_t a2s, int64_t a3s, int64_t a56, int64_t a64) {
    if (n > 65) throw Inapplicable("closed form derived for n <= 65");
    Rat N(n);
    return Rat(71) * N * N - Rat(14504, 3) * N - Rat(1, 3) * N * N * N +
           Rat(144 - 2 * int64_t(n)) * Rat(a2s) + Rat(2) * Rat(a3s) + Rat(2) * Rat(a56) +
           Rat(10) * Rat(a64) + Rat(106470);
}

SurfaceConstraint nodal_code_constraints(int s, int64_t m) {
    if (s < 1 || m < 0) throw Inapplicable("degree must be >= 1 and nodes >= 0");
    SurfaceConstraint sc;
    sc.degree = s;
    sc.nodes = m;
    int64_t s3 = int64_t(s) * s * s;
    sc.k_min = m - (s3 + 1) / 2 + 2 * int64_t(s) * s - 3 * s + 1;
    int64_t prod = int64_t(s) * (s - 2);
    sc.d_min = int(2 * ((prod + 1) / 2));
    if (prod < 0) sc.d_min = 0;
    sc.divisibility = (s % 2 == 1) ? 4 : 8;
    return sc;
}

std::pair<Rat, Rat> dual_transform_params(int n, int k, const Rat& alpha, const Rat& beta) {
    if (k < 1 || int64_t(n) >= (int64_t(1) << k) - 1)
        throw Inapplicable("dual transform needs n < 2^k - 1");
    Rat an = alpha * Rat(n);
    Rat length = Rat(128) * an + Rat(255) * beta;
    Rat dist = Rat(64) * (an + Rat(2) * beta);
    return {length, dist};
}

}  // namespace divcode
