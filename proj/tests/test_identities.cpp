#include <doctest.h>

#include "divcode/errors.hpp"
#include "divcode/identities.hpp"
#include "helpers.hpp"

using namespace divcode;

TEST_CASE("macwilliams transform of the full space and a repetition code") {
    // [5,5] full space dualizes to the zero code's enumerator
    WeightEnumerator full(5);
    int64_t binom[6] = {1, 5, 10, 10, 5, 1};
    for (int i = 0; i <= 5; ++i) full.set_coeff(i, BigInt(binom[i]));
    WeightEnumerator dual = macwilliams_dual(full, 5);
    CHECK(dual.coeff(0) == BigInt(1));
    for (int i = 1; i <= 5; ++i) CHECK(dual.coeff(i).is_zero());

    // [n,1] repetition dualizes to the even-weight code; cross-check against
    // the brute-force dual enumeration
    for (int n : {4, 7, 10}) {
        BitMatrix rep(1, n);
        rep.row(0) = BitVec::ones(n);
        Code c(rep);
        WeightEnumerator viatransform = macwilliams_dual(c.weight_enumerator(), 1);
        Code dualcode(c.dual_basis());
        CHECK(viatransform == dualcode.weight_enumerator());
    }
}

TEST_CASE("kummer dual round trip") {
    Code kummer = fixture_code("kummer16");
    WeightEnumerator w = kummer.weight_enumerator();
    WeightEnumerator d = macwilliams_dual(w, 5);
    CHECK(d.total() == BigInt::pow2(11));
    CHECK(macwilliams_dual(d, 11) == w);
}

TEST_CASE("transform rejects inconsistent input") {
    WeightEnumerator w(8);
    w.set_coeff(0, BigInt(1));
    w.set_coeff(3, BigInt(3));  // sums to 4 = 2^2 but is not a code enumerator
    CHECK_THROWS_AS(macwilliams_dual(w, 2), NotAnEnumerator);
}

TEST_CASE("power moments vanish on the printed codes and detect corruption") {
    for (const char* id : {"code63_12", "code64_12", "code65_12", "kummer16", "septic94_10"}) {
        MomentSystem ms = moment_system_of(fixture_code(id));
        CHECK(power_moments_check(ms).all_zero());
    }
    MomentSystem bad = moment_system_of(fixture_code("code65_12"));
    bad.a.set_coeff(24, bad.a.coeff(24) + BigInt(1));
    CHECK(!power_moments_check(bad).all_zero());
}

TEST_CASE("dual coefficients of the three classified codes") {
    MomentSystem m63 = moment_system_of(fixture_code("code63_12"));
    CHECK(m63.a2_star == BigInt(0));
    CHECK(m63.a3_star == BigInt(21));
    MomentSystem m64 = moment_system_of(fixture_code("code64_12"));
    CHECK(m64.a2_star == BigInt(0));
    CHECK(m64.a3_star == BigInt(10));
    MomentSystem m65 = moment_system_of(fixture_code("code65_12"));
    CHECK(m65.a2_star == BigInt(0));
    CHECK(m65.a3_star == BigInt(0));
}

TEST_CASE("closed forms for a40 and a40+a48") {
    // zero slack at n = 65 gives the 65-column count directly
    CHECK(lemma_a40(65, 0, 0, 0, 0) == Rat(650));
    // the other two lengths need the a3* their moment systems force
    CHECK(lemma_a40(63, 0, 21, 0, 0) == Rat(378));
    CHECK(lemma_a40(64, 0, 10, 0, 0) == Rat(506));
    // and the closed forms agree with each fixture's enumerator exactly
    struct Case {
        const char* id;
        int n;
        int64_t a40, a48;
    } cases[] = {{"code63_12", 63, 378, 0}, {"code64_12", 64, 506, 0}, {"code65_12", 65, 650, 0}};
    for (const auto& cs : cases) {
        MomentSystem ms = moment_system_of(fixture_code(cs.id));
        Rat a40 = lemma_a40(cs.n, ms.a2_star.to_int64(), ms.a3_star.to_int64(), 0, 0);
        Rat both = lemma_a40_plus_a48(cs.n, ms.a2_star.to_int64(), ms.a3_star.to_int64(), 0, 0);
        CHECK(a40 == Rat(cs.a40));
        CHECK(both == Rat(cs.a40 + cs.a48));
    }

    CHECK(lemma_a40_plus_a48(57, 0, 0, 0, 0) == Rat(-158));
    for (int n = 54; n <= 60; ++n) CHECK(lemma_a40_plus_a48(n, 0, 0, 0, 0) < Rat(0));
    CHECK(lemma_a40_plus_a48(65, 0, 0, 0, 0) == Rat(650));
}

TEST_CASE("surface constraints") {
    SurfaceConstraint sextic = nodal_code_constraints(6, 65);
    CHECK(sextic.k_min == 12);
    CHECK(sextic.d_min == 24);
    CHECK(sextic.divisibility == 8);

    SurfaceConstraint quintic = nodal_code_constraints(5, 31);
    CHECK(quintic.d_min == 16);
    CHECK(quintic.divisibility == 4);

    SurfaceConstraint tiny = nodal_code_constraints(2, 1);
    CHECK(tiny.k_min <= 0);
    CHECK(tiny.d_min == 0);

    // both septic candidates satisfy the degree-7 weight constraints
    SurfaceConstraint septic = nodal_code_constraints(7, 99);
    CHECK(septic.d_min == 36);
    CHECK(septic.divisibility == 4);
    for (const char* id : {"septic96_10", "septic94_10"}) {
        Code c = fixture_code(id);
        for (int w : c.weight_enumerator().nonzero_weights()) {
            CHECK(w >= septic.d_min);
            CHECK(w % 4 == 0);
        }
    }
}

TEST_CASE("dual transform arithmetic") {
    auto [len, dist] = dual_transform_params(56, 8, Rat(1, 8), Rat(-3));
    CHECK(len == Rat(131));
    CHECK(dist == Rat(64));
    CHECK_THROWS_AS(dual_transform_params(255, 8, Rat(1, 8), Rat(-3)), Inapplicable);
    auto [l0, d0] = dual_transform_params(10, 8, Rat(0), Rat(0));
    CHECK(l0 == Rat(0));
    CHECK(d0 == Rat(0));
}

TEST_CASE("macwilliams involution on every fixture") {
    for (const auto& fe : fixture_set().entries()) {
        Code c = fe.code();
        WeightEnumerator w = c.weight_enumerator();
        WeightEnumerator back =
            macwilliams_dual(macwilliams_dual(w, c.dimension()), c.length() - c.dimension());
        CHECK(back == w);
    }
}

TEST_CASE("extension coset enumerator sums to 2^12") {
    // the printed coset enumerator of the unique one-step extension
    int64_t coefs[] = {26, 650, 1690, 1300, 300, 130};
    int64_t total = 0;
    for (int64_t c : coefs) total += c;
    CHECK(total == 4096);
    // and it matches the fixture difference
    Code cp = fixture_code("cprime66_13");
    Code c65 = fixture_code("code65_12");
    std::map<int, int64_t> diff;
    for (int i = 1; i <= 66; ++i) {
        int64_t a = cp.weight_distribution()[size_t(i)];
        int64_t b = i <= 65 ? c65.weight_distribution()[size_t(i)] : 0;
        if (a != b) diff[i] = a - b;
    }
    CHECK(diff == std::map<int, int64_t>{{16, 26}, {28, 650}, {32, 1690}, {36, 1300}, {40, 300}, {44, 130}});
}

TEST_CASE("the matrixless two-weight enumerator is moment-consistent") {
    auto en = FixtureSet::w56_10_24_enumerator();
    WeightEnumerator w(56);
    for (auto& [i, a] : en) w.set_coeff(i, BigInt(a));
    CHECK(w.total() == BigInt::pow2(10));
    WeightEnumerator dual = macwilliams_dual(w, 10);  // throws if inconsistent
    CHECK(dual.coeff(0) == BigInt(1));
}
