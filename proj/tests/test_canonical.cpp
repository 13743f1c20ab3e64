#include <doctest.h>

#include <map>

#include "divcode/canonical.hpp"
#include "divcode/errors.hpp"
#include "helpers.hpp"

using namespace divcode;

namespace {

Code permuted(const Code& c, const std::vector<int>& perm) {
    return Code(c.generator().permute_columns(perm));
}

// exhaustive automorphism count for tiny codes
int64_t brute_aut_order(const Code& c) {
    int n = c.length();
    std::vector<int> perm(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) perm[size_t(i)] = i;
    int64_t count = 0;
    do {
        bool fixes = true;
        for (int r = 0; r < c.dimension() && fixes; ++r) {
            BitVec moved(n);
            for (int col = 0; col < n; ++col)
                if (c.generator().row(r).get(col)) moved.set(perm[size_t(col)], true);
            fixes = c.contains(moved);
        }
        if (fixes) ++count;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return count;
}

}  // namespace

TEST_CASE("labels are invariant under column permutation") {
    for (const char* id : {"kummer16", "quintic31", "residual25_11"}) {
        Code c = fixture_code(id);
        CanonicalLabel base = canonical_label(c);
        int reps = std::string(id) == "residual25_11" ? 25 : 100;
        for (int trial = 0; trial < reps; ++trial) {
            Code p = permuted(c, random_permutation(c.length()));
            CHECK(canonical_label(p).canonical_gen == base.canonical_gen);
        }
    }
}

TEST_CASE("certificate reproduces the canonical form") {
    for (const char* id : {"kummer16", "quintic31", "w2432_51_8", "code65_12"}) {
        Code c = fixture_code(id);
        CanonicalLabel lbl = canonical_label(c);
        Code mapped = permuted(c, lbl.certificate);
        CHECK(rref(mapped.generator()).first == lbl.canonical_gen);
        // generators really are automorphisms
        for (const auto& g : lbl.aut_generators) {
            Code moved = permuted(c, g);
            CHECK(moved.generator() == c.generator());
        }
    }
}

TEST_CASE("repetition code has the full symmetric group") {
    CHECK(aut_group_order(fixture_code("cayley4")) == BigInt(24));
    BitMatrix rep(1, 6);
    rep.row(0) = BitVec::ones(6);
    CHECK(aut_group_order(Code(rep)) == BigInt(720));
}

TEST_CASE("orbit-stabilizer cross-check on small codes") {
    std::vector<BitMatrix> smalls = {
        BitMatrix::from_rows({"110110", "011011"}),
        BitMatrix::from_rows({"11110000", "00111100", "00001111"}),
        BitMatrix::from_rows({"1010101", "0110011", "0001111"}),
        BitMatrix::from_rows({"11011", "01101"}),
    };
    for (const auto& m : smalls) {
        Code c(m);
        if (!c.full_length()) continue;
        CHECK(aut_group_order(c) == BigInt(brute_aut_order(c)));
    }
}

TEST_CASE("quintic code carries the full linear group") {
    // its columns are the 31 points of the rank-5 binary geometry, so the
    // automorphism group is GL(5,2); check against the order formula
    int64_t expected = 1;
    for (int i = 0; i < 5; ++i) expected *= (32 - (1 << i));
    CHECK(expected == 9999360);
    CHECK(aut_group_order(fixture_code("quintic31")) == BigInt(expected));
}

TEST_CASE("equivalence basics") {
    Code c = fixture_code("w2432_54_8");
    std::vector<int> reversed(size_t(c.length()));
    for (int i = 0; i < c.length(); ++i) reversed[size_t(i)] = c.length() - 1 - i;
    CHECK(are_equivalent(c, permuted(c, reversed)));

    CHECK(!are_equivalent(fixture_code("code63_12"), fixture_code("code64_12")));
    CHECK(!are_equivalent(fixture_code("w2432_55_8a"), fixture_code("w2432_55_8b")));
    CHECK(!are_equivalent(fixture_code("w2432_56_9a"), fixture_code("w2432_56_9b")));
}

TEST_CASE("equivalent codes have identical weight distributions") {
    for (const char* id : {"kummer16", "w2432_55_8a"}) {
        Code c = fixture_code(id);
        Code p = permuted(c, random_permutation(c.length()));
        CHECK(p.weight_distribution() == c.weight_distribution());
        CHECK(are_equivalent(c, p));
    }
}

TEST_CASE("labeling refuses codes with zero columns") {
    BitMatrix with_zero = BitMatrix::from_rows({"1100", "0110"});
    CHECK_THROWS_AS(canonical_label(Code(with_zero)), NotFullLength);
}

TEST_CASE("colored labeling separates marked coordinate blocks") {
    // a marked coloring must be respected: permuting across colors changes
    // nothing detectable by the plain label but is excluded here
    Code c = fixture_code("kummer16");
    std::vector<int> colors(16, 0);
    for (int i = 0; i < 8; ++i) colors[size_t(i)] = 1;
    CanonicalLabel colored = canonical_label(c, colors);
    CHECK(colored.aut_order <= canonical_label(c).aut_order);
}
