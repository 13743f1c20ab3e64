#include <doctest.h>

#include "divcode/bitmatrix.hpp"
#include "divcode/errors.hpp"
#include "helpers.hpp"

using namespace divcode;

TEST_CASE("rref of the identity is itself") {
    BitMatrix m(2, 2);
    m.set(0, 0, true);
    m.set(1, 1, true);
    auto [r, rank] = rref(m);
    CHECK(rank == 2);
    CHECK(r == m);
}

TEST_CASE("duplicate rows collapse") {
    BitMatrix m = BitMatrix::from_rows({"11", "11"});
    auto [r, rank] = rref(m);
    CHECK(rank == 1);
    CHECK(r.nrows() == 1);
    CHECK(r.row(0).to_string() == "11");
}

TEST_CASE("the printed 12x65 matrix has full row rank") {
    const BitMatrix& m = fixture_set().get("code65_12").matrix;
    CHECK(rref(m).second == 12);
}

TEST_CASE("rref is idempotent and preserves the row space") {
    for (int trial = 0; trial < 50; ++trial) {
        int n = 5 + int(test_rng()() % 60);
        int k = 1 + int(test_rng()() % 8);
        BitMatrix m(k, n);
        for (int i = 0; i < k; ++i) m.row(i) = random_bitvec(n);
        auto [r1, rank] = rref(m);
        auto [r2, rank2] = rref(r1);
        CHECK(r1 == r2);
        CHECK(rank == rank2);
        for (int i = 0; i < m.nrows(); ++i) CHECK(in_row_space(r1, m.row(i)));
        for (int i = 0; i < r1.nrows(); ++i) CHECK(in_row_space(rref(m).first, r1.row(i)));
    }
}

TEST_CASE("nullspace of the all-ones row is the even-weight code") {
    BitMatrix m(1, 8);
    m.row(0) = BitVec::ones(8);
    BitMatrix ns = nullspace_basis(m);
    CHECK(ns.nrows() == 7);
    for (CodewordRange r(ns); !r.done(); r.next()) CHECK(r.word().popcount() % 2 == 0);
}

TEST_CASE("nullspace of the identity is empty") {
    BitMatrix m(5, 5);
    for (int i = 0; i < 5; ++i) m.set(i, i, true);
    CHECK(nullspace_basis(m).nrows() == 0);
}

TEST_CASE("double dual returns the original row space") {
    const BitMatrix& kummer = fixture_set().get("kummer16").matrix;
    BitMatrix dual = nullspace_basis(kummer);
    CHECK(dual.nrows() == 11);
    BitMatrix back = nullspace_basis(dual);
    CHECK(back == rref(kummer).first);

    for (int trial = 0; trial < 30; ++trial) {
        int n = 4 + int(test_rng()() % 40);
        BitMatrix m(3, n);
        for (int i = 0; i < 3; ++i) m.row(i) = random_bitvec(n);
        CHECK(nullspace_basis(nullspace_basis(m)) == rref(m).first);
    }
}

TEST_CASE("codeword iteration yields the full row space in Gray order") {
    BitMatrix empty(0, 4);
    auto words = all_codewords(empty);
    REQUIRE(words.size() == 1);
    CHECK(words[0].is_zero());

    const BitMatrix& kummer = fixture_set().get("kummer16").matrix;
    auto kw = all_codewords(rref(kummer).first);
    CHECK(kw.size() == 32);
    std::sort(kw.begin(), kw.end());
    CHECK(std::unique(kw.begin(), kw.end()) == kw.end());

    const BitMatrix& quintic = fixture_set().get("quintic31").matrix;
    auto qw = all_codewords(rref(quintic).first);
    CHECK(qw.size() == 32);
    int w16 = 0;
    for (const auto& w : qw)
        if (w.popcount() == 16) ++w16;
    CHECK(w16 == 31);
}

TEST_CASE("weight identity under xor") {
    for (int n : {16, 64, 96}) {
        for (int trial = 0; trial < 1000; ++trial) {
            BitVec u = random_bitvec(n), v = random_bitvec(n);
            CHECK((u ^ v).popcount() == u.popcount() + v.popcount() - 2 * u.and_weight(v));
        }
    }
}

TEST_CASE("matrix text parsing rejects ragged rows and accepts comments") {
    CHECK_THROWS_AS(BitMatrix::from_text("101\n10\n"), ParseError);
    BitMatrix m = BitMatrix::from_text("# comment\n101\n011\n");
    CHECK(m.nrows() == 2);
    CHECK(m.ncols() == 3);
    CHECK(m.to_text() == "101\n011\n");
}
