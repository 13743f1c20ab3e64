#include <doctest.h>

#include <algorithm>
#include <map>
#include <set>

#include "divcode/code.hpp"
#include "divcode/errors.hpp"
#include "divcode/identities.hpp"
#include "helpers.hpp"

using namespace divcode;

namespace {

std::map<int, int64_t> dist_map(const Code& c) {
    std::map<int, int64_t> m;
    for (int i = 0; i < int(c.weight_distribution().size()); ++i)
        if (c.weight_distribution()[size_t(i)]) m[i] = c.weight_distribution()[size_t(i)];
    return m;
}

}  // namespace

TEST_CASE("weight enumerators of the printed codes") {
    CHECK(dist_map(fixture_code("kummer16")) ==
          std::map<int, int64_t>{{0, 1}, {8, 30}, {16, 1}});
    CHECK(dist_map(fixture_code("code65_12")) ==
          std::map<int, int64_t>{{0, 1}, {24, 390}, {32, 3055}, {40, 650}});
    CHECK(dist_map(fixture_code("septic96_10")) ==
          std::map<int, int64_t>{{0, 1}, {44, 504}, {48, 124}, {52, 336}, {60, 56}, {64, 3}});
    Code zero(BitMatrix(0, 7));
    CHECK(dist_map(zero) == std::map<int, int64_t>{{0, 1}});
}

TEST_CASE("minimum distance") {
    CHECK(fixture_code("quintic31").minimum_distance() == 16);
    CHECK(fixture_code("code64_13").minimum_distance() == 24);
    BitMatrix id(4, 4);
    for (int i = 0; i < 4; ++i) id.set(i, i, true);
    CHECK(Code(id).minimum_distance() == 1);
    CHECK_THROWS_AS(Code(BitMatrix(0, 7)).minimum_distance(), ZeroDimensional);
}

TEST_CASE("divisibility") {
    CHECK(fixture_code("kummer16").divisibility() == 8);
    CHECK(fixture_code("quintic31").divisibility() == 16);
    CHECK(fixture_code("quintic31").weight_gcd() == 16);
    BitMatrix id(3, 3);
    for (int i = 0; i < 3; ++i) id.set(i, i, true);
    CHECK(Code(id).divisibility() == 1);
    CHECK_THROWS_AS(Code(BitMatrix(0, 3)).divisibility(), ZeroDimensional);
}

TEST_CASE("residual codes") {
    Code c65 = fixture_code("code65_12");
    BitVec w40(65);
    for (CodewordRange r(c65.generator()); !r.done(); r.next())
        if (r.word().popcount() == 40) {
            w40 = r.word();
            break;
        }
    Code res = residual(c65, w40);
    CHECK(res.length() == 25);
    CHECK(res.dimension() == 11);
    CHECK(dist_map(res) ==
          std::map<int, int64_t>{{0, 1}, {4, 3}, {8, 258}, {12, 1278}, {16, 493}, {20, 15}});

    Code cayley = fixture_code("cayley4");
    Code empty = residual(cayley, BitVec::ones(4));
    CHECK(empty.length() == 0);
    CHECK(empty.dimension() == 0);

    Code kummer = fixture_code("kummer16");
    Code res16 = residual(kummer, BitVec::ones(16));
    CHECK(res16.length() == 0);

    BitVec not_word(65);
    not_word.set(0, true);
    CHECK_THROWS_AS(residual(c65, not_word), NotACodeword);
}

TEST_CASE("restriction to a support") {
    Code kummer = fixture_code("kummer16");
    CHECK(restriction_to_support(kummer, BitVec::ones(16)).weight_distribution() ==
          kummer.weight_distribution());

    // every weight-8 word of the affine-solid code restricts to [8,4] 1+14x^4+x^8
    for (CodewordRange r(kummer.generator()); !r.done(); r.next()) {
        if (r.word().popcount() != 8) continue;
        Code sub = restriction_to_support(kummer, r.word());
        CHECK(sub.length() == 8);
        CHECK(sub.dimension() == 4);
        CHECK(dist_map(sub) == std::map<int, int64_t>{{0, 1}, {4, 14}, {8, 1}});
    }

    Code c64 = fixture_code("code64_13");
    BitVec w24(64);
    for (CodewordRange r(c64.generator()); !r.done(); r.next())
        if (r.word().popcount() == 24) {
            w24 = r.word();
            break;
        }
    Code sub = restriction_to_support(c64, w24);
    CHECK(sub.length() == 24);
    CHECK(sub.dimension() == 12);
    auto ws = sub.weight_enumerator().nonzero_weights();
    CHECK(ws == std::vector<int>{4, 8, 12, 16, 20, 24});
}

TEST_CASE("point multisets and projections") {
    // projective codes have all multiplicities one
    PointMultiset ps = point_multiset(fixture_code("code65_12"));
    CHECK(ps.cardinality() == 65);
    for (const auto& [p, m] : ps.points) CHECK(m == 1);

    // the two 9-dimensional two-weight codes realize the two printed shapes
    PointMultiset pa = point_multiset(fixture_code("w2432_56_9a"));
    std::map<int, int> shape_a;
    for (const auto& [p, m] : pa.points) ++shape_a[m];
    CHECK(shape_a == std::map<int, int>{{1, 36}, {2, 10}});

    PointMultiset pb = point_multiset(fixture_code("w2432_56_9b"));
    std::map<int, int> shape_b;
    for (const auto& [p, m] : pb.points) ++shape_b[m];
    CHECK(shape_b == std::map<int, int>{{1, 51}, {5, 1}});

    // a doubled column shows up as one multiplicity-2 point
    BitMatrix doubled = BitMatrix::from_rows({"110", "001"});
    PointMultiset pd = point_multiset(Code(doubled));
    int twos = 0;
    for (const auto& [p, m] : pd.points)
        if (m == 2) ++twos;
    CHECK(twos == 1);

    // all seven points of PG(2,2): projection through any point gives the
    // three points of PG(1,2) with multiplicity two each
    PointMultiset fano;
    fano.ambient_dim = 3;
    for (int v = 1; v < 8; ++v) {
        BitVec p(3);
        for (int b = 0; b < 3; ++b)
            if (v >> b & 1) p.set(b, true);
        fano.points[p] = 1;
    }
    for (const auto& [p, m] : fano.points) {
        PointMultiset q = project_through_point(fano, p);
        CHECK(q.ambient_dim == 2);
        CHECK(q.cardinality() == 6);
        CHECK(q.points.size() == 3);
        for (const auto& [pp, mm] : q.points) CHECK(mm == 2);
    }

    // projecting the multiplicity-5 fixture through its heavy point leaves 51
    // simple points whose code is the unique [51,8] two-weight code
    BitVec heavy(9);
    for (const auto& [p, m] : pb.points)
        if (m == 5) heavy = p;
    PointMultiset proj = project_through_point(pb, heavy);
    CHECK(proj.cardinality() == 51);
    for (const auto& [p, m] : proj.points) CHECK(m == 1);
    Code projected = code_from_multiset(proj);
    CHECK(projected.length() == 51);
    CHECK(projected.dimension() == 8);
    auto ws51 = projected.weight_enumerator().nonzero_weights();
    CHECK(ws51 == std::vector<int>{24, 32});

    // single point projects to nothing
    PointMultiset single;
    single.ambient_dim = 2;
    BitVec p0(2);
    p0.set(0, true);
    single.points[p0] = 1;
    CHECK(project_through_point(single, p0).cardinality() == 0);
    BitVec absent(2);
    absent.set(1, true);
    CHECK_THROWS_AS(project_through_point(single, absent), PointAbsent);

    // cardinality bookkeeping on random multisets
    for (int trial = 0; trial < 50; ++trial) {
        PointMultiset ms;
        ms.ambient_dim = 4;
        for (int reps = 0; reps < 10; ++reps) {
            BitVec v = random_bitvec(4);
            if (!v.is_zero()) ++ms.points[v];
        }
        if (ms.points.empty()) continue;
        auto it = ms.points.begin();
        std::advance(it, int(test_rng()() % ms.points.size()));
        int before = ms.cardinality(), dropped = it->second;
        CHECK(project_through_point(ms, it->first).cardinality() == before - dropped);
    }
}

TEST_CASE("puncture and shorten") {
    BitMatrix id3(3, 3);
    for (int i = 0; i < 3; ++i) id3.set(i, i, true);
    Code punctured = puncture(Code(id3), 0);
    CHECK(punctured.length() == 2);
    CHECK(punctured.dimension() == 2);

    Code cayley = fixture_code("cayley4");
    Code shortened = shorten(cayley, 2);
    CHECK(shortened.length() == 3);
    CHECK(shortened.dimension() == 0);

    Code quintic = fixture_code("quintic31");
    for (int col : {0, 7, 30}) {
        Code p = puncture(quintic, col);
        CHECK(p.length() == 30);
        CHECK(p.dimension() == 5);
        CHECK(p.weight_enumerator().nonzero_weights() == std::vector<int>{15, 16});
    }
    CHECK_THROWS_AS(puncture(quintic, 31), IndexOutOfRange);
    CHECK_THROWS_AS(shorten(quintic, -1), IndexOutOfRange);
}

TEST_CASE("puncture agrees with a direct recount for small codes") {
    for (int trial = 0; trial < 25; ++trial) {
        int n = 6 + int(test_rng()() % 10);
        int k = 1 + int(test_rng()() % 6);
        BitMatrix m(k, n);
        for (int i = 0; i < k; ++i) m.row(i) = random_bitvec(n);
        Code c(m);
        int col = int(test_rng()() % n);
        Code p = puncture(c, col);
        // independent recount: drop the column from every codeword
        std::map<int, int64_t> recount;
        std::set<std::string> seen;
        for (CodewordRange r(c.generator()); !r.done(); r.next()) {
            std::string s = r.word().to_string();
            s.erase(size_t(col), 1);
            if (seen.insert(s).second) ++recount[int(std::count(s.begin(), s.end(), '1'))];
        }
        CHECK(dist_map(p) == recount);
    }
}

TEST_CASE("enumerator totals and self-orthogonality of 4-divisible fixtures") {
    for (const auto& fe : fixture_set().entries()) {
        Code c = fe.code();
        CHECK(c.weight_enumerator().total() == BigInt::pow2(c.dimension()));
        if (c.dimension() >= 1 && c.divisibility() >= 4) {
            for (int i = 0; i < c.dimension(); ++i)
                for (int j = i; j < c.dimension(); ++j)
                    CHECK(c.generator().row(i).and_weight(c.generator().row(j)) % 2 == 0);
        }
    }
}

TEST_CASE("residuals of 8-divisible subcodes are 4-divisible") {
    Code c64 = fixture_code("code64_13");
    for (int trial = 0; trial < 200; ++trial) {
        // random subcode of dimension <= 5
        BitMatrix sub(0, 64);
        int rows = 2 + int(test_rng()() % 4);
        for (int i = 0; i < rows; ++i) {
            uint64_t mask = test_rng()() & ((uint64_t{1} << 13) - 1);
            BitVec w(64);
            for (int b = 0; b < 13; ++b)
                if (mask >> b & 1) w ^= c64.generator().row(b);
            sub.append_row(w);
        }
        Code subcode(sub);
        if (subcode.dimension() == 0) continue;
        for (CodewordRange r(subcode.generator()); !r.done(); r.next()) {
            if (r.word().is_zero()) continue;
            Code res = residual(subcode, r.word());
            if (res.dimension() == 0) continue;
            CHECK(res.divisibility() >= 4);
        }
    }
}

TEST_CASE("projectivity matches the dual-distance route where both run") {
    for (const auto& fe : fixture_set().entries()) {
        Code c = fe.code();
        if (c.length() - c.dimension() > 16) continue;
        Code dual(c.dual_basis());
        bool via_dual = dual.dimension() == 0 || dual.minimum_distance() >= 3;
        CHECK(c.projective() == via_dual);
    }
}

TEST_CASE("point multiset pair count matches the dual a2*") {
    for (const char* id : {"w2432_56_9a", "w2432_56_9b", "kummer16"}) {
        Code c = fixture_code(id);
        PointMultiset ps = point_multiset(c);
        int64_t pairs = 0;
        for (const auto& [p, m] : ps.points) pairs += int64_t(m) * (m - 1) / 2;
        WeightEnumerator dual = macwilliams_dual(c.weight_enumerator(), c.dimension());
        CHECK(BigInt(pairs) == dual.coeff(2));
    }
}
