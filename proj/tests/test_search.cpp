#include <doctest.h>

#include <cstdio>
#include <filesystem>

#include "divcode/errors.hpp"
#include "divcode/search.hpp"
#include "helpers.hpp"

using namespace divcode;

namespace {

SearchSpec classify_spec(int n, int k, int divisor, int d_min = 0) {
    SearchSpec spec;
    spec.mode = SearchMode::Classify;
    spec.target_n = n;
    spec.target_k = k;
    spec.divisor = divisor;
    spec.d_min = d_min ? d_min : divisor;
    return spec;
}

}  // namespace

TEST_CASE("no full-length 4-divisible code of length 9") {
    SearchSpec spec = classify_spec(9, 0, 4);
    SearchResult res = classify(spec);
    CHECK(res.codes.empty());
    CompletenessReport report = verify_completeness(res, spec, 6'000'000ull);
    CHECK(report.agreed);
    CHECK(report.brute_count == 0);
}

TEST_CASE("4-divisible full-length [8,2] classification matches the oracle") {
    SearchSpec spec = classify_spec(8, 2, 4);
    SearchResult res = classify(spec);
    CHECK(res.codes.size() == 1);  // value fixed by the brute-force oracle below
    CompletenessReport report = verify_completeness(res, spec, 2'000'000ull);
    CHECK(report.agreed);
    for (const Code& c : res.codes) {
        CHECK(c.full_length());
        CHECK(c.divisibility() >= 4);
    }
}

TEST_CASE("small classification sweep agrees with brute force") {
    struct Case {
        int n, k, divisor;
    } cases[] = {{8, 3, 4}, {10, 3, 4}, {7, 2, 2}, {10, 4, 4}};
    for (const auto& cs : cases) {
        SearchSpec spec = classify_spec(cs.n, cs.k, cs.divisor);
        SearchResult res = classify(spec);
        CompletenessReport report = verify_completeness(res, spec, 80'000'000ull);
        CHECK_MESSAGE(report.agreed, "n=", cs.n, " k=", cs.k, " div=", cs.divisor,
                      " search=", report.search_count, " brute=", report.brute_count);
    }
}

TEST_CASE("self-dual doubly-even lengths 8 and 16") {
    // the extended Hamming code is the unique [8,4] doubly-even self-dual
    // code, and length 16 carries exactly two classes
    SearchResult r8 = classify(classify_spec(8, 4, 4));
    CHECK(r8.codes.size() == 1);
    SearchResult r16 = classify(classify_spec(16, 8, 4));
    CHECK(r16.codes.size() == 2);
}

TEST_CASE("results are sound and pairwise inequivalent") {
    SearchSpec spec = classify_spec(12, 3, 4);
    SearchResult res = classify(spec);
    for (size_t i = 0; i < res.codes.size(); ++i) {
        CHECK(detail::satisfies_spec(res.codes[size_t(i)], spec));
        for (size_t j = i + 1; j < res.codes.size(); ++j)
            CHECK(!(res.labels[size_t(i)].canonical_gen == res.labels[size_t(j)].canonical_gen));
    }
}

TEST_CASE("extension of the repetition code by a weight-2 coset") {
    SearchSpec spec;
    spec.mode = SearchMode::ExtendDimension;
    spec.target_n = 4;
    spec.allowed_weights = {2};
    spec.seeds = {fixture_code("cayley4")};
    spec.new_coords_max = 0;
    SearchResult res = extend_dimension(spec);
    CHECK(res.codes.size() == 1);
    CompletenessReport report = verify_completeness(res, spec, 1'000'000ull);
    CHECK(report.agreed);
}

TEST_CASE("extension oracle agreement on small seeds") {
    // [6,2] seed, several coset weight sets, with and without a new column
    Code seed(BitMatrix::from_rows({"111100", "001111"}));
    for (std::vector<int> ws : {std::vector<int>{4}, std::vector<int>{2, 4, 6}, std::vector<int>{3, 5}}) {
        for (int newmax : {0, 1}) {
            SearchSpec spec;
            spec.mode = SearchMode::ExtendDimension;
            spec.target_n = 6 + newmax;
            spec.allowed_weights = ws;
            spec.seeds = {seed};
            spec.new_coords_max = newmax;
            SearchResult res = extend_dimension(spec);
            CompletenessReport report = verify_completeness(res, spec, 1'000'000ull);
            CHECK_MESSAGE(report.agreed, "weights size ", ws.size(), " newmax ", newmax,
                          " search=", report.search_count, " brute=", report.brute_count);
        }
    }
}

TEST_CASE("lengthening a zero-dimensional residual gives the repetition code") {
    SearchSpec spec;
    spec.mode = SearchMode::ExtendLength;
    spec.target_n = 6;
    spec.target_k = 1;
    spec.allowed_weights = {6};
    spec.seed_word_weight = 6;
    spec.seeds = {Code(BitMatrix(0, 0))};
    SearchResult res = lengthen_from_residual(spec);
    REQUIRE(res.codes.size() == 1);
    CHECK(res.codes[0].dimension() == 1);
    CHECK(res.codes[0].weight_enumerator().nonzero_weights() == std::vector<int>{6});
}

TEST_CASE("lengthening recovers a small two-weight code from its residual") {
    // [8,2] code {11110000, 00001111}: residual at the weight-4 word 11110000
    // is the [4,1] repetition code
    Code parent(BitMatrix::from_rows({"11110000", "00001111"}));
    Code residual_seed(BitMatrix::from_rows({"1111"}));
    SearchSpec spec;
    spec.mode = SearchMode::ExtendLength;
    spec.target_n = 8;
    spec.target_k = 2;
    spec.divisor = 4;
    spec.d_min = 4;
    spec.seed_word_weight = 4;
    spec.seeds = {residual_seed};
    SearchResult res = lengthen_from_residual(spec);
    REQUIRE(res.codes.size() >= 1);
    bool found = false;
    for (const Code& c : res.codes)
        if (are_equivalent(c, parent)) found = true;
    CHECK(found);
}

TEST_CASE("checkpoint files resume idempotently and refuse foreign specs") {
    namespace fs = std::filesystem;
    fs::path ck = fs::temp_directory_path() / "divcode_test_classify.ck";
    std::error_code ec;
    fs::remove(ck, ec);

    SearchSpec spec = classify_spec(10, 3, 4);
    spec.checkpoint_path = ck.string();
    SearchResult first = classify(spec);
    REQUIRE(fs::exists(ck));
    SearchResult second = classify(spec);  // resumes from the completed file
    CHECK(first.codes.size() == second.codes.size());
    for (size_t i = 0; i < first.codes.size(); ++i)
        CHECK(first.labels[size_t(i)].canonical_gen == second.labels[size_t(i)].canonical_gen);

    SearchSpec other = classify_spec(10, 2, 4);
    other.checkpoint_path = ck.string();
    CHECK_THROWS_AS(classify(other), SpecInfeasible);
    fs::remove(ck, ec);
}

TEST_CASE("infeasible weight sets are rejected") {
    SearchSpec spec = classify_spec(3, 0, 4);  // no multiple of 4 fits length 3
    CHECK_THROWS_AS(classify(spec), SpecInfeasible);
}

TEST_CASE("parallel classification matches single-threaded") {
    SearchSpec spec = classify_spec(12, 4, 4);
    SearchResult seq = classify(spec);
    spec.jobs = 2;
    SearchResult par = classify(spec);
    REQUIRE(seq.codes.size() == par.codes.size());
    for (size_t i = 0; i < seq.codes.size(); ++i)
        CHECK(seq.labels[size_t(i)].canonical_gen == par.labels[size_t(i)].canonical_gen);
}
