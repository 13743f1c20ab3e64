#include "divcode/verify.hpp"

#include <algorithm>
#include <atomic>
#include <set>
#include <sstream>

#include "divcode/canonical.hpp"
#include "divcode/errors.hpp"
#include "divcode/identities.hpp"
#include "divcode/search.hpp"

namespace divcode {

namespace {

struct Reporter {
    std::vector<CheckResult>* out;
    std::string tier;

    void add(const std::string& id, bool pass, const std::string& detail) {
        out->push_back({id, tier, pass, detail});
    }

    // guard a computation so a thrown error reports as a failed check
    template <typename Fn>
    void guarded(const std::string& id, Fn&& fn) {
        try {
            fn();
        } catch (const std::exception& e) {
            add(id, false, std::string("exception: ") + e.what());
        }
    }
};

WeightEnumerator brute_dual_enumerator(const Code& c) {
    return Code(c.dual_basis()).weight_enumerator();
}

std::map<int, int64_t> dist_map(const Code& c) {
    std::map<int, int64_t> m;
    const auto& d = c.weight_distribution();
    for (int i = 0; i < int(d.size()); ++i)
        if (d[size_t(i)]) m[i] = d[size_t(i)];
    return m;
}

std::string dist_str(const std::map<int, int64_t>& m) {
    std::ostringstream os;
    for (auto& [w, c] : m) os << c << "x^" << w << " ";
    return os.str();
}

}  // namespace

std::vector<CheckResult> run_fast_checks(const FixtureSet& fx, int jobs) {
    std::vector<CheckResult> results;
    Reporter rep{&results, "fast"};

    // 1. golden enumerators
    rep.guarded("enumerators", [&] {
        const char* ids[] = {"kummer16",      "quintic31",  "code64_13",
                             "code63_12",     "code64_12",  "code65_12",
                             "residual25_11", "septic96_10", "septic94_10"};
        for (const char* id : ids) {
            const FixtureEntry& fe = fx.get(id);
            Code c = fe.code();
            bool ok = true;
            for (int i = 0; i <= c.length(); ++i) {
                auto it = fe.enumerator->find(i);
                int64_t expect = it == fe.enumerator->end() ? 0 : it->second;
                if (c.weight_distribution()[size_t(i)] != expect) ok = false;
            }
            rep.add(std::string("enumerator:") + id, ok, ok ? "exact" : "mismatch");
        }
    });

    // 2. automorphism orders
    rep.guarded("aut_orders", [&] {
        const std::pair<const char*, int64_t> expect[] = {
            {"code63_12", 362880},   {"code64_12", 5760},      {"code65_12", 15600},
            {"cprime66_13", 15600},  {"residual25_11", 4608},  {"code64_13", 23224320}};
        detail::parallel_for(int(std::size(expect)), jobs, [&](int i) {
            BigInt order = aut_group_order(fx.get(expect[size_t(i)].first).code());
            bool ok = order == BigInt(expect[size_t(i)].second);
            static std::mutex mu;
            std::lock_guard<std::mutex> lock(mu);
            rep.add(std::string("aut:") + expect[size_t(i)].first, ok, order.to_string());
        });
    });

    // 3. projectivity of the three classified codes
    rep.guarded("projectivity", [&] {
        for (const char* id : {"code63_12", "code64_12", "code65_12"}) {
            Code c = fx.get(id).code();
            rep.add(std::string("projective:") + id, c.projective(), c.projective() ? "true" : "false");
        }
    });

    // 4. power moments and the closed forms
    rep.guarded("power_moments", [&] {
        for (const auto& fe : fx.entries()) {
            MomentSystem ms = moment_system_of(fe.code());
            bool ok = power_moments_check(ms).all_zero();
            rep.add("moments:" + fe.id, ok, ok ? "residuals zero" : "nonzero residual");
        }
        // closed forms against the three fixtures, slack taken from the true duals
        struct Case {
            const char* id;
            int n;
            int64_t a40;
        } cases[] = {{"code63_12", 63, 378}, {"code64_12", 64, 506}, {"code65_12", 65, 650}};
        for (const auto& cs : cases) {
            MomentSystem ms = moment_system_of(fx.get(cs.id).code());
            Rat v = lemma_a40(cs.n, ms.a2_star.to_int64(), ms.a3_star.to_int64(), 0, 0);
            bool ok = v.is_integer() && v.num == cs.a40;
            rep.add(std::string("a40_closed_form:") + cs.id, ok, v.to_string());
        }
        Rat v65 = lemma_a40(65, 0, 0, 0, 0);
        rep.add("a40_zero_slack_n65", v65.is_integer() && v65.num == 650, v65.to_string());
        bool all_neg = true;
        for (int n = 54; n <= 60; ++n) {
            Rat v = lemma_a40_plus_a48(n, 0, 0, 0, 0);
            if (!(v < Rat(0))) all_neg = false;
        }
        rep.add("a40_a48_negative_54_60", all_neg, all_neg ? "all negative" : "sign error");
    });

    // 5. MacWilliams involution and oracle equivalence
    rep.guarded("macwilliams", [&] {
        bool involution_ok = true, oracle_ok = true;
        for (const auto& fe : fx.entries()) {
            Code c = fe.code();
            WeightEnumerator w = c.weight_enumerator();
            WeightEnumerator dual = macwilliams_dual(w, c.dimension());
            WeightEnumerator back = macwilliams_dual(dual, c.length() - c.dimension());
            if (!(back == w)) involution_ok = false;
            if (c.length() - c.dimension() <= 16)
                if (!(dual == brute_dual_enumerator(c))) oracle_ok = false;
        }
        rep.add("macwilliams_involution", involution_ok, involution_ok ? "exact on all fixtures" : "failed");
        rep.add("macwilliams_oracle", oracle_ok, oracle_ok ? "matches brute-force duals" : "failed");
    });

    // 6. no full-length 4-divisible code of effective length 9
    rep.guarded("length9_nonexistence", [&] {
        SearchSpec spec;
        spec.mode = SearchMode::Classify;
        spec.target_n = 9;
        spec.target_k = 0;
        spec.divisor = 4;
        spec.d_min = 4;
        spec.jobs = jobs;
        SearchResult res = classify(spec);
        rep.add("classify_4div_len9", res.codes.empty(),
                std::to_string(res.codes.size()) + " classes");
        CompletenessReport cr = verify_completeness(res, spec, 6'000'000ull);
        rep.add("classify_4div_len9_oracle", cr.agreed && cr.brute_count == 0,
                "brute " + std::to_string(cr.brute_count));
    });

    // 7. weight-set sweep and residual uniqueness
    rep.guarded("weight_sets", [&] {
        const char* eight_dim[] = {"w2432_51_8", "w2432_54_8", "w2432_55_8a", "w2432_55_8b",
                                   "w2432_56_8a", "w2432_56_8b", "w2432_56_8c"};
        const char* nine_dim[] = {"w2432_56_9a", "w2432_56_9b"};
        bool ok = true;
        for (const char* id : eight_dim)
            for (int w : fx.get(id).code().weight_enumerator().nonzero_weights())
                if (w != 24 && w != 32) ok = false;
        for (const char* id : nine_dim)
            for (int w : fx.get(id).code().weight_enumerator().nonzero_weights())
                if (w != 24 && w != 32 && w != 56) ok = false;
        rep.add("two_weight_family", ok, ok ? "weights confined" : "stray weight");
    });
    rep.guarded("residual_uniqueness", [&] {
        Code c65 = fx.get("code65_12").code();
        CanonicalLabel target = canonical_label(fx.get("residual25_11").code());
        std::vector<BitVec> w40;
        for (CodewordRange r(c65.generator()); !r.done(); r.next())
            if (r.word().popcount() == 40) w40.push_back(r.word());
        bool count_ok = int(w40.size()) == 650;
        std::atomic<bool> all_equivalent{true};
        detail::parallel_for(int(w40.size()), jobs, [&](int i) {
            Code res = compact(residual(c65, w40[size_t(i)]));
            if (!(canonical_label(res).canonical_gen == target.canonical_gen))
                all_equivalent = false;
        });
        rep.add("residuals_40_unique", count_ok && all_equivalent,
                std::to_string(w40.size()) + " words, residuals " +
                    (all_equivalent ? "all equivalent" : "NOT all equivalent"));
    });

    // 8. hyperplane cross-check inside the extension
    rep.guarded("hyperplane_crosscheck", [&] {
        Code cp = fx.get("cprime66_13").code();
        Code c65 = fx.get("code65_12").code();
        std::map<int, int64_t> expected_coset = {{16, 26},  {28, 650}, {32, 1690},
                                                 {36, 1300}, {40, 300}, {44, 130}};
        int found = 0;
        bool coset_ok = false;
        for (uint64_t lambda = 1; lambda < (uint64_t{1} << 13); ++lambda) {
            // subcode of words whose coefficient vector is orthogonal to lambda
            BitMatrix sub(0, cp.length());
            for (int i = 0; i < 13; ++i) {
                if (!(lambda >> i & 1)) {
                    sub.append_row(cp.generator().row(i));
                } else {
                    // pair this row with the lowest lambda-row to stay inside
                    int low = std::countr_zero(lambda);
                    if (i != low) sub.append_row(cp.generator().row(i) ^ cp.generator().row(low));
                }
            }
            Code subcode(sub);
            if (subcode.dimension() != 12) continue;
            if (dist_map(subcode) != dist_map(c65)) continue;
            Code compacted = compact(subcode);
            if (compacted.length() != 65) continue;
            if (are_equivalent(compacted, c65)) {
                ++found;
                // coset enumerator of the complement
                std::map<int, int64_t> coset;
                const auto& dall = cp.weight_distribution();
                const auto& dsub = subcode.weight_distribution();
                for (int i = 1; i < int(dall.size()); ++i) {
                    int64_t diff = dall[size_t(i)] - dsub[size_t(i)];
                    if (diff) coset[i] = diff;
                }
                if (coset == expected_coset) coset_ok = true;
                break;
            }
        }
        rep.add("hyperplane_subcode", found > 0 && coset_ok,
                found ? "found; coset enumerator " + std::string(coset_ok ? "matches" : "differs")
                      : "no equivalent hyperplane subcode");
    });

    return results;
}

std::vector<CheckResult> run_search_checks(const FixtureSet& fx, int jobs) {
    std::vector<CheckResult> results;
    Reporter rep{&results, "search"};

    // 9. no extension with the original weight set
    for (const char* id : {"code63_12", "code64_12", "code65_12"}) {
        rep.guarded(std::string("no_extension:") + id, [&] {
            SearchSpec spec;
            spec.mode = SearchMode::ExtendDimension;
            spec.target_n = 66;
            spec.allowed_weights = {24, 32, 40, 48, 56};
            spec.seeds = {fx.get(id).code()};
            spec.new_coords_max = 66 - spec.seeds[0].length();
            spec.jobs = jobs;
            SearchResult res = extend_dimension(spec);
            rep.add(std::string("no_extension:") + id, res.codes.empty(),
                    std::to_string(res.codes.size()) + " extensions");
        });
    }

    // 10. the unique extension with the widened weight set
    rep.guarded("unique_extension", [&] {
        SearchSpec spec;
        spec.mode = SearchMode::ExtendDimension;
        spec.target_n = 66;
        spec.allowed_weights = {16, 28, 32, 36, 40, 44};
        spec.seeds = {fx.get("code65_12").code()};
        spec.new_coords_max = 1;
        spec.jobs = jobs;
        SearchResult res = extend_dimension(spec);
        bool one = res.codes.size() == 1;
        bool equiv = one && are_equivalent(res.codes[0], fx.get("cprime66_13").code());
        rep.add("unique_extension", one && equiv,
                std::to_string(res.codes.size()) + " classes" +
                    (one ? (equiv ? ", equivalent to the printed extension" : ", NOT equivalent") : ""));
    });

    // 11. lengthening from the printed residual
    rep.guarded("lengthen_residual", [&] {
        SearchSpec spec;
        spec.mode = SearchMode::ExtendLength;
        spec.target_n = 65;
        spec.target_k = 12;
        spec.divisor = 8;
        spec.d_min = 24;
        spec.seed_word_weight = 40;
        spec.seeds = {fx.get("residual25_11").code()};
        spec.jobs = jobs;
        SearchResult res = lengthen_from_residual(spec);
        bool one = res.codes.size() == 1;
        bool equiv = one && are_equivalent(res.codes[0], fx.get("code65_12").code());
        rep.add("lengthen_residual", one && equiv,
                std::to_string(res.codes.size()) + " classes" +
                    (one ? (equiv ? ", equivalent to the 65-column code" : ", NOT equivalent") : ""));
    });

    return results;
}

std::vector<CheckResult> run_long_checks(const FixtureSet& fx, int jobs,
                                         const std::string& checkpoint_dir) {
    std::vector<CheckResult> results;
    Reporter rep{&results, "long"};

    // 12. residual classification counts
    std::vector<SearchResult> residues(3);
    const int expected_counts[3] = {11, 83, 215};
    for (int i = 0; i < 3; ++i) {
        int n = 23 + i;
        rep.guarded("classify_4div_" + std::to_string(n) + "_11", [&, i, n] {
            SearchSpec spec;
            spec.mode = SearchMode::Classify;
            spec.target_n = n;
            spec.target_k = 11;
            spec.divisor = 4;
            spec.d_min = 4;
            spec.jobs = jobs;
            if (!checkpoint_dir.empty())
                spec.checkpoint_path = checkpoint_dir + "/classify_" + std::to_string(n) + "_11.ck";
            residues[size_t(i)] = classify(spec);
            int got = int(residues[size_t(i)].codes.size());
            rep.add("classify_4div_" + std::to_string(n) + "_11", got == expected_counts[i],
                    std::to_string(got) + " classes");
        });
    }

    // 13. the full ten-code reproduction from the residual classes
    rep.guarded("ten_codes", [&] {
        std::map<int, int> by_length;
        bool stray_weight = false;
        for (int i = 0; i < 3; ++i) {
            int n = 63 + i;
            SearchSpec spec;
            spec.mode = SearchMode::ExtendLength;
            spec.target_n = n;
            spec.target_k = 12;
            spec.divisor = 8;
            spec.d_min = 24;
            spec.seed_word_weight = 40;
            spec.jobs = jobs;
            spec.seeds = residues[size_t(i)].codes;
            if (!checkpoint_dir.empty())
                spec.checkpoint_path = checkpoint_dir + "/lengthen_" + std::to_string(n) + ".ck";
            SearchResult res = lengthen_from_residual(spec);
            by_length[n] = int(res.codes.size());
            for (const Code& c : res.codes)
                for (int w : c.weight_enumerator().nonzero_weights())
                    if (w == 48 || w == 56) stray_weight = true;
        }
        bool counts_ok = by_length[63] == 1 && by_length[64] == 8 && by_length[65] == 1;
        rep.add("ten_codes", counts_ok && !stray_weight,
                "63:" + std::to_string(by_length[63]) + " 64:" + std::to_string(by_length[64]) +
                    " 65:" + std::to_string(by_length[65]) +
                    (stray_weight ? " (weight 48/56 present!)" : ""));
    });

    return results;
}

}  // namespace divcode
