#include <algorithm>
#include <chrono>
#include <unordered_map>
#include <unordered_set>

#include "divcode/errors.hpp"
#include "divcode/search.hpp"

namespace divcode {

namespace {

using detail::LabelStore;

bool weights_all_divisible(const std::vector<int>& ws, int d) {
    for (int w : ws)
        if (w % d) return false;
    return !ws.empty();
}

// Membership mask for allowed weights.
struct WeightMask {
    std::vector<char> ok;
    explicit WeightMask(const std::vector<int>& ws, int n) : ok(size_t(n) + 1, 0) {
        for (int w : ws)
            if (w <= n) ok[size_t(w)] = 1;
    }
    bool test(int w) const { return ok[size_t(w)]; }
};

// Coset representative: clears the code's pivot coordinates.
BitVec reduce_mod(const BitMatrix& gen_rref, BitVec v) {
    for (int i = 0; i < gen_rref.nrows(); ++i) {
        int p = gen_rref.row(i).lowest_set();
        if (p >= 0 && v.get(p)) v ^= gen_rref.row(i);
    }
    return v;
}

// Vectors vanishing on the code's pivot coordinates that span a transversal
// of C inside `ambient` (ambient = C-perp, or the full space).
std::vector<BitVec> coset_rep_basis(const Code& c, const BitMatrix& ambient_basis) {
    BitMatrix reduced(0, c.length());
    for (int i = 0; i < ambient_basis.nrows(); ++i) {
        BitVec r = reduce_mod(c.generator(), ambient_basis.row(i));
        if (!r.is_zero()) reduced.append_row(r);
    }
    return [m = rref(reduced).first] {
        std::vector<BitVec> out;
        for (int i = 0; i < m.nrows(); ++i) out.push_back(m.row(i));
        return out;
    }();
}

struct ExtensionContext {
    const SearchSpec* spec;
    const WeightMask* mask;
    SearchStats* stats;
    std::mutex* stats_mu;
};

// All inequivalent one-dimension extensions of `parent` whose added coset
// keeps every weight allowed. Candidate cosets are reduced to orbit
// representatives under Aut(parent) before any canonical labeling.
std::vector<Code> extend_one_dimension(const Code& parent, const ExtensionContext& ctx) {
    const int n = parent.length();
    const bool self_orth_route = weights_all_divisible(ctx.spec->weight_set(n), 4);
    BitMatrix ambient =
        self_orth_route ? parent.dual_basis() : [n] {
            BitMatrix id(n, n);
            for (int i = 0; i < n; ++i) id.set(i, i, true);
            return id;
        }();
    std::vector<BitVec> basis = coset_rep_basis(parent, ambient);
    int q = int(basis.size());
    if (q == 0) return {};
    if (q > 26) throw BudgetExceeded("extension candidate space 2^" + std::to_string(q));

    CanonicalLabel parent_label = canonical_label(compact(parent));
    // lift the compacted automorphisms back to the padded coordinates; the
    // zero coordinates are freely permutable, so adjacent transpositions of
    // them complete the padded automorphism group
    std::vector<Perm> gens;
    {
        std::vector<int> nonzero_cols, zero_cols;
        for (int i = 0; i < n; ++i) {
            if (parent.generator().column(i).is_zero())
                zero_cols.push_back(i);
            else
                nonzero_cols.push_back(i);
        }
        for (const auto& g : parent_label.aut_generators) {
            Perm lifted = identity_perm(n);
            for (size_t a = 0; a < nonzero_cols.size(); ++a)
                lifted[size_t(nonzero_cols[a])] = nonzero_cols[size_t(g[a])];
            gens.push_back(lifted);
        }
        for (size_t a = 0; a + 1 < zero_cols.size(); ++a) {
            Perm t = identity_perm(n);
            std::swap(t[size_t(zero_cols[a])], t[size_t(zero_cols[a + 1])]);
            gens.push_back(t);
        }
    }

    // enumerate valid coset representatives (Gray order over the transversal)
    std::vector<BitVec> valid;
    {
        BitVec v(n);
        uint64_t total = uint64_t{1} << q;
        uint64_t checked = 0;
        for (uint64_t idx = 0;; ++idx) {
            if (idx) {
                int bit = std::countr_zero(idx);
                v ^= basis[size_t(bit)];
            }
            if (idx == total) break;
            if (idx == 0) continue;  // zero coset is the parent itself
            ++checked;
            if (ctx.mask->test(v.popcount())) {
                bool ok = true;
                for (CodewordRange r(parent.generator()); !r.done(); r.next()) {
                    if (!ctx.mask->test((v ^ r.word()).popcount())) {
                        ok = false;
                        break;
                    }
                }
                if (ok) valid.push_back(v);
            }
        }
        std::lock_guard<std::mutex> lock(*ctx.stats_mu);
        ctx.stats->candidates_checked += checked;
    }
    if (valid.empty()) return {};

    // orbit representatives under Aut(parent)
    std::vector<BitVec> reps;
    if (n <= 64 && !gens.empty()) {
        std::unordered_map<uint64_t, char> seen;
        seen.reserve(valid.size() * 2);
        for (const auto& v : valid) seen.emplace(v.word(0), 0);
        uint64_t rejections = 0;
        for (const auto& v : valid) {
            auto it = seen.find(v.word(0));
            if (it->second) {
                ++rejections;
                continue;
            }
            reps.push_back(v);
            // close the orbit
            std::vector<BitVec> queue{v};
            it->second = 1;
            while (!queue.empty()) {
                BitVec cur = queue.back();
                queue.pop_back();
                for (const auto& g : gens) {
                    BitVec moved(n);
                    for (int i = 0; i < n; ++i)
                        if (cur.get(i)) moved.set(g[size_t(i)], true);
                    moved = reduce_mod(parent.generator(), moved);
                    auto jt = seen.find(moved.word(0));
                    if (jt != seen.end() && !jt->second) {
                        jt->second = 1;
                        queue.push_back(moved);
                    }
                }
            }
        }
        std::lock_guard<std::mutex> lock(*ctx.stats_mu);
        ctx.stats->isomorph_rejections += rejections;
    } else {
        reps = valid;
    }

    std::vector<Code> children;
    children.reserve(reps.size());
    for (const auto& v : reps) {
        BitMatrix ext = parent.generator();
        ext.append_row(v);
        children.emplace_back(ext);
    }
    return children;
}

}  // namespace

SearchResult classify(const SearchSpec& spec) {
    auto t0 = std::chrono::steady_clock::now();
    const int n = spec.target_n;
    std::vector<int> ws = spec.weight_set(n);
    if (ws.empty()) throw SpecInfeasible("no allowed weight fits the length");
    WeightMask mask(ws, n);

    int kmax = spec.target_k > 0 ? spec.target_k : 20;
    if (weights_all_divisible(ws, 4)) kmax = std::min(kmax, n / 2);
    kmax = std::min(kmax, 20);
    if (spec.target_k > n) throw SpecInfeasible("dimension exceeds length");

    SearchResult result;
    std::mutex stats_mu;
    ExtensionContext ctx{&spec, &mask, &result.stats, &stats_mu};

    LabelStore final_store(spec, spec.checkpoint_path);
    auto harvest = [&](const std::vector<Code>& level) {
        for (const auto& c : level)
            if (detail::satisfies_spec(c, spec)) final_store.add(c, canonical_label(compact(c)));
    };

    // dimension 1: one class per allowed weight
    std::vector<Code> level;
    for (int w : ws) {
        BitMatrix m(1, n);
        for (int i = 0; i < w; ++i) m.set(0, i, true);
        level.emplace_back(m);
    }
    if (spec.target_k == 0 || spec.target_k == 1) harvest(level);

    for (int j = 1; j < kmax && !level.empty(); ++j) {
        LabelStore next_store(spec, "");
        detail::parallel_for(int(level.size()), spec.jobs, [&](int idx) {
            for (const auto& child : extend_one_dimension(level[size_t(idx)], ctx)) {
                // dedup with a marked-coordinate-free label on the padded length
                CanonicalLabel lbl = canonical_label(compact(child));
                if (!next_store.add(child, lbl)) {
                    std::lock_guard<std::mutex> lock(stats_mu);
                    ++result.stats.isomorph_rejections;
                }
            }
        });
        level.clear();
        for (auto& [code, lbl] : next_store.sorted_entries()) level.push_back(code);
        {
            std::lock_guard<std::mutex> lock(stats_mu);
            result.stats.nodes += level.size();
        }
        if (spec.target_k == 0 || spec.target_k == j + 1) harvest(level);
    }

    for (auto& [code, lbl] : final_store.sorted_entries()) {
        result.codes.push_back(code);
        result.labels.push_back(lbl);
    }
    final_store.mark_complete();
    result.stats.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return result;
}

namespace {

// Enumerates every RREF generator matrix with the given pivot columns,
// pruning rows whose weight is not allowed (every row is a codeword).
template <typename Fn>
void enumerate_rrefs(int n, const std::vector<int>& pivots, const WeightMask& mask, BitMatrix& m,
                     int row, uint64_t& visited, Fn&& emit) {
    int k = int(pivots.size());
    if (row == k) {
        ++visited;
        emit(m);
        return;
    }
    // free positions of this row: after its pivot, excluding later pivots
    std::vector<int> free_pos;
    for (int c = pivots[size_t(row)] + 1; c < n; ++c)
        if (!std::binary_search(pivots.begin(), pivots.end(), c)) free_pos.push_back(c);
    uint64_t combos = uint64_t{1} << free_pos.size();
    for (uint64_t bits = 0; bits < combos; ++bits) {
        BitVec r(n);
        r.set(pivots[size_t(row)], true);
        for (size_t i = 0; i < free_pos.size(); ++i)
            if (bits >> i & 1) r.set(free_pos[i], true);
        if (!mask.test(r.popcount())) continue;
        m.row(row) = r;
        enumerate_rrefs(n, pivots, mask, m, row + 1, visited, emit);
    }
    m.row(row) = BitVec(n);
}

template <typename Fn>
void for_each_pivot_set(int n, int k, std::vector<int>& cur, int start, Fn&& fn) {
    if (int(cur.size()) == k) {
        fn(cur);
        return;
    }
    for (int c = start; c < n; ++c) {
        cur.push_back(c);
        for_each_pivot_set(n, k, cur, c + 1, fn);
        cur.pop_back();
    }
}

}  // namespace

CompletenessReport verify_completeness(const SearchResult& result, const SearchSpec& spec,
                                       uint64_t oracle_budget) {
    CompletenessReport report;
    report.search_count = int64_t(result.codes.size());
    WeightMask mask(spec.weight_set(spec.target_n + spec.new_coords_max),
                    spec.target_n + spec.new_coords_max);

    LabelStore store(spec, "");
    if (spec.mode == SearchMode::Classify) {
        const int n = spec.target_n;
        int kmax = spec.target_k > 0 ? spec.target_k : std::min(n, 20);
        if (spec.target_k == 0 && weights_all_divisible(spec.weight_set(n), 4))
            kmax = std::min(kmax, n / 2);
        // budget guard: subspaces of each dimension (Gaussian binomial), compared
        // without division as count <= budget * denom
        for (int k = spec.target_k > 0 ? spec.target_k : 1; k <= kmax; ++k) {
            BigInt count(1), denom(1);
            for (int i = 0; i < k; ++i) {
                count *= BigInt::pow2(n - i) - BigInt(1);
                denom *= BigInt::pow2(k - i) - BigInt(1);
            }
            if (BigInt(int64_t(oracle_budget)) * denom < count)
                throw BudgetExceeded("raw classification space exceeds the oracle budget");
        }
        uint64_t visited = 0;
        for (int k = spec.target_k > 0 ? spec.target_k : 1; k <= kmax; ++k) {
            std::vector<int> pivots;
            for_each_pivot_set(n, k, pivots, 0, [&](const std::vector<int>& pv) {
                BitMatrix m(k, n);
                enumerate_rrefs(n, pv, mask, m, 0, visited, [&](const BitMatrix& full) {
                    Code c(full);
                    if (detail::satisfies_spec(c, spec)) store.add(c, canonical_label(compact(c)));
                });
            });
        }
        report.brute_count = int64_t(store.size());
        report.detail = "matrices visited: " + std::to_string(visited);
    } else if (spec.mode == SearchMode::ExtendDimension) {
        if (spec.seeds.size() != 1) throw SpecInfeasible("extension oracle needs exactly one seed");
        const Code& seed = spec.seeds[0];
        int max_new = std::min(spec.new_coords_max, spec.target_n - seed.length());
        uint64_t total = 0;
        for (int a = 0; a <= max_new; ++a) total += uint64_t{1} << (seed.length() + a);
        if (total > oracle_budget) throw BudgetExceeded("raw extension space exceeds the oracle budget");
        for (int a = 0; a <= max_new; ++a) {
            int n = seed.length() + a;
            BitMatrix padded(seed.dimension(), n);
            for (int r = 0; r < seed.dimension(); ++r)
                for (int c = 0; c < seed.length(); ++c)
                    if (seed.generator().get(r, c)) padded.set(r, c, true);
            uint64_t space = uint64_t{1} << n;
            for (uint64_t bits = 0; bits < space; ++bits) {
                BitVec v(n);
                for (int i = 0; i < n; ++i)
                    if (bits >> i & 1) v.set(i, true);
                bool new_cols_hit = true;
                for (int i = seed.length(); i < n; ++i)
                    if (!v.get(i)) new_cols_hit = false;
                if (!new_cols_hit || in_row_space(padded, v)) continue;
                bool ok = true;
                for (CodewordRange r(padded); !r.done() && ok; r.next())
                    if (!mask.test((v ^ r.word()).popcount())) ok = false;
                if (!ok) continue;
                BitMatrix ext = padded;
                ext.append_row(v);
                Code c(ext);
                if (c.full_length()) store.add(c, canonical_label(c));
            }
        }
        report.brute_count = int64_t(store.size());
    } else {
        throw SpecInfeasible("completeness oracle covers Classify and ExtendDimension modes");
    }

    // compare label sets
    auto brute = store.sorted_entries();
    bool same = int64_t(brute.size()) == report.search_count;
    if (same)
        for (size_t i = 0; i < brute.size(); ++i)
            if (!(brute[i].second.canonical_gen == result.labels[i].canonical_gen)) same = false;
    report.agreed = same;
    if (report.detail.empty())
        report.detail = same ? "class lists identical" : "class lists differ";
    return report;
}

}  // namespace divcode
