#include <algorithm>
#include <array>
#include <atomic>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <map>

#include "divcode/errors.hpp"
#include "divcode/search.hpp"

namespace divcode {

namespace {

// Inverts residual(C, c) for a fixed seed R and codeword weight w: the code
// is [[1...1 | 0...0], [A | G_R]] and the search grows the multiset of
// columns of A, viewed as points of GF(2)^(k-1).
//
// For a combination x of the lift rows, f(x) = wt(x A) must land in
// T(x) = { f : f + u(x) and w - f + u(x) are allowed weights }, where
// u(x) = wt(x G_R).
//
// The growth is breadth-first with isomorph rejection at every level: a
// partial object is the code spanned by the placed columns together with the
// seed block, labeled canonically with the left block marked by a column
// color. Lift-row operations (which translate every column type at once)
// leave that code unchanged, and Aut(R) moves partials to equivalent
// partials, so the canonical label collapses both symmetries. Candidate
// columns are screened through per-x windows and reduced to orbit
// representatives under the automorphisms of the partial before labeling.
class LengthenSearch {
public:
    LengthenSearch(const SearchSpec& spec, const Code& seed, detail::LabelStore& store,
                   SearchStats& stats, std::mutex& mu)
        : spec_(spec), seed_(seed), store_(store), stats_(stats), stats_mu_(mu) {
        w_ = spec.seed_word_weight;
        n_ = spec.target_n;
        k_ = spec.target_k;
        kR_ = k_ - 1;
        nR_ = n_ - w_;
        if (seed.dimension() != kR_ || seed.length() != nR_)
            throw SpecInfeasible("seed parameters do not match the target");
        if (kR_ > 12) throw BudgetExceeded("lift type space 2^" + std::to_string(kR_));
        if (w_ > 120) throw BudgetExceeded("distinguished weight too large");
        tw_ = 1 << kR_;

        auto wset = spec.weight_set(n_);
        std::vector<char> wmask(size_t(n_) + 1, 0);
        for (int x : wset) wmask[size_t(x)] = 1;
        if (!wmask[size_t(w_)]) throw SpecInfeasible("distinguished weight is not an allowed weight");

        // u(x) via Gray enumeration of the seed
        u_.assign(size_t(tw_), 0);
        {
            uint64_t idx = 0;
            for (CodewordRange r(seed.generator()); !r.done(); r.next(), ++idx)
                u_[size_t(idx ^ (idx >> 1))] = uint8_t(r.word().popcount());
        }
        // admissible f values per x
        tbits_.assign(size_t(tw_), {0, 0});
        maxT_.assign(size_t(tw_), -1);
        minT_.assign(size_t(tw_), 0);
        for (int x = 1; x < tw_; ++x) {
            for (int f = 0; f <= w_; ++f) {
                int wa = f + u_[size_t(x)];
                int wb = w_ - f + u_[size_t(x)];
                if (wa <= n_ && wb <= n_ && wmask[size_t(wa)] && wmask[size_t(wb)]) {
                    tbits_[size_t(x)][size_t(f >> 6)] |= uint64_t{1} << (f & 63);
                    if (maxT_[size_t(x)] < 0) minT_[size_t(x)] = int16_t(f);
                    maxT_[size_t(x)] = f;
                }
            }
            if (maxT_[size_t(x)] < 0) infeasible_seed_ = true;
        }
        debug_ = std::getenv("DIVCODE_DEBUG_LENGTHEN") != nullptr;
    }

    void run() {
        if (infeasible_seed_) return;
        if (kR_ == 0) {
            emit(std::vector<uint16_t>(size_t(w_), 0));
            return;
        }

        struct Entry {
            std::vector<uint16_t> types;
            CanonicalLabel label;
        };
        std::map<std::string, Entry> frontier;
        {
            // every single-column partial is a lift-row translate of type 0
            std::vector<uint16_t> first{0};
            Code pc = partial_code(first);
            CanonicalLabel lbl = canonical_label(pc, partial_colors(1));
            frontier.emplace(lbl.canonical_gen.to_text(), Entry{first, std::move(lbl)});
        }

        for (int depth = 1; depth < w_ && !frontier.empty(); ++depth) {
            std::map<std::string, Entry> next;
            std::mutex next_mu;
            std::vector<const Entry*> reps;
            reps.reserve(frontier.size());
            for (auto& [key, e] : frontier) reps.push_back(&e);
            auto t0 = std::chrono::steady_clock::now();
            std::atomic<uint64_t> cand_count{0};
            detail::parallel_for(int(reps.size()), spec_.jobs, [&](int idx) {
                const Entry& entry = *reps[size_t(idx)];
                std::vector<int> f(static_cast<size_t>(tw_), 0);
                for (uint16_t t : entry.types)
                    for (int x = 1; x < tw_; ++x)
                        if (std::popcount(unsigned(x & t)) & 1) ++f[size_t(x)];
                int r_after = w_ - depth - 1;  // columns left after the new one
                std::vector<int> orbit_reps = candidate_orbit_reps(entry);
                if (debug_)
                    fprintf(stderr, "[lengthen]   entry d=%d gens=%zu orbit_reps=%zu\n",
                            depth, entry.label.aut_generators.size(), orbit_reps.size());
                for (int t : orbit_reps) {
                    if (!viable(f, t, r_after)) continue;
                    ++cand_count;
                    std::vector<uint16_t> child = entry.types;
                    child.push_back(uint16_t(t));
                    if (depth + 1 == w_) {
                        emit(child);
                        continue;
                    }
                    Code pc = partial_code(child);
                    CanonicalLabel lbl = canonical_label(pc, partial_colors(depth + 1));
                    std::string key = lbl.canonical_gen.to_text();
                    std::lock_guard<std::mutex> lock(next_mu);
                    auto [it, fresh] = next.emplace(key, Entry{std::move(child), std::move(lbl)});
                    if (!fresh) {
                        std::lock_guard<std::mutex> slock(stats_mu_);
                        ++stats_.isomorph_rejections;
                    }
                }
            });
            {
                std::lock_guard<std::mutex> lock(stats_mu_);
                stats_.nodes += frontier.size();
            }
            if (debug_) {
                double dt =
                    std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
                fprintf(stderr, "[lengthen] depth=%d width=%zu -> %zu (cands=%llu, %.2fs)\n",
                        depth, frontier.size(), next.size(),
                        (unsigned long long)cand_count.load(), dt);
            }
            if (depth + 1 == w_) break;
            frontier = std::move(next);
        }
    }

private:
    // colors: left block marked, seed block plain
    std::vector<int> partial_colors(int d) const {
        std::vector<int> colors(size_t(d + nR_), 0);
        for (int i = 0; i < d; ++i) colors[size_t(i)] = 1;
        return colors;
    }

    Code partial_code(const std::vector<uint16_t>& types) const {
        int d = int(types.size());
        BitMatrix gen(k_, d + nR_);
        for (int j = 0; j < d; ++j) gen.set(0, j, true);
        for (int j = 0; j < d; ++j)
            for (int i = 0; i < kR_; ++i)
                if (types[size_t(j)] >> i & 1) gen.set(1 + i, j, true);
        for (int i = 0; i < kR_; ++i)
            for (int c = 0; c < nR_; ++c)
                if (seed_.generator().get(i, c)) gen.set(1 + i, d + c, true);
        return Code(gen);
    }

    // Orbit representatives of the type space under the partial's
    // automorphisms: each fixes the color blocks, so its seed component acts
    // linearly on types; viability is invariant under that action.
    template <typename EntryT>
    std::vector<int> candidate_orbit_reps(const EntryT& entry) const {
        std::vector<std::vector<int>> actions;
        int d = int(entry.types.size());
        for (const Perm& pi : entry.label.aut_generators) {
            BitMatrix M(kR_, kR_);
            std::vector<int> pivots(static_cast<size_t>(kR_));
            for (int i = 0; i < kR_; ++i) pivots[size_t(i)] = seed_.generator().row(i).lowest_set();
            for (int i = 0; i < kR_; ++i) {
                BitVec moved(nR_);
                for (int c = 0; c < nR_; ++c)
                    if (seed_.generator().row(i).get(c)) moved.set(pi[size_t(d + c)] - d, true);
                for (int l = 0; l < kR_; ++l)
                    if (moved.get(pivots[size_t(l)])) M.set(i, l, true);
            }
            BitMatrix Minv = invert(M);
            std::vector<int> act(static_cast<size_t>(tw_));
            for (int v = 0; v < tw_; ++v) {
                int image = 0;
                for (int i = 0; i < kR_; ++i) {
                    int bit = 0;
                    for (int l = 0; l < kR_; ++l)
                        if (Minv.get(i, l) && (v >> l & 1)) bit ^= 1;
                    image |= bit << i;
                }
                act[size_t(v)] = image;
            }
            actions.push_back(std::move(act));
        }
        std::vector<int> reps;
        std::vector<char> seen(static_cast<size_t>(tw_), 0);
        for (int v = 0; v < tw_; ++v) {
            if (seen[size_t(v)]) continue;
            reps.push_back(v);
            std::vector<int> queue{v};
            seen[size_t(v)] = 1;
            while (!queue.empty()) {
                int cur = queue.back();
                queue.pop_back();
                for (const auto& act : actions) {
                    int img = act[size_t(cur)];
                    if (!seen[size_t(img)]) {
                        seen[size_t(img)] = 1;
                        queue.push_back(img);
                    }
                }
            }
        }
        return reps;
    }

    static BitMatrix invert(const BitMatrix& M) {
        int k = M.nrows();
        BitMatrix aug(k, 2 * k);
        for (int i = 0; i < k; ++i) {
            for (int j = 0; j < k; ++j)
                if (M.get(i, j)) aug.set(i, j, true);
            aug.set(i, k + i, true);
        }
        auto [red, rank] = rref(aug);
        if (rank != k) throw Error("aut action matrix is singular");
        BitMatrix inv(k, k);
        for (int i = 0; i < k; ++i)
            for (int j = 0; j < k; ++j)
                if (red.get(i, k + j)) inv.set(i, j, true);
        return inv;
    }

    // windows after placing one more column of type t with r more to come
    bool viable(std::vector<int>& f, int t, int r) const {
        for (int x = 1; x < tw_; ++x)
            if (std::popcount(unsigned(x & t)) & 1) ++f[size_t(x)];
        bool ok = true;
        int64_t sum_low = 0, sum_high = 0, sumf = 0;
        for (int x = 1; x < tw_ && ok; ++x) {
            int fx = f[size_t(x)];
            if (fx > maxT_[size_t(x)]) {
                ok = false;
                break;
            }
            int tlow = fx <= minT_[size_t(x)] ? minT_[size_t(x)]
                                              : next_allowed(tbits_[size_t(x)], fx);
            if (tlow - fx > r) {
                ok = false;
                break;
            }
            sum_low += tlow;
            sum_high += highest_allowed(tbits_[size_t(x)], std::min(fx + r, w_));
            sumf += fx;
        }
        if (ok) {
            // sum_x f_final = (tw/2) * (final count of nonzero columns)
            int nz_now = int(sumf / (tw_ / 2));
            if (sum_low > int64_t(tw_ / 2) * (nz_now + r) || sum_high < int64_t(tw_ / 2) * nz_now)
                ok = false;
        }
        for (int x = 1; x < tw_; ++x)
            if (std::popcount(unsigned(x & t)) & 1) --f[size_t(x)];
        return ok;
    }

    int next_allowed(const std::array<uint64_t, 2>& tb, int from) const {
        if (from > w_) return w_ + 64;
        int wd = from >> 6;
        uint64_t m = tb[size_t(wd)] >> (from & 63);
        if (m) return from + std::countr_zero(m);
        for (++wd; wd < 2; ++wd)
            if (tb[size_t(wd)]) return (wd << 6) + std::countr_zero(tb[size_t(wd)]);
        return w_ + 64;
    }

    int highest_allowed(const std::array<uint64_t, 2>& tb, int cap) const {
        int wd = cap >> 6;
        uint64_t keep = (cap & 63) == 63 ? ~uint64_t{0} : ((uint64_t{1} << ((cap & 63) + 1)) - 1);
        uint64_t m = tb[size_t(wd)] & keep;
        if (m) return (wd << 6) + 63 - std::countl_zero(m);
        for (--wd; wd >= 0; --wd)
            if (tb[size_t(wd)]) return (wd << 6) + 63 - std::countl_zero(tb[size_t(wd)]);
        return 0;
    }

    // full-width candidate: exact admissibility, then the finished code
    void emit(const std::vector<uint16_t>& types) {
        std::vector<int> f(static_cast<size_t>(tw_), 0);
        for (uint16_t t : types)
            for (int x = 1; x < tw_; ++x)
                if (std::popcount(unsigned(x & t)) & 1) ++f[size_t(x)];
        for (int x = 1; x < tw_; ++x) {
            int fx = f[size_t(x)];
            if (!(tbits_[size_t(x)][size_t(fx >> 6)] >> (fx & 63) & 1)) return;
        }
        Code code = partial_code(types);
        if (!detail::satisfies_spec(code, spec_)) return;
        CanonicalLabel lbl = canonical_label(code);
        {
            std::lock_guard<std::mutex> lock(stats_mu_);
            ++stats_.candidates_checked;
        }
        if (!store_.add(code, lbl)) {
            std::lock_guard<std::mutex> lock(stats_mu_);
            ++stats_.isomorph_rejections;
        }
    }

    const SearchSpec& spec_;
    const Code& seed_;
    detail::LabelStore& store_;
    SearchStats& stats_;
    std::mutex& stats_mu_;

    int w_ = 0, n_ = 0, k_ = 0, kR_ = 0, nR_ = 0, tw_ = 0;
    bool infeasible_seed_ = false;
    bool debug_ = false;
    std::vector<uint8_t> u_;
    std::vector<std::array<uint64_t, 2>> tbits_;
    std::vector<int> maxT_;
    std::vector<int16_t> minT_;
};

}  // namespace

SearchResult lengthen_from_residual(const SearchSpec& spec) {
    auto t0 = std::chrono::steady_clock::now();
    if (spec.mode != SearchMode::ExtendLength) throw SpecInfeasible("wrong mode");
    if (spec.seeds.empty()) throw SpecInfeasible("no seeds");
    if (spec.seed_word_weight <= 0 || spec.seed_word_weight > spec.target_n)
        throw SpecInfeasible("distinguished weight out of range");

    SearchResult result;
    std::mutex stats_mu;
    detail::LabelStore store(spec, spec.checkpoint_path);
    if (!store.seen_complete()) {
        // seeds run sequentially; each level parallelizes internally
        for (const Code& seed : spec.seeds) {
            LengthenSearch search(spec, seed, store, result.stats, stats_mu);
            search.run();
        }
        store.mark_complete();
    }
    for (auto& [code, lbl] : store.sorted_entries()) {
        result.codes.push_back(code);
        result.labels.push_back(lbl);
    }
    result.stats.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return result;
}

}  // namespace divcode
