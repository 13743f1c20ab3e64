#include <algorithm>
#include <chrono>
#include <map>
#include <set>

#include "divcode/errors.hpp"
#include "divcode/identities.hpp"
#include "divcode/search.hpp"

namespace divcode {

namespace {

BitVec reduce_mod(const BitMatrix& gen_rref, BitVec v) {
    for (int i = 0; i < gen_rref.nrows(); ++i) {
        int p = gen_rref.row(i).lowest_set();
        if (p >= 0 && v.get(p)) v ^= gen_rref.row(i);
    }
    return v;
}

// Affine system over GF(2) solved by elimination; used for the congruence
// structure of the coset weights.
struct LinearReduction {
    bool infeasible = false;
    BitVec particular;
    std::vector<BitVec> basis;
};

LinearReduction solve_affine(int n, std::vector<std::pair<BitVec, bool>> rows) {
    LinearReduction out;
    out.particular = BitVec(n);
    std::vector<std::pair<BitVec, bool>> ech;
    for (auto& [r, b] : rows) {
        BitVec acc = r;
        bool rhs = b;
        for (auto& [e, eb] : ech) {
            int p = e.lowest_set();
            if (acc.get(p)) {
                acc ^= e;
                rhs ^= eb;
            }
        }
        if (acc.is_zero()) {
            if (rhs) {
                out.infeasible = true;
                return out;
            }
            continue;
        }
        ech.emplace_back(acc, rhs);
        std::sort(ech.begin(), ech.end(), [](const auto& a, const auto& b2) {
            return a.first.lowest_set() < b2.first.lowest_set();
        });
    }
    std::vector<char> is_pivot(size_t(n), 0);
    for (auto& [e, eb] : ech) is_pivot[size_t(e.lowest_set())] = 1;
    for (auto it = ech.rbegin(); it != ech.rend(); ++it) {
        bool rhs = it->second;
        int p = it->first.lowest_set();
        for (int c = p + 1; c < n; ++c)
            if (it->first.get(c) && out.particular.get(c)) rhs = !rhs;
        out.particular.set(p, rhs);
    }
    for (int fc = 0; fc < n; ++fc) {
        if (is_pivot[size_t(fc)]) continue;
        BitVec v(n);
        v.set(fc, true);
        for (auto it = ech.rbegin(); it != ech.rend(); ++it) {
            int p = it->first.lowest_set();
            bool val = false;
            for (int c = p + 1; c < n; ++c)
                if (it->first.get(c) && v.get(c)) val = !val;
            v.set(p, val);
        }
        out.basis.push_back(v);
    }
    return out;
}

struct ExtendProblem {
    const SearchSpec* spec;
    const Code* seed;
    int acount;
    int n;  // padded length
    std::vector<char> wmask;
    std::vector<int> wset;
    BitMatrix padded_gen;
};

struct SolutionSink {
    const ExtendProblem* prob;
    std::set<BitVec> coset_reps;

    void offer(const BitVec& v) { coset_reps.insert(reduce_mod(prob->padded_gen, v)); }
};

bool coset_ok(const ExtendProblem& prob, const BitVec& v) {
    for (CodewordRange r(prob.padded_gen); !r.done(); r.next()) {
        int w = (v ^ r.word()).popcount();
        if (w > prob.n || !prob.wmask[size_t(w)]) return false;
    }
    return true;
}

// Congruence conditions on v. All allowed weights agreeing mod 4 forces
// <v,c> = wt(c)/2 for every codeword, a consistent linear system exactly for
// self-orthogonal seeds; agreement mod 8 over a triply-even seed adds the
// pairwise-intersection parity layer. Mixed residues mean no reduction.
std::optional<LinearReduction> congruence_reduction(const ExtendProblem& prob) {
    const Code& seed = *prob.seed;
    int r4 = -1, r8 = -1;
    bool uniform4 = true, uniform8 = true;
    for (int w : prob.wset) {
        if (r4 < 0) {
            r4 = w % 4;
            r8 = w % 8;
        }
        uniform4 &= (w % 4 == r4);
        uniform8 &= (w % 8 == r8);
    }
    if (!uniform4) return std::nullopt;

    LinearReduction dead;
    dead.infeasible = true;
    for (int w : seed.weight_enumerator().nonzero_weights())
        if (w & 1) return dead;
    for (int i = 0; i < seed.dimension(); ++i)
        for (int j = i + 1; j < seed.dimension(); ++j)
            if (seed.generator().row(i).and_weight(seed.generator().row(j)) & 1) return dead;

    auto pad = [&](const BitVec& base) {
        BitVec v(prob.n);
        for (int i = 0; i < base.size(); ++i)
            if (base.get(i)) v.set(i, true);
        return v;
    };
    std::vector<std::pair<BitVec, bool>> rows;
    for (int i = 0; i < seed.dimension(); ++i) {
        const BitVec& g = seed.generator().row(i);
        rows.emplace_back(pad(g), (g.popcount() / 2) & 1);
    }
    for (int c = seed.length(); c < prob.n; ++c) {
        BitVec e(prob.n);
        e.set(c, true);
        rows.emplace_back(e, true);
    }
    bool seed_8div = true;
    for (int w : seed.weight_enumerator().nonzero_weights())
        if (w % 8) seed_8div = false;
    if (uniform8 && seed_8div) {
        for (int i = 0; i < seed.dimension(); ++i)
            for (int j = i + 1; j < seed.dimension(); ++j) {
                BitVec pairand = seed.generator().row(i) & seed.generator().row(j);
                rows.emplace_back(pad(pairand), (pairand.popcount() / 2) & 1);
            }
    }
    return solve_affine(prob.n, std::move(rows));
}

void enumerate_affine(const ExtendProblem& prob, const LinearReduction& lr, SolutionSink& sink,
                      SearchStats& stats) {
    int q = int(lr.basis.size());
    BitVec v = lr.particular;
    uint64_t total = uint64_t{1} << q;
    for (uint64_t idx = 0;; ++idx) {
        if (idx) v ^= lr.basis[size_t(std::countr_zero(idx))];
        if (idx == total) break;
        ++stats.candidates_checked;
        int w = v.popcount();
        if (w > prob.n || !prob.wmask[size_t(w)]) continue;
        if (in_row_space(prob.padded_gen, v)) continue;
        if (coset_ok(prob, v)) sink.offer(v);
    }
}

// --- exact feasibility of coset weight distributions ----------------------

using Dist = std::map<int, int64_t>;

// Solves the four power-moment equalities for candidate distributions B over
// the allowed weights, with the extended code's a2*, a3* ranging over bounds
// read off the seed's column multiset, and keeps only distributions whose
// full MacWilliams transform is a nonnegative integer vector.
std::vector<Dist> feasible_coset_distributions(const ExtendProblem& prob) {
    const Code& seed = *prob.seed;
    const int n = prob.n;
    const int k = seed.dimension();
    const std::vector<int>& ws = prob.wset;
    if (ws.empty()) return {};

    int64_t pairs_equal = 0, triples_zero = 0;
    {
        std::vector<BitVec> cols;
        for (int c = 0; c < seed.length(); ++c) cols.push_back(seed.generator().column(c));
        std::map<BitVec, int64_t> mult;
        for (auto& c : cols) ++mult[c];
        for (auto& [p, m] : mult) pairs_equal += m * (m - 1) / 2;
        for (size_t i = 0; i < cols.size(); ++i)
            for (size_t j = i + 1; j < cols.size(); ++j) {
                BitVec s = cols[i] ^ cols[j];
                for (size_t l = j + 1; l < cols.size(); ++l)
                    if (cols[l] == s) ++triples_zero;
            }
    }
    const int64_t bound_a2 = pairs_equal;
    const int64_t bound_a3 = triples_zero + pairs_equal;

    int64_t s1 = 0, s2 = 0, s3 = 0;
    const auto& dist = seed.weight_distribution();
    for (int i = 0; i < int(dist.size()); ++i) {
        s1 += int64_t(i) * dist[size_t(i)];
        s2 += int64_t(i) * i * dist[size_t(i)];
        s3 += int64_t(i) * i * i * dist[size_t(i)];
    }
    const int64_t pk = int64_t{1} << k;

    std::vector<Dist> found;
    const int m = int(ws.size());
    const int npiv = std::min(4, m);
    // pivots = the npiv largest weights; free = the rest, enumerated
    std::vector<int> freew(ws.begin(), ws.end() - npiv);
    std::vector<int> pivw(ws.end() - npiv, ws.end());

    // target moment sums for B as functions of (a2', a3')
    auto targets = [&](int64_t a2p, int64_t a3p) {
        std::array<__int128, 4> t;
        t[0] = pk;                                          // sum B
        t[1] = pk * n - s1;                                 // sum w B
        t[2] = pk * (a2p + int64_t(n) * (n + 1) / 2) - s2;  // sum w^2 B
        t[3] = (__int128(pk) * (6 * (a2p * n - a3p) + int64_t(n) * n * (n + 3)) / 4) - s3;
        return t;
    };

    // Cramer solve of the npiv x npiv Vandermonde-like system
    auto solve_pivots = [&](std::array<__int128, 4> rhs, std::vector<int64_t>& out) -> bool {
        const int p = npiv;
        __int128 mat[4][4];
        for (int r = 0; r < p; ++r)
            for (int c = 0; c < p; ++c) {
                __int128 v = 1;
                for (int e = 0; e < r; ++e) v *= pivw[size_t(c)];
                mat[r][c] = v;
            }
        // Gaussian elimination with exact rationals via scaled integers
        __int128 denom = 1;
        std::array<__int128, 4> b{};
        for (int r = 0; r < p; ++r) b[size_t(r)] = rhs[size_t(r)];
        for (int col = 0; col < p; ++col) {
            int piv = -1;
            for (int r = col; r < p; ++r)
                if (mat[r][col] != 0) {
                    piv = r;
                    break;
                }
            if (piv < 0) return false;
            if (piv != col) {
                for (int c = 0; c < p; ++c) std::swap(mat[piv][c], mat[col][c]);
                std::swap(b[size_t(piv)], b[size_t(col)]);
            }
            for (int r = 0; r < p; ++r) {
                if (r == col || mat[r][col] == 0) continue;
                __int128 f = mat[r][col], g = mat[col][col];
                for (int c = 0; c < p; ++c) mat[r][c] = mat[r][c] * g - mat[col][c] * f;
                b[size_t(r)] = b[size_t(r)] * g - b[size_t(col)] * f;
            }
        }
        denom = 1;
        out.assign(size_t(p), 0);
        for (int r = 0; r < p; ++r) {
            __int128 d = mat[r][r];
            if (d == 0) return false;
            if (b[size_t(r)] % d != 0) return false;
            __int128 val = b[size_t(r)] / d;
            if (val < 0 || val > pk) return false;
            out[size_t(r)] = int64_t(val);
        }
        (void)denom;
        return true;
    };

    uint64_t iterations = 0;
    Dist cur;
    std::function<void(size_t, int64_t, int64_t, int64_t, int64_t, int64_t, int64_t)> rec =
        [&](size_t idx, int64_t remB, int64_t remWB, int64_t sumW2, int64_t sumW3, int64_t a2p,
            int64_t a3p) {
            if (++iterations > 200'000'000ull)
                throw BudgetExceeded("coset distribution enumeration");
            if (idx == freew.size()) {
                auto t = targets(a2p, a3p);
                std::array<__int128, 4> rhs{__int128(remB), __int128(remWB),
                                            t[2] - __int128(sumW2), t[3] - __int128(sumW3)};
                std::vector<int64_t> pivots;
                if (!solve_pivots(rhs, pivots)) return;
                Dist full = cur;
                for (int i = 0; i < npiv; ++i)
                    if (pivots[size_t(i)]) full[pivw[size_t(i)]] = pivots[size_t(i)];
                // moment identities hold by construction for npiv = 4; for
                // smaller systems verify the remaining targets explicitly
                int64_t cB = 0, cWB = 0, cW2 = 0, cW3 = 0;
                for (auto& [w, c] : full) {
                    cB += c;
                    cWB += int64_t(w) * c;
                    cW2 += int64_t(w) * w * c;
                    cW3 += int64_t(w) * w * w * c;
                }
                if (cB != pk || __int128(cWB) != t[1] || __int128(cW2) != t[2] ||
                    __int128(cW3) != t[3])
                    return;
                WeightEnumerator we(n);
                for (int i = 0; i < int(dist.size()); ++i) we.set_coeff(i, BigInt(dist[size_t(i)]));
                for (auto& [w, c] : full) we.set_coeff(w, we.coeff(w) + BigInt(c));
                try {
                    macwilliams_dual(we, k + 1);
                } catch (const NotAnEnumerator&) {
                    return;
                }
                found.push_back(full);
                return;
            }
            int w = freew[size_t(idx)];
            for (int64_t c = 0; c <= remB && c * w <= remWB; ++c) {
                if (c) cur[w] = c;
                rec(idx + 1, remB - c, remWB - int64_t(c) * w, sumW2 + c * w * w,
                    sumW3 + c * int64_t(w) * w * w, a2p, a3p);
                if (c) cur.erase(w);
            }
        };

    for (int64_t a2p = 0; a2p <= bound_a2; ++a2p)
        for (int64_t a3p = 0; a3p <= bound_a3; ++a3p) {
            auto t = targets(a2p, a3p);
            if (t[1] < 0) continue;
            rec(0, pk, int64_t(t[1]), 0, 0, a2p, a3p);
        }

    // dedup (different (a2',a3') guesses can produce the same distribution)
    std::sort(found.begin(), found.end());
    found.erase(std::unique(found.begin(), found.end()), found.end());
    return found;
}

// --- anchored support search ----------------------------------------------

// All v with wt(v) = anchor whose coset stays inside the allowed weights and
// never below the anchor. DFS over support columns with per-codeword overlap
// windows and suffix-count lower bounds.
class AnchoredSearch {
public:
    AnchoredSearch(const ExtendProblem& prob, int anchor, SolutionSink& sink, SearchStats& stats)
        : prob_(prob), anchor_(anchor), sink_(sink), stats_(stats), n_(prob.n) {
        for (CodewordRange r(prob.padded_gen); !r.done(); r.next())
            if (!r.word().is_zero()) words_.push_back(r.word());
        max_ov_.resize(words_.size());
        min_ov_.resize(words_.size());
        ov_.assign(words_.size(), 0);
        std::map<int, std::pair<int, int>> window;
        for (size_t i = 0; i < words_.size(); ++i) {
            int wc = words_[i].popcount();
            auto it = window.find(wc);
            if (it == window.end()) {
                int lo = n_ + 1, hi = -1;
                for (int ov = 0; ov <= std::min(anchor_, wc); ++ov) {
                    int w = anchor_ + wc - 2 * ov;
                    if (w < anchor_ || w > n_ || !prob_.wmask[size_t(w)]) continue;
                    lo = std::min(lo, ov);
                    hi = std::max(hi, ov);
                }
                it = window.emplace(wc, std::make_pair(lo, hi)).first;
            }
            min_ov_[i] = it->second.first;
            max_ov_[i] = it->second.second;
            if (max_ov_[i] < 0) infeasible_ = true;
        }
        suf_.assign(words_.size(), std::vector<uint16_t>(size_t(n_) + 1, 0));
        for (size_t i = 0; i < words_.size(); ++i)
            for (int c = n_ - 1; c >= 0; --c)
                suf_[i][size_t(c)] = uint16_t(suf_[i][size_t(c) + 1] + (words_[i].get(c) ? 1 : 0));
        hits_.assign(size_t(n_), {});
        for (size_t i = 0; i < words_.size(); ++i)
            for (int c = 0; c < n_; ++c)
                if (words_[i].get(c)) hits_[size_t(c)].push_back(int(i));
        size_t max_hits = 0;
        for (auto& h : hits_) max_hits = std::max(max_hits, h.size());
        max_hits_ = int64_t(max_hits);
    }

    void run(const std::vector<char>& first_column_gate) {
        if (infeasible_) return;
        BitVec v(n_);
        int forced = 0;
        for (int c = prob_.seed->length(); c < n_; ++c) {
            v.set(c, true);
            for (int i : hits_[size_t(c)]) ++ov_[size_t(i)];
            ++forced;
        }
        if (forced > anchor_) return;
        gate_ = &first_column_gate;
        dfs(v, 0, anchor_ - forced, true);
    }

private:
    void dfs(BitVec& v, int from, int remaining, bool first_level) {
        ++stats_.nodes;
        if (remaining == 0) {
            ++stats_.candidates_checked;
            if (coset_ok(prob_, v)) sink_.offer(v);
            return;
        }
        int base = prob_.seed->length();
        for (int c = from; c <= base - remaining; ++c) {
            if (first_level && !(*gate_)[size_t(c)]) continue;
            bool dead = false;
            for (int i : hits_[size_t(c)])
                if (++ov_[size_t(i)] > max_ov_[size_t(i)]) dead = true;
            if (!dead) {
                v.set(c, true);
                if (lower_bounds_ok(c + 1, remaining - 1)) dfs(v, c + 1, remaining - 1, false);
                v.set(c, false);
            }
            for (int i : hits_[size_t(c)]) --ov_[size_t(i)];
        }
    }

    bool lower_bounds_ok(int cursor, int remaining) {
        int64_t deficit = 0;
        for (size_t i = 0; i < words_.size(); ++i) {
            int need = min_ov_[size_t(i)] - ov_[size_t(i)];
            if (need <= 0) continue;
            if (need > remaining || need > int(suf_[i][size_t(cursor)])) return false;
            deficit += need;
        }
        return deficit <= int64_t(remaining) * max_hits_;
    }

    const ExtendProblem& prob_;
    int anchor_;
    SolutionSink& sink_;
    SearchStats& stats_;
    int n_;
    bool infeasible_ = false;
    std::vector<BitVec> words_;
    std::vector<int> max_ov_, min_ov_, ov_;
    std::vector<std::vector<uint16_t>> suf_;
    std::vector<std::vector<int>> hits_;
    int64_t max_hits_ = 0;
    const std::vector<char>* gate_ = nullptr;
};

}  // namespace

SearchResult extend_dimension(const SearchSpec& spec) {
    auto t0 = std::chrono::steady_clock::now();
    if (spec.mode != SearchMode::ExtendDimension) throw SpecInfeasible("wrong mode");
    if (spec.seeds.size() != 1) throw SpecInfeasible("extension expects exactly one seed");
    const Code& seed = spec.seeds[0];
    if (!seed.full_length()) throw SpecInfeasible("seed must have full length");
    if (spec.target_n < seed.length()) throw SpecInfeasible("target length below the seed length");
    if (spec.target_k && spec.target_k != seed.dimension() + 1)
        throw SpecInfeasible("extension raises the dimension by exactly one");

    SearchResult result;
    detail::LabelStore store(spec, spec.checkpoint_path);
    int max_new = std::min(spec.new_coords_max, spec.target_n - seed.length());

    for (int acount = 0; acount <= max_new && !store.seen_complete(); ++acount) {
        ExtendProblem prob;
        prob.spec = &spec;
        prob.seed = &seed;
        prob.acount = acount;
        prob.n = seed.length() + acount;
        prob.wset = spec.weight_set(prob.n);
        if (prob.wset.empty()) continue;
        prob.wmask.assign(size_t(prob.n) + 1, 0);
        for (int w : prob.wset) prob.wmask[size_t(w)] = 1;
        prob.padded_gen = BitMatrix(seed.dimension(), prob.n);
        for (int r = 0; r < seed.dimension(); ++r)
            for (int c = 0; c < seed.length(); ++c)
                if (seed.generator().get(r, c)) prob.padded_gen.set(r, c, true);

        SolutionSink sink{&prob, {}};
        auto reduction = congruence_reduction(prob);
        if (reduction && reduction->infeasible) continue;
        if (reduction && int(reduction->basis.size()) <= 28) {
            enumerate_affine(prob, *reduction, sink, result.stats);
        } else {
            auto distributions = feasible_coset_distributions(prob);
            std::set<int> anchors;
            for (auto& B : distributions)
                for (auto& [w, cnt] : B)
                    if (cnt > 0) {
                        anchors.insert(w);
                        break;
                    }
            if (!anchors.empty()) {
                // first-placed-column symmetry gate: orbit minima of Aut(seed)
                std::vector<char> allowed(size_t(prob.n), 1);
                CanonicalLabel lbl = canonical_label(seed);
                std::vector<char> seen(size_t(seed.length()), 0);
                for (int c = 0; c < seed.length(); ++c) {
                    if (seen[size_t(c)]) continue;
                    std::vector<int> queue{c};
                    seen[size_t(c)] = 1;
                    while (!queue.empty()) {
                        int cur = queue.back();
                        queue.pop_back();
                        for (const auto& g : lbl.aut_generators) {
                            int img = g[size_t(cur)];
                            if (!seen[size_t(img)]) {
                                seen[size_t(img)] = 1;
                                allowed[size_t(img)] = 0;
                                queue.push_back(img);
                            }
                        }
                    }
                }
                for (int anchor : anchors) {
                    AnchoredSearch search(prob, anchor, sink, result.stats);
                    search.run(allowed);
                }
            }
        }

        for (const BitVec& rep : sink.coset_reps) {
            BitMatrix ext = prob.padded_gen;
            ext.append_row(rep);
            Code cfull(ext);
            if (cfull.dimension() != seed.dimension() + 1) continue;
            Code final_code = compact(cfull);
            if (final_code.length() != prob.n) continue;  // zero column: smaller acount case
            CanonicalLabel lbl = canonical_label(final_code);
            if (!store.add(final_code, lbl)) ++result.stats.isomorph_rejections;
        }
    }

    store.mark_complete();
    for (auto& [code, lbl] : store.sorted_entries()) {
        result.codes.push_back(code);
        result.labels.push_back(lbl);
    }
    result.stats.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return result;
}

}  // namespace divcode
