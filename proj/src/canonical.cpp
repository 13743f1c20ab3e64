#include "divcode/canonical.hpp"

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <deque>
#include <memory>

#include "divcode/errors.hpp"

namespace divcode {

namespace {

constexpr uint64_t kFnvOffset = 0xcbf29ce484222325ull;
constexpr uint64_t kFnvPrime = 0x100000001b3ull;

inline uint64_t fnv(uint64_t h, uint64_t v) {
    h ^= v;
    h *= kFnvPrime;
    return h;
}

// Codewords of the lowest weight classes, taken in increasing weight until
// they span the code. Any column permutation preserving this set preserves
// its span, i.e. the code, so the incidence structure below carries the full
// automorphism group.
std::vector<BitVec> spanning_word_classes(const Code& c, std::vector<std::pair<int, int>>& classes) {
    std::vector<std::vector<BitVec>> by_weight(size_t(c.length()) + 1);
    for (CodewordRange r(c.generator()); !r.done(); r.next()) {
        if (!r.word().is_zero()) by_weight[size_t(r.word().popcount())].push_back(r.word());
    }
    std::vector<BitVec> selected;
    std::vector<BitVec> basis;  // elimination basis for the running rank
    int rank = 0;
    for (int w = 1; w <= c.length() && rank < c.dimension(); ++w) {
        if (by_weight[size_t(w)].empty()) continue;
        std::sort(by_weight[size_t(w)].begin(), by_weight[size_t(w)].end());
        classes.emplace_back(w, int(by_weight[size_t(w)].size()));
        for (const auto& word : by_weight[size_t(w)]) {
            selected.push_back(word);
            BitVec acc = word;
            for (const auto& b : basis) {
                int p = b.lowest_set();
                if (acc.get(p)) acc ^= b;
            }
            if (!acc.is_zero()) {
                basis.push_back(acc);
                ++rank;
            }
        }
    }
    return selected;
}

struct Leaf {
    std::vector<uint64_t> trace;
    BitMatrix cert;
    std::vector<int> perm;
};

// Individualization-refinement search over column orderings of the bipartite
// column/codeword incidence structure. Keeps the first leaf as an anchor for
// automorphism discovery and the minimal (trace, certificate) leaf as the
// canonical representative; prunes with discovered automorphisms.
class Labeler {
public:
    Labeler(const Code& code, const std::vector<int>& column_colors)
        : code_(code), n_(code.length()), k_(code.dimension()) {
        if (k_ > 20) throw Error("canonical labeling refuses dimensions above 20");
        if (!code.full_length()) throw NotFullLength("canonical labeling requires full length");
        words_ = spanning_word_classes(code, classes_);
        m_ = int(words_.size());
        mw_ = (m_ + 63) / 64;
        colinc_.assign(size_t(n_), std::vector<uint64_t>(size_t(mw_), 0));
        for (int wi = 0; wi < m_; ++wi)
            for (int c = 0; c < n_; ++c)
                if (words_[size_t(wi)].get(c)) colinc_[size_t(c)][size_t(wi >> 6)] |= uint64_t{1} << (wi & 63);
        colors_ = column_colors;
    }

    CanonicalLabel run() {
        State st;
        init_state(st);
        uint64_t h = kFnvOffset;
        for (auto [w, sz] : classes_) h = fnv(fnv(h, uint64_t(w)), uint64_t(sz));
        refine(st, h);
        dfs(st, 0, h, /*cmp_rho=*/0, /*eq_zeta=*/true);

        CanonicalLabel out;
        out.canonical_gen = rho_.cert;
        out.certificate = rho_.perm;
        out.aut_generators = autos_;
        PermGroup group(n_);
        for (const auto& g : autos_) group.add_generator(g);
        out.aut_order = group.order();
        return out;
    }

private:
    struct State {
        std::vector<int> lab;     // vertices in partition order
        std::vector<int> pos;     // pos[v] = index in lab
        std::vector<char> start;  // start[p] = 1 iff a cell begins at p
    };

    void init_state(State& st) {
        int V = n_ + m_;
        st.lab.resize(size_t(V));
        st.pos.resize(size_t(V));
        st.start.assign(size_t(V), 0);
        // columns sorted by (color, id); one cell per color value
        std::vector<int> cols(static_cast<size_t>(n_));
        for (int i = 0; i < n_; ++i) cols[size_t(i)] = i;
        std::stable_sort(cols.begin(), cols.end(),
                         [&](int a, int b) { return colors_[size_t(a)] < colors_[size_t(b)]; });
        for (int p = 0; p < n_; ++p) {
            st.lab[size_t(p)] = cols[size_t(p)];
            st.start[size_t(p)] =
                p == 0 || colors_[size_t(cols[size_t(p)])] != colors_[size_t(cols[size_t(p - 1)])];
        }
        // word vertices, one cell per weight class (already weight-ordered)
        int p = n_;
        for (auto [w, sz] : classes_) {
            st.start[size_t(p)] = 1;
            p += sz;
        }
        for (int i = 0; i < m_; ++i) st.lab[size_t(n_ + i)] = n_ + i;
        for (int i = 0; i < V; ++i) st.pos[size_t(st.lab[size_t(i)])] = i;
    }

    int cell_end(const State& st, int s) const {
        int V = n_ + m_;
        int e = s + 1;
        while (e < V && !st.start[size_t(e)]) ++e;
        return e;
    }

    // Equitable refinement; folds split events into the trace hash.
    void refine(State& st, uint64_t& h) {
        std::deque<int> queue;
        int V = n_ + m_;
        std::vector<char> queued(size_t(V), 0);
        for (int p = 0; p < V; ++p)
            if (st.start[size_t(p)]) {
                queue.push_back(p);
                queued[size_t(p)] = 1;
            }
        std::vector<int> counts(static_cast<size_t>(V));
        while (!queue.empty()) {
            int s = queue.front();
            queue.pop_front();
            queued[size_t(s)] = 0;
            int e = cell_end(st, s);
            bool splitter_is_columns = st.lab[size_t(s)] < n_;

            if (splitter_is_columns) {
                BitVec mask(n_);
                for (int p = s; p < e; ++p) mask.set(st.lab[size_t(p)], true);
                // only word cells can split against a column splitter
                for (int ts = n_ > 0 ? first_start_at_or_after(st, n_) : V; ts < V;) {
                    int te = cell_end(st, ts);
                    if (te - ts > 1) {
                        for (int p = ts; p < te; ++p)
                            counts[size_t(p)] = words_[size_t(st.lab[size_t(p)] - n_)].and_weight(mask);
                        split_cell(st, ts, te, counts, h, queue, queued);
                    }
                    ts = te;
                }
            } else {
                std::vector<uint64_t> wmask(size_t(mw_), 0);
                for (int p = s; p < e; ++p) {
                    int wi = st.lab[size_t(p)] - n_;
                    wmask[size_t(wi >> 6)] |= uint64_t{1} << (wi & 63);
                }
                for (int ts = 0; ts < n_;) {
                    int te = cell_end(st, ts);
                    if (te - ts > 1) {
                        for (int p = ts; p < te; ++p) {
                            const auto& inc = colinc_[size_t(st.lab[size_t(p)])];
                            int cnt = 0;
                            for (int w = 0; w < mw_; ++w) cnt += std::popcount(inc[size_t(w)] & wmask[size_t(w)]);
                            counts[size_t(p)] = cnt;
                        }
                        split_cell(st, ts, te, counts, h, queue, queued);
                    }
                    ts = te;
                }
            }
        }
    }

    int first_start_at_or_after(const State& st, int p) const {
        int V = n_ + m_;
        while (p < V && !st.start[size_t(p)]) ++p;
        return p;
    }

    void split_cell(State& st, int ts, int te, std::vector<int>& counts, uint64_t& h,
                    std::deque<int>& queue, std::vector<char>& queued) {
        bool uniform = true;
        for (int p = ts + 1; p < te; ++p)
            if (counts[size_t(p)] != counts[size_t(ts)]) {
                uniform = false;
                break;
            }
        if (uniform) return;
        std::vector<std::pair<int, int>> keyed;  // (count, vertex) in stable order
        keyed.reserve(size_t(te - ts));
        for (int p = ts; p < te; ++p) keyed.emplace_back(counts[size_t(p)], st.lab[size_t(p)]);
        std::stable_sort(keyed.begin(), keyed.end(),
                         [](const auto& a, const auto& b) { return a.first < b.first; });
        h = fnv(h, uint64_t(ts));
        for (int p = ts; p < te; ++p) {
            st.lab[size_t(p)] = keyed[size_t(p - ts)].second;
            st.pos[size_t(st.lab[size_t(p)])] = p;
            bool boundary = p == ts || keyed[size_t(p - ts)].first != keyed[size_t(p - ts - 1)].first;
            if (boundary) {
                st.start[size_t(p)] = 1;
                h = fnv(fnv(h, uint64_t(keyed[size_t(p - ts)].first)), uint64_t(p));
                if (!queued[size_t(p)]) {
                    queue.push_back(p);
                    queued[size_t(p)] = 1;
                }
            }
        }
    }

    // First smallest non-singleton column cell, or -1 when columns discrete.
    int target_cell(const State& st) const {
        int best = -1, best_size = 0;
        for (int p = 0; p < n_;) {
            int e = cell_end(st, p);
            int sz = e - p;
            if (sz > 1 && (best < 0 || sz < best_size)) {
                best = p;
                best_size = sz;
            }
            p = e;
        }
        return best;
    }

    void handle_leaf(const State& st, std::vector<uint64_t>& trace) {
        std::vector<int> perm(static_cast<size_t>(n_));
        for (int p = 0; p < n_; ++p) perm[size_t(st.lab[size_t(p)])] = p;
        BitMatrix cert = rref(code_.generator().permute_columns(perm)).first;

        if (!have_leaf_) {
            zeta_ = Leaf{trace, cert, perm};
            rho_ = zeta_;
            have_leaf_ = true;
            return;
        }
        if (cert == zeta_.cert)
            record_automorphism(perm, zeta_.perm);
        else if (cert == rho_.cert)
            record_automorphism(perm, rho_.perm);
        if (std::lexicographical_compare(trace.begin(), trace.end(), rho_.trace.begin(), rho_.trace.end()) ||
            (trace == rho_.trace && cert < rho_.cert))
            rho_ = Leaf{trace, cert, perm};
    }

    void record_automorphism(const std::vector<int>& p1, const std::vector<int>& p2) {
        Perm gamma = compose(inverse(p2), p1);
        if (is_identity(gamma)) return;
        // direct check that the permutation fixes the code
        for (int r = 0; r < k_; ++r) {
            BitVec moved(n_);
            for (int c = 0; c < n_; ++c)
                if (code_.generator().row(r).get(c)) moved.set(gamma[size_t(c)], true);
            if (!code_.contains(moved)) throw Error("internal: certificate collision without automorphism");
        }
        for (const auto& g : autos_)
            if (g == gamma) return;
        autos_.push_back(std::move(gamma));
    }

    // cmp_rho: -1 path invariant < rho's, 0 equal so far, +1 greater.
    void dfs(State& st, int depth, uint64_t h, int cmp_rho, bool eq_zeta) {
        ++nodes_;
        if (debug_ && (nodes_ & ((1 << 14) - 1)) == 0)
            fprintf(stderr, "[label] n=%d k=%d m=%d nodes=%llu depth=%d gens=%zu\n", n_, k_, m_,
                    (unsigned long long)nodes_, depth, autos_.size());
        std::vector<uint64_t>* rt = have_leaf_ ? &rho_.trace : nullptr;
        if (cmp_rho == 0 && rt) {
            if (size_t(depth) >= rt->size())
                cmp_rho = 1;
            else if (h != (*rt)[size_t(depth)])
                cmp_rho = h < (*rt)[size_t(depth)] ? -1 : 1;
        }
        if (eq_zeta && have_leaf_)
            eq_zeta = size_t(depth) < zeta_.trace.size() && h == zeta_.trace[size_t(depth)];
        if (have_leaf_ && cmp_rho > 0 && !eq_zeta) return;  // cannot improve rho nor meet zeta

        path_trace_.push_back(h);
        int t = target_cell(st);
        if (t < 0) {
            handle_leaf(st, path_trace_);
            path_trace_.pop_back();
            return;
        }
        int e = cell_end(st, t);
        std::vector<int> candidates(st.lab.begin() + t, st.lab.begin() + e);
        std::sort(candidates.begin(), candidates.end());

        std::vector<int> tried;
        for (int v : candidates) {
            if (in_tried_orbit(v, tried)) continue;
            tried.push_back(v);
            State child = st;
            individualize(child, t, v);
            uint64_t ch = fnv(fnv(h, uint64_t(t)), uint64_t(depth + 1));
            refine(child, ch);
            prefix_.push_back(v);
            dfs(child, depth + 1, ch, cmp_rho, eq_zeta);
            prefix_.pop_back();
            if (have_leaf_ && cmp_rho > 0 && !eq_zeta) break;  // rho may have tightened
        }
        path_trace_.pop_back();
    }

    // Union-find over columns under the automorphisms fixing the current
    // individualization prefix pointwise; branch only once per orbit.
    bool in_tried_orbit(int v, const std::vector<int>& tried) {
        if (tried.empty()) return false;
        std::vector<int> uf(static_cast<size_t>(n_));
        for (int i = 0; i < n_; ++i) uf[size_t(i)] = i;
        auto find = [&](int x) {
            while (uf[size_t(x)] != x) {
                uf[size_t(x)] = uf[size_t(uf[size_t(x)])];
                x = uf[size_t(x)];
            }
            return x;
        };
        for (const auto& g : autos_) {
            bool fixes = true;
            for (int p : prefix_)
                if (g[size_t(p)] != p) {
                    fixes = false;
                    break;
                }
            if (!fixes) continue;
            for (int i = 0; i < n_; ++i) {
                int a = find(i), b = find(g[size_t(i)]);
                if (a != b) uf[size_t(a)] = b;
            }
        }
        int rv = find(v);
        for (int u : tried)
            if (find(u) == rv) return true;
        return false;
    }

    void individualize(State& st, int cell_start, int v) {
        int p = st.pos[size_t(v)];
        std::swap(st.lab[size_t(p)], st.lab[size_t(cell_start)]);
        st.pos[size_t(st.lab[size_t(p)])] = p;
        st.pos[size_t(st.lab[size_t(cell_start)])] = cell_start;
        st.start[size_t(cell_start) + 1] = 1;
    }

    const Code& code_;
    int n_, k_, m_ = 0, mw_ = 0;
    std::vector<std::pair<int, int>> classes_;  // (weight, class size)
    std::vector<BitVec> words_;
    std::vector<std::vector<uint64_t>> colinc_;
    std::vector<int> colors_;

    Leaf zeta_, rho_;
    uint64_t nodes_ = 0;
    bool debug_ = std::getenv("DIVCODE_DEBUG_LABEL") != nullptr;
    bool have_leaf_ = false;
    std::vector<uint64_t> path_trace_;
    std::vector<int> prefix_;
    std::vector<Perm> autos_;
};

}  // namespace

std::string CanonicalLabel::to_text() const {
    return canonical_gen.to_text() + "aut " + aut_order.to_string() + "\n";
}

CanonicalLabel canonical_label(const Code& c) {
    return canonical_label(c, std::vector<int>(size_t(c.length()), 0));
}

CanonicalLabel canonical_label(const Code& c, const std::vector<int>& column_colors) {
    if (int(column_colors.size()) != c.length()) throw Error("column color vector size mismatch");
    Labeler L(c, column_colors);
    return L.run();
}

bool are_equivalent(const Code& a, const Code& b) {
    if (!a.full_length() || !b.full_length())
        throw NotFullLength("equivalence is defined for full-length codes");
    if (a.length() != b.length() || a.dimension() != b.dimension()) return false;
    if (a.weight_distribution() != b.weight_distribution()) return false;
    return canonical_label(a).canonical_gen == canonical_label(b).canonical_gen;
}

BigInt aut_group_order(const Code& c) { return canonical_label(c).aut_order; }

}  // namespace divcode
