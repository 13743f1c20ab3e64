#include "divcode/permgroup.hpp"

#include <algorithm>

#include "divcode/errors.hpp"

namespace divcode {

Perm identity_perm(int degree) {
    Perm p(degree);
    for (int i = 0; i < degree; ++i) p[i] = i;
    return p;
}

Perm compose(const Perm& a, const Perm& b) {
    Perm r(b.size());
    for (size_t i = 0; i < b.size(); ++i) r[i] = a[size_t(b[i])];
    return r;
}

Perm inverse(const Perm& p) {
    Perm r(p.size());
    for (size_t i = 0; i < p.size(); ++i) r[size_t(p[i])] = int(i);
    return r;
}

bool is_identity(const Perm& p) {
    for (size_t i = 0; i < p.size(); ++i)
        if (p[i] != int(i)) return false;
    return true;
}

PermGroup::PermGroup(int degree) : degree_(degree) {}

std::vector<const Perm*> PermGroup::gen_set(int level) const {
    std::vector<const Perm*> out;
    for (size_t j = size_t(level); j < levels_.size(); ++j)
        for (const auto& g : levels_[j].gens) out.push_back(&g);
    return out;
}

void PermGroup::rebuild_orbit(int level) {
    Level& L = levels_[size_t(level)];
    L.transversal.assign(size_t(degree_), Perm());
    L.inv_transversal.assign(size_t(degree_), Perm());
    L.orbit.clear();
    L.transversal[size_t(L.base)] = identity_perm(degree_);
    L.inv_transversal[size_t(L.base)] = identity_perm(degree_);
    L.orbit.push_back(L.base);
    auto gens = gen_set(level);
    for (size_t head = 0; head < L.orbit.size(); ++head) {
        int p = L.orbit[head];
        for (const Perm* g : gens) {
            int q = (*g)[size_t(p)];
            if (L.transversal[size_t(q)].empty()) {
                L.transversal[size_t(q)] = compose(*g, L.transversal[size_t(p)]);
                L.inv_transversal[size_t(q)] = inverse(L.transversal[size_t(q)]);
                L.orbit.push_back(q);
            }
        }
    }
}

bool PermGroup::strip(Perm g, int from, Perm& residue, int& stuck_level) const {
    Perm scratch(g.size());
    for (size_t i = size_t(from); i < levels_.size(); ++i) {
        const Level& L = levels_[i];
        int x = g[size_t(L.base)];
        if (L.transversal[size_t(x)].empty()) {
            residue = std::move(g);
            stuck_level = int(i);
            return false;
        }
        const Perm& tinv = L.inv_transversal[size_t(x)];
        for (size_t p = 0; p < g.size(); ++p) scratch[p] = tinv[size_t(g[p])];
        g.swap(scratch);
    }
    if (is_identity(g)) return true;
    residue = std::move(g);
    stuck_level = int(levels_.size());
    return false;
}

void PermGroup::add_at(const Perm& g, int level) {
    if (size_t(level) == levels_.size()) {
        Level L;
        for (int i = 0; i < degree_; ++i)
            if (g[size_t(i)] != i) {
                L.base = i;
                break;
            }
        levels_.push_back(std::move(L));
    }
    levels_[size_t(level)].gens.push_back(g);
}

// Re-establishes the strong generating property: levels are verified from
// the deepest upward; a Schreier generator that fails to sift adds a strong
// generator at its stuck level and verification resumes there. Each level's
// sweep re-runs only when something below it changed.
void PermGroup::close(int) {
    int level = int(levels_.size()) - 1;
    while (level >= 0) {
        rebuild_orbit(level);
        Level& L = levels_[size_t(level)];
        auto gens = gen_set(level);
        bool added = false;
        for (size_t oi = 0; oi < L.orbit.size() && !added; ++oi) {
            int p = L.orbit[oi];
            for (const Perm* s : gens) {
                int q = (*s)[size_t(p)];
                Perm schreier = compose(inverse(L.transversal[size_t(q)]),
                                        compose(*s, L.transversal[size_t(p)]));
                if (is_identity(schreier)) continue;
                Perm residue;
                int stuck = 0;
                if (!strip(std::move(schreier), level + 1, residue, stuck)) {
                    add_at(residue, stuck);
                    level = stuck;  // repair the deeper chain first
                    added = true;
                    break;
                }
            }
        }
        if (!added) --level;
    }
}

void PermGroup::add_generator(const Perm& g) {
    if (int(g.size()) != degree_) throw Error("generator degree mismatch");
    if (is_identity(g)) return;
    input_gens_.push_back(g);
    Perm residue;
    int stuck = 0;
    if (strip(g, 0, residue, stuck)) return;  // already a member
    add_at(residue, stuck);
    close(0);
}

bool PermGroup::is_member(const Perm& g) const {
    Perm residue;
    int stuck = 0;
    return strip(g, 0, residue, stuck);
}

BigInt PermGroup::order() const {
    BigInt o(1);
    for (const auto& L : levels_) o *= BigInt(int64_t(L.orbit.size()));
    return o;
}

std::vector<int> PermGroup::orbit_of(int point) const {
    std::vector<char> seen(size_t(degree_), 0);
    std::vector<int> orbit{point};
    seen[size_t(point)] = 1;
    for (size_t head = 0; head < orbit.size(); ++head)
        for (const auto& g : input_gens_) {
            int q = g[size_t(orbit[head])];
            if (!seen[size_t(q)]) {
                seen[size_t(q)] = 1;
                orbit.push_back(q);
            }
        }
    std::sort(orbit.begin(), orbit.end());
    return orbit;
}

}  // namespace divcode
