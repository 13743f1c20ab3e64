#pragma once

#include <vector>

#include "divcode/bigint.hpp"

namespace divcode {

using Perm = std::vector<int>;

Perm identity_perm(int degree);
Perm compose(const Perm& a, const Perm& b);  // (a∘b)(x) = a[b[x]]
Perm inverse(const Perm& p);
bool is_identity(const Perm& p);

// Permutation group on {0..degree-1} maintained as a base and strong
// generating set (deterministic Schreier-Sims). Degrees here are <= ~200 and
// group orders up to ~10^8, where the plain textbook algorithm is plenty.
class PermGroup {
public:
    explicit PermGroup(int degree);

    int degree() const { return degree_; }

    // Adds a generator and restores the strong generating property.
    void add_generator(const Perm& g);

    bool is_member(const Perm& g) const;

    BigInt order() const;

    // Orbit of a point under the whole group.
    std::vector<int> orbit_of(int point) const;

    const std::vector<Perm>& generators() const { return input_gens_; }

private:
    struct Level {
        int base = -1;
        std::vector<Perm> gens;               // gens whose residues were stuck at this level
        std::vector<Perm> transversal;        // transversal[p] maps base -> p
        std::vector<Perm> inv_transversal;  // empty = not in orbit
        std::vector<int> orbit;
    };

    // All generators usable at level i (those fixing bases 0..i-1).
    std::vector<const Perm*> gen_set(int level) const;

    void rebuild_orbit(int level);
    // Verifies/forces the Schreier condition from this level down; restarts on growth.
    void close(int level);
    // Strips g through levels >= from; returns true if it reaches identity.
    bool strip(Perm g, int from, Perm& residue, int& stuck_level) const;
    void add_at(const Perm& g, int level);

    int degree_;
    std::vector<Level> levels_;
    std::vector<Perm> input_gens_;
};

}  // namespace divcode
