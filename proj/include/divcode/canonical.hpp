#pragma once

#include <string>
#include <vector>

#include "divcode/bigint.hpp"
#include "divcode/code.hpp"
#include "divcode/permgroup.hpp"

namespace divcode {

// Order-invariant fingerprint of a code under column permutation.
//
// canonical_gen is a deterministic representative of the equivalence class:
// two full-length codes are column-permutation equivalent iff their
// canonical_gen matrices are identical. certificate maps original column
// indices to canonical positions and reproduces canonical_gen when applied
// to the input and re-reduced.
struct CanonicalLabel {
    BitMatrix canonical_gen;
    BigInt aut_order;
    std::vector<int> certificate;
    std::vector<Perm> aut_generators;

    // Canonical matrix text followed by "aut <order>".
    std::string to_text() const;
};

CanonicalLabel canonical_label(const Code& c);

// Variant with fixed initial column colors: only permutations preserving the
// coloring are considered. Used by the searches to mark distinguished
// coordinate blocks. Colors are small non-negative integers.
CanonicalLabel canonical_label(const Code& c, const std::vector<int>& column_colors);

bool are_equivalent(const Code& a, const Code& b);

// Order of the group of column permutations mapping the codeword set onto
// itself.
BigInt aut_group_order(const Code& c);

}  // namespace divcode
