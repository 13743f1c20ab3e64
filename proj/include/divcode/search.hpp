#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "divcode/canonical.hpp"
#include "divcode/code.hpp"

namespace divcode {

enum class SearchMode { Classify, ExtendDimension, ExtendLength };

// Declarative description of a classification or extension search.
struct SearchSpec {
    SearchMode mode = SearchMode::Classify;

    int target_n = 0;  // length (exact for Classify/ExtendLength, cap for ExtendDimension)
    int target_k = 0;  // dimension of results; 0 in Classify mode means "any"

    // Allowed nonzero weights. In ExtendDimension mode these constrain only
    // the new coset. Empty means "derive from divisor/d_min/d_max".
    std::vector<int> allowed_weights;
    int divisor = 1;
    int d_min = 1;
    int d_max = 0;  // 0 = target_n

    bool require_full_length = true;

    std::vector<Code> seeds;
    int seed_word_weight = 0;  // ExtendLength: weight of the distinguished codeword
    int new_coords_max = 1;    // ExtendDimension: all-new appended coordinates

    int jobs = 1;
    std::string checkpoint_path;

    // Weights realizable at length n under this spec.
    std::vector<int> weight_set(int n) const;

    // Stable serialization; its hash guards checkpoint files.
    std::string canonical_text() const;
    uint64_t hash() const;
};

struct SearchStats {
    uint64_t nodes = 0;
    uint64_t isomorph_rejections = 0;
    uint64_t candidates_checked = 0;
    double wall_seconds = 0;
};

struct SearchResult {
    std::vector<Code> codes;              // pairwise inequivalent, label-sorted
    std::vector<CanonicalLabel> labels;   // matching entries of codes
    SearchStats stats;
};

// Isomorph-free classification of all codes with the spec's parameters:
// length target_n, weights inside the allowed set, full length if required,
// dimension target_k (or every dimension when target_k = 0). Codes are grown
// one dimension at a time; each level is reduced to canonical representatives
// before the next extension step.
SearchResult classify(const SearchSpec& spec);

// Inverts the residual construction: finds every code (up to equivalence)
// with the target parameters that has a codeword w of weight seed_word_weight
// whose residual is equivalent to one of the seeds.
SearchResult lengthen_from_residual(const SearchSpec& spec);

// All extensions C' of the single seed with dim C' = dim C + 1, length at
// most target_n, and every new-coset weight inside the allowed set.
SearchResult extend_dimension(const SearchSpec& spec);

struct CompletenessReport {
    bool agreed = false;
    int64_t brute_count = 0;
    int64_t search_count = 0;
    std::string detail;
};

// Brute-force cross-check of a search result: enumerates the raw search space
// (all RREF generator matrices, or all extension vectors) with naive isomorph
// rejection and compares class counts. Throws BudgetExceeded when the raw
// space is larger than oracle_budget.
CompletenessReport verify_completeness(const SearchResult& result, const SearchSpec& spec,
                                       uint64_t oracle_budget);

// --- internals shared by the search implementations ----------------------

namespace detail {

// Deduplicating accumulator keyed by canonical generator matrix, with an
// optional on-disk mirror (newline label records guarded by the spec hash).
class LabelStore {
public:
    LabelStore(const SearchSpec& spec, const std::string& path);
    ~LabelStore();

    // Returns true if the code was new; stores the label-sorted class rep.
    bool add(const Code& code, const CanonicalLabel& label);
    bool seen_complete() const { return complete_on_load_; }

    std::vector<std::pair<Code, CanonicalLabel>> sorted_entries() const;
    size_t size() const;

    void mark_complete();

private:
    void flush_locked();

    uint64_t spec_hash_;
    std::string path_;
    bool complete_on_load_ = false;
    mutable std::mutex mu_;
    std::map<std::string, std::pair<Code, CanonicalLabel>> entries_;
    double last_flush_ = 0;
};

// Runs fn(i) for i in [0, count) on `jobs` threads.
void parallel_for(int count, int jobs, const std::function<void(int)>& fn);

// Re-checks a finished code against the spec from scratch.
bool satisfies_spec(const Code& c, const SearchSpec& spec);

}  // namespace detail

}  // namespace divcode
