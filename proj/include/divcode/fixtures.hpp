#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "divcode/bigint.hpp"
#include "divcode/code.hpp"

namespace divcode {

// One entry of the embedded matrix corpus: a generator matrix plus the
// asserted expectations attached to it.
struct FixtureEntry {
    std::string id;
    std::string file;
    std::string origin;
    BitMatrix matrix;
    int nrows = 0;
    int ncols = 0;
    std::string sha256;

    std::optional<std::map<int, int64_t>> enumerator;
    std::optional<std::vector<int>> weights;  // allowed nonzero weights
    std::optional<int> d;
    std::optional<int> divisibility;
    std::optional<BigInt> aut_order;
    std::optional<bool> projective;

    Code code() const { return Code(matrix); }
};

struct FixtureCheck {
    std::string fixture;
    std::string check;
    bool pass = false;
    std::string detail;
};

class FixtureSet {
public:
    // Loads the corpus from a directory containing manifest.json. An empty
    // path falls back to the DIVCODE_FIXTURES environment variable and then
    // to ./fixtures and a short upward walk from the working directory.
    static FixtureSet load_dir(const std::string& path = "");

    const FixtureEntry& get(const std::string& id) const;
    const std::vector<FixtureEntry>& entries() const { return entries_; }

    // Runs every attached expectation. include_aut_orders enables the
    // automorphism-order checks, the slowest part of the sweep.
    std::vector<FixtureCheck> verify_all(bool include_aut_orders = true) const;

    // The [56,10,24] two-weight-plus-midpoint enumerator that is recorded as
    // an expectation without a matrix (see README); not part of verify_all.
    static std::map<int, int64_t> w56_10_24_enumerator();

private:
    std::vector<FixtureEntry> entries_;
    std::map<std::string, size_t> index_;
};

// SHA-256 hex digest (used for the corpus drift guard).
std::string sha256_hex(const std::string& data);

}  // namespace divcode
