#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "divcode/bitvec.hpp"

namespace divcode {

// Row-major bit-packed matrix over GF(2).
class BitMatrix {
public:
    BitMatrix() : ncols_(0) {}
    BitMatrix(int nrows, int ncols) : ncols_(ncols), rows_(nrows, BitVec(ncols)) {}

    int nrows() const { return int(rows_.size()); }
    int ncols() const { return ncols_; }

    BitVec& row(int i) { return rows_[i]; }
    const BitVec& row(int i) const { return rows_[i]; }

    bool get(int r, int c) const { return rows_[r].get(c); }
    void set(int r, int c, bool v) { rows_[r].set(c, v); }

    void append_row(const BitVec& v);

    // Column c as a vector of length nrows.
    BitVec column(int c) const;

    bool operator==(const BitMatrix& o) const { return ncols_ == o.ncols_ && rows_ == o.rows_; }
    bool operator!=(const BitMatrix& o) const { return !(*this == o); }
    bool operator<(const BitMatrix& o) const;

    uint64_t hash() const;

    // Reorders columns: result column perm[c] = this column c.
    BitMatrix permute_columns(const std::vector<int>& perm) const;

    // Keeps exactly the columns listed, in the given order.
    BitMatrix select_columns(const std::vector<int>& cols) const;

    std::string to_text() const;

    static BitMatrix from_text(const std::string& text);
    static BitMatrix from_rows(const std::vector<std::string>& rows);

private:
    int ncols_;
    std::vector<BitVec> rows_;
};

// Reduced row echelon form: unique per row space, zero rows removed, pivot
// columns strictly increasing. Returns the matrix and its rank.
std::pair<BitMatrix, int> rref(const BitMatrix& m);

// Basis of { v : m v^T = 0 }, itself in RREF. Empty matrix rows mean the
// nullspace is trivial; the result has ncols() == m.ncols().
BitMatrix nullspace_basis(const BitMatrix& m);

// True if v is in the row space of an RREF matrix.
bool in_row_space(const BitMatrix& rref_m, const BitVec& v);

// All 2^k words of the row space in Gray-code order: each step XORs a single
// generator row, so full enumeration costs one XOR per word.
//
//   for (CodewordRange r(g); !r.done(); r.next()) use(r.word());
class CodewordRange {
public:
    explicit CodewordRange(const BitMatrix& g)
        : g_(&g), cur_(g.ncols()), idx_(0), count_(uint64_t{1} << g.nrows()) {}

    bool done() const { return idx_ == count_; }
    const BitVec& word() const { return cur_; }
    uint64_t index() const { return idx_; }

    void next() {
        ++idx_;
        if (idx_ == count_) return;
        int bit = std::countr_zero(idx_);
        cur_ ^= g_->row(bit);
    }

private:
    const BitMatrix* g_;
    BitVec cur_;
    uint64_t idx_;
    uint64_t count_;
};

// Collects all 2^k codewords (k small).
std::vector<BitVec> all_codewords(const BitMatrix& g);

}  // namespace divcode
