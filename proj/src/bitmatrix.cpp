#include "divcode/bitmatrix.hpp"

#include <algorithm>
#include <sstream>

#include "divcode/errors.hpp"

namespace divcode {

void BitMatrix::append_row(const BitVec& v) {
    if (v.size() != ncols_) throw IndexOutOfRange("row length does not match matrix width");
    rows_.push_back(v);
}

BitVec BitMatrix::column(int c) const {
    if (c < 0 || c >= ncols_) throw IndexOutOfRange("column index out of range");
    BitVec v(nrows());
    for (int r = 0; r < nrows(); ++r)
        if (rows_[r].get(c)) v.set(r, true);
    return v;
}

bool BitMatrix::operator<(const BitMatrix& o) const {
    if (ncols_ != o.ncols_) return ncols_ < o.ncols_;
    if (rows_.size() != o.rows_.size()) return rows_.size() < o.rows_.size();
    for (size_t i = 0; i < rows_.size(); ++i) {
        if (rows_[i] != o.rows_[i]) return rows_[i] < o.rows_[i];
    }
    return false;
}

uint64_t BitMatrix::hash() const {
    uint64_t h = 0x9e3779b97f4a7c15ull ^ (uint64_t(ncols_) << 32) ^ rows_.size();
    for (const auto& r : rows_) {
        h ^= r.hash();
        h *= 0x100000001b3ull;
    }
    return h;
}

BitMatrix BitMatrix::permute_columns(const std::vector<int>& perm) const {
    if (int(perm.size()) != ncols_) throw IndexOutOfRange("permutation size mismatch");
    BitMatrix out(nrows(), ncols_);
    for (int r = 0; r < nrows(); ++r)
        for (int c = 0; c < ncols_; ++c)
            if (rows_[r].get(c)) out.rows_[r].set(perm[c], true);
    return out;
}

BitMatrix BitMatrix::select_columns(const std::vector<int>& cols) const {
    BitMatrix out(nrows(), int(cols.size()));
    for (int r = 0; r < nrows(); ++r)
        for (size_t j = 0; j < cols.size(); ++j)
            if (rows_[r].get(cols[j])) out.rows_[r].set(int(j), true);
    return out;
}

std::string BitMatrix::to_text() const {
    std::string s;
    for (const auto& r : rows_) {
        s += r.to_string();
        s += '\n';
    }
    return s;
}

BitMatrix BitMatrix::from_text(const std::string& text) {
    std::vector<std::string> lines;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        while (!line.empty() && (line.back() == '\r' || line.back() == ' ' || line.back() == '\t'))
            line.pop_back();
        size_t start = line.find_first_not_of(" \t");
        if (start == std::string::npos) continue;
        line = line.substr(start);
        if (line[0] == '#') continue;
        lines.push_back(line);
    }
    return from_rows(lines);
}

BitMatrix BitMatrix::from_rows(const std::vector<std::string>& rows) {
    if (rows.empty()) throw ParseError("matrix text contains no rows");
    size_t width = rows[0].size();
    BitMatrix m(0, int(width));
    for (const auto& r : rows) {
        if (r.size() != width) throw ParseError("ragged matrix row: expected width " + std::to_string(width));
        m.append_row(BitVec::from_string(r));
    }
    return m;
}

std::pair<BitMatrix, int> rref(const BitMatrix& m) {
    std::vector<BitVec> rows;
    rows.reserve(m.nrows());
    for (int i = 0; i < m.nrows(); ++i) rows.push_back(m.row(i));
    int rank = 0;
    for (int c = 0; c < m.ncols() && rank < int(rows.size()); ++c) {
        int pivot = -1;
        for (int i = rank; i < int(rows.size()); ++i)
            if (rows[i].get(c)) {
                pivot = i;
                break;
            }
        if (pivot < 0) continue;
        std::swap(rows[rank], rows[pivot]);
        for (int i = 0; i < int(rows.size()); ++i)
            if (i != rank && rows[i].get(c)) rows[i] ^= rows[rank];
        ++rank;
    }
    BitMatrix out(0, m.ncols());
    for (int i = 0; i < rank; ++i) out.append_row(rows[i]);
    return {out, rank};
}

BitMatrix nullspace_basis(const BitMatrix& m) {
    auto [r, rank] = rref(m);
    int n = m.ncols();
    std::vector<int> pivot_of_col(n, -1);
    std::vector<int> free_cols;
    {
        int row = 0;
        for (int c = 0; c < n; ++c) {
            if (row < rank && r.row(row).get(c) && r.row(row).lowest_set() == c) {
                pivot_of_col[c] = row;
                ++row;
            } else {
                free_cols.push_back(c);
            }
        }
    }
    BitMatrix basis(0, n);
    for (int fc : free_cols) {
        BitVec v(n);
        v.set(fc, true);
        // back-substitute: pivot coordinate = sum of free coordinates in that row
        for (int c = 0; c < n; ++c) {
            int pr = pivot_of_col[c];
            if (pr >= 0 && r.row(pr).get(fc)) v.set(c, true);
        }
        basis.append_row(v);
    }
    return rref(basis).first;
}

bool in_row_space(const BitMatrix& rref_m, const BitVec& v) {
    BitVec acc = v;
    for (int i = 0; i < rref_m.nrows(); ++i) {
        int p = rref_m.row(i).lowest_set();
        if (p >= 0 && acc.get(p)) acc ^= rref_m.row(i);
    }
    return acc.is_zero();
}

std::vector<BitVec> all_codewords(const BitMatrix& g) {
    std::vector<BitVec> out;
    out.reserve(size_t{1} << g.nrows());
    for (CodewordRange r(g); !r.done(); r.next()) out.push_back(r.word());
    return out;
}

}  // namespace divcode
