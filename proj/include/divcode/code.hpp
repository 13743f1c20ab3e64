#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "divcode/bigint.hpp"
#include "divcode/bitmatrix.hpp"

namespace divcode {

// Exact codeword weight distribution: coeffs()[i] = number of weight-i words.
class WeightEnumerator {
public:
    explicit WeightEnumerator(int n) : coeffs_(size_t(n) + 1) {}

    static WeightEnumerator from_counts(const std::vector<int64_t>& counts);

    int length() const { return int(coeffs_.size()) - 1; }

    const BigInt& coeff(int i) const { return coeffs_[size_t(i)]; }
    void set_coeff(int i, BigInt v) { coeffs_[size_t(i)] = std::move(v); }

    BigInt total() const;

    // Nonzero weights in increasing order (weight 0 excluded).
    std::vector<int> nonzero_weights() const;

    // Largest power of two dividing every nonzero weight, and the plain gcd.
    int divisibility_pow2() const;
    int weight_gcd() const;

    bool operator==(const WeightEnumerator& o) const { return coeffs_ == o.coeffs_; }
    bool operator!=(const WeightEnumerator& o) const { return !(*this == o); }

    // Lines "i a_i" for nonzero a_i, ascending i.
    std::string to_text() const;
    static WeightEnumerator from_text(const std::string& text, int n);

private:
    std::vector<BigInt> coeffs_;
};

// A binary linear code held as its unique RREF generator matrix together
// with eagerly computed invariants. Immutable after construction, so values
// can be shared freely across threads.
class Code {
public:
    // Any spanning matrix is accepted; it is reduced to RREF. Dimensions
    // above kMaxDim are rejected (full codeword enumeration is the backbone
    // of every invariant here).
    static constexpr int kMaxDim = 24;

    explicit Code(const BitMatrix& gen);

    int length() const { return gen_.ncols(); }
    int dimension() const { return gen_.nrows(); }

    const BitMatrix& generator() const { return gen_; }

    bool contains(const BitVec& w) const { return in_row_space(gen_, w); }

    // Weight distribution as plain counts (always fits: k <= kMaxDim).
    const std::vector<int64_t>& weight_distribution() const { return dist_; }
    WeightEnumerator weight_enumerator() const { return WeightEnumerator::from_counts(dist_); }

    int minimum_distance() const;   // throws ZeroDimensional if k = 0
    int divisibility() const;       // largest 2-power dividing all weights
    int weight_gcd() const;

    bool full_length() const { return full_length_; }
    bool projective() const { return projective_; }
    int effective_length() const { return effective_length_; }

    // Generator matrix of the dual code (dual dimension may exceed kMaxDim,
    // so this stays a matrix rather than a Code).
    BitMatrix dual_basis() const { return nullspace_basis(gen_); }

    bool operator==(const Code& o) const { return gen_ == o.gen_; }

private:
    BitMatrix gen_;
    std::vector<int64_t> dist_;
    int effective_length_;
    bool full_length_;
    bool projective_;
};

// Multiset of nonzero points of GF(2)^k, the column view of a generator
// matrix. Keys are length-k bit vectors.
struct PointMultiset {
    int ambient_dim = 0;
    std::map<BitVec, int> points;

    int cardinality() const;
};

// --- constructions -------------------------------------------------------

// Restriction of every codeword to the complement of supp(w). Positions are
// kept as they come (zero columns included); use compact() to drop them.
Code residual(const Code& c, const BitVec& w);

// Restriction of every codeword to supp(w).
Code restriction_to_support(const Code& c, const BitVec& w);

// Drops identically-zero coordinates.
Code compact(const Code& c);

Code puncture(const Code& c, int col);
Code shorten(const Code& c, int col);

// Columns of the generator matrix as points of GF(2)^k. Requires full length.
PointMultiset point_multiset(const Code& c);

// Projection through a point of multiplicity >= 1: ambient dimension drops by
// one, p is discarded, images of other points accumulate multiplicity. The
// eliminated coordinate is the pivot (lowest set) coordinate of p.
PointMultiset project_through_point(const PointMultiset& ps, const BitVec& p);

// Code generated by the multiset's points as columns (ordered by point value).
Code code_from_multiset(const PointMultiset& ps);

}  // namespace divcode
