#include "divcode/code.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "divcode/errors.hpp"

namespace divcode {

WeightEnumerator WeightEnumerator::from_counts(const std::vector<int64_t>& counts) {
    WeightEnumerator w(int(counts.size()) - 1);
    for (size_t i = 0; i < counts.size(); ++i) w.coeffs_[i] = BigInt(counts[i]);
    return w;
}

BigInt WeightEnumerator::total() const {
    BigInt t;
    for (const auto& c : coeffs_) t += c;
    return t;
}

std::vector<int> WeightEnumerator::nonzero_weights() const {
    std::vector<int> out;
    for (int i = 1; i <= length(); ++i)
        if (!coeffs_[size_t(i)].is_zero()) out.push_back(i);
    return out;
}

int WeightEnumerator::divisibility_pow2() const {
    int div = 0;
    bool first = true;
    for (int w : nonzero_weights()) {
        int e = 0;
        while (w % 2 == 0) {
            w /= 2;
            ++e;
        }
        div = first ? e : std::min(div, e);
        first = false;
    }
    if (first) throw ZeroDimensional("divisibility of a code without nonzero words");
    return 1 << div;
}

int WeightEnumerator::weight_gcd() const {
    int g = 0;
    for (int w : nonzero_weights()) g = std::gcd(g, w);
    if (g == 0) throw ZeroDimensional("weight gcd of a code without nonzero words");
    return g;
}

std::string WeightEnumerator::to_text() const {
    std::string out;
    for (int i = 0; i <= length(); ++i)
        if (!coeffs_[size_t(i)].is_zero())
            out += std::to_string(i) + " " + coeffs_[size_t(i)].to_string() + "\n";
    return out;
}

WeightEnumerator WeightEnumerator::from_text(const std::string& text, int n) {
    WeightEnumerator w(n);
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::istringstream ls(line);
        int i;
        std::string coeff;
        if (!(ls >> i >> coeff)) throw ParseError("bad enumerator line: " + line);
        if (i < 0 || i > n) throw ParseError("enumerator weight out of range: " + line);
        w.coeffs_[size_t(i)] = BigInt::from_decimal(coeff);
    }
    return w;
}

Code::Code(const BitMatrix& gen) : gen_(rref(gen).first) {
    if (dimension() > kMaxDim)
        throw Error("code dimension " + std::to_string(dimension()) + " exceeds enumeration limit");
    dist_.assign(size_t(length()) + 1, 0);
    for (CodewordRange r(gen_); !r.done(); r.next()) ++dist_[size_t(r.word().popcount())];

    effective_length_ = 0;
    projective_ = true;
    std::vector<BitVec> cols;
    cols.reserve(size_t(length()));
    for (int c = 0; c < length(); ++c) {
        BitVec col = gen_.column(c);
        if (!col.is_zero()) {
            ++effective_length_;
            cols.push_back(col);
        }
    }
    full_length_ = effective_length_ == length();
    std::sort(cols.begin(), cols.end());
    for (size_t i = 0; i + 1 < cols.size(); ++i)
        if (cols[i] == cols[i + 1]) projective_ = false;
    if (!full_length_) projective_ = false;
}

int Code::minimum_distance() const {
    for (int i = 1; i <= length(); ++i)
        if (dist_[size_t(i)]) return i;
    throw ZeroDimensional("minimum distance of the zero code");
}

int Code::divisibility() const { return weight_enumerator().divisibility_pow2(); }

int Code::weight_gcd() const { return weight_enumerator().weight_gcd(); }

int PointMultiset::cardinality() const {
    int n = 0;
    for (const auto& [p, m] : points) n += m;
    return n;
}

namespace {

std::vector<int> support_of(const BitVec& w) {
    std::vector<int> s;
    for (int i = 0; i < w.size(); ++i)
        if (w.get(i)) s.push_back(i);
    return s;
}

std::vector<int> cosupport_of(const BitVec& w) {
    std::vector<int> s;
    for (int i = 0; i < w.size(); ++i)
        if (!w.get(i)) s.push_back(i);
    return s;
}

}  // namespace

Code residual(const Code& c, const BitVec& w) {
    if (w.size() != c.length() || !c.contains(w))
        throw NotACodeword("residual requires a codeword of the code");
    return Code(c.generator().select_columns(cosupport_of(w)));
}

Code restriction_to_support(const Code& c, const BitVec& w) {
    if (w.size() != c.length() || !c.contains(w))
        throw NotACodeword("restriction requires a codeword of the code");
    return Code(c.generator().select_columns(support_of(w)));
}

Code compact(const Code& c) {
    std::vector<int> keep;
    for (int i = 0; i < c.length(); ++i)
        if (!c.generator().column(i).is_zero()) keep.push_back(i);
    return Code(c.generator().select_columns(keep));
}

Code puncture(const Code& c, int col) {
    if (col < 0 || col >= c.length()) throw IndexOutOfRange("puncture column out of range");
    std::vector<int> keep;
    for (int i = 0; i < c.length(); ++i)
        if (i != col) keep.push_back(i);
    return Code(c.generator().select_columns(keep));
}

Code shorten(const Code& c, int col) {
    if (col < 0 || col >= c.length()) throw IndexOutOfRange("shorten column out of range");
    // basis of the subcode vanishing at col: clear the column with one row
    std::vector<BitVec> rows;
    int clearing = -1;
    for (int i = 0; i < c.dimension(); ++i) {
        if (c.generator().row(i).get(col) && clearing < 0)
            clearing = i;
        else
            rows.push_back(c.generator().row(i));
    }
    if (clearing >= 0)
        for (auto& r : rows)
            if (r.get(col)) r ^= c.generator().row(clearing);
    BitMatrix sub(0, c.length());
    for (const auto& r : rows) sub.append_row(r);
    std::vector<int> keep;
    for (int i = 0; i < c.length(); ++i)
        if (i != col) keep.push_back(i);
    return Code(sub.select_columns(keep));
}

PointMultiset point_multiset(const Code& c) {
    if (!c.full_length()) throw NotFullLength("point multiset of a code with a zero coordinate");
    PointMultiset ps;
    ps.ambient_dim = c.dimension();
    for (int j = 0; j < c.length(); ++j) ++ps.points[c.generator().column(j)];
    return ps;
}

PointMultiset project_through_point(const PointMultiset& ps, const BitVec& p) {
    auto it = ps.points.find(p);
    if (it == ps.points.end() || it->second == 0)
        throw PointAbsent("projection through a point of multiplicity zero");
    int pivot = p.lowest_set();
    PointMultiset out;
    out.ambient_dim = ps.ambient_dim - 1;
    for (const auto& [q, m] : ps.points) {
        if (q == p) continue;
        BitVec r = q;
        if (r.get(pivot)) r ^= p;  // representative without the pivot coordinate
        BitVec img(ps.ambient_dim - 1);
        for (int i = 0, j = 0; i < ps.ambient_dim; ++i) {
            if (i == pivot) continue;
            img.set(j++, r.get(i));
        }
        if (!img.is_zero()) out.points[img] += m;
    }
    return out;
}

Code code_from_multiset(const PointMultiset& ps) {
    int n = ps.cardinality();
    BitMatrix m(ps.ambient_dim, n);
    int j = 0;
    for (const auto& [p, mult] : ps.points)
        for (int t = 0; t < mult; ++t) {
            for (int i = 0; i < ps.ambient_dim; ++i)
                if (p.get(i)) m.set(i, j, true);
            ++j;
        }
    return Code(m);
}

}  // namespace divcode
