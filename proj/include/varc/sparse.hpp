#ifndef VARC_SPARSE_HPP
#define VARC_SPARSE_HPP

#include "varc/audit.hpp"
#include "varc/rational.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <vector>

namespace varc {

// Sparse vector: sorted (index, coefficient) pairs, coefficients nonzero.
struct SparseVec {
    std::vector<std::pair<std::uint32_t, Rational>> nz;

    bool empty() const { return nz.empty(); }
    void add(std::uint32_t i, const Rational& c) {
        if (c == 0) return;
        auto it = std::lower_bound(nz.begin(), nz.end(), i,
                                   [](const auto& a, std::uint32_t b) { return a.first < b; });
        if (it != nz.end() && it->first == i) {
            it->second += c;
            if (it->second == 0) nz.erase(it);
        } else {
            nz.insert(it, {i, c});
        }
    }
    Rational at(std::uint32_t i) const {
        auto it = std::lower_bound(nz.begin(), nz.end(), i,
                                   [](const auto& a, std::uint32_t b) { return a.first < b; });
        if (it != nz.end() && it->first == i) return it->second;
        return Rational(0);
    }
    SparseVec& operator*=(const Rational& c) {
        if (c == 0) { nz.clear(); return *this; }
        for (auto& [i, v] : nz) v *= c;
        return *this;
    }
    // this += c * other
    void axpy(const Rational& c, const SparseVec& other) {
        if (c == 0 || other.nz.empty()) return;
        std::vector<std::pair<std::uint32_t, Rational>> merged;
        merged.reserve(nz.size() + other.nz.size());
        std::size_t i = 0, j = 0;
        while (i < nz.size() || j < other.nz.size()) {
            if (j == other.nz.size() || (i < nz.size() && nz[i].first < other.nz[j].first)) {
                merged.push_back(nz[i++]);
            } else if (i == nz.size() || other.nz[j].first < nz[i].first) {
                merged.push_back({other.nz[j].first, c * other.nz[j].second});
                ++j;
            } else {
                Rational v = nz[i].second + c * other.nz[j].second;
                if (v != 0) merged.push_back({nz[i].first, std::move(v)});
                ++i; ++j;
            }
        }
        nz = std::move(merged);
    }
    bool operator==(const SparseVec& o) const { return nz == o.nz; }
};

// Column-major sparse matrix.
class SparseMat {
public:
    SparseMat() = default;
    SparseMat(std::uint32_t rows, std::uint32_t cols) : rows_(rows), cols_(cols), col_(cols) {}

    std::uint32_t rows() const { return rows_; }
    std::uint32_t cols() const { return cols_; }
    SparseVec& col(std::uint32_t j) { return col_[j]; }
    const SparseVec& col(std::uint32_t j) const { return col_[j]; }
    void set(std::uint32_t i, std::uint32_t j, const Rational& c) {
        auto& v = col_[j].nz;
        auto it = std::lower_bound(v.begin(), v.end(), i,
                                   [](const auto& a, std::uint32_t b) { return a.first < b; });
        if (it != v.end() && it->first == i) {
            if (c == 0) v.erase(it);
            else it->second = c;
        } else if (c != 0) {
            v.insert(it, {i, c});
        }
    }
    void add(std::uint32_t i, std::uint32_t j, const Rational& c) { col_[j].add(i, c); }
    Rational at(std::uint32_t i, std::uint32_t j) const { return col_[j].at(i); }
    bool is_zero() const {
        for (auto& c : col_)
            if (!c.empty()) return false;
        return true;
    }
    std::size_t nnz() const {
        std::size_t n = 0;
        for (auto& c : col_) n += c.nz.size();
        return n;
    }

    SparseVec apply(const SparseVec& x) const {
        SparseVec y;
        for (auto& [j, c] : x.nz) y.axpy(c, col_[j]);
        return y;
    }

    friend SparseMat operator*(const SparseMat& a, const SparseMat& b) {
        audit_check(a.cols() == b.rows(), "matrix product shape mismatch: ", a.rows(), "x",
                    a.cols(), " * ", b.rows(), "x", b.cols());
        SparseMat r(a.rows(), b.cols());
        for (std::uint32_t j = 0; j < b.cols(); ++j) r.col_[j] = a.apply(b.col(j));
        return r;
    }
    friend SparseMat operator+(const SparseMat& a, const SparseMat& b) {
        audit_check(a.rows() == b.rows() && a.cols() == b.cols(), "matrix sum shape mismatch");
        SparseMat r = a;
        for (std::uint32_t j = 0; j < b.cols(); ++j) r.col_[j].axpy(Rational(1), b.col(j));
        return r;
    }
    friend SparseMat operator-(const SparseMat& a, const SparseMat& b) {
        audit_check(a.rows() == b.rows() && a.cols() == b.cols(), "matrix diff shape mismatch");
        SparseMat r = a;
        for (std::uint32_t j = 0; j < b.cols(); ++j) r.col_[j].axpy(Rational(-1), b.col(j));
        return r;
    }
    SparseMat& operator*=(const Rational& c) {
        for (auto& v : col_) v *= c;
        return *this;
    }
    bool operator==(const SparseMat& o) const {
        return rows_ == o.rows_ && cols_ == o.cols_ && col_ == o.col_;
    }

    static SparseMat identity(std::uint32_t n) {
        SparseMat m(n, n);
        for (std::uint32_t i = 0; i < n; ++i) m.set(i, i, Rational(1));
        return m;
    }

private:
    std::uint32_t rows_ = 0, cols_ = 0;
    std::vector<SparseVec> col_;
};

// Incremental row-echelon reducer over Q. Rows are kept pivot-normalized and
// fully back-substituted, so reduce() yields canonical residues; used for
// span ranks, membership tests and quotient coordinates.
class Echelon {
public:
    // Reduces v against the stored rows (returns the residue).
    SparseVec reduce(SparseVec v) const {
        for (;;) {
            bool changed = false;
            for (auto& [i, c] : v.nz) {
                auto it = pivot_row_.find(i);
                if (it != pivot_row_.end()) {
                    v.axpy(-c, rows_[it->second]);
                    changed = true;
                    break;
                }
            }
            if (!changed) return v;
        }
    }

    // Inserts v; returns true if it enlarged the span.
    bool insert(SparseVec v) {
        v = reduce(std::move(v));
        if (v.empty()) return false;
        std::uint32_t piv = v.nz.front().first;
        Rational lead = v.nz.front().second;
        v *= Rational(1) / lead;
        // Back-substitute into existing rows.
        for (auto& r : rows_) {
            Rational c = r.at(piv);
            if (c != 0) r.axpy(-c, v);
        }
        pivot_row_[piv] = rows_.size();
        rows_.push_back(std::move(v));
        return true;
    }

    bool contains(const SparseVec& v) const { return reduce(v).empty(); }
    std::size_t rank() const { return rows_.size(); }
    const std::vector<SparseVec>& rows() const { return rows_; }
    const std::map<std::uint32_t, std::size_t>& pivots() const { return pivot_row_; }
    bool is_pivot(std::uint32_t i) const { return pivot_row_.count(i) != 0; }

private:
    std::vector<SparseVec> rows_;
    std::map<std::uint32_t, std::size_t> pivot_row_;
};

// Exact rank by sparse elimination with Markowitz-style pivoting: among the
// remaining columns pick the sparsest, then pick its sparsest-row entry.
inline std::size_t rank(const SparseMat& m) {
    std::vector<SparseVec> cols;
    cols.reserve(m.cols());
    for (std::uint32_t j = 0; j < m.cols(); ++j)
        if (!m.col(j).empty()) cols.push_back(m.col(j));

    std::vector<std::uint32_t> row_count(m.rows(), 0);
    for (auto& c : cols)
        for (auto& [i, v] : c.nz) ++row_count[i];

    std::size_t r = 0;
    std::vector<char> row_used(m.rows(), 0);
    while (!cols.empty()) {
        // Pick the sparsest nonempty column.
        std::size_t best = 0;
        for (std::size_t j = 1; j < cols.size(); ++j)
            if (cols[j].nz.size() < cols[best].nz.size()) best = j;
        SparseVec pivot_col = std::move(cols[best]);
        cols[best] = std::move(cols.back());
        cols.pop_back();
        if (pivot_col.empty()) continue;
        // Pick the pivot entry whose row occurs in fewest columns.
        std::uint32_t piv_row = pivot_col.nz.front().first;
        for (auto& [i, v] : pivot_col.nz)
            if (row_count[i] < row_count[piv_row]) piv_row = i;
        Rational piv_val = pivot_col.at(piv_row);
        ++r;
        row_used[piv_row] = 1;
        // Eliminate this row from the other columns.
        for (auto& c : cols) {
            Rational v = c.at(piv_row);
            if (v != 0) c.axpy(-v / piv_val, pivot_col);
        }
        // Drop emptied columns eagerly.
        std::erase_if(cols, [](const SparseVec& c) { return c.empty(); });
    }
    return r;
}

// Dense fraction-free (Bareiss) rank, for cross-checks and for blocks where
// coefficient growth under plain elimination is a concern.
inline std::size_t rank_bareiss(const SparseMat& m) {
    std::size_t R = m.rows(), C = m.cols();
    std::vector<std::vector<Int>> a(R, std::vector<Int>(C, 0));
    // Column-wise integral scaling (rank is invariant under column scaling).
    for (std::uint32_t j = 0; j < C; ++j) {
        Int l = 1;
        for (auto& [i, v] : m.col(j).nz) l = lcm(l, rat_den(v));
        for (auto& [i, v] : m.col(j).nz) a[i][j] = rat_num(v) * (l / rat_den(v));
    }
    std::size_t rank = 0;
    Int prev = 1;
    std::vector<char> row_used(R, 0);
    for (std::size_t c = 0; c < C && rank < R; ++c) {
        std::size_t pr = R;
        for (std::size_t r2 = 0; r2 < R; ++r2)
            if (!row_used[r2] && a[r2][c] != 0) { pr = r2; break; }
        if (pr == R) continue;
        row_used[pr] = 1;
        Int piv = a[pr][c];
        for (std::size_t r2 = 0; r2 < R; ++r2) {
            if (row_used[r2] || a[r2][c] == 0) continue;
            for (std::size_t c2 = c + 1; c2 < C; ++c2)
                a[r2][c2] = (a[r2][c2] * piv - a[pr][c2] * a[r2][c]) / prev;
            a[r2][c] = 0;
        }
        prev = piv;
        ++rank;
    }
    return rank;
}

// Kernel basis via column echelon on the augmented transformation.
inline std::vector<SparseVec> kernel_basis(const SparseMat& m) {
    // Gaussian elimination on columns, tracking the combination.
    std::uint32_t C = m.cols();
    std::vector<SparseVec> cols(C), combo(C);
    for (std::uint32_t j = 0; j < C; ++j) {
        cols[j] = m.col(j);
        combo[j].add(j, Rational(1));
    }
    std::map<std::uint32_t, std::uint32_t> pivot_of_row;
    std::vector<SparseVec> kernel;
    for (std::uint32_t j = 0; j < C; ++j) {
        // Reduce column j by earlier pivots.
        for (;;) {
            bool changed = false;
            for (auto& [i, c] : cols[j].nz) {
                auto it = pivot_of_row.find(i);
                if (it != pivot_of_row.end()) {
                    std::uint32_t pj = it->second;
                    Rational f = c / cols[pj].nz.front().second;
                    cols[j].axpy(-f, cols[pj]);
                    combo[j].axpy(-f, combo[pj]);
                    changed = true;
                    break;
                }
            }
            if (!changed) break;
        }
        if (cols[j].empty()) {
            kernel.push_back(combo[j]);
        } else {
            pivot_of_row[cols[j].nz.front().first] = j;
        }
    }
    return kernel;
}

} // namespace varc

#endif
