#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "opal/rational.hpp"

namespace opal {

using Vec = std::vector<Rational>;

inline bool vec_is_zero(const Vec& v) {
    for (const auto& x : v)
        if (!x.is_zero()) return false;
    return true;
}

inline void vec_add_scaled(Vec& dst, const Rational& c, const Vec& src) {
    for (size_t i = 0; i < dst.size(); ++i)
        if (!src[i].is_zero()) dst[i] += c * src[i];
}

inline Vec vec_add(const Vec& a, const Vec& b) {
    Vec r = a;
    for (size_t i = 0; i < r.size(); ++i) r[i] += b[i];
    return r;
}

inline Vec vec_sub(const Vec& a, const Vec& b) {
    Vec r = a;
    for (size_t i = 0; i < r.size(); ++i) r[i] -= b[i];
    return r;
}

inline Vec vec_scale(const Rational& c, const Vec& a) {
    Vec r = a;
    for (auto& x : r) x *= c;
    return r;
}

inline Vec unit_vec(long n, long i) {
    Vec v(n);
    v[i] = Rational(1);
    return v;
}

// Dense rational matrix, row-major.
struct Matrix {
    long rows = 0, cols = 0;
    std::vector<Rational> a;

    Matrix() = default;
    Matrix(long r, long c) : rows(r), cols(c), a(static_cast<size_t>(r) * c) {}

    static Matrix identity(long n) {
        Matrix m(n, n);
        for (long i = 0; i < n; ++i) m.at(i, i) = Rational(1);
        return m;
    }

    Rational& at(long r, long c) { return a[static_cast<size_t>(r) * cols + c]; }
    const Rational& at(long r, long c) const { return a[static_cast<size_t>(r) * cols + c]; }

    Vec row(long r) const {
        return Vec(a.begin() + static_cast<size_t>(r) * cols,
                   a.begin() + static_cast<size_t>(r + 1) * cols);
    }
    Vec col(long c) const {
        Vec v(rows);
        for (long r = 0; r < rows; ++r) v[r] = at(r, c);
        return v;
    }
    void set_row(long r, const Vec& v) {
        std::copy(v.begin(), v.end(), a.begin() + static_cast<size_t>(r) * cols);
    }
    void set_col(long c, const Vec& v) {
        for (long r = 0; r < rows; ++r) at(r, c) = v[r];
    }

    bool is_zero() const { return vec_is_zero(a); }

    friend bool operator==(const Matrix& x, const Matrix& y) {
        return x.rows == y.rows && x.cols == y.cols && x.a == y.a;
    }
    friend bool operator!=(const Matrix& x, const Matrix& y) { return !(x == y); }

    Matrix mul(const Matrix& o) const {
        if (cols != o.rows) throw input_error("matrix product shape mismatch");
        Matrix r(rows, o.cols);
        for (long i = 0; i < rows; ++i)
            for (long k = 0; k < cols; ++k) {
                const Rational& x = at(i, k);
                if (x.is_zero()) continue;
                for (long j = 0; j < o.cols; ++j)
                    if (!o.at(k, j).is_zero()) r.at(i, j) += x * o.at(k, j);
            }
        return r;
    }

    Vec apply(const Vec& v) const {
        if (static_cast<long>(v.size()) != cols) throw input_error("matrix apply shape mismatch");
        Vec r(rows);
        for (long j = 0; j < cols; ++j) {
            if (v[j].is_zero()) continue;
            for (long i = 0; i < rows; ++i)
                if (!at(i, j).is_zero()) r[i] += at(i, j) * v[j];
        }
        return r;
    }

    Matrix transpose() const {
        Matrix r(cols, rows);
        for (long i = 0; i < rows; ++i)
            for (long j = 0; j < cols; ++j) r.at(j, i) = at(i, j);
        return r;
    }

    friend Matrix operator-(const Matrix& x, const Matrix& y) {
        if (x.rows != y.rows || x.cols != y.cols) throw input_error("matrix shape mismatch");
        Matrix r = x;
        for (size_t i = 0; i < r.a.size(); ++i) r.a[i] -= y.a[i];
        return r;
    }
    friend Matrix operator+(const Matrix& x, const Matrix& y) {
        if (x.rows != y.rows || x.cols != y.cols) throw input_error("matrix shape mismatch");
        Matrix r = x;
        for (size_t i = 0; i < r.a.size(); ++i) r.a[i] += y.a[i];
        return r;
    }
};

struct RrefResult {
    Matrix r;
    std::vector<long> pivots;  // pivot column of row i, ascending
};

// Reduced row echelon form, deterministic: leftmost column, first nonzero row.
inline RrefResult rref(const Matrix& m) {
    RrefResult out;
    out.r = m;
    Matrix& r = out.r;
    long lead = 0;
    for (long col = 0; col < r.cols && lead < r.rows; ++col) {
        long piv = -1;
        for (long i = lead; i < r.rows; ++i)
            if (!r.at(i, col).is_zero()) { piv = i; break; }
        if (piv < 0) continue;
        if (piv != lead)
            for (long j = 0; j < r.cols; ++j) std::swap(r.at(piv, j), r.at(lead, j));
        Rational inv = Rational(1) / r.at(lead, col);
        for (long j = col; j < r.cols; ++j) r.at(lead, j) *= inv;
        for (long i = 0; i < r.rows; ++i) {
            if (i == lead || r.at(i, col).is_zero()) continue;
            Rational f = r.at(i, col);
            for (long j = col; j < r.cols; ++j)
                if (!r.at(lead, j).is_zero()) r.at(i, j) -= f * r.at(lead, j);
        }
        out.pivots.push_back(col);
        ++lead;
    }
    return out;
}

inline long rank(const Matrix& m) { return static_cast<long>(rref(m).pivots.size()); }

// Columns form a basis of ker m; free variables in ascending column order.
inline Matrix nullspace(const Matrix& m) {
    RrefResult rr = rref(m);
    std::vector<bool> is_pivot(m.cols, false);
    for (long p : rr.pivots) is_pivot[p] = true;
    std::vector<long> free_cols;
    for (long j = 0; j < m.cols; ++j)
        if (!is_pivot[j]) free_cols.push_back(j);
    Matrix basis(m.cols, static_cast<long>(free_cols.size()));
    for (size_t k = 0; k < free_cols.size(); ++k) {
        long f = free_cols[k];
        basis.at(f, static_cast<long>(k)) = Rational(1);
        for (size_t i = 0; i < rr.pivots.size(); ++i)
            basis.at(rr.pivots[i], static_cast<long>(k)) = -rr.r.at(static_cast<long>(i), f);
    }
    return basis;
}

// Repeated exact solves against a fixed matrix: factor once, solve per rhs.
// Row reduction is recorded so that solve() is a single matrix-vector product
// plus consistency check.
class LinearSolver {
public:
    LinearSolver() = default;
    explicit LinearSolver(const Matrix& m) : cols_(m.cols) {
        // reduce [m | I]; left block becomes R, right block the row-op matrix E
        Matrix aug(m.rows, m.cols + m.rows);
        for (long i = 0; i < m.rows; ++i) {
            for (long j = 0; j < m.cols; ++j) aug.at(i, j) = m.at(i, j);
            aug.at(i, m.cols + i) = Rational(1);
        }
        long lead = 0;
        for (long col = 0; col < m.cols && lead < m.rows; ++col) {
            long piv = -1;
            for (long i = lead; i < m.rows; ++i)
                if (!aug.at(i, col).is_zero()) { piv = i; break; }
            if (piv < 0) continue;
            if (piv != lead)
                for (long j = 0; j < aug.cols; ++j) std::swap(aug.at(piv, j), aug.at(lead, j));
            Rational inv = Rational(1) / aug.at(lead, col);
            for (long j = 0; j < aug.cols; ++j) aug.at(lead, j) *= inv;
            for (long i = 0; i < m.rows; ++i) {
                if (i == lead || aug.at(i, col).is_zero()) continue;
                Rational f = aug.at(i, col);
                for (long j = 0; j < aug.cols; ++j)
                    if (!aug.at(lead, j).is_zero()) aug.at(i, j) -= f * aug.at(lead, j);
            }
            pivots_.push_back(col);
            ++lead;
        }
        rows_ = m.rows;
        e_ = Matrix(m.rows, m.rows);
        for (long i = 0; i < m.rows; ++i)
            for (long j = 0; j < m.rows; ++j) e_.at(i, j) = aug.at(i, m.cols + j);
    }

    long rank() const { return static_cast<long>(pivots_.size()); }
    const std::vector<long>& pivots() const { return pivots_; }

    // Some x with m x = b (free variables zero), or nullopt when inconsistent.
    std::optional<Vec> solve(const Vec& b) const {
        if (static_cast<long>(b.size()) != rows_) throw input_error("solve: rhs size mismatch");
        Vec eb = e_.apply(b);
        for (long i = static_cast<long>(pivots_.size()); i < rows_; ++i)
            if (!eb[i].is_zero()) return std::nullopt;
        Vec x(cols_);
        for (size_t i = 0; i < pivots_.size(); ++i) x[pivots_[i]] = eb[i];
        return x;
    }

private:
    long rows_ = 0, cols_ = 0;
    Matrix e_;
    std::vector<long> pivots_;
};

// Some x with m x = b, free variables zero. One-shot convenience.
inline std::optional<Vec> solve(const Matrix& m, const Vec& b) {
    return LinearSolver(m).solve(b);
}

}  // namespace opal
