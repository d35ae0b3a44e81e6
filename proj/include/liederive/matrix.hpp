#ifndef LIEDERIVE_MATRIX_HPP
#define LIEDERIVE_MATRIX_HPP

#include "field.hpp"

#include <cstddef>
#include <initializer_list>
#include <sstream>
#include <vector>

namespace liederive {

struct ShapeMismatchError : std::logic_error {
    explicit ShapeMismatchError(const std::string& what) : std::logic_error(what) {}
};

/// Dense matrix of exact scalars over a single field. Row-major storage.
class Matrix {
  public:
    Matrix() : field_(), rows_(0), cols_(0) {}

    Matrix(Field f, std::size_t rows, std::size_t cols)
        : field_(f), rows_(rows), cols_(cols), data_(rows * cols, Scalar::zero(f)) {}

    /// Builds from integer entries, mainly for fixtures and tests.
    static Matrix from_ints(Field f, std::initializer_list<std::initializer_list<long>> rows) {
        std::size_t r = rows.size();
        std::size_t c = r == 0 ? 0 : rows.begin()->size();
        Matrix m(f, r, c);
        std::size_t i = 0;
        for (const auto& row : rows) {
            if (row.size() != c) throw ShapeMismatchError("from_ints: ragged rows");
            std::size_t j = 0;
            for (long v : row) m.at(i, j++) = Scalar(f, v);
            ++i;
        }
        return m;
    }

    static Matrix identity(Field f, std::size_t n) {
        Matrix m(f, n, n);
        for (std::size_t i = 0; i < n; ++i) m.at(i, i) = Scalar::one(f);
        return m;
    }

    const Field& field() const { return field_; }
    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool empty() const { return rows_ == 0 || cols_ == 0; }

    Scalar& at(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const Scalar& at(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    bool is_square() const { return rows_ == cols_; }

    bool is_zero() const {
        for (const auto& s : data_)
            if (!s.is_zero()) return false;
        return true;
    }

    bool operator==(const Matrix& o) const {
        return field_ == o.field_ && rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
    }
    bool operator!=(const Matrix& o) const { return !(*this == o); }

    Matrix transpose() const {
        Matrix t(field_, cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) t.at(j, i) = at(i, j);
        return t;
    }

    Matrix& operator+=(const Matrix& o) {
        check_same_shape(o);
        for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += o.data_[k];
        return *this;
    }
    Matrix& operator-=(const Matrix& o) {
        check_same_shape(o);
        for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= o.data_[k];
        return *this;
    }
    Matrix& operator*=(const Scalar& s) {
        for (auto& v : data_) v *= s;
        return *this;
    }
    friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
    friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
    friend Matrix operator*(Matrix a, const Scalar& s) { return a *= s; }
    friend Matrix operator*(const Scalar& s, Matrix a) { return a *= s; }

    friend Matrix operator*(const Matrix& a, const Matrix& b) {
        require_same_field(a.field_, b.field_);
        if (a.cols_ != b.rows_) throw ShapeMismatchError("matrix product: inner dimensions differ");
        Matrix c(a.field_, a.rows_, b.cols_);
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t k = 0; k < a.cols_; ++k) {
                const Scalar& aik = a.at(i, k);
                if (aik.is_zero()) continue;
                for (std::size_t j = 0; j < b.cols_; ++j) {
                    const Scalar& bkj = b.at(k, j);
                    if (!bkj.is_zero()) c.at(i, j) += aik * bkj;
                }
            }
        return c;
    }

    /// Matrix-vector product; v given as coordinate vector.
    std::vector<Scalar> apply(const std::vector<Scalar>& v) const {
        if (v.size() != cols_) throw ShapeMismatchError("apply: dimension mismatch");
        std::vector<Scalar> out(rows_, Scalar::zero(field_));
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) {
                const Scalar& a = at(i, j);
                if (!a.is_zero() && !v[j].is_zero()) out[i] += a * v[j];
            }
        return out;
    }

    Scalar trace() const {
        if (!is_square()) throw ShapeMismatchError("trace: matrix not square");
        Scalar t = Scalar::zero(field_);
        for (std::size_t i = 0; i < rows_; ++i) t += at(i, i);
        return t;
    }

    std::vector<Scalar> row(std::size_t i) const {
        return std::vector<Scalar>(data_.begin() + i * cols_, data_.begin() + (i + 1) * cols_);
    }

    void set_row(std::size_t i, const std::vector<Scalar>& v) {
        for (std::size_t j = 0; j < cols_; ++j) at(i, j) = v[j];
    }

    /// Flattens row-major into a single coordinate vector.
    std::vector<Scalar> vectorize() const { return data_; }

    static Matrix from_rows(Field f, std::size_t cols, const std::vector<std::vector<Scalar>>& rows) {
        Matrix m(f, rows.size(), cols);
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (rows[i].size() != cols) throw ShapeMismatchError("from_rows: ragged rows");
            m.set_row(i, rows[i]);
        }
        return m;
    }

    std::string to_string() const {
        std::ostringstream os;
        os << "[";
        for (std::size_t i = 0; i < rows_; ++i) {
            os << (i ? "; " : "");
            for (std::size_t j = 0; j < cols_; ++j) os << (j ? " " : "") << at(i, j).display();
        }
        os << "]";
        return os.str();
    }

  private:
    void check_same_shape(const Matrix& o) const {
        require_same_field(field_, o.field_);
        if (rows_ != o.rows_ || cols_ != o.cols_) throw ShapeMismatchError("shapes differ");
    }

    Field field_;
    std::size_t rows_, cols_;
    std::vector<Scalar> data_;
};

struct RrefResult {
    Matrix reduced;
    std::size_t rank = 0;
    std::vector<std::size_t> pivots; // column index per pivot row
};

/// Unique reduced row-echelon form. Pivot choice is deterministic: first
/// nonzero entry scanning rows top-down in each column left-to-right.
inline RrefResult rref(Matrix m) {
    RrefResult res;
    std::size_t r = 0;
    for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
        std::size_t pivot = r;
        while (pivot < m.rows() && m.at(pivot, c).is_zero()) ++pivot;
        if (pivot == m.rows()) continue;
        if (pivot != r)
            for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m.at(pivot, j), m.at(r, j));
        Scalar inv = m.at(r, c).inverse();
        for (std::size_t j = c; j < m.cols(); ++j)
            if (!m.at(r, j).is_zero()) m.at(r, j) *= inv;
        for (std::size_t i = 0; i < m.rows(); ++i) {
            if (i == r) continue;
            const Scalar f = m.at(i, c);
            if (f.is_zero()) continue;
            for (std::size_t j = c; j < m.cols(); ++j) {
                if (m.at(r, j).is_zero()) continue;
                m.at(i, j) -= f * m.at(r, j);
            }
        }
        res.pivots.push_back(c);
        ++r;
    }
    res.rank = r;
    res.reduced = std::move(m);
    return res;
}

/// Canonical basis of {v : Mv = 0}, one kernel vector per row, in RREF.
inline Matrix kernel(const Matrix& m) {
    RrefResult rr = rref(m);
    std::vector<bool> is_pivot(m.cols(), false);
    for (std::size_t c : rr.pivots) is_pivot[c] = true;
    std::vector<std::vector<Scalar>> rows;
    for (std::size_t f = 0; f < m.cols(); ++f) {
        if (is_pivot[f]) continue;
        std::vector<Scalar> v(m.cols(), Scalar::zero(m.field()));
        v[f] = Scalar::one(m.field());
        for (std::size_t i = 0; i < rr.rank; ++i) v[rr.pivots[i]] = -rr.reduced.at(i, f);
        rows.push_back(std::move(v));
    }
    Matrix basis = Matrix::from_rows(m.field(), m.cols(), rows);
    return rref(basis).reduced; // canonical ordering
}

inline Scalar det(Matrix m) {
    if (!m.is_square()) throw ShapeMismatchError("det: matrix not square");
    Scalar d = Scalar::one(m.field());
    for (std::size_t c = 0; c < m.cols(); ++c) {
        std::size_t pivot = c;
        while (pivot < m.rows() && m.at(pivot, c).is_zero()) ++pivot;
        if (pivot == m.rows()) return Scalar::zero(m.field());
        if (pivot != c) {
            for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m.at(pivot, j), m.at(c, j));
            d = -d;
        }
        d *= m.at(c, c);
        Scalar inv = m.at(c, c).inverse();
        for (std::size_t i = c + 1; i < m.rows(); ++i) {
            Scalar f = m.at(i, c);
            if (f.is_zero()) continue;
            f *= inv;
            for (std::size_t j = c; j < m.cols(); ++j)
                if (!m.at(c, j).is_zero()) m.at(i, j) -= f * m.at(c, j);
        }
    }
    return d;
}

inline bool is_invertible(const Matrix& m) {
    return m.is_square() && !det(m).is_zero();
}

inline Matrix inverse(const Matrix& m) {
    if (!m.is_square()) throw ShapeMismatchError("inverse: matrix not square");
    std::size_t n = m.rows();
    Matrix aug(m.field(), n, 2 * n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) aug.at(i, j) = m.at(i, j);
        aug.at(i, n + i) = Scalar::one(m.field());
    }
    RrefResult rr = rref(aug);
    if (rr.rank < n || rr.pivots[n - 1] >= n)
        throw std::domain_error("inverse: matrix is singular");
    Matrix inv(m.field(), n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) inv.at(i, j) = rr.reduced.at(i, n + j);
    return inv;
}

/// Monic characteristic polynomial of a square matrix, coefficients low-to-high.
/// Faddeev-LeVerrier over the rationals; the division-free Berkowitz scheme on
/// prime fields (where LeVerrier's integer divisions can hit the characteristic).
inline std::vector<Scalar> char_poly(const Matrix& a) {
    if (!a.is_square()) throw ShapeMismatchError("char_poly: matrix not square");
    const Field f = a.field();
    const std::size_t n = a.rows();
    std::vector<Scalar> coeffs(n + 1, Scalar::zero(f));
    if (n == 0) {
        coeffs[0] = Scalar::one(f);
        return coeffs;
    }
    if (f.is_rationals()) {
        // det(tI - A) = t^n + c_{n-1} t^{n-1} + ... + c_0
        Matrix m(f, n, n); // M_0 = 0
        Scalar c = Scalar::one(f);
        coeffs[n] = c;
        for (std::size_t k = 1; k <= n; ++k) {
            for (std::size_t i = 0; i < n; ++i) m.at(i, i) += c;
            m = a * m;
            c = -(m.trace() / Scalar(f, static_cast<long>(k)));
            coeffs[n - k] = c;
        }
        return coeffs;
    }
    // Berkowitz: iteratively build the coefficient vector via Toeplitz products.
    // poly held high-to-low during the loop.
    std::vector<Scalar> poly{Scalar::one(f), -a.at(0, 0)};
    for (std::size_t k = 1; k < n; ++k) {
        // principal (k+1)x(k+1) block of A split around row/col k
        // R = row (a_{k,0..k-1}), C = column (a_{0..k-1,k}), M = leading k x k block
        std::vector<Scalar> toep(k + 2, Scalar::zero(f));
        toep[0] = Scalar::one(f);
        toep[1] = -a.at(k, k);
        std::vector<Scalar> v(k);
        for (std::size_t i = 0; i < k; ++i) v[i] = a.at(i, k); // C
        for (std::size_t j = 0; j + 2 <= k + 2; ++j) {
            if (j >= 2) {
                // v <- M v
                std::vector<Scalar> w(k, Scalar::zero(f));
                for (std::size_t i = 0; i < k; ++i)
                    for (std::size_t l = 0; l < k; ++l)
                        if (!a.at(i, l).is_zero() && !v[l].is_zero()) w[i] += a.at(i, l) * v[l];
                v = std::move(w);
            }
            if (j >= 1) {
                Scalar rv = Scalar::zero(f); // R . v
                for (std::size_t l = 0; l < k; ++l)
                    if (!a.at(k, l).is_zero() && !v[l].is_zero()) rv += a.at(k, l) * v[l];
                toep[j + 1] = -rv;
            }
        }
        // poly <- toeplitz(toep) * poly
        std::vector<Scalar> next(poly.size() + 1, Scalar::zero(f));
        for (std::size_t i = 0; i < poly.size(); ++i)
            for (std::size_t j = 0; j + i < next.size() && j < toep.size(); ++j)
                if (!toep[j].is_zero() && !poly[i].is_zero()) next[i + j] += toep[j] * poly[i];
        poly = std::move(next);
    }
    for (std::size_t i = 0; i <= n; ++i) coeffs[i] = poly[n - i];
    return coeffs;
}

} // namespace liederive

#endif
