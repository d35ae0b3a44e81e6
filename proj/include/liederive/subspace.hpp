#ifndef LIEDERIVE_SUBSPACE_HPP
#define LIEDERIVE_SUBSPACE_HPP

#include "matrix.hpp"

#include <optional>

namespace liederive {

struct AmbientMismatchError : std::logic_error {
    AmbientMismatchError() : std::logic_error("subspaces live in different ambient spaces") {}
};

/// Subspace of F^n held as a canonical reduced row-echelon basis with zero
/// rows removed. Canonicality makes equality a plain entry-wise comparison.
class Subspace {
  public:
    Subspace() : ambient_(0) {}

    static Subspace zero(Field f, std::size_t ambient) {
        Subspace s;
        s.ambient_ = ambient;
        s.basis_ = Matrix(f, 0, ambient);
        return s;
    }

    static Subspace full(Field f, std::size_t ambient) {
        return span(Matrix::identity(f, ambient));
    }

    /// Canonicalizes the row span of the given matrix.
    static Subspace span(const Matrix& rows) {
        RrefResult rr = rref(rows);
        Subspace s;
        s.ambient_ = rows.cols();
        s.pivots_ = rr.pivots;
        s.basis_ = Matrix(rows.field(), rr.rank, rows.cols());
        for (std::size_t i = 0; i < rr.rank; ++i)
            for (std::size_t j = 0; j < rows.cols(); ++j) s.basis_.at(i, j) = rr.reduced.at(i, j);
        return s;
    }

    static Subspace span_of_vectors(Field f, std::size_t ambient,
                                    const std::vector<std::vector<Scalar>>& vecs) {
        return span(Matrix::from_rows(f, ambient, vecs));
    }

    static Subspace line(Field f, const std::vector<Scalar>& v) {
        return span_of_vectors(f, v.size(), {v});
    }

    const Field& field() const { return basis_.field(); }
    std::size_t ambient_dim() const { return ambient_; }
    std::size_t dim() const { return basis_.rows(); }
    bool is_zero() const { return dim() == 0; }
    const Matrix& basis() const { return basis_; }
    const std::vector<std::size_t>& pivots() const { return pivots_; }
    std::vector<Scalar> basis_vector(std::size_t i) const { return basis_.row(i); }

    bool operator==(const Subspace& o) const {
        return ambient_ == o.ambient_ && basis_ == o.basis_;
    }
    bool operator!=(const Subspace& o) const { return !(*this == o); }

    bool contains_vector(const std::vector<Scalar>& v) const {
        return static_cast<bool>(coordinates_of(v));
    }

    /// Coordinates of v in the canonical basis, if v lies in the subspace.
    /// With an RREF basis the candidate coordinates are just the pivot entries.
    std::optional<std::vector<Scalar>> coordinates_of(const std::vector<Scalar>& v) const {
        if (v.size() != ambient_) throw AmbientMismatchError();
        std::vector<Scalar> coords(dim(), Scalar::zero(field()));
        std::vector<Scalar> residual = v;
        for (std::size_t i = 0; i < dim(); ++i) {
            coords[i] = residual[pivots_[i]];
            if (coords[i].is_zero()) continue;
            for (std::size_t j = 0; j < ambient_; ++j) {
                const Scalar& b = basis_.at(i, j);
                if (!b.is_zero()) residual[j] -= coords[i] * b;
            }
        }
        for (const auto& s : residual)
            if (!s.is_zero()) return std::nullopt;
        return coords;
    }

    std::vector<Scalar> from_coordinates(const std::vector<Scalar>& coords) const {
        std::vector<Scalar> v(ambient_, Scalar::zero(field()));
        for (std::size_t i = 0; i < dim(); ++i)
            for (std::size_t j = 0; j < ambient_; ++j) {
                const Scalar& b = basis_.at(i, j);
                if (!b.is_zero() && !coords[i].is_zero()) v[j] += coords[i] * b;
            }
        return v;
    }

    /// Ambient coordinate indices not used as pivots; the standard basis
    /// vectors at these indices form a complement transversal.
    std::vector<std::size_t> complement_coordinates() const {
        std::vector<bool> piv(ambient_, false);
        for (std::size_t c : pivots_) piv[c] = true;
        std::vector<std::size_t> out;
        for (std::size_t j = 0; j < ambient_; ++j)
            if (!piv[j]) out.push_back(j);
        return out;
    }

  private:
    std::size_t ambient_;
    Matrix basis_;
    std::vector<std::size_t> pivots_;
};

inline void require_same_ambient(const Subspace& a, const Subspace& b) {
    require_same_field(a.field(), b.field());
    if (a.ambient_dim() != b.ambient_dim()) throw AmbientMismatchError();
}

inline Subspace sum(const Subspace& a, const Subspace& b) {
    require_same_ambient(a, b);
    Matrix stacked(a.field(), a.dim() + b.dim(), a.ambient_dim());
    for (std::size_t i = 0; i < a.dim(); ++i) stacked.set_row(i, a.basis_vector(i));
    for (std::size_t i = 0; i < b.dim(); ++i) stacked.set_row(a.dim() + i, b.basis_vector(i));
    return Subspace::span(stacked);
}

/// Intersection via the Zassenhaus block construction: row-reduce
/// [A | A; B | 0]; rows whose left block vanished carry the intersection
/// in the right block.
inline Subspace intersect(const Subspace& a, const Subspace& b) {
    require_same_ambient(a, b);
    const std::size_t n = a.ambient_dim();
    Matrix block(a.field(), a.dim() + b.dim(), 2 * n);
    for (std::size_t i = 0; i < a.dim(); ++i) {
        auto v = a.basis_vector(i);
        for (std::size_t j = 0; j < n; ++j) {
            block.at(i, j) = v[j];
            block.at(i, n + j) = v[j];
        }
    }
    for (std::size_t i = 0; i < b.dim(); ++i) {
        auto v = b.basis_vector(i);
        for (std::size_t j = 0; j < n; ++j) block.at(a.dim() + i, j) = v[j];
    }
    RrefResult rr = rref(block);
    std::vector<std::vector<Scalar>> rows;
    for (std::size_t i = 0; i < rr.rank; ++i) {
        bool left_zero = true;
        for (std::size_t j = 0; j < n && left_zero; ++j)
            if (!rr.reduced.at(i, j).is_zero()) left_zero = false;
        if (!left_zero) continue;
        std::vector<Scalar> v(n, Scalar::zero(a.field()));
        for (std::size_t j = 0; j < n; ++j) v[j] = rr.reduced.at(i, n + j);
        rows.push_back(std::move(v));
    }
    return Subspace::span_of_vectors(a.field(), n, rows);
}

/// True when the first subspace contains the second.
inline bool contains(const Subspace& outer, const Subspace& inner) {
    require_same_ambient(outer, inner);
    for (std::size_t i = 0; i < inner.dim(); ++i)
        if (!outer.contains_vector(inner.basis_vector(i))) return false;
    return true;
}

inline bool equal(const Subspace& a, const Subspace& b) { return a == b; }

} // namespace liederive

#endif
