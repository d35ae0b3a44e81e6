#ifndef LIEDERIVE_ASSOC_HPP
#define LIEDERIVE_ASSOC_HPP

#include "lie.hpp"
#include "subspace.hpp"

#include <array>
#include <optional>
#include <string>

namespace liederive {

/// Finite-dimensional associative algebra given by a multiplication tensor:
/// e_i . e_j = sum_k m[i][j][k] e_k. Associativity is checkable data.
class AssocAlgebra {
  public:
    AssocAlgebra() : field_(), n_(0) {}
    AssocAlgebra(Field f, std::size_t n) : field_(f), n_(n), m_(n * n * n, Scalar::zero(f)) {}

    const Field& field() const { return field_; }
    std::size_t dim() const { return n_; }

    const Scalar& m(std::size_t i, std::size_t j, std::size_t k) const {
        return m_[(i * n_ + j) * n_ + k];
    }
    Scalar& m(std::size_t i, std::size_t j, std::size_t k) { return m_[(i * n_ + j) * n_ + k]; }

    void set_product(std::size_t i, std::size_t j, const std::vector<Scalar>& coords) {
        for (std::size_t k = 0; k < n_; ++k) m(i, j, k) = coords[k];
    }

    const std::vector<std::string>& labels() const { return labels_; }
    void set_labels(std::vector<std::string> l) { labels_ = std::move(l); }
    std::string label(std::size_t i) const {
        return i < labels_.size() ? labels_[i] : "e" + std::to_string(i + 1);
    }

    std::vector<Scalar> unit(std::size_t i) const {
        std::vector<Scalar> v(n_, Scalar::zero(field_));
        v[i] = Scalar::one(field_);
        return v;
    }

    std::vector<Scalar> multiply(const std::vector<Scalar>& u, const std::vector<Scalar>& v) const {
        std::vector<Scalar> out(n_, Scalar::zero(field_));
        for (std::size_t i = 0; i < n_; ++i) {
            if (u[i].is_zero()) continue;
            for (std::size_t j = 0; j < n_; ++j) {
                if (v[j].is_zero()) continue;
                const Scalar uv = u[i] * v[j];
                for (std::size_t k = 0; k < n_; ++k) {
                    const Scalar& c = m(i, j, k);
                    if (!c.is_zero()) out[k] += uv * c;
                }
            }
        }
        return out;
    }

    std::vector<Scalar> lie_bracket(const std::vector<Scalar>& u,
                                    const std::vector<Scalar>& v) const {
        auto a = multiply(u, v);
        auto b = multiply(v, u);
        for (std::size_t k = 0; k < n_; ++k) a[k] -= b[k];
        return a;
    }

    /// First violated associativity triple, if any.
    std::optional<std::array<std::size_t, 3>> validate() const {
        for (std::size_t i = 0; i < n_; ++i)
            for (std::size_t j = 0; j < n_; ++j)
                for (std::size_t k = 0; k < n_; ++k) {
                    auto lhs = multiply(multiply(unit(i), unit(j)), unit(k));
                    auto rhs = multiply(unit(i), multiply(unit(j), unit(k)));
                    if (lhs != rhs) return std::array<std::size_t, 3>{i, j, k};
                }
        return std::nullopt;
    }

    /// Two-sided identity element, if one exists.
    std::optional<std::vector<Scalar>> identity_element() const {
        // solve e . x = x and x . e = x for all basis x
        Matrix sys(field_, 2 * n_ * n_, n_ + 1);
        for (std::size_t j = 0; j < n_; ++j)
            for (std::size_t k = 0; k < n_; ++k) {
                for (std::size_t i = 0; i < n_; ++i) {
                    sys.at(j * n_ + k, i) = m(i, j, k);
                    sys.at(n_ * n_ + j * n_ + k, i) = m(j, i, k);
                }
                Scalar rhs = j == k ? Scalar::one(field_) : Scalar::zero(field_);
                sys.at(j * n_ + k, n_) = rhs;
                sys.at(n_ * n_ + j * n_ + k, n_) = rhs;
            }
        RrefResult rr = rref(sys);
        for (std::size_t c : rr.pivots)
            if (c == n_) return std::nullopt;
        std::vector<Scalar> e(n_, Scalar::zero(field_));
        for (std::size_t i = 0; i < rr.rank; ++i) e[rr.pivots[i]] = rr.reduced.at(i, n_);
        return e;
    }

    bool is_unital() const { return static_cast<bool>(identity_element()); }

    Subspace full_space() const { return Subspace::full(field_, n_); }

  private:
    Field field_;
    std::size_t n_;
    std::vector<Scalar> m_;
    std::vector<std::string> labels_;
};

/// Closure of a subspace under left and right multiplication by the algebra.
inline Subspace ideal_closure(const AssocAlgebra& r, Subspace w) {
    while (true) {
        std::vector<std::vector<Scalar>> rows;
        for (std::size_t i = 0; i < w.dim(); ++i) rows.push_back(w.basis_vector(i));
        for (std::size_t b = 0; b < r.dim(); ++b)
            for (std::size_t i = 0; i < w.dim(); ++i) {
                rows.push_back(r.multiply(r.unit(b), w.basis_vector(i)));
                rows.push_back(r.multiply(w.basis_vector(i), r.unit(b)));
            }
        Subspace next = Subspace::span_of_vectors(r.field(), r.dim(), rows);
        if (next == w) return w;
        w = next;
    }
}

/// The derived ring: the two-sided ideal generated by all Lie commutators.
inline Subspace derived_ring(const AssocAlgebra& r) {
    std::vector<std::vector<Scalar>> rows;
    for (std::size_t i = 0; i < r.dim(); ++i)
        for (std::size_t j = i + 1; j < r.dim(); ++j) rows.push_back(r.lie_bracket(r.unit(i), r.unit(j)));
    return ideal_closure(r, Subspace::span_of_vectors(r.field(), r.dim(), rows));
}

/// delta-series: delta^0 = R, delta^n = ideal generated by the commutators of
/// delta^{n-1}; computed until stabilization (first entry is delta^0).
inline std::vector<Subspace> delta_series(const AssocAlgebra& r) {
    std::vector<Subspace> chain{r.full_space()};
    while (true) {
        const Subspace& cur = chain.back();
        std::vector<std::vector<Scalar>> rows;
        for (std::size_t i = 0; i < cur.dim(); ++i)
            for (std::size_t j = i + 1; j < cur.dim(); ++j)
                rows.push_back(r.lie_bracket(cur.basis_vector(i), cur.basis_vector(j)));
        Subspace next = ideal_closure(r, Subspace::span_of_vectors(r.field(), r.dim(), rows));
        if (next == cur) break;
        chain.push_back(std::move(next));
    }
    return chain;
}

inline bool is_solvable_ring(const AssocAlgebra& r) { return delta_series(r).back().is_zero(); }

/// Power chain R, R^2, R^3, ... (with R^{k+1} = R^k . R) until stabilization.
inline std::vector<Subspace> power_series(const AssocAlgebra& r) {
    std::vector<Subspace> chain{r.full_space()};
    while (true) {
        const Subspace& cur = chain.back();
        std::vector<std::vector<Scalar>> rows;
        for (std::size_t i = 0; i < cur.dim(); ++i)
            for (std::size_t b = 0; b < r.dim(); ++b)
                rows.push_back(r.multiply(cur.basis_vector(i), r.unit(b)));
        Subspace next = Subspace::span_of_vectors(r.field(), r.dim(), rows);
        if (next == cur) break;
        chain.push_back(std::move(next));
    }
    return chain;
}

inline bool is_nilpotent_ring(const AssocAlgebra& r) { return power_series(r).back().is_zero(); }

/// Unitalization: F + R with (a,x)(b,y) = (ab, ay + bx + xy); the adjoined
/// identity sits at index 0.
inline AssocAlgebra dorroh_extension(const AssocAlgebra& r) {
    const Field f = r.field();
    const std::size_t n = r.dim();
    AssocAlgebra d(f, n + 1);
    d.m(0, 0, 0) = Scalar::one(f);
    for (std::size_t i = 0; i < n; ++i) {
        d.m(0, i + 1, i + 1) = Scalar::one(f);
        d.m(i + 1, 0, i + 1) = Scalar::one(f);
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t k = 0; k < n; ++k) d.m(i + 1, j + 1, k + 1) = r.m(i, j, k);
    }
    std::vector<std::string> labels{"1"};
    for (std::size_t i = 0; i < n; ++i) labels.push_back(r.label(i));
    d.set_labels(labels);
    if (d.validate()) throw std::logic_error("dorroh_extension: associativity broke");
    return d;
}

/// The commutator Lie algebra of an associative algebra: [x,y] = xy - yx.
inline LieAlgebra commutator_lie_algebra(const AssocAlgebra& r) {
    LieAlgebra L(r.field(), r.dim());
    L.set_labels(r.labels());
    for (std::size_t i = 0; i < r.dim(); ++i)
        for (std::size_t j = i + 1; j < r.dim(); ++j)
            L.set_bracket(i, j, r.lie_bracket(r.unit(i), r.unit(j)));
    auto rep = L.validate();
    if (!rep.ok)
        throw std::logic_error("commutator_lie_algebra: associativity did not yield Jacobi: " +
                               rep.message());
    return L;
}

/// Multiplication restricted to a multiplicatively closed subspace.
inline AssocAlgebra assoc_restrict(const AssocAlgebra& r, const Subspace& u) {
    AssocAlgebra s(r.field(), u.dim());
    for (std::size_t a = 0; a < u.dim(); ++a)
        for (std::size_t b = 0; b < u.dim(); ++b) {
            auto w = r.multiply(u.basis_vector(a), u.basis_vector(b));
            auto coords = u.coordinates_of(w);
            if (!coords) throw std::invalid_argument("assoc_restrict: subspace not closed");
            s.set_product(a, b, *coords);
        }
    return s;
}

namespace assoc_builders {

/// Full matrix algebra on n-by-n matrices; basis E_{ij} row-major.
inline AssocAlgebra full_matrix(std::size_t n, Field f = Field::rationals()) {
    AssocAlgebra r(f, n * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t k = 0; k < n; ++k)
                for (std::size_t l = 0; l < n; ++l)
                    if (j == k) r.m(i * n + j, k * n + l, i * n + l) = Scalar::one(f);
    std::vector<std::string> labels;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            labels.push_back("E" + std::to_string(i + 1) + std::to_string(j + 1));
    r.set_labels(labels);
    return r;
}

inline AssocAlgebra from_matrix_units(std::size_t n, Field f,
                                      const std::vector<std::pair<std::size_t, std::size_t>>& units) {
    AssocAlgebra r(f, units.size());
    for (std::size_t a = 0; a < units.size(); ++a)
        for (std::size_t b = 0; b < units.size(); ++b) {
            if (units[a].second != units[b].first) continue;
            std::pair<std::size_t, std::size_t> prod{units[a].first, units[b].second};
            for (std::size_t c = 0; c < units.size(); ++c)
                if (units[c] == prod) r.m(a, b, c) = Scalar::one(f);
        }
    std::vector<std::string> labels;
    for (auto [i, j] : units)
        labels.push_back("E" + std::to_string(i + 1) + std::to_string(j + 1));
    r.set_labels(labels);
    (void)n;
    return r;
}

inline AssocAlgebra upper_triangular(std::size_t n, Field f = Field::rationals()) {
    std::vector<std::pair<std::size_t, std::size_t>> units;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) units.push_back({i, j});
    return from_matrix_units(n, f, units);
}

inline AssocAlgebra strictly_upper_triangular(std::size_t n, Field f = Field::rationals()) {
    std::vector<std::pair<std::size_t, std::size_t>> units;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) units.push_back({i, j});
    return from_matrix_units(n, f, units);
}

/// Zero multiplication on k generators.
inline AssocAlgebra zero_algebra(std::size_t k, Field f = Field::rationals()) {
    return AssocAlgebra(f, k);
}

/// F[t]/(t^m): commutative, unital for m >= 1.
inline AssocAlgebra truncated_polynomials(std::size_t m, Field f = Field::rationals()) {
    AssocAlgebra r(f, m);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j)
            if (i + j < m) r.m(i, j, i + j) = Scalar::one(f);
    return r;
}

} // namespace assoc_builders
} // namespace liederive

#endif
