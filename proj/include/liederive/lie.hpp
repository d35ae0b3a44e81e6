#ifndef LIEDERIVE_LIE_HPP
#define LIEDERIVE_LIE_HPP

#include "subspace.hpp"

#include <optional>
#include <string>

namespace liederive {

struct NotAnIdealError : std::runtime_error {
    std::size_t basis_index, ideal_index;
    NotAnIdealError(std::size_t b, std::size_t i)
        : std::runtime_error("subspace is not an ideal: [e" + std::to_string(b) + ", u" +
                             std::to_string(i) + "] falls outside"),
          basis_index(b), ideal_index(i) {}
};

struct NotASubalgebraError : std::runtime_error {
    std::size_t left_index, right_index;
    NotASubalgebraError(std::size_t a, std::size_t b)
        : std::runtime_error("subspace is not closed under the bracket: [u" + std::to_string(a) +
                             ", u" + std::to_string(b) + "] falls outside"),
          left_index(a), right_index(b) {}
};

/// Validation outcome: either ok, or the first violated axiom with the
/// offending index triple and the residual vector. Violations are data.
struct ValidationReport {
    bool ok = true;
    std::string axiom;                  // "antisymmetry" or "jacobi"
    std::size_t i = 0, j = 0, l = 0;    // violating triple
    std::vector<Scalar> residual;

    std::string message() const {
        if (ok) return "ok";
        return axiom + " violation at (" + std::to_string(i) + "," + std::to_string(j) + "," +
               std::to_string(l) + ")";
    }
};

/// Finite-dimensional Lie algebra given by a structure-constant tensor:
/// [e_i, e_j] = sum_k c[i][j][k] e_k. The tensor is stored densely and the
/// axioms are checked, never assumed.
class LieAlgebra {
  public:
    LieAlgebra() : field_(), n_(0) {}

    LieAlgebra(Field f, std::size_t n)
        : field_(f), n_(n), c_(n * n * n, Scalar::zero(f)) {}

    const Field& field() const { return field_; }
    std::size_t dim() const { return n_; }

    const Scalar& c(std::size_t i, std::size_t j, std::size_t k) const {
        return c_[(i * n_ + j) * n_ + k];
    }
    Scalar& c(std::size_t i, std::size_t j, std::size_t k) { return c_[(i * n_ + j) * n_ + k]; }

    /// Sets [e_i, e_j] and its antisymmetric mirror.
    void set_bracket(std::size_t i, std::size_t j, const std::vector<Scalar>& coords) {
        for (std::size_t k = 0; k < n_; ++k) {
            c(i, j, k) = coords[k];
            c(j, i, k) = -coords[k];
        }
    }

    void set_bracket_term(std::size_t i, std::size_t j, std::size_t k, const Scalar& v) {
        c(i, j, k) = v;
        c(j, i, k) = -v;
    }

    const std::vector<std::string>& labels() const { return labels_; }
    void set_labels(std::vector<std::string> l) { labels_ = std::move(l); }
    std::string label(std::size_t i) const {
        return i < labels_.size() ? labels_[i] : "e" + std::to_string(i + 1);
    }

    bool operator==(const LieAlgebra& o) const {
        return field_ == o.field_ && n_ == o.n_ && c_ == o.c_;
    }
    bool operator!=(const LieAlgebra& o) const { return !(*this == o); }

    std::vector<Scalar> basis_bracket(std::size_t i, std::size_t j) const {
        std::vector<Scalar> out(n_, Scalar::zero(field_));
        for (std::size_t k = 0; k < n_; ++k) out[k] = c(i, j, k);
        return out;
    }

    std::vector<Scalar> bracket(const std::vector<Scalar>& u, const std::vector<Scalar>& v) const {
        if (u.size() != n_ || v.size() != n_) throw ShapeMismatchError("bracket: dimension mismatch");
        std::vector<Scalar> out(n_, Scalar::zero(field_));
        for (std::size_t i = 0; i < n_; ++i) {
            if (u[i].is_zero()) continue;
            for (std::size_t j = 0; j < n_; ++j) {
                if (v[j].is_zero()) continue;
                const Scalar uv = u[i] * v[j];
                for (std::size_t k = 0; k < n_; ++k) {
                    const Scalar& cc = c(i, j, k);
                    if (!cc.is_zero()) out[k] += uv * cc;
                }
            }
        }
        return out;
    }

    /// Matrix of ad(x): column j holds [x, e_j].
    Matrix ad(const std::vector<Scalar>& x) const {
        Matrix m(field_, n_, n_);
        for (std::size_t j = 0; j < n_; ++j) {
            std::vector<Scalar> col(n_, Scalar::zero(field_));
            for (std::size_t i = 0; i < n_; ++i) {
                if (x[i].is_zero()) continue;
                for (std::size_t k = 0; k < n_; ++k) {
                    const Scalar& cc = c(i, j, k);
                    if (!cc.is_zero()) col[k] += x[i] * cc;
                }
            }
            for (std::size_t k = 0; k < n_; ++k) m.at(k, j) = col[k];
        }
        return m;
    }

    Matrix ad_basis(std::size_t i) const {
        std::vector<Scalar> x(n_, Scalar::zero(field_));
        x[i] = Scalar::one(field_);
        return ad(x);
    }

    ValidationReport validate() const {
        ValidationReport rep;
        for (std::size_t i = 0; i < n_; ++i)
            for (std::size_t j = i; j < n_; ++j)
                for (std::size_t k = 0; k < n_; ++k) {
                    Scalar s = c(i, j, k) + c(j, i, k);
                    if (!s.is_zero()) {
                        rep.ok = false;
                        rep.axiom = "antisymmetry";
                        rep.i = i;
                        rep.j = j;
                        rep.l = k;
                        rep.residual = {s};
                        return rep;
                    }
                }
        for (std::size_t i = 0; i < n_; ++i)
            for (std::size_t j = i + 1; j < n_; ++j)
                for (std::size_t l = j + 1; l < n_; ++l) {
                    std::vector<Scalar> r =
                        bracket(basis_bracket(i, j), unit(l));
                    std::vector<Scalar> r2 = bracket(basis_bracket(j, l), unit(i));
                    std::vector<Scalar> r3 = bracket(basis_bracket(l, i), unit(j));
                    bool bad = false;
                    for (std::size_t k = 0; k < n_; ++k) {
                        r[k] += r2[k] + r3[k];
                        if (!r[k].is_zero()) bad = true;
                    }
                    if (bad) {
                        rep.ok = false;
                        rep.axiom = "jacobi";
                        rep.i = i;
                        rep.j = j;
                        rep.l = l;
                        rep.residual = r;
                        return rep;
                    }
                }
        return rep;
    }

    std::vector<Scalar> unit(std::size_t i) const {
        std::vector<Scalar> v(n_, Scalar::zero(field_));
        v[i] = Scalar::one(field_);
        return v;
    }

    Subspace full_space() const { return Subspace::full(field_, n_); }
    Subspace zero_space() const { return Subspace::zero(field_, n_); }

  private:
    Field field_;
    std::size_t n_;
    std::vector<Scalar> c_;
    std::vector<std::string> labels_;
};

/// Span of [u_a, v_b] over basis pairs of the two subspaces.
inline Subspace subspace_bracket(const LieAlgebra& L, const Subspace& u, const Subspace& v) {
    require_same_ambient(u, v);
    if (u.ambient_dim() != L.dim()) throw AmbientMismatchError();
    std::vector<std::vector<Scalar>> rows;
    for (std::size_t a = 0; a < u.dim(); ++a)
        for (std::size_t b = 0; b < v.dim(); ++b)
            rows.push_back(L.bracket(u.basis_vector(a), v.basis_vector(b)));
    return Subspace::span_of_vectors(L.field(), L.dim(), rows);
}

inline Subspace derived_subalgebra(const LieAlgebra& L) {
    return subspace_bracket(L, L.full_space(), L.full_space());
}

/// Derived series L, [L,L], [[L,L],[L,L]], ... until canonical equality.
inline std::vector<Subspace> derived_series(const LieAlgebra& L) {
    std::vector<Subspace> chain{L.full_space()};
    while (true) {
        Subspace next = subspace_bracket(L, chain.back(), chain.back());
        if (next == chain.back()) break;
        chain.push_back(std::move(next));
    }
    return chain;
}

/// Lower central series L, [L,L], [[L,L],L], ... until canonical equality.
inline std::vector<Subspace> lower_central_series(const LieAlgebra& L) {
    std::vector<Subspace> chain{L.full_space()};
    while (true) {
        Subspace next = subspace_bracket(L, chain.back(), L.full_space());
        if (next == chain.back()) break;
        chain.push_back(std::move(next));
    }
    return chain;
}

inline bool is_solvable(const LieAlgebra& L) { return derived_series(L).back().is_zero(); }
inline bool is_nilpotent(const LieAlgebra& L) { return lower_central_series(L).back().is_zero(); }

/// Nilpotency class: the length of the lower central series down to zero.
/// Zero for the zero algebra, 1 for nonzero abelian algebras.
inline std::optional<std::size_t> nilpotency_class(const LieAlgebra& L) {
    auto chain = lower_central_series(L);
    if (!chain.back().is_zero()) return std::nullopt;
    return chain.size() - 1;
}

/// Z(L) as the kernel of the stacked ad-action matrix.
inline Subspace center(const LieAlgebra& L) {
    const std::size_t n = L.dim();
    Matrix sys(L.field(), n * n, n);
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t k = 0; k < n; ++k)
            for (std::size_t i = 0; i < n; ++i) sys.at(j * n + k, i) = L.c(i, j, k);
    return Subspace::span(kernel(sys));
}

/// C_L(U) = {x : [x, u] = 0 for all u in U}.
inline Subspace centralizer(const LieAlgebra& L, const Subspace& u) {
    if (u.ambient_dim() != L.dim()) throw AmbientMismatchError();
    const std::size_t n = L.dim();
    Matrix sys(L.field(), u.dim() * n, n);
    for (std::size_t a = 0; a < u.dim(); ++a) {
        auto uv = u.basis_vector(a);
        for (std::size_t k = 0; k < n; ++k)
            for (std::size_t i = 0; i < n; ++i) {
                Scalar entry = Scalar::zero(L.field());
                for (std::size_t j = 0; j < n; ++j) {
                    const Scalar& cc = L.c(i, j, k);
                    if (!cc.is_zero() && !uv[j].is_zero()) entry += cc * uv[j];
                }
                sys.at(a * n + k, i) = entry;
            }
    }
    return Subspace::span(kernel(sys));
}

inline bool is_ideal(const LieAlgebra& L, const Subspace& u) {
    return contains(u, subspace_bracket(L, L.full_space(), u));
}

inline bool is_subalgebra(const LieAlgebra& L, const Subspace& u) {
    return contains(u, subspace_bracket(L, u, u));
}

/// Quotient L/I with deterministic transversal: the standard basis vectors at
/// the non-pivot coordinates of I's canonical basis. Returns the quotient and
/// the projection matrix (quotient coordinates from ambient coordinates).
inline std::pair<LieAlgebra, Matrix> quotient(const LieAlgebra& L, const Subspace& ideal) {
    if (ideal.ambient_dim() != L.dim()) throw AmbientMismatchError();
    for (std::size_t b = 0; b < L.dim(); ++b)
        for (std::size_t i = 0; i < ideal.dim(); ++i) {
            auto w = L.bracket(L.unit(b), ideal.basis_vector(i));
            if (!ideal.contains_vector(w)) throw NotAnIdealError(b, i);
        }
    const auto trans = ideal.complement_coordinates();
    const std::size_t m = trans.size();
    const std::size_t n = L.dim();
    // projection: eliminate the pivot coordinates with the ideal basis,
    // then read off the transversal coordinates
    Matrix proj(L.field(), m, n);
    for (std::size_t j = 0; j < n; ++j) {
        std::vector<Scalar> v = L.unit(j);
        for (std::size_t i = 0; i < ideal.dim(); ++i) {
            const Scalar f = v[ideal.pivots()[i]];
            if (f.is_zero()) continue;
            for (std::size_t kk = 0; kk < n; ++kk) {
                const Scalar& b = ideal.basis().at(i, kk);
                if (!b.is_zero()) v[kk] -= f * b;
            }
        }
        for (std::size_t a = 0; a < m; ++a) proj.at(a, j) = v[trans[a]];
    }
    LieAlgebra q(L.field(), m);
    std::vector<std::string> labels;
    for (std::size_t a = 0; a < m; ++a) labels.push_back(L.label(trans[a]));
    q.set_labels(labels);
    for (std::size_t a = 0; a < m; ++a)
        for (std::size_t b = a + 1; b < m; ++b) {
            auto w = L.basis_bracket(trans[a], trans[b]);
            q.set_bracket(a, b, proj.apply(w));
        }
    return {q, proj};
}

/// Re-expresses the bracket of a subalgebra in its canonical basis.
inline LieAlgebra restrict_to(const LieAlgebra& L, const Subspace& u) {
    if (u.ambient_dim() != L.dim()) throw AmbientMismatchError();
    LieAlgebra r(L.field(), u.dim());
    for (std::size_t a = 0; a < u.dim(); ++a)
        for (std::size_t b = a + 1; b < u.dim(); ++b) {
            auto w = L.bracket(u.basis_vector(a), u.basis_vector(b));
            auto coords = u.coordinates_of(w);
            if (!coords) throw NotASubalgebraError(a, b);
            r.set_bracket(a, b, *coords);
        }
    return r;
}

inline LieAlgebra direct_sum(const LieAlgebra& a, const LieAlgebra& b) {
    require_same_field(a.field(), b.field());
    const std::size_t n = a.dim(), m = b.dim();
    LieAlgebra s(a.field(), n + m);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            for (std::size_t k = 0; k < n; ++k) s.set_bracket_term(i, j, k, a.c(i, j, k));
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = i + 1; j < m; ++j)
            for (std::size_t k = 0; k < m; ++k) s.set_bracket_term(n + i, n + j, n + k, b.c(i, j, k));
    std::vector<std::string> labels;
    for (std::size_t i = 0; i < n; ++i) labels.push_back(a.label(i) + "'");
    for (std::size_t i = 0; i < m; ++i) labels.push_back(b.label(i) + "''");
    s.set_labels(labels);
    return s;
}

/// kappa[i][j] = trace(ad e_i . ad e_j).
inline Matrix killing_form(const LieAlgebra& L) {
    const std::size_t n = L.dim();
    std::vector<Matrix> ads;
    for (std::size_t i = 0; i < n; ++i) ads.push_back(L.ad_basis(i));
    Matrix kappa(L.field(), n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) {
            Scalar t = Scalar::zero(L.field());
            for (std::size_t a = 0; a < n; ++a)
                for (std::size_t b = 0; b < n; ++b) {
                    const Scalar& x = ads[i].at(a, b);
                    const Scalar& y = ads[j].at(b, a);
                    if (!x.is_zero() && !y.is_zero()) t += x * y;
                }
            kappa.at(i, j) = t;
            kappa.at(j, i) = t;
        }
    return kappa;
}

inline Scalar killing_pairing(const Matrix& kappa, const std::vector<Scalar>& x,
                              const std::vector<Scalar>& y) {
    auto ky = kappa.apply(y);
    Scalar s = Scalar::zero(kappa.field());
    for (std::size_t i = 0; i < x.size(); ++i)
        if (!x[i].is_zero() && !ky[i].is_zero()) s += x[i] * ky[i];
    return s;
}

/// Rad(L) over characteristic zero: the Killing-orthogonal complement of the
/// derived subalgebra. Postconditions (solvable ideal; nondegenerate Killing
/// form on the quotient) are verified before returning.
inline Subspace radical(const LieAlgebra& L) {
    if (!L.field().is_rationals()) throw CharZeroRequiredError("radical");
    Matrix kappa = killing_form(L);
    Subspace der = derived_subalgebra(L);
    Matrix sys(L.field(), der.dim(), L.dim());
    for (std::size_t b = 0; b < der.dim(); ++b) {
        auto kb = kappa.apply(der.basis_vector(b));
        sys.set_row(b, kb);
    }
    Subspace rad = Subspace::span(kernel(sys));
    if (!is_ideal(L, rad)) throw std::logic_error("radical: candidate is not an ideal");
    if (!is_solvable(restrict_to(L, rad))) throw std::logic_error("radical: candidate not solvable");
    if (rad.dim() < L.dim()) {
        auto [q, proj] = quotient(L, rad);
        if (det(killing_form(q)).is_zero())
            throw std::logic_error("radical: quotient Killing form is degenerate");
    }
    return rad;
}

inline bool is_perfect(const LieAlgebra& L) { return derived_subalgebra(L).dim() == L.dim(); }

/// Reduces integral rational structure constants modulo p. Denominators must
/// be invertible mod p.
inline LieAlgebra reduce_mod_p(const LieAlgebra& L, std::int64_t p) {
    if (!L.field().is_rationals()) throw std::invalid_argument("reduce_mod_p: source must be over Q");
    Field gf = Field::gf(p);
    LieAlgebra out(gf, L.dim());
    out.set_labels(L.labels());
    for (std::size_t i = 0; i < L.dim(); ++i)
        for (std::size_t j = 0; j < L.dim(); ++j)
            for (std::size_t k = 0; k < L.dim(); ++k) {
                const BigRational& q = L.c(i, j, k).rational();
                BigInt num = boost::multiprecision::numerator(q) % p;
                BigInt den = boost::multiprecision::denominator(q) % p;
                if (den == 0) throw std::domain_error("reduce_mod_p: denominator divisible by p");
                std::int64_t nv = detail::mod_reduce(num.convert_to<std::int64_t>(), p);
                std::int64_t dv = detail::mod_reduce(den.convert_to<std::int64_t>(), p);
                out.c(i, j, k) = Scalar::from_residue(gf, nv) / Scalar::from_residue(gf, dv);
            }
    auto rep = out.validate();
    if (!rep.ok) throw std::logic_error("reduce_mod_p: reduction broke the axioms: " + rep.message());
    return out;
}

} // namespace liederive

#endif
