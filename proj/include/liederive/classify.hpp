#ifndef LIEDERIVE_CLASSIFY_HPP
#define LIEDERIVE_CLASSIFY_HPP

#include "lie.hpp"

#include <optional>

namespace liederive {

struct AlmostAbelianWitness {
    std::vector<Scalar> x; // ad(x) restricted to the abelian ideal is the identity
    Subspace ideal;        // the codimension-one abelian ideal (= derived subalgebra)
};

struct StructureProfile {
    bool is_abelian = false;
    bool is_nilpotent = false;
    std::size_t nilpotency_class = 0; // meaningful iff is_nilpotent
    bool is_solvable = false;
    bool is_perfect = false;
    std::optional<bool> is_semisimple;          // characteristic zero only
    bool is_completely_solvable = false;        // derived subalgebra nilpotent
    bool is_filiform = false;
    std::optional<std::size_t> heisenberg_index;
    std::optional<AlmostAbelianWitness> almost_abelian;
    std::size_t dim_center = 0;
    std::size_t dim_derived = 0;
    std::vector<std::size_t> lower_central_dims;
    std::vector<std::size_t> derived_series_dims;
};

/// Witness basis for a Heisenberg recognition: columns of `basis_change` are
/// coordinates of a basis a1,b1,...,am,bm,z realizing [a_i, b_i] = z.
struct HeisenbergWitness {
    std::size_t m = 0;
    Matrix basis_change;
};

/// Recognizes H_m by the symplectic-form reduction: nilpotent of class 2 with
/// one-dimensional derived subalgebra equal to the centre. Returns the
/// witness basis, built by symplectic Gram-Schmidt on L/Z.
inline std::optional<HeisenbergWitness> recognize_heisenberg(const LieAlgebra& L) {
    const std::size_t n = L.dim();
    if (n < 3 || n % 2 == 0) return std::nullopt;
    Subspace der = derived_subalgebra(L);
    Subspace z = center(L);
    if (der.dim() != 1 || z.dim() != 1 || der != z) return std::nullopt;
    if (!subspace_bracket(L, der, L.full_space()).is_zero()) return std::nullopt; // class 2
    const std::vector<Scalar> zvec = z.basis_vector(0);
    // omega(u,v) defined by [u,v] = omega(u,v) z on a complement of Z
    auto omega = [&](const std::vector<Scalar>& u, const std::vector<Scalar>& v) {
        auto w = L.bracket(u, v);
        auto coords = der.coordinates_of(w);
        if (!coords) throw std::logic_error("recognize_heisenberg: bracket escaped the centre");
        return (*coords)[0];
    };
    std::vector<std::vector<Scalar>> pool;
    for (std::size_t c : z.complement_coordinates()) pool.push_back(L.unit(c));
    std::vector<std::vector<Scalar>> pairs;
    while (!pool.empty()) {
        std::vector<Scalar> a = pool.front();
        pool.erase(pool.begin());
        std::size_t partner = pool.size();
        for (std::size_t i = 0; i < pool.size(); ++i)
            if (!omega(a, pool[i]).is_zero()) {
                partner = i;
                break;
            }
        if (partner == pool.size()) return std::nullopt; // degenerate form
        std::vector<Scalar> b = pool[partner];
        pool.erase(pool.begin() + partner);
        Scalar s = omega(a, b).inverse();
        for (auto& bv : b) bv *= s;
        // reduce the rest of the pool against the hyperbolic pair
        for (auto& w : pool) {
            Scalar u = omega(a, w), v = omega(b, w);
            for (std::size_t j = 0; j < w.size(); ++j) w[j] = w[j] - u * b[j] + v * a[j];
        }
        pairs.push_back(a);
        pairs.push_back(b);
    }
    HeisenbergWitness wit;
    wit.m = pairs.size() / 2;
    if (2 * wit.m + 1 != n) return std::nullopt;
    wit.basis_change = Matrix(L.field(), n, n);
    for (std::size_t c = 0; c < pairs.size(); ++c)
        for (std::size_t r = 0; r < n; ++r) wit.basis_change.at(r, c) = pairs[c][r];
    for (std::size_t r = 0; r < n; ++r) wit.basis_change.at(r, n - 1) = zvec[r];
    if (!is_invertible(wit.basis_change))
        throw std::logic_error("recognize_heisenberg: witness basis is singular");
    return wit;
}

/// A := L^2 must be an abelian ideal of codimension one and some x outside it
/// must act on A as a nonzero scalar; rescaling makes ad(x) the identity.
inline std::optional<AlmostAbelianWitness> recognize_almost_abelian(const LieAlgebra& L) {
    const std::size_t n = L.dim();
    if (n < 1) return std::nullopt;
    Subspace a = derived_subalgebra(L);
    if (a.dim() + 1 != n) return std::nullopt;
    if (!subspace_bracket(L, a, a).is_zero()) return std::nullopt;
    auto comp = a.complement_coordinates();
    if (comp.size() != 1) return std::nullopt;
    std::vector<Scalar> x = L.unit(comp[0]);
    // ad(x) restricted to A must be lambda * id with lambda invertible
    std::optional<Scalar> lambda;
    for (std::size_t i = 0; i < a.dim(); ++i) {
        auto img = L.bracket(x, a.basis_vector(i));
        auto coords = a.coordinates_of(img);
        if (!coords) return std::nullopt;
        for (std::size_t j = 0; j < a.dim(); ++j) {
            if (i == j) {
                if (!lambda)
                    lambda = (*coords)[j];
                else if (*lambda != (*coords)[j])
                    return std::nullopt;
            } else if (!(*coords)[j].is_zero()) {
                return std::nullopt;
            }
        }
    }
    if (a.dim() > 0) {
        if (!lambda || lambda->is_zero()) return std::nullopt;
        Scalar inv = lambda->inverse();
        for (auto& xv : x) xv *= inv;
    }
    return AlmostAbelianWitness{std::move(x), std::move(a)};
}

inline bool is_completely_solvable(const LieAlgebra& L) {
    Subspace der = derived_subalgebra(L);
    if (der.is_zero()) return true;
    return is_nilpotent(restrict_to(L, der));
}

inline StructureProfile classify(const LieAlgebra& L) {
    StructureProfile p;
    auto lcs = lower_central_series(L);
    auto ds = derived_series(L);
    for (const auto& s : lcs) p.lower_central_dims.push_back(s.dim());
    for (const auto& s : ds) p.derived_series_dims.push_back(s.dim());
    p.is_nilpotent = lcs.back().is_zero();
    if (p.is_nilpotent) p.nilpotency_class = lcs.size() - 1;
    p.is_solvable = ds.back().is_zero();
    p.dim_center = center(L).dim();
    p.dim_derived = ds.size() > 1 ? ds[1].dim() : ds[0].dim();
    p.is_abelian = L.dim() == 0 || (p.is_nilpotent && p.nilpotency_class <= 1);
    p.is_perfect = p.dim_derived == L.dim();
    p.is_completely_solvable = is_completely_solvable(L);
    p.is_filiform = L.dim() >= 2 && p.is_nilpotent && p.nilpotency_class == L.dim() - 1;
    if (auto h = recognize_heisenberg(L)) p.heisenberg_index = h->m;
    p.almost_abelian = recognize_almost_abelian(L);
    if (L.field().is_rationals()) p.is_semisimple = radical(L).is_zero();
    return p;
}

enum class NilpotentDim4Kind { abelian4, h1_plus_line, f4, not_applicable };

struct NilpotentDim4Result {
    NilpotentDim4Kind kind = NilpotentDim4Kind::not_applicable;
    /// Columns are coordinates of a basis realizing the model constants
    /// (abelian / H_1 + line / F_4). Identity certificate for abelian4.
    Matrix basis_change;
};

/// Classifies four-dimensional nilpotent algebras over characteristic zero by
/// nilpotency class and produces an explicit model basis as certificate:
/// class 1 abelian, class 2 = H_1 + line, class 3 = F_4.
inline NilpotentDim4Result recognize_nilpotent_dim4(const LieAlgebra& L) {
    NilpotentDim4Result out;
    if (L.field().characteristic() != 0 || L.dim() != 4 || !is_nilpotent(L)) return out;
    const Field f = L.field();
    const std::size_t cls = *nilpotency_class(L);
    if (cls <= 1) {
        out.kind = NilpotentDim4Kind::abelian4;
        out.basis_change = Matrix::identity(f, 4);
        return out;
    }
    if (cls == 2) {
        // dim L^2 = 1 and L^2 is central; centre has dimension 2.
        Subspace der = derived_subalgebra(L);
        Subspace z = center(L);
        if (der.dim() != 1 || z.dim() != 2 || !contains(z, der))
            throw std::logic_error("recognize_nilpotent_dim4: impossible class-2 profile");
        std::vector<Scalar> zvec = der.basis_vector(0);
        auto omega = [&](const std::vector<Scalar>& u, const std::vector<Scalar>& v) {
            auto coords = der.coordinates_of(L.bracket(u, v));
            return (*coords)[0];
        };
        // hyperbolic pair outside the centre
        std::vector<std::vector<Scalar>> pool;
        for (std::size_t c : z.complement_coordinates()) pool.push_back(L.unit(c));
        std::vector<Scalar> a = pool[0], b = pool[1];
        Scalar w = omega(a, b);
        if (w.is_zero()) throw std::logic_error("recognize_nilpotent_dim4: degenerate pair");
        Scalar inv = w.inverse();
        for (auto& bv : b) bv *= inv;
        // central vector independent of z
        std::vector<Scalar> extra;
        for (std::size_t i = 0; i < z.dim(); ++i) {
            Matrix test(f, 2, 4);
            test.set_row(0, zvec);
            test.set_row(1, z.basis_vector(i));
            if (rref(test).rank == 2) {
                extra = z.basis_vector(i);
                break;
            }
        }
        out.kind = NilpotentDim4Kind::h1_plus_line;
        out.basis_change = Matrix(f, 4, 4);
        std::vector<std::vector<Scalar>> cols{a, b, zvec, extra};
        for (std::size_t c = 0; c < 4; ++c)
            for (std::size_t r = 0; r < 4; ++r) out.basis_change.at(r, c) = cols[c][r];
        if (!is_invertible(out.basis_change))
            throw std::logic_error("recognize_nilpotent_dim4: singular class-2 witness");
        return out;
    }
    // class 3: the standard filiform F_4. Build e1 with ad(e1) nonzero on L^2,
    // e2 with [e1,e2] outside L^3, then correct e2 so [e2,e3] vanishes.
    Subspace der = derived_subalgebra(L);                        // dim 2
    Subspace l3 = subspace_bracket(L, der, L.full_space());      // dim 1
    if (der.dim() != 2 || l3.dim() != 1)
        throw std::logic_error("recognize_nilpotent_dim4: impossible class-3 profile");
    auto comp = der.complement_coordinates();
    std::vector<std::vector<Scalar>> candidates;
    candidates.push_back(L.unit(comp[0]));
    candidates.push_back(L.unit(comp[1]));
    {
        std::vector<Scalar> s = L.unit(comp[0]);
        for (std::size_t j = 0; j < 4; ++j) s[j] += L.unit(comp[1])[j];
        candidates.push_back(std::move(s));
    }
    std::vector<Scalar> e1, e2, e3, e4;
    bool found = false;
    for (const auto& c1 : candidates) {
        // ad(c1) must map L^2 onto L^3
        auto img = L.bracket(c1, der.basis_vector(0));
        auto img2 = L.bracket(c1, der.basis_vector(1));
        if (Subspace::span_of_vectors(f, 4, {img, img2}).dim() != 1) continue;
        for (const auto& c2 : candidates) {
            auto e3c = L.bracket(c1, c2);
            if (l3.contains_vector(e3c)) continue; // need [e1,e2] in L^2 \ L^3
            auto e4c = L.bracket(c1, e3c);
            if (e4c == std::vector<Scalar>(4, Scalar::zero(f))) continue;
            e1 = c1;
            e2 = c2;
            e3 = e3c;
            e4 = e4c;
            found = true;
            break;
        }
        if (found) break;
    }
    if (!found) throw std::logic_error("recognize_nilpotent_dim4: no filiform generators found");
    // correct e2 by a multiple of e1 so that [e2, e3] = 0
    auto br = L.bracket(e2, e3);
    auto coords = Subspace::line(f, e4).coordinates_of(br);
    if (!coords) throw std::logic_error("recognize_nilpotent_dim4: [e2,e3] escaped L^3");
    Scalar mu = (*coords)[0];
    for (std::size_t j = 0; j < 4; ++j) e2[j] -= mu * e1[j];
    e3 = L.bracket(e1, e2);
    e4 = L.bracket(e1, e3);
    out.kind = NilpotentDim4Kind::f4;
    out.basis_change = Matrix(f, 4, 4);
    std::vector<std::vector<Scalar>> cols{e1, e2, e3, e4};
    for (std::size_t c = 0; c < 4; ++c)
        for (std::size_t r = 0; r < 4; ++r) out.basis_change.at(r, c) = cols[c][r];
    if (!is_invertible(out.basis_change))
        throw std::logic_error("recognize_nilpotent_dim4: singular class-3 witness");
    return out;
}

/// Pulls the structure constants of L through a basis-change matrix whose
/// columns are the new basis in old coordinates.
inline LieAlgebra change_basis(const LieAlgebra& L, const Matrix& new_basis_columns) {
    const std::size_t n = L.dim();
    Matrix inv = inverse(new_basis_columns);
    LieAlgebra out(L.field(), n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            std::vector<Scalar> fi(n), fj(n);
            for (std::size_t r = 0; r < n; ++r) {
                fi[r] = new_basis_columns.at(r, i);
                fj[r] = new_basis_columns.at(r, j);
            }
            out.set_bracket(i, j, inv.apply(L.bracket(fi, fj)));
        }
    return out;
}

} // namespace liederive

#endif
