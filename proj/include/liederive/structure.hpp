#ifndef LIEDERIVE_STRUCTURE_HPP
#define LIEDERIVE_STRUCTURE_HPP

#include "derivations.hpp"

namespace liederive {

struct ComponentsUnknownError : std::runtime_error {
    explicit ComponentsUnknownError(const std::string& why)
        : std::runtime_error("components-unknown: " + why) {}
};

struct LeviDecomposition {
    Subspace radical;
    Subspace levi;
};

namespace detail {

/// Standard-basis lift through the deterministic quotient transversal:
/// proj maps e_{trans[a]} to the a-th quotient unit, so a quotient vector
/// lifts coordinate-wise onto the transversal.
inline std::vector<Scalar> lift_through_transversal(const std::vector<Scalar>& qvec,
                                                    const std::vector<std::size_t>& trans,
                                                    std::size_t ambient, Field f) {
    std::vector<Scalar> v(ambient, Scalar::zero(f));
    for (std::size_t a = 0; a < trans.size(); ++a) v[trans[a]] = qvec[a];
    return v;
}

} // namespace detail

/// Levi complement over characteristic zero, by induction on the derived
/// series of the radical. The abelian-radical base case lifts a basis of the
/// semisimple quotient and solves the linear correction system whose
/// solvability is Whitehead's lemma; failure to solve is a hard error.
inline LeviDecomposition levi_complement(const LieAlgebra& L) {
    if (!L.field().is_rationals()) throw CharZeroRequiredError("levi_complement");
    const Field f = L.field();
    const std::size_t n = L.dim();
    LeviDecomposition out;
    out.radical = radical(L);
    const Subspace& rad = out.radical;
    if (rad.is_zero()) {
        out.levi = L.full_space();
        return out;
    }
    if (rad.dim() == n) {
        out.levi = L.zero_space();
        return out;
    }
    Subspace rad2 = subspace_bracket(L, rad, rad);
    if (rad2.is_zero()) {
        auto [q, proj] = quotient(L, rad);
        const auto trans = rad.complement_coordinates();
        const std::size_t m = q.dim(), d = rad.dim();
        // action of transversal elements on the radical, in radical coordinates
        // act[a] is a d x d matrix: column r holds [t_a, R_r] in R-coords
        std::vector<Matrix> act;
        for (std::size_t a = 0; a < m; ++a) {
            Matrix ma(f, d, d);
            for (std::size_t r = 0; r < d; ++r) {
                auto w = L.bracket(L.unit(trans[a]), rad.basis_vector(r));
                auto coords = rad.coordinates_of(w);
                if (!coords) throw std::logic_error("levi_complement: radical is not an ideal");
                for (std::size_t s = 0; s < d; ++s) ma.at(s, r) = (*coords)[s];
            }
            act.push_back(std::move(ma));
        }
        // unknowns rho[a][r] (m*d); equations per pair (a < b) and R-coordinate s:
        //   f(a,b)_s + (act[a] rho_b)_s - (act[b] rho_a)_s - sum_c gamma_ab^c rho[c][s] = 0
        std::vector<std::pair<std::size_t, std::size_t>> prs;
        for (std::size_t a = 0; a < m; ++a)
            for (std::size_t b = a + 1; b < m; ++b) prs.push_back({a, b});
        Matrix sys(f, prs.size() * d, m * d + 1);
        for (std::size_t pi = 0; pi < prs.size(); ++pi) {
            const auto [a, b] = prs[pi];
            // deficit f(a,b) = [t_a, t_b] - sum_c gamma_ab^c t_c, an element of R
            auto w = L.bracket(L.unit(trans[a]), L.unit(trans[b]));
            for (std::size_t c = 0; c < m; ++c) {
                const Scalar& g = q.c(a, b, c);
                if (!g.is_zero())
                    for (std::size_t t = 0; t < n; ++t) {
                        // subtract gamma * t_c
                        if (t == trans[c]) w[t] -= g;
                    }
            }
            auto deficit = rad.coordinates_of(w);
            if (!deficit) throw std::logic_error("levi_complement: deficit escaped the radical");
            for (std::size_t s = 0; s < d; ++s) {
                const std::size_t row = pi * d + s;
                sys.at(row, m * d) = -(*deficit)[s]; // move to rhs
                for (std::size_t r = 0; r < d; ++r) {
                    if (!act[a].at(s, r).is_zero()) sys.at(row, b * d + r) += act[a].at(s, r);
                    if (!act[b].at(s, r).is_zero()) sys.at(row, a * d + r) -= act[b].at(s, r);
                }
                for (std::size_t c = 0; c < m; ++c) {
                    const Scalar& g = q.c(a, b, c);
                    if (!g.is_zero()) sys.at(row, c * d + s) -= g;
                }
            }
        }
        RrefResult rr = rref(sys);
        for (std::size_t c : rr.pivots)
            if (c == m * d)
                throw std::logic_error(
                    "levi_complement: correction system inconsistent (contradicts Whitehead)");
        std::vector<Scalar> rho(m * d, Scalar::zero(f));
        for (std::size_t i = 0; i < rr.rank; ++i) rho[rr.pivots[i]] = rr.reduced.at(i, m * d);
        std::vector<std::vector<Scalar>> levi_rows;
        for (std::size_t a = 0; a < m; ++a) {
            std::vector<Scalar> v = L.unit(trans[a]);
            for (std::size_t r = 0; r < d; ++r) {
                if (rho[a * d + r].is_zero()) continue;
                auto rv = rad.basis_vector(r);
                for (std::size_t t = 0; t < n; ++t)
                    if (!rv[t].is_zero()) v[t] += rho[a * d + r] * rv[t];
            }
            levi_rows.push_back(std::move(v));
        }
        out.levi = Subspace::span_of_vectors(f, n, levi_rows);
    } else {
        // reduce modulo [R,R]: lift the Levi of L/[R,R] and recurse inside
        auto [q, proj] = quotient(L, rad2);
        const auto trans = rad2.complement_coordinates();
        LeviDecomposition sub = levi_complement(q);
        std::vector<std::vector<Scalar>> rows;
        for (std::size_t i = 0; i < sub.levi.dim(); ++i)
            rows.push_back(
                detail::lift_through_transversal(sub.levi.basis_vector(i), trans, n, f));
        for (std::size_t i = 0; i < rad2.dim(); ++i) rows.push_back(rad2.basis_vector(i));
        Subspace mid = Subspace::span_of_vectors(f, n, rows);
        LieAlgebra lm = restrict_to(L, mid);
        LeviDecomposition inner = levi_complement(lm);
        std::vector<std::vector<Scalar>> levi_rows;
        for (std::size_t i = 0; i < inner.levi.dim(); ++i)
            levi_rows.push_back(mid.from_coordinates(inner.levi.basis_vector(i)));
        out.levi = Subspace::span_of_vectors(f, n, levi_rows);
    }
    // verification data per contract
    if (!is_subalgebra(L, out.levi))
        throw std::logic_error("levi_complement: candidate is not a subalgebra");
    if (!intersect(out.levi, rad).is_zero())
        throw std::logic_error("levi_complement: candidate meets the radical");
    if (sum(out.levi, rad).dim() != n)
        throw std::logic_error("levi_complement: candidate plus radical is not everything");
    if (!out.levi.is_zero()) {
        LieAlgebra s = restrict_to(L, out.levi);
        if (det(killing_form(s)).is_zero())
            throw std::logic_error("levi_complement: candidate has degenerate Killing form");
    }
    return out;
}

/// Basis of the centroid: all T with T[x,y] = [Tx,y] = [x,Ty].
inline std::vector<Matrix> centroid(const LieAlgebra& L) {
    const std::size_t n = L.dim();
    const Field f = L.field();
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) pairs.push_back({i, j});
    Matrix sys(f, pairs.size() * n * 2, n * n);
    for (std::size_t pi = 0; pi < pairs.size(); ++pi) {
        const auto [i, j] = pairs[pi];
        for (std::size_t k = 0; k < n; ++k) {
            const std::size_t row1 = (2 * pi) * n + k;     // T[x,y] = [Tx,y]
            const std::size_t row2 = (2 * pi + 1) * n + k; // T[x,y] = [x,Ty]
            for (std::size_t l = 0; l < n; ++l) {
                const Scalar& cl = L.c(i, j, l);
                if (!cl.is_zero()) {
                    sys.at(row1, k * n + l) += cl;
                    sys.at(row2, k * n + l) += cl;
                }
            }
            for (std::size_t a = 0; a < n; ++a) {
                const Scalar& ca = L.c(a, j, k);
                if (!ca.is_zero()) sys.at(row1, a * n + i) -= ca;
            }
            for (std::size_t b = 0; b < n; ++b) {
                const Scalar& cb = L.c(i, b, k);
                if (!cb.is_zero()) sys.at(row2, b * n + j) -= cb;
            }
        }
    }
    Matrix basis = kernel(sys);
    std::vector<Matrix> out;
    for (std::size_t r = 0; r < basis.rows(); ++r) {
        Matrix t(f, n, n);
        for (std::size_t a = 0; a < n; ++a)
            for (std::size_t b = 0; b < n; ++b) t.at(a, b) = basis.at(r, a * n + b);
        out.push_back(std::move(t));
    }
    return out;
}

/// Minimal polynomial of a matrix: first linear dependence among its powers.
inline Poly minimal_polynomial(const Matrix& a) {
    const std::size_t n = a.rows();
    const Field f = a.field();
    std::vector<std::vector<Scalar>> powers;
    Matrix p = Matrix::identity(f, n);
    for (std::size_t d = 0;; ++d) {
        powers.push_back(p.vectorize());
        Matrix stacked = Matrix::from_rows(f, n * n, powers);
        if (rref(stacked).rank < powers.size()) {
            // solve sum_i x_i A^i = 0 with x_d = 1
            Matrix sys(f, n * n, powers.size());
            for (std::size_t c = 0; c < powers.size(); ++c)
                for (std::size_t r = 0; r < n * n; ++r) sys.at(r, c) = powers[c][r];
            Matrix ker = kernel(sys);
            // pick the kernel row with highest-degree leading coefficient = the
            // dependence involving A^d; kernel is RREF so the last row works
            std::vector<Scalar> dep = ker.row(ker.rows() - 1);
            Poly m(f, dep);
            return m.monic();
        }
        p = p * a;
        if (d > n * n) throw std::logic_error("minimal_polynomial: no dependence found");
    }
}

/// Decomposition of a semisimple algebra (char 0, nondegenerate Killing form)
/// into its simple ideals via centroid idempotents. A generic centroid element
/// is taken from a deterministic sequence of small-integer combinations; its
/// minimal polynomial factors into distinct irreducibles, and the CRT
/// idempotents cut out the components.
inline std::vector<Subspace> semisimple_components(const LieAlgebra& S, int degree_cap = 12) {
    if (!S.field().is_rationals()) throw CharZeroRequiredError("semisimple_components");
    const Field f = S.field();
    const std::size_t n = S.dim();
    if (n == 0) return {};
    if (det(killing_form(S)).is_zero())
        throw std::invalid_argument("semisimple_components: Killing form is degenerate");
    std::vector<Matrix> cen = centroid(S);
    const std::size_t c = cen.size();
    if (c == 0) throw std::logic_error("semisimple_components: empty centroid");
    // deterministic generic-element sequence
    std::vector<std::vector<long>> weight_sets;
    for (std::size_t i = 0; i < c; ++i) {
        std::vector<long> w(c, 0);
        w[i] = 1;
        weight_sets.push_back(w);
    }
    {
        std::vector<long> w1(c), w2(c), w3(c);
        for (std::size_t i = 0; i < c; ++i) {
            w1[i] = 1;
            w2[i] = static_cast<long>(i + 1);
            w3[i] = static_cast<long>((i + 1) * (i + 1));
        }
        weight_sets.push_back(w1);
        weight_sets.push_back(w2);
        weight_sets.push_back(w3);
        for (long base = 2; base <= 6; ++base) {
            std::vector<long> w(c);
            long v = 1;
            for (std::size_t i = 0; i < c; ++i) {
                w[i] = v;
                v *= base;
            }
            weight_sets.push_back(w);
        }
    }
    Poly minpoly(f);
    Matrix generic(f, n, n);
    bool found = false;
    for (const auto& w : weight_sets) {
        Matrix t(f, n, n);
        for (std::size_t i = 0; i < c; ++i)
            if (w[i] != 0) t += cen[i] * Scalar(f, w[i]);
        Poly m = minimal_polynomial(t);
        if (m.degree() == static_cast<int>(c)) {
            minpoly = m;
            generic = t;
            found = true;
            break;
        }
    }
    if (!found)
        throw std::runtime_error("semisimple_components: no generic centroid element found");
    Factorization fac;
    try {
        fac = factor_rational_poly(minpoly, degree_cap);
    } catch (const FactorLimitError& e) {
        throw ComponentsUnknownError(e.what());
    }
    for (const auto& [poly, mult] : fac.factors)
        if (mult != 1)
            throw std::invalid_argument("semisimple_components: repeated factor (input not semisimple)");
    std::vector<Subspace> comps;
    for (const auto& [fi, mult] : fac.factors) {
        Poly gi = divmod(minpoly, fi).first;
        // u * gi = 1 mod fi via extended Euclid
        Poly r0 = fi, r1 = divmod(gi, fi).second;
        Poly s0(f), s1 = Poly::constant(f, Scalar::one(f));
        while (!r1.is_zero()) {
            auto [qq, rr] = divmod(r0, r1);
            Poly s2 = s0 - qq * s1;
            r0 = r1;
            r1 = rr;
            s0 = s1;
            s1 = s2;
        }
        // r0 = gcd = unit (fi irreducible, gi coprime)
        if (r0.degree() != 0)
            throw std::logic_error("semisimple_components: factors not coprime");
        Poly u = s0 * r0.leading().inverse();
        Poly e = divmod(u * gi, minpoly).second;
        // evaluate e at the generic element
        Matrix em(f, n, n);
        Matrix pw = Matrix::identity(f, n);
        for (int d = 0; d <= e.degree(); ++d) {
            if (!e.coeff(d).is_zero()) em += pw * e.coeff(d);
            if (d < e.degree()) pw = pw * generic;
        }
        if (em * em != em) throw std::logic_error("semisimple_components: non-idempotent");
        std::vector<std::vector<Scalar>> cols;
        for (std::size_t j = 0; j < n; ++j) {
            std::vector<Scalar> col(n);
            for (std::size_t i = 0; i < n; ++i) col[i] = em.at(i, j);
            cols.push_back(std::move(col));
        }
        comps.push_back(Subspace::span_of_vectors(f, n, cols));
    }
    // verification: orthogonal ideals summing to S, each with nondegenerate
    // restricted Killing form and no proper nonzero ideal inside
    std::size_t total = 0;
    for (const auto& comp : comps) {
        total += comp.dim();
        if (!is_ideal(S, comp)) throw std::logic_error("semisimple_components: not an ideal");
        LieAlgebra rc = restrict_to(S, comp);
        if (det(killing_form(rc)).is_zero())
            throw std::logic_error("semisimple_components: degenerate component");
        for (std::size_t i = 0; i < comp.dim(); ++i) {
            // ideal closure of a spanning element must recover the component
            Subspace w = Subspace::line(f, comp.basis_vector(i));
            while (true) {
                Subspace next = sum(w, subspace_bracket(S, S.full_space(), w));
                if (next == w) break;
                w = next;
            }
            if (w != comp)
                throw std::logic_error("semisimple_components: component is not minimal");
        }
    }
    if (total != n) throw std::logic_error("semisimple_components: dimensions do not add up");
    for (std::size_t i = 0; i < comps.size(); ++i)
        for (std::size_t j = i + 1; j < comps.size(); ++j)
            if (!subspace_bracket(S, comps[i], comps[j]).is_zero())
                throw std::logic_error("semisimple_components: components do not commute");
    return comps;
}

struct CompositionFactor {
    std::size_t dim = 0;
    bool simple = false;
};

struct CompositionData {
    std::vector<Subspace> chain; // ascending, 0 = chain[0] to L = chain back
    std::vector<CompositionFactor> factors;
    std::size_t length = 0;
};

/// Composition series over characteristic zero: one-dimensional steps through
/// the radical (hyperplanes above the derived subalgebra), then the lifted
/// simple components of the semisimple quotient.
inline CompositionData composition_series(const LieAlgebra& L, int degree_cap = 12) {
    if (!L.field().is_rationals()) throw CharZeroRequiredError("composition_series");
    const Field f = L.field();
    const std::size_t n = L.dim();
    CompositionData out;
    Subspace rad = radical(L);
    // descending hyperplane chain inside the radical
    std::vector<Subspace> desc{rad};
    while (!desc.back().is_zero()) {
        const Subspace& v = desc.back();
        Subspace v2 = subspace_bracket(L, v, v);
        if (v2.dim() >= v.dim())
            throw std::logic_error("composition_series: radical term not solvable");
        Subspace h = v2;
        for (std::size_t i = 0; i < v.dim() && h.dim() + 1 < v.dim(); ++i) {
            Subspace cand = sum(h, Subspace::line(f, v.basis_vector(i)));
            if (cand.dim() < v.dim()) h = cand;
        }
        desc.push_back(h);
    }
    out.chain.assign(desc.rbegin(), desc.rend());
    for (std::size_t i = 0; i + 1 < out.chain.size(); ++i) out.factors.push_back({1, false});
    if (rad.dim() < n) {
        auto [q, proj] = quotient(L, rad);
        auto comps = semisimple_components(q, degree_cap); // may throw components-unknown
        const auto trans = rad.complement_coordinates();
        Subspace acc = rad;
        for (const auto& comp : comps) {
            std::vector<std::vector<Scalar>> rows;
            for (std::size_t i = 0; i < acc.dim(); ++i) rows.push_back(acc.basis_vector(i));
            for (std::size_t i = 0; i < comp.dim(); ++i)
                rows.push_back(detail::lift_through_transversal(comp.basis_vector(i), trans, n, f));
            acc = Subspace::span_of_vectors(f, n, rows);
            out.chain.push_back(acc);
            out.factors.push_back({comp.dim(), true});
        }
    }
    out.length = out.chain.size() - 1;
    // verification: strict ascent, each term an ideal of the next
    for (std::size_t i = 0; i + 1 < out.chain.size(); ++i) {
        if (out.chain[i].dim() >= out.chain[i + 1].dim() ||
            !contains(out.chain[i + 1], out.chain[i]))
            throw std::logic_error("composition_series: chain is not strictly ascending");
        if (!contains(out.chain[i], subspace_bracket(L, out.chain[i + 1], out.chain[i])))
            throw std::logic_error("composition_series: term is not an ideal of its successor");
    }
    return out;
}

/// Composition length; nullopt when component counting is out of reach.
inline std::optional<std::size_t> composition_length(const LieAlgebra& L, int degree_cap = 12) {
    try {
        return composition_series(L, degree_cap).length;
    } catch (const ComponentsUnknownError&) {
        return std::nullopt;
    }
}

} // namespace liederive

#endif
