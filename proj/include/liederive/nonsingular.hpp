#ifndef LIEDERIVE_NONSINGULAR_HPP
#define LIEDERIVE_NONSINGULAR_HPP

#include "subspace.hpp"

#include <optional>

namespace liederive {

/// Outcome of searching a span of square matrices for an invertible element.
/// `none_certified` means the determinant of the generic combination is the
/// identically-zero polynomial (proved, not sampled). `unknown` only occurs
/// over small prime fields where exhaustion is out of reach.
struct NonsingularSearch {
    enum class Status { found, none_certified, unknown };
    Status status = Status::none_certified;
    std::vector<Scalar> coefficients; // w.r.t. the input list (iff found)
    Matrix witness;                   // invertible combination (iff found)
};

namespace detail {

inline Matrix combine(const std::vector<Matrix>& mats, const std::vector<Scalar>& coeffs) {
    Matrix acc(mats[0].field(), mats[0].rows(), mats[0].cols());
    for (std::size_t i = 0; i < mats.size(); ++i)
        if (!coeffs[i].is_zero()) acc += mats[i] * coeffs[i];
    return acc;
}

inline std::optional<NonsingularSearch> try_combination(const std::vector<Matrix>& mats,
                                                        const std::vector<Scalar>& coeffs) {
    Matrix m = combine(mats, coeffs);
    if (det(m).is_zero()) return std::nullopt;
    NonsingularSearch r;
    r.status = NonsingularSearch::Status::found;
    r.coefficients = coeffs;
    r.witness = std::move(m);
    return r;
}

/// If the identity lies in the span, its coordinates give an immediate witness.
inline std::optional<std::vector<Scalar>> identity_in_span(const std::vector<Matrix>& mats) {
    const Field f = mats[0].field();
    const std::size_t n = mats[0].rows();
    Matrix sys(f, n * n, mats.size());
    for (std::size_t k = 0; k < mats.size(); ++k) {
        auto v = mats[k].vectorize();
        for (std::size_t r = 0; r < n * n; ++r) sys.at(r, k) = v[r];
    }
    Matrix aug(f, n * n, mats.size() + 1);
    auto id = Matrix::identity(f, n).vectorize();
    for (std::size_t r = 0; r < n * n; ++r) {
        for (std::size_t k = 0; k < mats.size(); ++k) aug.at(r, k) = sys.at(r, k);
        aug.at(r, mats.size()) = id[r];
    }
    RrefResult rr = rref(aug);
    // inconsistent iff a pivot lands in the last column
    for (std::size_t c : rr.pivots)
        if (c == mats.size()) return std::nullopt;
    std::vector<Scalar> coeffs(mats.size(), Scalar::zero(f));
    for (std::size_t i = 0; i < rr.rank; ++i)
        coeffs[rr.pivots[i]] = rr.reduced.at(i, mats.size());
    return coeffs;
}

} // namespace detail

/// Decides whether the span of the given square matrices contains an
/// invertible element. Over the rationals the "none" answer is certified by
/// evaluating the generic determinant on an integer grid whose size exceeds
/// the per-variable degree bound n, so vanishing everywhere on the grid means
/// the polynomial is identically zero. Over GF(p) coefficient tuples are
/// exhausted when p^k is small enough, otherwise the result is `unknown`
/// (a nonzero determinant polynomial can still have no nonzero value on a
/// small field, so sampling proves nothing there).
inline NonsingularSearch nonsingular_element(const std::vector<Matrix>& all_mats) {
    NonsingularSearch none;
    none.status = NonsingularSearch::Status::none_certified;
    if (all_mats.empty()) return none;
    const Field f = all_mats[0].field();
    const std::size_t n = all_mats[0].rows();
    for (const auto& m : all_mats) {
        if (!m.is_square() || m.rows() != n) throw ShapeMismatchError("nonsingular_element: shapes differ");
        require_same_field(f, m.field());
    }
    if (n == 0) {
        // the empty matrix is vacuously invertible
        NonsingularSearch r;
        r.status = NonsingularSearch::Status::found;
        r.coefficients.assign(all_mats.size(), Scalar::zero(f));
        r.witness = Matrix(f, 0, 0);
        return r;
    }
    // reduce to a maximal independent subset; the span (and hence the answer)
    // is unchanged and the search space shrinks to at most n^2 coefficients
    std::vector<std::size_t> keep;
    std::vector<Matrix> mats;
    {
        Subspace span = Subspace::zero(f, n * n);
        for (std::size_t i = 0; i < all_mats.size(); ++i) {
            if (span.contains_vector(all_mats[i].vectorize())) continue;
            span = sum(span, Subspace::line(f, all_mats[i].vectorize()));
            keep.push_back(i);
            mats.push_back(all_mats[i]);
        }
    }
    if (mats.empty()) return none; // the span is zero
    auto expand = [&](NonsingularSearch r) {
        std::vector<Scalar> full(all_mats.size(), Scalar::zero(f));
        for (std::size_t i = 0; i < keep.size(); ++i) full[keep[i]] = r.coefficients[i];
        r.coefficients = std::move(full);
        return r;
    };
    const std::size_t k = mats.size();

    // fast paths: identity in span, single basis elements, small weighted sums
    if (auto id_coeffs = detail::identity_in_span(mats))
        if (auto r = detail::try_combination(mats, *id_coeffs)) return expand(*r);
    for (std::size_t i = 0; i < k; ++i) {
        std::vector<Scalar> e(k, Scalar::zero(f));
        e[i] = Scalar::one(f);
        if (auto r = detail::try_combination(mats, e)) return expand(*r);
    }
    for (long base : {1L, 2L, 3L}) {
        std::vector<Scalar> w(k, Scalar::zero(f));
        long v = 1;
        for (std::size_t i = 0; i < k; ++i) {
            w[i] = Scalar(f, v);
            v = v * base + 1;
        }
        if (auto r = detail::try_combination(mats, w)) return expand(*r);
    }

    if (f.is_rationals()) {
        // certification grid: n+1 points per variable; per-variable degree of
        // det(sum lambda_i A_i) is at most n
        std::vector<std::size_t> idx(k, 0);
        const std::size_t grid = n + 1;
        double total = 1;
        for (std::size_t i = 0; i < k; ++i) total *= static_cast<double>(grid);
        if (total > 5e7)
            throw std::runtime_error("nonsingular_element: certification grid out of desk scale");
        while (true) {
            std::vector<Scalar> w(k, Scalar::zero(f));
            for (std::size_t i = 0; i < k; ++i) w[i] = Scalar(f, static_cast<long>(idx[i]));
            if (auto r = detail::try_combination(mats, w)) return expand(*r);
            std::size_t j = 0;
            while (j < k && ++idx[j] == grid) {
                idx[j] = 0;
                ++j;
            }
            if (j == k) break;
        }
        return none;
    }

    // GF(p): exhaustive over coefficient tuples when feasible
    const std::int64_t p = f.prime();
    double total = 1;
    for (std::size_t i = 0; i < k; ++i) {
        total *= static_cast<double>(p);
        if (total > 1e6) {
            NonsingularSearch u;
            u.status = NonsingularSearch::Status::unknown;
            return u;
        }
    }
    std::vector<std::int64_t> idx(k, 0);
    while (true) {
        std::vector<Scalar> w(k, Scalar::zero(f));
        for (std::size_t i = 0; i < k; ++i) w[i] = Scalar::from_residue(f, idx[i]);
        if (auto r = detail::try_combination(mats, w)) return expand(*r);
        std::size_t j = 0;
        while (j < k && ++idx[j] == p) {
            idx[j] = 0;
            ++j;
        }
        if (j == k) break;
    }
    return none;
}

} // namespace liederive

#endif
