// Brute-force oracles used to freeze expected values. Deliberately naive and
// independent of the library's algorithms: determinants by cofactor
// expansion, ranks by exhaustive minor search, finite-field questions by
// enumeration.
#ifndef LIEDERIVE_TEST_ORACLES_HPP
#define LIEDERIVE_TEST_ORACLES_HPP

#include <liederive/polynomial.hpp>
#include <liederive/subspace.hpp>

#include <functional>
#include <random>

namespace oracles {

using namespace liederive;

/// Cofactor-expansion determinant (first row), no elimination involved.
inline Scalar cofactor_det(const Matrix& m) {
    const std::size_t n = m.rows();
    if (n == 0) return Scalar::one(m.field());
    if (n == 1) return m.at(0, 0);
    Scalar acc = Scalar::zero(m.field());
    for (std::size_t j = 0; j < n; ++j) {
        if (m.at(0, j).is_zero()) continue;
        Matrix minor(m.field(), n - 1, n - 1);
        for (std::size_t r = 1; r < n; ++r) {
            std::size_t cc = 0;
            for (std::size_t c = 0; c < n; ++c) {
                if (c == j) continue;
                minor.at(r - 1, cc++) = m.at(r, c);
            }
        }
        Scalar term = m.at(0, j) * cofactor_det(minor);
        if (j % 2) term = -term;
        acc += term;
    }
    return acc;
}

/// Rank as the size of the largest nonvanishing minor (exhaustive subsets).
inline std::size_t minor_rank(const Matrix& m) {
    const std::size_t R = m.rows(), C = m.cols();
    std::size_t best = 0;
    for (std::uint32_t rmask = 1; rmask < (1u << R); ++rmask)
        for (std::uint32_t cmask = 1; cmask < (1u << C); ++cmask) {
            const std::size_t k = static_cast<std::size_t>(__builtin_popcount(rmask));
            if (k != static_cast<std::size_t>(__builtin_popcount(cmask)) || k <= best) continue;
            std::vector<std::size_t> rs, cs;
            for (std::size_t i = 0; i < R; ++i)
                if (rmask & (1u << i)) rs.push_back(i);
            for (std::size_t j = 0; j < C; ++j)
                if (cmask & (1u << j)) cs.push_back(j);
            Matrix sub(m.field(), k, k);
            for (std::size_t i = 0; i < k; ++i)
                for (std::size_t j = 0; j < k; ++j) sub.at(i, j) = m.at(rs[i], cs[j]);
            if (!cofactor_det(sub).is_zero()) best = k;
        }
    return best;
}

/// All vectors of F_p^len.
inline std::vector<std::vector<Scalar>> all_gf_vectors(const Field& f, std::size_t len) {
    const std::int64_t p = f.prime();
    std::vector<std::vector<Scalar>> out;
    std::vector<std::int64_t> idx(len, 0);
    while (true) {
        std::vector<Scalar> v;
        for (std::int64_t r : idx) v.push_back(Scalar::from_residue(f, r));
        out.push_back(std::move(v));
        std::size_t i = 0;
        while (i < len && ++idx[i] == p) {
            idx[i] = 0;
            ++i;
        }
        if (i == len) break;
    }
    return out;
}

/// Kernel membership by exhaustive enumeration over GF(p).
inline std::vector<std::vector<Scalar>> enumerate_kernel(const Matrix& m) {
    std::vector<std::vector<Scalar>> out;
    for (const auto& v : all_gf_vectors(m.field(), m.cols())) {
        auto img = m.apply(v);
        bool zero = true;
        for (const auto& s : img)
            if (!s.is_zero()) {
                zero = false;
                break;
            }
        if (zero) out.push_back(v);
    }
    return out;
}

/// log_p of a power of p.
inline std::size_t log_p(std::size_t count, std::int64_t p) {
    std::size_t d = 0;
    while (count > 1) {
        count /= static_cast<std::size_t>(p);
        ++d;
    }
    return d;
}

/// Eigenvalues over GF(p) by testing singularity of A - lambda I via minors.
inline std::vector<Scalar> enumerate_eigenvalues(const Matrix& a) {
    std::vector<Scalar> out;
    for (std::int64_t r = 0; r < a.field().prime(); ++r) {
        Matrix shifted = a;
        Scalar lam = Scalar::from_residue(a.field(), r);
        for (std::size_t i = 0; i < a.rows(); ++i) shifted.at(i, i) -= lam;
        if (cofactor_det(shifted).is_zero()) out.push_back(lam);
    }
    return out;
}

/// Span membership over GF(p) by enumerating all coefficient tuples.
inline std::vector<std::vector<Scalar>> enumerate_span(const Subspace& u) {
    std::vector<std::vector<Scalar>> out;
    for (const auto& coeffs : all_gf_vectors(u.field(), u.dim()))
        out.push_back(u.from_coordinates(coeffs));
    return out;
}

/// Characteristic polynomial via symbolic cofactor expansion of tI - A.
inline Poly symbolic_char_poly(const Matrix& a) {
    const Field f = a.field();
    const std::size_t n = a.rows();
    // polynomial-entry matrix as vector of Poly
    std::vector<Poly> entries(n * n, Poly(f));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            std::vector<Scalar> c{-a.at(i, j)};
            if (i == j) c.push_back(Scalar::one(f));
            entries[i * n + j] = Poly(f, c);
        }
    // recursive cofactor expansion on polynomium entries
    std::function<Poly(const std::vector<Poly>&, std::size_t)> pdet =
        [&](const std::vector<Poly>& mm, std::size_t k) -> Poly {
        if (k == 0) return Poly::constant(f, Scalar::one(f));
        if (k == 1) return mm[0];
        Poly acc(f);
        for (std::size_t j = 0; j < k; ++j) {
            if (mm[j].is_zero()) continue;
            std::vector<Poly> minor;
            for (std::size_t r = 1; r < k; ++r)
                for (std::size_t c = 0; c < k; ++c)
                    if (c != j) minor.push_back(mm[r * k + c]);
            Poly term = mm[j] * pdet(minor, k - 1);
            acc = (j % 2) ? acc - term : acc + term;
        }
        return acc;
    };
    return pdet(entries, n);
}

inline std::mt19937& rng() {
    static std::mt19937 gen(20260808u);
    return gen;
}

inline Matrix random_matrix(const Field& f, std::size_t rows, std::size_t cols, long lo = -4,
                            long hi = 4) {
    std::uniform_int_distribution<long> dist(lo, hi);
    Matrix m(f, rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) m.at(i, j) = Scalar(f, dist(rng()));
    return m;
}

} // namespace oracles

#endif
