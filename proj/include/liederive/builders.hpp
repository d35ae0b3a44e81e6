#ifndef LIEDERIVE_BUILDERS_HPP
#define LIEDERIVE_BUILDERS_HPP

#include "lie.hpp"

namespace liederive {
namespace builders {

struct BuilderError : std::invalid_argument {
    explicit BuilderError(const std::string& what) : std::invalid_argument(what) {}
};

inline LieAlgebra finish(LieAlgebra L, std::vector<std::string> labels) {
    L.set_labels(std::move(labels));
    auto rep = L.validate();
    if (!rep.ok) throw std::logic_error("builder produced an invalid algebra: " + rep.message());
    return L;
}

inline LieAlgebra abelian(std::size_t n, Field f = Field::rationals()) {
    LieAlgebra L(f, n);
    std::vector<std::string> labels;
    for (std::size_t i = 0; i < n; ++i) labels.push_back("x" + std::to_string(i + 1));
    return finish(std::move(L), std::move(labels));
}

/// Heisenberg algebra H_m: dim 2m+1, basis a1,b1,...,am,bm,z, [a_i,b_i] = z.
inline LieAlgebra heisenberg(std::size_t m, Field f = Field::rationals()) {
    if (m == 0) throw BuilderError("heisenberg: m must be at least 1");
    if (f.characteristic() == 2) throw BuilderError("heisenberg: characteristic two is excluded");
    LieAlgebra L(f, 2 * m + 1);
    std::vector<std::string> labels;
    for (std::size_t i = 0; i < m; ++i) {
        L.set_bracket_term(2 * i, 2 * i + 1, 2 * m, Scalar::one(f));
        labels.push_back("a" + std::to_string(i + 1));
        labels.push_back("b" + std::to_string(i + 1));
    }
    labels.push_back("z");
    return finish(std::move(L), std::move(labels));
}

/// Standard filiform algebra F_n: basis e1..en, [e1, e_i] = e_{i+1} for
/// 2 <= i <= n-1. Nilpotent of class n-1.
inline LieAlgebra standard_filiform(std::size_t n, Field f = Field::rationals()) {
    if (n < 2) throw BuilderError("standard_filiform: dimension must be at least 2");
    LieAlgebra L(f, n);
    for (std::size_t i = 1; i + 1 < n; ++i) L.set_bracket_term(0, i, i + 1, Scalar::one(f));
    std::vector<std::string> labels;
    for (std::size_t i = 0; i < n; ++i) labels.push_back("e" + std::to_string(i + 1));
    return finish(std::move(L), std::move(labels));
}

/// Almost abelian algebra of dimension n: basis x,a1..a_{n-1}, [x,a_i] = a_i.
inline LieAlgebra almost_abelian(std::size_t n, Field f = Field::rationals()) {
    if (n < 2) throw BuilderError("almost_abelian: dimension must be at least 2");
    LieAlgebra L(f, n);
    for (std::size_t i = 1; i < n; ++i) L.set_bracket_term(0, i, i, Scalar::one(f));
    std::vector<std::string> labels{"x"};
    for (std::size_t i = 1; i < n; ++i) labels.push_back("a" + std::to_string(i));
    return finish(std::move(L), std::move(labels));
}

inline LieAlgebra two_dim_nonabelian(Field f = Field::rationals()) {
    LieAlgebra L(f, 2);
    L.set_bracket_term(0, 1, 1, Scalar::one(f));
    return finish(std::move(L), {"x", "a"});
}

/// Solvable algebra of dimension n+1 whose derived algebra is F_n:
/// basis e,e1..en with [e, e_i] = i e_i and [e1, e_i] = e_{i+1}.
inline LieAlgebra filiform_integral(std::size_t n, Field f = Field::rationals()) {
    if (n < 2) throw BuilderError("filiform_integral: n must be at least 2");
    if (f.characteristic() != 0)
        throw BuilderError("filiform_integral: requires characteristic zero");
    LieAlgebra L(f, n + 1);
    for (std::size_t i = 1; i <= n; ++i)
        L.set_bracket_term(0, i, i, Scalar(f, static_cast<long>(i)));
    for (std::size_t i = 2; i < n; ++i) L.set_bracket_term(1, i, i + 1, Scalar::one(f));
    std::vector<std::string> labels{"e"};
    for (std::size_t i = 1; i <= n; ++i) labels.push_back("e" + std::to_string(i));
    return finish(std::move(L), std::move(labels));
}

/// Solvable algebra of dimension 2m+2 whose derived algebra is H_m:
/// basis e,a1,b1,...,am,bm,z with [e,a_i] = a_i, [e,b_i] = -b_i, [a_i,b_i] = z.
inline LieAlgebra heisenberg_integral(std::size_t m, Field f = Field::rationals()) {
    if (m == 0) throw BuilderError("heisenberg_integral: m must be at least 1");
    if (f.characteristic() == 2)
        throw BuilderError("heisenberg_integral: characteristic two is excluded");
    LieAlgebra L(f, 2 * m + 2);
    std::vector<std::string> labels{"e"};
    for (std::size_t i = 0; i < m; ++i) {
        const std::size_t a = 1 + 2 * i, b = 2 + 2 * i;
        L.set_bracket_term(0, a, a, Scalar::one(f));
        L.set_bracket_term(0, b, b, -Scalar::one(f));
        L.set_bracket_term(a, b, 2 * m + 1, Scalar::one(f));
        labels.push_back("a" + std::to_string(i + 1));
        labels.push_back("b" + std::to_string(i + 1));
    }
    labels.push_back("z");
    return finish(std::move(L), std::move(labels));
}

/// sl2 with basis e,h,f: [h,e] = 2e, [h,f] = -2f, [e,f] = h.
inline LieAlgebra sl2(Field f = Field::rationals()) {
    LieAlgebra L(f, 3);
    L.set_bracket_term(1, 0, 0, Scalar(f, 2));
    L.set_bracket_term(1, 2, 2, Scalar(f, -2));
    L.set_bracket_term(0, 2, 1, Scalar::one(f));
    return finish(std::move(L), {"e", "h", "f"});
}

/// sl2 acting on its (m+1)-dimensional irreducible module V(m):
/// basis e,h,f,v0..vm with h v_j = (m-2j) v_j, f v_j = v_{j+1},
/// e v_j = j(m-j+1) v_{j-1}; the module part is an abelian ideal.
inline LieAlgebra sl2_module_extension(std::size_t m, Field f = Field::rationals()) {
    if (f.characteristic() != 0)
        throw BuilderError("sl2_module_extension: requires characteristic zero");
    const std::size_t n = 3 + (m + 1);
    LieAlgebra L(f, n);
    L.set_bracket_term(1, 0, 0, Scalar(f, 2));
    L.set_bracket_term(1, 2, 2, Scalar(f, -2));
    L.set_bracket_term(0, 2, 1, Scalar::one(f));
    for (std::size_t j = 0; j <= m; ++j) {
        const std::size_t vj = 3 + j;
        const long weight = static_cast<long>(m) - 2 * static_cast<long>(j);
        L.set_bracket_term(1, vj, vj, Scalar(f, weight));
        if (j < m) L.set_bracket_term(2, vj, vj + 1, Scalar::one(f));
        if (j > 0)
            L.set_bracket_term(0, vj, vj - 1,
                               Scalar(f, static_cast<long>(j) * static_cast<long>(m - j + 1)));
    }
    std::vector<std::string> labels{"e", "h", "f"};
    for (std::size_t j = 0; j <= m; ++j) labels.push_back("v" + std::to_string(j));
    return finish(std::move(L), std::move(labels));
}

} // namespace builders
} // namespace liederive

#endif
