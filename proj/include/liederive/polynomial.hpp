#ifndef LIEDERIVE_POLYNOMIAL_HPP
#define LIEDERIVE_POLYNOMIAL_HPP

#include "matrix.hpp"

#include <algorithm>
#include <array>
#include <cstdlib>
#include <optional>
#include <utility>

namespace liederive {

/// Raised when rational factorization exceeds the configured degree cap or
/// the coefficient sizes put divisor enumeration out of desk-scale reach.
struct FactorLimitError : std::runtime_error {
    explicit FactorLimitError(const std::string& what)
        : std::runtime_error("factorization-limit: " + what) {}
};

/// Dense univariate polynomial over one field, coefficients low-to-high.
/// The zero polynomial has an empty coefficient vector.
class Poly {
  public:
    explicit Poly(Field f) : field_(f) {}
    Poly(Field f, std::vector<Scalar> coeffs) : field_(f), c_(std::move(coeffs)) { normalize(); }

    static Poly from_ints(Field f, std::initializer_list<long> low_to_high) {
        std::vector<Scalar> c;
        for (long v : low_to_high) c.push_back(Scalar(f, v));
        return Poly(f, std::move(c));
    }

    static Poly constant(Field f, const Scalar& s) { return Poly(f, {s}); }

    static Poly x(Field f) { return from_ints(f, {0, 1}); }

    const Field& field() const { return field_; }
    bool is_zero() const { return c_.empty(); }
    // degree of the zero polynomial is reported as -1
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    const std::vector<Scalar>& coeffs() const { return c_; }
    Scalar coeff(std::size_t i) const {
        return i < c_.size() ? c_[i] : Scalar::zero(field_);
    }
    Scalar leading() const {
        return c_.empty() ? Scalar::zero(field_) : c_.back();
    }

    bool operator==(const Poly& o) const { return field_ == o.field_ && c_ == o.c_; }
    bool operator!=(const Poly& o) const { return !(*this == o); }

    Poly operator-() const {
        Poly r(*this);
        for (auto& s : r.c_) s = -s;
        return r;
    }

    friend Poly operator+(const Poly& a, const Poly& b) {
        require_same_field(a.field_, b.field_);
        std::vector<Scalar> c(std::max(a.c_.size(), b.c_.size()), Scalar::zero(a.field_));
        for (std::size_t i = 0; i < a.c_.size(); ++i) c[i] += a.c_[i];
        for (std::size_t i = 0; i < b.c_.size(); ++i) c[i] += b.c_[i];
        return Poly(a.field_, std::move(c));
    }
    friend Poly operator-(const Poly& a, const Poly& b) { return a + (-b); }

    friend Poly operator*(const Poly& a, const Poly& b) {
        require_same_field(a.field_, b.field_);
        if (a.is_zero() || b.is_zero()) return Poly(a.field_);
        std::vector<Scalar> c(a.c_.size() + b.c_.size() - 1, Scalar::zero(a.field_));
        for (std::size_t i = 0; i < a.c_.size(); ++i) {
            if (a.c_[i].is_zero()) continue;
            for (std::size_t j = 0; j < b.c_.size(); ++j)
                if (!b.c_[j].is_zero()) c[i + j] += a.c_[i] * b.c_[j];
        }
        return Poly(a.field_, std::move(c));
    }

    friend Poly operator*(const Poly& a, const Scalar& s) {
        Poly r = a;
        for (auto& v : r.c_) v *= s;
        r.normalize();
        return r;
    }

    Scalar eval(const Scalar& x) const {
        Scalar acc = Scalar::zero(field_);
        for (std::size_t i = c_.size(); i-- > 0;) acc = acc * x + c_[i];
        return acc;
    }

    Poly derivative() const {
        if (c_.size() <= 1) return Poly(field_);
        std::vector<Scalar> d(c_.size() - 1, Scalar::zero(field_));
        for (std::size_t i = 1; i < c_.size(); ++i) d[i - 1] = c_[i] * Scalar(field_, static_cast<long>(i));
        return Poly(field_, std::move(d));
    }

    Poly monic() const {
        if (is_zero()) return *this;
        return *this * leading().inverse();
    }

    std::string to_string(const std::string& var = "t") const {
        if (is_zero()) return "0";
        std::string out;
        for (std::size_t i = c_.size(); i-- > 0;) {
            if (c_[i].is_zero()) continue;
            if (!out.empty()) out += " + ";
            out += c_[i].display();
            if (i >= 1) out += "*" + var;
            if (i >= 2) out += "^" + std::to_string(i);
        }
        return out;
    }

  private:
    void normalize() {
        while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
    }

    Field field_;
    std::vector<Scalar> c_;
};

inline std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b) {
    require_same_field(a.field(), b.field());
    if (b.is_zero()) throw std::domain_error("poly divmod: division by zero polynomial");
    Poly rem = a;
    std::vector<Scalar> q(std::max(0, a.degree() - b.degree() + 1), Scalar::zero(a.field()));
    const Scalar lead_inv = b.leading().inverse();
    while (!rem.is_zero() && rem.degree() >= b.degree()) {
        const std::size_t shift = static_cast<std::size_t>(rem.degree() - b.degree());
        const Scalar f = rem.leading() * lead_inv;
        q[shift] = f;
        std::vector<Scalar> sub(shift, Scalar::zero(a.field()));
        for (const auto& c : b.coeffs()) sub.push_back(c * f);
        rem = rem - Poly(a.field(), std::move(sub));
    }
    return {Poly(a.field(), std::move(q)), rem};
}

inline Poly poly_gcd(Poly a, Poly b) {
    while (!b.is_zero()) {
        Poly r = divmod(a, b).second;
        a = std::move(b);
        b = std::move(r);
    }
    return a.monic();
}

namespace detail {

/// Clears denominators and the content: maps a nonzero rational polynomial to
/// the primitive integer polynomial with positive leading coefficient,
/// returning the coefficient list plus the rational unit that was divided out.
struct IntPoly {
    std::vector<BigInt> c;
    BigRational unit; // original = unit * primitive
};

inline IntPoly to_primitive_integer(const Poly& f) {
    if (f.is_zero()) throw std::invalid_argument("to_primitive_integer: zero polynomial");
    BigInt den_lcm = 1;
    for (const auto& s : f.coeffs()) {
        BigInt d = boost::multiprecision::denominator(s.rational());
        den_lcm = boost::multiprecision::lcm(den_lcm, d);
    }
    std::vector<BigInt> c;
    for (const auto& s : f.coeffs()) {
        BigRational v = s.rational() * BigRational(den_lcm);
        c.push_back(boost::multiprecision::numerator(v));
    }
    BigInt content = 0;
    for (const auto& v : c) content = boost::multiprecision::gcd(content, v);
    if (c.back() < 0) content = -content;
    for (auto& v : c) v /= content;
    IntPoly out;
    out.c = std::move(c);
    out.unit = BigRational(content, den_lcm);
    return out;
}

inline Poly from_integer(Field f, const std::vector<BigInt>& c) {
    std::vector<Scalar> s;
    for (const auto& v : c) s.push_back(Scalar::from_rational(f, BigRational(v)));
    return Poly(f, std::move(s));
}

inline BigInt int_eval(const std::vector<BigInt>& c, const BigInt& x) {
    BigInt acc = 0;
    for (std::size_t i = c.size(); i-- > 0;) acc = acc * x + c[i];
    return acc;
}

/// All positive divisors. Values beyond 2^62 are out of desk scale.
inline std::vector<std::uint64_t> positive_divisors(const BigInt& value) {
    BigInt a = boost::multiprecision::abs(value);
    if (a == 0) throw std::invalid_argument("positive_divisors: zero");
    if (a > BigInt(std::uint64_t(1) << 62))
        throw FactorLimitError("divisor enumeration on oversized coefficient");
    std::uint64_t v = a.convert_to<std::uint64_t>();
    std::vector<std::pair<std::uint64_t, int>> fac;
    for (std::uint64_t d = 2; d * d <= v; d += (d == 2 ? 1 : 2)) {
        if (v % d) continue;
        int e = 0;
        while (v % d == 0) {
            v /= d;
            ++e;
        }
        fac.push_back({d, e});
    }
    if (v > 1) fac.push_back({v, 1});
    std::vector<std::uint64_t> divs{1};
    for (auto [p, e] : fac) {
        std::size_t base = divs.size();
        std::uint64_t pk = 1;
        for (int k = 1; k <= e; ++k) {
            pk *= p;
            for (std::size_t i = 0; i < base; ++i) divs.push_back(divs[i] * pk);
        }
        if (divs.size() > 100000) throw FactorLimitError("too many divisors");
    }
    std::sort(divs.begin(), divs.end());
    return divs;
}

inline BigInt big_mod(const BigInt& a, const BigInt& m) {
    BigInt r = a % m;
    return r < 0 ? r + m : r;
}

/// Extended Euclid over the integers: returns (g, x, y) with a x + b y = g.
inline std::array<BigInt, 3> big_egcd(BigInt a, BigInt b) {
    BigInt x0 = 1, x1 = 0, y0 = 0, y1 = 1;
    while (b != 0) {
        BigInt q = a / b;
        BigInt t = a - q * b;
        a = b;
        b = t;
        t = x0 - q * x1;
        x0 = x1;
        x1 = t;
        t = y0 - q * y1;
        y0 = y1;
        y1 = t;
    }
    return {a, x0, y0};
}

inline BigInt big_mod_inverse(const BigInt& a, const BigInt& m) {
    auto [g, x, y] = big_egcd(big_mod(a, m), m);
    if (g != 1) throw std::domain_error("big_mod_inverse: not invertible");
    return big_mod(x, m);
}

inline BigInt int_eval_mod(const std::vector<BigInt>& c, const BigInt& x, const BigInt& m) {
    BigInt acc = 0;
    for (std::size_t i = c.size(); i-- > 0;) acc = big_mod(acc * x + c[i], m);
    return acc;
}

/// All rational roots of a primitive squarefree integer polynomial with
/// nonzero constant term, found without factoring any large integer:
/// roots are detected modulo a small prime where the reduction stays
/// squarefree, Hensel-lifted until the modulus dominates the root-size
/// bounds, and recovered by rational reconstruction. Every candidate is
/// verified by exact evaluation, so the output is unconditionally sound;
/// completeness follows because a rational root reduces to a root modulo
/// every prime not dividing the leading coefficient.
inline std::vector<BigRational> rational_roots_of_squarefree(const std::vector<BigInt>& c) {
    const int deg = static_cast<int>(c.size()) - 1;
    std::vector<BigRational> out;
    if (deg < 1) return out;
    if (deg == 1) {
        out.push_back(BigRational(-c[0], c[1]));
        return out;
    }
    // choose a prime not dividing the leading coefficient with squarefree
    // reduction (checked via gcd with the derivative over GF(p))
    std::int64_t prime = 0;
    std::vector<std::int64_t> roots_mod_p;
    for (std::int64_t p = 10007; p < 60000 && prime == 0; p += 2) {
        if (!Field::is_prime(p)) continue;
        if (c.back() % p == 0) continue;
        Field gp = Field::gf(p);
        std::vector<Scalar> red;
        for (const auto& v : c)
            red.push_back(Scalar::from_residue(gp, (v % p).convert_to<std::int64_t>()));
        Poly fp(gp, std::move(red));
        if (fp.degree() != deg) continue;
        if (poly_gcd(fp, fp.derivative()).degree() != 0) continue; // reduction not squarefree
        prime = p;
        for (std::int64_t r = 0; r < p; ++r)
            if (fp.eval(Scalar::from_residue(gp, r)).is_zero()) roots_mod_p.push_back(r);
    }
    if (prime == 0)
        throw std::runtime_error("rational root extraction: no usable prime found");
    if (roots_mod_p.empty()) return out; // certified: no rational roots exist
    // |numerator| <= A and denominator <= |lead|, so lift past 2 A |lead|
    BigInt max_coeff = 0;
    for (const auto& v : c) {
        BigInt av = boost::multiprecision::abs(v);
        if (av > max_coeff) max_coeff = av;
    }
    BigInt lead = boost::multiprecision::abs(c.back());
    BigInt bound_a = lead + max_coeff;
    BigInt target = 2 * bound_a * lead + 1;
    std::vector<BigInt> dc; // derivative
    for (std::size_t i = 1; i < c.size(); ++i) dc.push_back(c[i] * static_cast<int>(i));
    for (std::int64_t r0 : roots_mod_p) {
        BigInt m = prime;
        BigInt r = r0;
        while (m < target) {
            BigInt m2 = m * m;
            BigInt fr = int_eval_mod(c, r, m2);
            BigInt dfr = int_eval_mod(dc, r, m2);
            // f'(r) is invertible mod p (squarefree reduction), hence mod p^k
            r = big_mod(r - fr * big_mod_inverse(dfr, m2), m2);
            m = m2;
        }
        // rational reconstruction: half-extended Euclid on (m, r)
        BigInt v0 = m, v1 = big_mod(r, m);
        BigInt t0 = 0, t1 = 1;
        bool found = false;
        BigInt num, den;
        while (v1 != 0) {
            if (v1 <= bound_a && boost::multiprecision::abs(t1) <= lead) {
                num = t1 < 0 ? -v1 : v1;
                den = boost::multiprecision::abs(t1);
                found = true;
                break;
            }
            BigInt q = v0 / v1;
            BigInt t = v0 - q * v1;
            v0 = v1;
            v1 = t;
            t = t0 - q * t1;
            t0 = t1;
            t1 = t;
        }
        if (!found) continue;
        BigRational cand(num, den);
        // exact verification keeps this unconditionally sound
        BigRational acc = 0;
        for (std::size_t i = c.size(); i-- > 0;) acc = acc * cand + BigRational(c[i]);
        if (acc == 0) out.push_back(cand);
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

inline Poly lagrange_interpolate(Field f, const std::vector<long>& xs,
                                 const std::vector<BigRational>& ys) {
    Poly acc(f);
    for (std::size_t i = 0; i < xs.size(); ++i) {
        Poly term = Poly::constant(f, Scalar::from_rational(f, ys[i]));
        for (std::size_t j = 0; j < xs.size(); ++j) {
            if (i == j) continue;
            // (x - xs[j]) / (xs[i] - xs[j])
            Poly lin = Poly::from_ints(f, {-xs[j], 1});
            term = term * lin * Scalar(f, 1) *
                   Scalar::from_rational(f, BigRational(1, BigInt(xs[i]) - BigInt(xs[j])));
        }
        acc = acc + term;
    }
    return acc;
}

} // namespace detail

/// Roots lying in the coefficient field. Over Q: rational-root extraction from
/// the primitive integer form; over GF(p): exhaustive evaluation.
inline std::vector<Scalar> roots_in_field(const Poly& f) {
    if (f.is_zero()) throw std::invalid_argument("roots_in_field: zero polynomial");
    const Field fld = f.field();
    std::vector<Scalar> roots;
    if (!fld.is_rationals()) {
        if (fld.prime() > 1000000)
            throw std::runtime_error("roots_in_field: prime field too large for exhaustive scan");
        for (std::int64_t r = 0; r < fld.prime(); ++r) {
            Scalar x = Scalar::from_residue(fld, r);
            if (f.eval(x).is_zero()) roots.push_back(x);
        }
        return roots;
    }
    // strip powers of t
    Poly g = f;
    bool zero_root = false;
    while (!g.is_zero() && g.coeff(0).is_zero()) {
        zero_root = true;
        std::vector<Scalar> shifted(g.coeffs().begin() + 1, g.coeffs().end());
        g = Poly(fld, std::move(shifted));
    }
    if (zero_root) roots.push_back(Scalar::zero(fld));
    if (g.degree() < 1) return roots;
    Poly squarefree = divmod(g, poly_gcd(g, g.derivative())).first;
    detail::IntPoly ip = detail::to_primitive_integer(squarefree);
    for (const BigRational& r : detail::rational_roots_of_squarefree(ip.c))
        roots.push_back(Scalar::from_rational(fld, r));
    std::sort(roots.begin(), roots.end(), [](const Scalar& a, const Scalar& b) {
        return a.rational() < b.rational();
    });
    roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
    return roots;
}

/// Exactly the eigenvalues of A lying in the ground field.
inline std::vector<Scalar> eigenvalues_in_field(const Matrix& a) {
    return roots_in_field(Poly(a.field(), char_poly(a)));
}

/// Yun squarefree decomposition (characteristic zero): returns monic
/// squarefree parts with their multiplicities, product = monic(f).
inline std::vector<std::pair<Poly, int>> squarefree_decomposition(const Poly& f) {
    if (!f.field().is_rationals()) throw CharZeroRequiredError("squarefree_decomposition");
    std::vector<std::pair<Poly, int>> parts;
    Poly g = f.monic();
    if (g.degree() < 1) return parts;
    Poly a = poly_gcd(g, g.derivative());
    Poly b = divmod(g, a).first;
    Poly c = divmod(g.derivative(), a).first;
    Poly d = c - b.derivative();
    int i = 1;
    while (b.degree() >= 1) {
        Poly ai = poly_gcd(b, d);
        if (ai.degree() >= 1) parts.push_back({ai, i});
        b = divmod(b, ai).first;
        c = divmod(d, ai).first;
        d = c - b.derivative();
        ++i;
    }
    return parts;
}

struct Factorization {
    Scalar unit;
    std::vector<std::pair<Poly, int>> factors; // monic irreducible, with multiplicity
};

namespace detail {

/// Kronecker search for an irreducible factor of degree in [2, deg/2] of a
/// primitive squarefree integer polynomial with no rational roots.
/// Returns a monic rational factor, or nothing when f is irreducible.
inline std::optional<Poly> kronecker_factor(const Poly& f) {
    const Field fld = f.field();
    const int n = f.degree();
    IntPoly ip = to_primitive_integer(f);
    for (int d = 2; d <= n / 2; ++d) {
        std::vector<long> xs;
        for (long k = 0; static_cast<int>(xs.size()) < d + 1; ++k) {
            xs.push_back(k == 0 ? 0 : (k % 2 ? (k + 1) / 2 : -(k / 2)));
        }
        std::vector<std::vector<BigInt>> divisor_sets;
        for (long x : xs) {
            BigInt v = int_eval(ip.c, BigInt(x));
            auto divs = positive_divisors(v);
            std::vector<BigInt> with_signs;
            for (std::uint64_t u : divs) {
                with_signs.push_back(BigInt(u));
                with_signs.push_back(-BigInt(u));
            }
            divisor_sets.push_back(std::move(with_signs));
        }
        // first coordinate: positive divisors only (factor sign symmetry)
        divisor_sets[0].erase(
            std::remove_if(divisor_sets[0].begin(), divisor_sets[0].end(),
                           [](const BigInt& v) { return v < 0; }),
            divisor_sets[0].end());
        std::uint64_t total = 1;
        for (const auto& s : divisor_sets) {
            total *= s.size();
            if (total > 2000000) throw FactorLimitError("Kronecker candidate space too large");
        }
        std::vector<std::size_t> idx(divisor_sets.size(), 0);
        while (true) {
            std::vector<BigRational> ys;
            for (std::size_t i = 0; i < idx.size(); ++i)
                ys.push_back(BigRational(divisor_sets[i][idx[i]]));
            Poly cand = lagrange_interpolate(fld, xs, ys);
            if (cand.degree() >= 1) {
                auto [q, r] = divmod(f, cand.monic());
                if (r.is_zero() && q.degree() >= 1) return cand.monic();
            }
            std::size_t k = 0;
            while (k < idx.size() && ++idx[k] == divisor_sets[k].size()) {
                idx[k] = 0;
                ++k;
            }
            if (k == idx.size()) break;
        }
    }
    return std::nullopt;
}

inline void factor_squarefree(const Poly& f, int multiplicity,
                              std::vector<std::pair<Poly, int>>& out) {
    Poly g = f.monic();
    // strip rational roots first
    for (const Scalar& r : roots_in_field(g)) {
        Poly lin = Poly(g.field(), {-r, Scalar::one(g.field())});
        while (true) {
            auto [q, rem] = divmod(g, lin);
            if (!rem.is_zero()) break;
            out.push_back({lin, multiplicity});
            g = q;
        }
    }
    while (g.degree() >= 2) {
        if (g.degree() <= 3) {
            // quadratic or cubic with no rational roots is irreducible over Q
            out.push_back({g, multiplicity});
            return;
        }
        auto factor = kronecker_factor(g);
        if (!factor) {
            out.push_back({g, multiplicity});
            return;
        }
        out.push_back({*factor, multiplicity});
        g = divmod(g, *factor).first;
    }
    if (g.degree() == 1) out.push_back({g, multiplicity});
}

} // namespace detail

/// Factors a rational polynomial into monic irreducible factors with
/// multiplicity: squarefree decomposition, rational-root stripping, then
/// Kronecker's method for what remains. Degrees beyond the cap are refused.
inline Factorization factor_rational_poly(const Poly& f, int degree_cap = 12) {
    if (!f.field().is_rationals()) throw CharZeroRequiredError("factor_rational_poly");
    if (f.is_zero()) throw std::invalid_argument("factor_rational_poly: zero polynomial");
    if (f.degree() > degree_cap)
        throw FactorLimitError("degree " + std::to_string(f.degree()) + " exceeds cap " +
                               std::to_string(degree_cap));
    Factorization out{f.leading(), {}};
    for (const auto& [part, mult] : squarefree_decomposition(f))
        detail::factor_squarefree(part, mult, out.factors);
    std::sort(out.factors.begin(), out.factors.end(),
              [](const auto& a, const auto& b) {
                  if (a.first.degree() != b.first.degree()) return a.first.degree() < b.first.degree();
                  return a.first.to_string() < b.first.to_string();
              });
    return out;
}

/// Default factorization degree cap; LIEDERIVE_FACTOR_DEGREE_CAP overrides.
inline int factor_degree_cap() {
    if (const char* env = std::getenv("LIEDERIVE_FACTOR_DEGREE_CAP")) {
        int v = std::atoi(env);
        if (v > 0) return v;
    }
    return 12;
}

} // namespace liederive

#endif
