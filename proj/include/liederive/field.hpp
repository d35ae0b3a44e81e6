#ifndef LIEDERIVE_FIELD_HPP
#define LIEDERIVE_FIELD_HPP

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace liederive {

using BigInt = boost::multiprecision::cpp_int;
using BigRational = boost::multiprecision::cpp_rational;

/// Thrown when two exact values from different fields are combined.
struct FieldMismatchError : std::logic_error {
    FieldMismatchError() : std::logic_error("operands belong to different fields") {}
};

/// Thrown when an operation requires characteristic zero.
struct CharZeroRequiredError : std::runtime_error {
    explicit CharZeroRequiredError(const std::string& op)
        : std::runtime_error(op + ": requires a field of characteristic zero") {}
};

enum class FieldKind { rationals, prime_field };

/// Descriptor of the ground field: the rationals or a prime field GF(p).
class Field {
  public:
    Field() : kind_(FieldKind::rationals), p_(0) {}

    static Field rationals() { return Field(); }

    static Field gf(std::int64_t p) {
        if (!is_prime(p)) throw std::invalid_argument("Field::gf: modulus must be prime");
        if (p >= (std::int64_t(1) << 31)) throw std::invalid_argument("Field::gf: modulus too large");
        Field f;
        f.kind_ = FieldKind::prime_field;
        f.p_ = p;
        return f;
    }

    FieldKind kind() const { return kind_; }
    bool is_rationals() const { return kind_ == FieldKind::rationals; }
    std::int64_t prime() const { return p_; }
    std::int64_t characteristic() const { return p_; }

    bool operator==(const Field& o) const { return kind_ == o.kind_ && p_ == o.p_; }
    bool operator!=(const Field& o) const { return !(*this == o); }

    std::string to_string() const {
        return is_rationals() ? "Q" : "GF(" + std::to_string(p_) + ")";
    }

    static bool is_prime(std::int64_t n) {
        if (n < 2) return false;
        if (n % 2 == 0) return n == 2;
        for (std::int64_t d = 3; d * d <= n; d += 2)
            if (n % d == 0) return false;
        return true;
    }

  private:
    FieldKind kind_;
    std::int64_t p_; // 0 for the rationals
};

inline void require_same_field(const Field& a, const Field& b) {
    if (a != b) throw FieldMismatchError();
}

namespace detail {

inline std::int64_t mod_reduce(std::int64_t v, std::int64_t p) {
    std::int64_t r = v % p;
    return r < 0 ? r + p : r;
}

// extended Euclid; a assumed in [1, p)
inline std::int64_t mod_inverse(std::int64_t a, std::int64_t p) {
    std::int64_t old_r = a, r = p;
    std::int64_t old_s = 1, s = 0;
    while (r != 0) {
        std::int64_t q = old_r / r;
        std::int64_t t = old_r - q * r;
        old_r = r;
        r = t;
        t = old_s - q * s;
        old_s = s;
        s = t;
    }
    if (old_r != 1) throw std::domain_error("mod_inverse: not invertible");
    return mod_reduce(old_s, p);
}

} // namespace detail

/// Exact element of the ground field. Over the rationals the value is a
/// reduced fraction with positive denominator; over GF(p) a residue in [0, p).
/// Arithmetic never rounds.
class Scalar {
  public:
    Scalar() : field_(), q_(0), r_(0) {}

    Scalar(Field f, long v) : field_(f), q_(0), r_(0) {
        if (f.is_rationals())
            q_ = v;
        else
            r_ = detail::mod_reduce(v, f.prime());
    }

    static Scalar zero(const Field& f) { return Scalar(f, 0); }
    static Scalar one(const Field& f) { return Scalar(f, 1); }

    static Scalar from_rational(const Field& f, const BigRational& q) {
        if (!f.is_rationals()) throw std::invalid_argument("from_rational: field is GF(p)");
        Scalar s(f, 0);
        s.q_ = q;
        return s;
    }

    static Scalar from_residue(const Field& f, std::int64_t r) {
        if (f.is_rationals()) throw std::invalid_argument("from_residue: field is Q");
        Scalar s(f, 0);
        s.r_ = detail::mod_reduce(r, f.prime());
        return s;
    }

    /// Parses the serialized form: "a/b" or "a" over Q, a decimal residue
    /// (or "a/b" with b invertible) over GF(p).
    static Scalar parse(const Field& f, const std::string& text) {
        if (text.empty()) throw std::invalid_argument("Scalar::parse: empty string");
        auto slash = text.find('/');
        if (f.is_rationals()) {
            BigInt num, den = 1;
            if (slash == std::string::npos) {
                num = BigInt(text);
            } else {
                num = BigInt(text.substr(0, slash));
                den = BigInt(text.substr(slash + 1));
            }
            if (den == 0) throw std::invalid_argument("Scalar::parse: zero denominator");
            return from_rational(f, BigRational(num, den));
        }
        if (slash != std::string::npos) {
            Scalar num = from_residue(f, std::stoll(text.substr(0, slash)));
            Scalar den = from_residue(f, std::stoll(text.substr(slash + 1)));
            return num / den;
        }
        return from_residue(f, detail::mod_reduce(std::stoll(text), f.prime()));
    }

    const Field& field() const { return field_; }
    bool is_zero() const { return field_.is_rationals() ? q_.is_zero() : r_ == 0; }
    bool is_one() const { return field_.is_rationals() ? q_ == 1 : r_ == 1; }

    const BigRational& rational() const { return q_; }
    std::int64_t residue() const { return r_; }

    Scalar operator-() const {
        Scalar s(*this);
        if (field_.is_rationals())
            s.q_ = -s.q_;
        else if (s.r_ != 0)
            s.r_ = field_.prime() - s.r_;
        return s;
    }

    Scalar& operator+=(const Scalar& o) {
        require_same_field(field_, o.field_);
        if (field_.is_rationals())
            q_ += o.q_;
        else
            r_ = detail::mod_reduce(r_ + o.r_, field_.prime());
        return *this;
    }
    Scalar& operator-=(const Scalar& o) {
        require_same_field(field_, o.field_);
        if (field_.is_rationals())
            q_ -= o.q_;
        else
            r_ = detail::mod_reduce(r_ - o.r_, field_.prime());
        return *this;
    }
    Scalar& operator*=(const Scalar& o) {
        require_same_field(field_, o.field_);
        if (field_.is_rationals())
            q_ *= o.q_;
        else
            r_ = detail::mod_reduce(r_ * o.r_, field_.prime());
        return *this;
    }
    Scalar& operator/=(const Scalar& o) {
        require_same_field(field_, o.field_);
        if (o.is_zero()) throw std::domain_error("Scalar: division by zero");
        if (field_.is_rationals())
            q_ /= o.q_;
        else
            r_ = detail::mod_reduce(r_ * detail::mod_inverse(o.r_, field_.prime()), field_.prime());
        return *this;
    }

    friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
    friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
    friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
    friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }

    Scalar inverse() const {
        Scalar s = one(field_);
        s /= *this;
        return s;
    }

    bool operator==(const Scalar& o) const {
        if (field_ != o.field_) return false;
        return field_.is_rationals() ? q_ == o.q_ : r_ == o.r_;
    }
    bool operator!=(const Scalar& o) const { return !(*this == o); }

    /// "a/b" (reduced, b > 0) over Q; decimal residue over GF(p).
    std::string to_string() const {
        if (field_.is_rationals())
            return boost::multiprecision::numerator(q_).str() + "/" +
                   boost::multiprecision::denominator(q_).str();
        return std::to_string(r_);
    }

    /// Short display form: integers print without the "/1".
    std::string display() const {
        if (!field_.is_rationals()) return std::to_string(r_);
        if (boost::multiprecision::denominator(q_) == 1)
            return boost::multiprecision::numerator(q_).str();
        return to_string();
    }

  private:
    Field field_;
    BigRational q_;
    std::int64_t r_;
};

} // namespace liederive

#endif
