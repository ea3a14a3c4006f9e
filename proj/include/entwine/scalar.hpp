#pragma once

#include <cstdint>
#include <gmpxx.h>
#include <stdexcept>
#include <string>

namespace ent {

// Ground field: the rationals or a prime field GF(p).
class Field {
public:
    enum class Kind { rationals, prime_field };

    Field() = default;
    static Field rationals() { return Field(); }
    static Field prime(std::uint64_t p);

    Kind kind() const { return p_ == 0 ? Kind::rationals : Kind::prime_field; }
    bool is_rational() const { return p_ == 0; }
    std::uint64_t modulus() const { return p_; }
    std::string name() const;

    friend bool operator==(const Field&, const Field&) = default;

private:
    explicit Field(std::uint64_t p) : p_(p) {}
    std::uint64_t p_ = 0;
};

bool is_prime(std::uint64_t n);

// Exact field element. Rationals are kept canonical by GMP; residues lie in [0, p).
class Scalar {
public:
    Scalar() = default;
    Scalar(const Field& f, long v);
    Scalar(const Field& f, const mpq_class& v);
    static Scalar zero(const Field& f) { return Scalar(f, 0L); }
    static Scalar one(const Field& f) { return Scalar(f, 1L); }

    Field field() const { return p_ == 0 ? Field::rationals() : Field::prime(p_); }
    bool is_zero() const { return p_ == 0 ? sgn(q_) == 0 : r_ == 0; }
    bool is_one() const { return p_ == 0 ? q_ == 1 : r_ == 1; }

    // Rational value (residue as an integer for GF(p)).
    mpq_class to_mpq() const;
    std::uint64_t residue() const { return r_; }

    Scalar inverse() const;
    Scalar operator-() const;
    Scalar& operator+=(const Scalar& o);
    Scalar& operator-=(const Scalar& o);
    Scalar& operator*=(const Scalar& o);
    Scalar& operator/=(const Scalar& o) { return *this *= o.inverse(); }

    friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
    friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
    friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
    friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }
    friend bool operator==(const Scalar& a, const Scalar& b);
    friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }

    // "3/7", "-2", or for GF(p) the bare residue "2".
    std::string str() const;
    // Report form: "3/7" over Q, "2 mod 5" over GF(5).
    std::string report_str() const;

private:
    void check(const Scalar& o) const {
        if (o.p_ != p_) throw std::logic_error("scalar field mismatch");
    }
    std::uint64_t p_ = 0;
    std::uint64_t r_ = 0;
    mpq_class q_;
};

}  // namespace ent
