#include "entwine/scalar.hpp"

namespace ent {

namespace {

using u128 = unsigned __int128;

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
    return static_cast<std::uint64_t>(static_cast<u128>(a) * b % p);
}

std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t p) {
    std::uint64_t r = 1 % p;
    while (e) {
        if (e & 1) r = mulmod(r, a, p);
        a = mulmod(a, a, p);
        e >>= 1;
    }
    return r;
}

std::uint64_t reduce(const mpz_class& z, std::uint64_t p) {
    mpz_class m = z % mpz_class(std::to_string(p));
    if (m < 0) m += mpz_class(std::to_string(p));
    return std::stoull(m.get_str());
}

}  // namespace

bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t q : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
        if (n % q == 0) return n == q;
    }
    std::uint64_t d = n - 1;
    int s = 0;
    while ((d & 1) == 0) { d >>= 1; ++s; }
    // Deterministic Miller-Rabin bases for 64-bit integers.
    for (std::uint64_t a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
        std::uint64_t x = powmod(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool comp = true;
        for (int i = 1; i < s; ++i) {
            x = mulmod(x, x, n);
            if (x == n - 1) { comp = false; break; }
        }
        if (comp) return false;
    }
    return true;
}

Field Field::prime(std::uint64_t p) {
    if (!is_prime(p)) throw std::invalid_argument("modulus " + std::to_string(p) + " is not prime");
    return Field(p);
}

std::string Field::name() const {
    return p_ == 0 ? "Q" : "GF(" + std::to_string(p_) + ")";
}

Scalar::Scalar(const Field& f, long v) : p_(f.modulus()) {
    if (p_ == 0) {
        q_ = v;
    } else {
        __int128 m = static_cast<__int128>(v) % static_cast<__int128>(p_);
        if (m < 0) m += p_;
        r_ = static_cast<std::uint64_t>(m);
    }
}

Scalar::Scalar(const Field& f, const mpq_class& v) : p_(f.modulus()) {
    if (p_ == 0) {
        q_ = v;
        q_.canonicalize();
    } else {
        std::uint64_t num = reduce(v.get_num(), p_);
        std::uint64_t den = reduce(v.get_den(), p_);
        if (den == 0) throw std::domain_error("denominator divisible by the characteristic");
        r_ = mulmod(num, powmod(den, p_ - 2, p_), p_);
    }
}

mpq_class Scalar::to_mpq() const {
    if (p_ == 0) return q_;
    return mpq_class(mpz_class(std::to_string(r_)));
}

Scalar Scalar::inverse() const {
    if (is_zero()) throw std::domain_error("inverse of zero");
    Scalar s = *this;
    if (p_ == 0) {
        s.q_ = 1 / q_;
    } else {
        s.r_ = powmod(r_, p_ - 2, p_);
    }
    return s;
}

Scalar Scalar::operator-() const {
    Scalar s = *this;
    if (p_ == 0) s.q_ = -q_;
    else s.r_ = r_ == 0 ? 0 : p_ - r_;
    return s;
}

Scalar& Scalar::operator+=(const Scalar& o) {
    check(o);
    if (p_ == 0) q_ += o.q_;
    else r_ = static_cast<std::uint64_t>((static_cast<u128>(r_) + o.r_) % p_);
    return *this;
}

Scalar& Scalar::operator-=(const Scalar& o) {
    check(o);
    if (p_ == 0) q_ -= o.q_;
    else r_ = static_cast<std::uint64_t>((static_cast<u128>(r_) + (p_ - o.r_)) % p_);
    return *this;
}

Scalar& Scalar::operator*=(const Scalar& o) {
    check(o);
    if (p_ == 0) q_ *= o.q_;
    else r_ = mulmod(r_, o.r_, p_);
    return *this;
}

bool operator==(const Scalar& a, const Scalar& b) {
    if (a.p_ != b.p_) return false;
    return a.p_ == 0 ? a.q_ == b.q_ : a.r_ == b.r_;
}

std::string Scalar::str() const {
    if (p_ == 0) return q_.get_str();
    return std::to_string(r_);
}

std::string Scalar::report_str() const {
    if (p_ == 0) return q_.get_str();
    return std::to_string(r_) + " mod " + std::to_string(p_);
}

}  // namespace ent
