#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <ostream>
#include <stdexcept>
#include <string>
#include <utility>

namespace holopade {

// Exact rational scalar. Always stored canonically: gcd(num, den) = 1,
// den >= 1. String form is "p/q", with "/q" omitted when q = 1.
class Rational {
  public:
    Rational() : v_(0) {}
    Rational(long n) : v_(n) {}          // NOLINT(google-explicit-constructor)
    Rational(int n) : v_(n) {}           // NOLINT(google-explicit-constructor)
    Rational(long num, long den) : v_(num, den) {
        if (den == 0) throw std::invalid_argument("Rational: zero denominator");
        v_.canonicalize();
    }
    explicit Rational(mpz_class z) : v_(std::move(z)) {}
    explicit Rational(mpq_class q) : v_(std::move(q)) { v_.canonicalize(); }

    static Rational from_string(const std::string& s) {
        mpq_class q;
        if (q.set_str(s, 10) != 0)
            throw std::invalid_argument("Rational: cannot parse '" + s + "'");
        if (q.get_den() == 0)
            throw std::invalid_argument("Rational: zero denominator in '" + s + "'");
        q.canonicalize();
        return Rational(std::move(q));
    }

    std::string to_string() const { return v_.get_str(); }

    const mpz_class& num() const { return v_.get_num(); }
    const mpz_class& den() const { return v_.get_den(); }
    const mpq_class& raw() const { return v_; }

    bool is_zero() const { return sgn(v_) == 0; }
    int sign() const { return sgn(v_); }
    bool is_integer() const { return v_.get_den() == 1; }

    // Exact conversion; throws when the value is not an integer fitting long.
    long to_long() const {
        if (!is_integer() || !v_.get_num().fits_slong_p())
            throw std::domain_error("Rational: not a small integer: " + to_string());
        return v_.get_num().get_si();
    }

    double to_double() const { return v_.get_d(); }

    Rational operator-() const { return Rational(mpq_class(-v_)); }
    Rational abs() const { return sign() < 0 ? -*this : *this; }

    Rational inverse() const {
        if (is_zero()) throw std::domain_error("Rational: division by zero");
        return Rational(mpq_class(1 / v_));
    }

    Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
    Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
    Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
    Rational& operator/=(const Rational& o) {
        if (o.is_zero()) throw std::domain_error("Rational: division by zero");
        v_ /= o.v_;
        return *this;
    }

    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

    friend bool operator==(const Rational& a, const Rational& b) { return a.v_ == b.v_; }
    friend bool operator!=(const Rational& a, const Rational& b) { return a.v_ != b.v_; }
    friend bool operator<(const Rational& a, const Rational& b) { return a.v_ < b.v_; }
    friend bool operator<=(const Rational& a, const Rational& b) { return a.v_ <= b.v_; }
    friend bool operator>(const Rational& a, const Rational& b) { return a.v_ > b.v_; }
    friend bool operator>=(const Rational& a, const Rational& b) { return a.v_ >= b.v_; }

    friend std::ostream& operator<<(std::ostream& os, const Rational& r) {
        return os << r.to_string();
    }

  private:
    mpq_class v_;
};

inline Rational pow_int(const Rational& x, long e) {
    if (e < 0) return pow_int(x.inverse(), -e);
    Rational r = 1, b = x;
    while (e > 0) {
        if (e & 1) r *= b;
        b *= b;
        e >>= 1;
    }
    return r;
}

// Rising factorial (x)_k = x(x+1)...(x+k-1); (x)_0 = 1.
inline Rational pochhammer(const Rational& x, long k) {
    if (k < 0) throw std::invalid_argument("pochhammer: negative k");
    Rational r = 1;
    for (long i = 0; i < k; ++i) r *= x + Rational(i);
    return r;
}

inline Rational factorial(long n) {
    if (n < 0) throw std::invalid_argument("factorial: negative n");
    mpz_class z;
    mpz_fac_ui(z.get_mpz_t(), static_cast<unsigned long>(n));
    return Rational(z);
}

// Generalized binomial coefficient: (-1)^b (-a)_b / b!.
inline Rational gen_binomial(const Rational& a, long b) {
    if (b < 0) throw std::invalid_argument("gen_binomial: negative b");
    Rational r = pochhammer(-a, b) / factorial(b);
    return (b % 2 == 0) ? r : -r;
}

}  // namespace holopade
