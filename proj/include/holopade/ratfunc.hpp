#pragma once

#include <utility>

#include "holopade/poly.hpp"

namespace holopade {

// Reduced fraction of polynomials: gcd(num, den) = 1, den monic and nonzero.
class RatFunc {
  public:
    RatFunc() : num_(), den_(Rational(1)) {}
    RatFunc(Rational c, Var v = Var::z) : num_(std::move(c), v), den_(Rational(1), v) {}  // NOLINT
    RatFunc(Poly num, Poly den) : num_(std::move(num)), den_(std::move(den)) { reduce(); }
    explicit RatFunc(Poly num) : den_(Rational(1), num.var()) { num_ = std::move(num); }

    const Poly& num() const { return num_; }
    const Poly& den() const { return den_; }

    bool is_zero() const { return num_.is_zero(); }
    bool is_polynomial() const { return den_.is_constant(); }
    Var var() const { return num_.is_constant() ? den_.var() : num_.var(); }

    // Requires is_polynomial().
    Poly as_poly() const {
        if (!is_polynomial()) throw std::domain_error("RatFunc: not a polynomial: denominator " + den_.to_string());
        return num_;
    }

    RatFunc with_var(Var v) const { return RatFunc(num_.with_var(v), den_.with_var(v)); }

    RatFunc derivative() const {
        // (n/d)' = (n'd - nd')/d^2
        return RatFunc(num_.derivative() * den_ - num_ * den_.derivative(), den_ * den_);
    }

    RatFunc operator-() const {
        RatFunc r = *this;
        r.num_ = -r.num_;
        return r;
    }

    friend RatFunc operator+(const RatFunc& a, const RatFunc& b) {
        return RatFunc(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
    }
    friend RatFunc operator-(const RatFunc& a, const RatFunc& b) { return a + (-b); }
    friend RatFunc operator*(const RatFunc& a, const RatFunc& b) {
        return RatFunc(a.num_ * b.num_, a.den_ * b.den_);
    }
    friend RatFunc operator/(const RatFunc& a, const RatFunc& b) {
        if (b.is_zero()) throw std::domain_error("RatFunc: division by zero");
        return RatFunc(a.num_ * b.den_, a.den_ * b.num_);
    }
    friend RatFunc operator*(const RatFunc& a, const Rational& s) { return RatFunc(a.num_ * s, a.den_); }
    friend RatFunc operator*(const Rational& s, const RatFunc& a) { return a * s; }

    friend bool operator==(const RatFunc& a, const RatFunc& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend bool operator!=(const RatFunc& a, const RatFunc& b) { return !(a == b); }

    std::string to_string() const {
        if (is_polynomial()) return num_.to_string();
        return "(" + num_.to_string() + ")/(" + den_.to_string() + ")";
    }

  private:
    void reduce() {
        if (den_.is_zero()) throw std::domain_error("RatFunc: zero denominator");
        if (num_.is_zero()) {
            den_ = Poly(Rational(1), den_.var());
            return;
        }
        Poly g = poly_gcd(num_, den_);
        if (!g.is_constant()) {
            num_ = divide_exact(num_, g);
            den_ = divide_exact(den_, g);
        }
        Rational lead = den_.leading();
        if (lead != Rational(1)) {
            num_ = num_ / lead;
            den_ = den_ / lead;
        }
    }

    Poly num_;
    Poly den_;
};

}  // namespace holopade
