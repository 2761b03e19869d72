#pragma once

#include <algorithm>
#include <cctype>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "holopade/rational.hpp"

namespace holopade {

enum class Var : unsigned char { z, t };

inline char var_name(Var v) { return v == Var::z ? 'z' : 't'; }
inline Var other_var(Var v) { return v == Var::z ? Var::t : Var::z; }

// Dense univariate polynomial over Q, coefficients ascending by power.
// Canonical form: the highest stored coefficient is nonzero; the zero
// polynomial stores nothing and its degree() is the nullopt sentinel.
class Poly {
  public:
    Poly() = default;
    explicit Poly(Var v) : var_(v) {}
    Poly(Rational c, Var v = Var::z) : var_(v) {
        if (!c.is_zero()) coeffs_.push_back(std::move(c));
    }
    Poly(std::vector<Rational> coeffs, Var v = Var::z)
        : coeffs_(std::move(coeffs)), var_(v) {
        normalize();
    }

    static Poly monomial(Rational c, int power, Var v = Var::z) {
        if (power < 0) throw std::invalid_argument("Poly: negative power");
        if (c.is_zero()) return Poly(v);
        std::vector<Rational> cs(static_cast<size_t>(power) + 1, Rational(0));
        cs.back() = std::move(c);
        return Poly(std::move(cs), v);
    }

    Var var() const { return var_; }
    bool is_zero() const { return coeffs_.empty(); }
    bool is_constant() const { return coeffs_.size() <= 1; }

    std::optional<int> degree() const {
        if (coeffs_.empty()) return std::nullopt;
        return static_cast<int>(coeffs_.size()) - 1;
    }
    // Degree of a polynomial known to be nonzero.
    int degree_nz() const {
        if (coeffs_.empty()) throw std::domain_error("Poly: degree of zero polynomial");
        return static_cast<int>(coeffs_.size()) - 1;
    }

    const Rational& leading() const {
        if (coeffs_.empty()) throw std::domain_error("Poly: leading of zero polynomial");
        return coeffs_.back();
    }

    Rational coeff(int k) const {
        if (k < 0 || static_cast<size_t>(k) >= coeffs_.size()) return Rational(0);
        return coeffs_[static_cast<size_t>(k)];
    }
    const std::vector<Rational>& coeffs() const { return coeffs_; }

    Poly with_var(Var v) const {
        Poly p = *this;
        p.var_ = v;
        return p;
    }

    bool is_monic() const { return !coeffs_.empty() && leading() == Rational(1); }

    Rational eval(const Rational& x) const {
        Rational r = 0;
        for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) r = r * x + *it;
        return r;
    }

    Poly derivative() const {
        if (coeffs_.size() <= 1) return Poly(var_);
        std::vector<Rational> d(coeffs_.size() - 1);
        for (size_t k = 1; k < coeffs_.size(); ++k)
            d[k - 1] = coeffs_[k] * Rational(static_cast<long>(k));
        return Poly(std::move(d), var_);
    }

    Poly operator-() const {
        Poly p = *this;
        for (auto& c : p.coeffs_) c = -c;
        return p;
    }

    friend Poly operator+(const Poly& a, const Poly& b) {
        Var v = joint_var(a, b);
        std::vector<Rational> c(std::max(a.coeffs_.size(), b.coeffs_.size()), Rational(0));
        for (size_t i = 0; i < a.coeffs_.size(); ++i) c[i] += a.coeffs_[i];
        for (size_t i = 0; i < b.coeffs_.size(); ++i) c[i] += b.coeffs_[i];
        return Poly(std::move(c), v);
    }
    friend Poly operator-(const Poly& a, const Poly& b) { return a + (-b); }

    friend Poly operator*(const Poly& a, const Poly& b) {
        Var v = joint_var(a, b);
        if (a.is_zero() || b.is_zero()) return Poly(v);
        std::vector<Rational> c(a.coeffs_.size() + b.coeffs_.size() - 1, Rational(0));
        for (size_t i = 0; i < a.coeffs_.size(); ++i)
            for (size_t j = 0; j < b.coeffs_.size(); ++j)
                c[i + j] += a.coeffs_[i] * b.coeffs_[j];
        return Poly(std::move(c), v);
    }

    friend Poly operator*(const Poly& a, const Rational& s) {
        Poly p = a;
        for (auto& c : p.coeffs_) c *= s;
        p.normalize();
        return p;
    }
    friend Poly operator*(const Rational& s, const Poly& a) { return a * s; }
    friend Poly operator/(const Poly& a, const Rational& s) { return a * s.inverse(); }

    friend bool operator==(const Poly& a, const Poly& b) {
        if (a.coeffs_ != b.coeffs_) return false;
        return a.is_constant() || b.is_constant() || a.var_ == b.var_;
    }
    friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

    // Euclidean division; returns (quotient, remainder).
    friend std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b) {
        if (b.is_zero()) throw std::domain_error("Poly: division by zero polynomial");
        Var v = joint_var(a, b);
        Poly r = a.with_var(v);
        Poly q(v);
        const int db = b.degree_nz();
        while (!r.is_zero() && r.degree_nz() >= db) {
            int shift = r.degree_nz() - db;
            Rational f = r.leading() / b.leading();
            Poly m = Poly::monomial(f, shift, v);
            q = q + m;
            r = r - m * b.with_var(v);
        }
        return {q, r};
    }

    friend std::ostream& operator<<(std::ostream& os, const Poly& p) {
        return os << p.to_string();
    }

    // Human-readable form, used by the CLI and error messages.
    std::string to_string() const {
        if (is_zero()) return "0";
        std::string out;
        const char x = var_name(var_);
        for (int k = degree_nz(); k >= 0; --k) {
            Rational c = coeff(k);
            if (c.is_zero()) continue;
            if (!out.empty()) {
                out += (c.sign() < 0) ? " - " : " + ";
                c = c.abs();
            } else if (c.sign() < 0) {
                out += "-";
                c = c.abs();
            }
            const bool unit = (c == Rational(1));
            if (k == 0 || !unit) out += c.to_string();
            if (k > 0) {
                if (!unit) out += "*";
                out += x;
                if (k > 1) out += "^" + std::to_string(k);
            }
        }
        return out;
    }

  private:
    static Var joint_var(const Poly& a, const Poly& b) {
        if (!a.is_constant() && !b.is_constant() && a.var_ != b.var_)
            throw std::invalid_argument("Poly: variable mismatch");
        return a.is_constant() ? (b.is_constant() ? a.var_ : b.var_) : a.var_;
    }

    void normalize() {
        while (!coeffs_.empty() && coeffs_.back().is_zero()) coeffs_.pop_back();
    }

    std::vector<Rational> coeffs_;
    Var var_ = Var::z;
};

inline Poly pow_int(const Poly& p, long e) {
    if (e < 0) throw std::invalid_argument("Poly: negative exponent");
    Poly r(Rational(1), p.var());
    Poly b = p;
    while (e > 0) {
        if (e & 1) r = r * b;
        b = b * b;
        e >>= 1;
    }
    return r;
}

// Exact division; throws if b does not divide a.
inline Poly divide_exact(const Poly& a, const Poly& b) {
    auto [q, r] = divmod(a, b);
    if (!r.is_zero()) throw std::domain_error("Poly: inexact division");
    return q;
}

inline bool divides(const Poly& b, const Poly& a) {
    if (a.is_zero()) return true;
    return divmod(a, b).second.is_zero();
}

// Monic gcd by the Euclidean algorithm; gcd(0,0) = 0.
inline Poly poly_gcd(Poly a, Poly b) {
    while (!b.is_zero()) {
        Poly r = divmod(a, b).second;
        a = std::move(b);
        b = std::move(r);
    }
    if (!a.is_zero()) a = a * a.leading().inverse();
    return a;
}

// Parses sums of terms "c", "c*x^k", "cx^k", "x", "-x^2", with rational c.
inline Poly parse_poly(const std::string& src, Var var) {
    const char x = var_name(var);
    Poly out(var);
    size_t i = 0;
    auto skip_ws = [&] { while (i < src.size() && std::isspace(static_cast<unsigned char>(src[i]))) ++i; };
    skip_ws();
    bool first = true;
    while (i < src.size()) {
        int sign = 1;
        skip_ws();
        if (src[i] == '+' || src[i] == '-') {
            sign = (src[i] == '-') ? -1 : 1;
            ++i;
        } else if (!first) {
            throw std::invalid_argument("parse_poly: expected '+' or '-' in '" + src + "'");
        }
        first = false;
        skip_ws();
        std::string digits;
        while (i < src.size() && (std::isdigit(static_cast<unsigned char>(src[i])) || src[i] == '/'))
            digits += src[i++];
        Rational c = digits.empty() ? Rational(1) : Rational::from_string(digits);
        if (sign < 0) c = -c;
        skip_ws();
        if (i < src.size() && src[i] == '*') { ++i; skip_ws(); }
        int power = 0;
        if (i < src.size() && src[i] == x) {
            ++i;
            power = 1;
            if (i < src.size() && src[i] == '^') {
                ++i;
                std::string ds;
                while (i < src.size() && std::isdigit(static_cast<unsigned char>(src[i]))) ds += src[i++];
                if (ds.empty()) throw std::invalid_argument("parse_poly: missing exponent");
                power = std::stoi(ds);
            }
        } else if (digits.empty()) {
            throw std::invalid_argument("parse_poly: bare sign in '" + src + "'");
        }
        out = out + Poly::monomial(c, power, var);
        skip_ws();
    }
    return out;
}

}  // namespace holopade
