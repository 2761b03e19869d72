#pragma once

#include <algorithm>
#include <vector>

#include "holopade/errors.hpp"
#include "holopade/poly.hpp"

namespace holopade {

// Result of the order function at z = infinity on truncated data.
// exact == true  : the order is exactly `value`.
// exact == false : every stored coefficient below `value` vanishes; the
//                  order is >= value (unknown beyond stored precision).
struct OrdInf {
    long value = 0;
    bool exact = true;

    bool at_least(long bound) const { return value >= bound; }
    friend bool operator==(const OrdInf& a, const OrdInf& b) {
        return a.value == b.value && a.exact == b.exact;
    }
};

// Truncated element of (1/z) K[[1/z]]: coefficient k is the coefficient of
// 1/z^{k+1}. prec() coefficients are known, i.e. the series is known modulo
// O(1/z^{prec+1}). The coefficient type C is Rational for ordinary series
// and Poly (in t) for kernels like 1/(z-t).
template <class C = Rational>
class LaurentTail {
  public:
    LaurentTail() = default;
    explicit LaurentTail(long prec) : coeffs_(check_prec(prec)) {}
    explicit LaurentTail(std::vector<C> coeffs) : coeffs_(std::move(coeffs)) {}

    long prec() const { return static_cast<long>(coeffs_.size()); }
    const std::vector<C>& coeffs() const { return coeffs_; }

    const C& coeff(long k) const {
        if (k < 0 || k >= prec())
            throw PrecisionError("LaurentTail: coefficient index " + std::to_string(k) +
                                 " beyond precision " + std::to_string(prec()));
        return coeffs_[static_cast<size_t>(k)];
    }
    void set_coeff(long k, C c) { coeffs_.at(static_cast<size_t>(k)) = std::move(c); }

    bool all_zero() const {
        return std::all_of(coeffs_.begin(), coeffs_.end(), [](const C& c) { return c.is_zero(); });
    }

    LaurentTail truncated(long new_prec) const {
        if (new_prec > prec()) throw PrecisionError("LaurentTail: cannot extend by truncation");
        return LaurentTail(std::vector<C>(coeffs_.begin(), coeffs_.begin() + new_prec));
    }

    LaurentTail operator-() const {
        LaurentTail r = *this;
        for (auto& c : r.coeffs_) c = -c;
        return r;
    }

    friend LaurentTail operator+(const LaurentTail& a, const LaurentTail& b) {
        long p = std::min(a.prec(), b.prec());
        LaurentTail r(p);
        for (long k = 0; k < p; ++k) r.coeffs_[k] = a.coeffs_[k] + b.coeffs_[k];
        return r;
    }
    friend LaurentTail operator-(const LaurentTail& a, const LaurentTail& b) { return a + (-b); }

    friend LaurentTail operator*(const LaurentTail& a, const Rational& s) {
        LaurentTail r = a;
        for (auto& c : r.coeffs_) c = c * s;
        return r;
    }
    friend LaurentTail operator*(const Rational& s, const LaurentTail& a) { return a * s; }

    // Product of two tails; the result's coefficient i is sum_{k+j=i-1} f_k g_j,
    // known for i <= min(prec_f, prec_g).
    friend LaurentTail operator*(const LaurentTail& a, const LaurentTail& b) {
        long p = std::min(a.prec(), b.prec());
        LaurentTail r(p + 1);
        for (long i = 1; i <= p; ++i) {
            C acc{};
            for (long k = 0; k < i; ++k) acc = acc + a.coeffs_[k] * b.coeffs_[i - 1 - k];
            r.coeffs_[i] = std::move(acc);
        }
        return r;
    }

    friend bool operator==(const LaurentTail& a, const LaurentTail& b) {
        return a.coeffs_ == b.coeffs_;
    }

    // d/dz: coefficient k of the result is -k * f_{k-1}; gains one index of
    // precision since d/dz O(1/z^{T+1}) = O(1/z^{T+2}).
    LaurentTail derivative() const {
        LaurentTail r(prec() + 1);
        for (long k = 1; k <= prec(); ++k)
            r.coeffs_[k] = coeffs_[k - 1] * Rational(-k);
        return r;
    }

  private:
    static size_t check_prec(long p) {
        if (p < 0) throw std::invalid_argument("LaurentTail: negative precision");
        return static_cast<size_t>(p);
    }
    std::vector<C> coeffs_;
};

// Element of K[z][[1/z]] split as polynomial part plus tail; the split is
// the projection pi onto (1/z) K[[1/z]] along K[z]. poly()[m] multiplies z^m.
template <class C = Rational>
class LaurentPoly {
  public:
    LaurentPoly() = default;
    LaurentPoly(std::vector<C> poly_part, LaurentTail<C> tail)
        : poly_(std::move(poly_part)), tail_(std::move(tail)) {
        trim();
    }
    explicit LaurentPoly(LaurentTail<C> tail) : tail_(std::move(tail)) {}

    const std::vector<C>& poly() const { return poly_; }
    const LaurentTail<C>& tail() const { return tail_; }
    long prec() const { return tail_.prec(); }
    bool poly_is_zero() const { return poly_.empty(); }

    LaurentPoly operator-() const {
        std::vector<C> p = poly_;
        for (auto& c : p) c = -c;
        return LaurentPoly(std::move(p), -tail_);
    }

    friend LaurentPoly operator+(const LaurentPoly& a, const LaurentPoly& b) {
        std::vector<C> p(std::max(a.poly_.size(), b.poly_.size()));
        for (size_t i = 0; i < a.poly_.size(); ++i) p[i] = p[i] + a.poly_[i];
        for (size_t i = 0; i < b.poly_.size(); ++i) p[i] = p[i] + b.poly_[i];
        return LaurentPoly(std::move(p), a.tail_ + b.tail_);
    }
    friend LaurentPoly operator-(const LaurentPoly& a, const LaurentPoly& b) { return a + (-b); }

    friend LaurentPoly operator*(const LaurentPoly& a, const Rational& s) {
        std::vector<C> p = a.poly_;
        for (auto& c : p) c = c * s;
        return LaurentPoly(std::move(p), a.tail_ * s);
    }

    // Multiplication by c * z^m (m >= 0). Tail coefficients cross into the
    // polynomial part; the surviving tail precision drops by m.
    LaurentPoly mul_zpow(const C& c, long m) const {
        if (m < 0) throw std::invalid_argument("LaurentPoly: negative power");
        std::vector<C> p(poly_.size() + static_cast<size_t>(m));
        for (size_t i = 0; i < poly_.size(); ++i) p[i + m] = poly_[i] * c;
        if (tail_.prec() < m)
            throw PrecisionError("LaurentPoly: precision too small for z^" + std::to_string(m));
        for (long k = 0; k < m; ++k)
            p[static_cast<size_t>(m - 1 - k)] = p[static_cast<size_t>(m - 1 - k)] + tail_.coeff(k) * c;
        LaurentTail<C> t(tail_.prec() - m);
        for (long k = 0; k < t.prec(); ++k) t.set_coeff(k, tail_.coeff(k + m) * c);
        return LaurentPoly(std::move(p), std::move(t));
    }

    // Multiplication by a polynomial with rational coefficients; surviving
    // tail precision is prec() - deg q.
    LaurentPoly mul_poly(const Poly& q) const {
        if (q.is_zero()) return LaurentPoly(LaurentTail<C>(tail_.prec()));
        if (tail_.prec() < q.degree_nz())
            throw PrecisionError("LaurentPoly: precision " + std::to_string(tail_.prec()) +
                                 " too small to multiply by degree " + std::to_string(q.degree_nz()));
        LaurentPoly acc(LaurentTail<C>(tail_.prec() - q.degree_nz()));
        for (long m = 0; m <= q.degree_nz(); ++m) {
            Rational c = q.coeff(static_cast<int>(m));
            if (!c.is_zero()) acc = acc + mul_zpow(C(c), m);
        }
        return acc;
    }

    friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
        // (A + f)(B + g) = AB + Ag + Bf + fg; every addition keeps the
        // minimum of the operands' precisions, so starting from the exact
        // product AB at the worst-case precision gives the right result.
        long da = static_cast<long>(a.poly_.size() ? a.poly_.size() - 1 : 0);
        long db = static_cast<long>(b.poly_.size() ? b.poly_.size() - 1 : 0);
        long target = std::min({b.prec() - da, a.prec() - db, std::min(a.prec(), b.prec()) + 1});
        if (target < 0)
            throw PrecisionError("LaurentPoly: product precision would be negative");
        std::vector<C> ab;
        if (!a.poly_.empty() && !b.poly_.empty()) {
            ab.resize(a.poly_.size() + b.poly_.size() - 1);
            for (size_t i = 0; i < a.poly_.size(); ++i)
                for (size_t j = 0; j < b.poly_.size(); ++j)
                    ab[i + j] = ab[i + j] + a.poly_[i] * b.poly_[j];
        }
        LaurentPoly acc(std::move(ab), LaurentTail<C>(target));
        for (size_t m = 0; m < a.poly_.size(); ++m)
            if (!a.poly_[m].is_zero())
                acc = acc + LaurentPoly(b.tail_).mul_zpow(a.poly_[m], static_cast<long>(m));
        for (size_t m = 0; m < b.poly_.size(); ++m)
            if (!b.poly_[m].is_zero())
                acc = acc + LaurentPoly(a.tail_).mul_zpow(b.poly_[m], static_cast<long>(m));
        return acc + LaurentPoly(a.tail_ * b.tail_);
    }

    LaurentPoly derivative() const {
        std::vector<C> p;
        if (poly_.size() > 1) {
            p.resize(poly_.size() - 1);
            for (size_t k = 1; k < poly_.size(); ++k)
                p[k - 1] = poly_[k] * Rational(static_cast<long>(k));
        }
        return LaurentPoly(std::move(p), tail_.derivative());
    }

    friend bool operator==(const LaurentPoly& a, const LaurentPoly& b) {
        return a.poly_ == b.poly_ && a.tail_ == b.tail_;
    }

  private:
    void trim() {
        while (!poly_.empty() && poly_.back().is_zero()) poly_.pop_back();
    }

    std::vector<C> poly_;   // ascending powers of z
    LaurentTail<C> tail_;
};

template <class C>
OrdInf ord_inf(const LaurentTail<C>& f) {
    for (long k = 0; k < f.prec(); ++k)
        if (!f.coeff(k).is_zero()) return {k + 1, true};
    return {f.prec() + 1, false};
}

template <class C>
OrdInf ord_inf(const LaurentPoly<C>& f) {
    if (!f.poly_is_zero())
        return {-(static_cast<long>(f.poly().size()) - 1), true};
    return ord_inf(f.tail());
}

inline LaurentPoly<Rational> to_laurent(const Poly& p, long prec) {
    return LaurentPoly<Rational>(p.coeffs(), LaurentTail<Rational>(prec));
}

inline Poly poly_part_as_poly(const LaurentPoly<Rational>& f, Var v = Var::z) {
    return Poly(f.poly(), v);
}

}  // namespace holopade
