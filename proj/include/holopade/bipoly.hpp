#pragma once

#include <map>
#include <utility>

#include "holopade/poly.hpp"

namespace holopade {

// Element of Q[z,t], sparse. No explicit zero coefficients are stored.
class BiPoly {
  public:
    using Key = std::pair<int, int>;  // (power of z, power of t)

    BiPoly() = default;

    static BiPoly from_z(const Poly& p) {
        BiPoly b;
        for (size_t k = 0; k < p.coeffs().size(); ++k)
            b.add_term(static_cast<int>(k), 0, p.coeffs()[k]);
        return b;
    }
    static BiPoly from_t(const Poly& p) {
        BiPoly b;
        for (size_t k = 0; k < p.coeffs().size(); ++k)
            b.add_term(0, static_cast<int>(k), p.coeffs()[k]);
        return b;
    }

    void add_term(int zp, int tp, const Rational& c) {
        if (c.is_zero()) return;
        auto it = terms_.find({zp, tp});
        if (it == terms_.end()) {
            terms_.emplace(Key{zp, tp}, c);
        } else {
            it->second += c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    const std::map<Key, Rational>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    friend BiPoly operator+(const BiPoly& a, const BiPoly& b) {
        BiPoly r = a;
        for (const auto& [k, c] : b.terms_) r.add_term(k.first, k.second, c);
        return r;
    }
    friend BiPoly operator-(const BiPoly& a, const BiPoly& b) {
        BiPoly r = a;
        for (const auto& [k, c] : b.terms_) r.add_term(k.first, k.second, -c);
        return r;
    }
    friend BiPoly operator*(const BiPoly& a, const BiPoly& b) {
        BiPoly r;
        for (const auto& [ka, ca] : a.terms_)
            for (const auto& [kb, cb] : b.terms_)
                r.add_term(ka.first + kb.first, ka.second + kb.second, ca * cb);
        return r;
    }
    friend bool operator==(const BiPoly& a, const BiPoly& b) { return a.terms_ == b.terms_; }
    friend bool operator!=(const BiPoly& a, const BiPoly& b) { return !(a == b); }

  private:
    std::map<Key, Rational> terms_;
};

// (P(z) - P(t)) / (z - t) for P in Q[z]:
// for P = sum p_k z^k this is sum_k p_k sum_{i+j=k-1} z^i t^j.
inline BiPoly divided_difference(const Poly& P) {
    BiPoly out;
    for (size_t k = 1; k < P.coeffs().size(); ++k) {
        const Rational& c = P.coeffs()[k];
        if (c.is_zero()) continue;
        for (int i = 0; i < static_cast<int>(k); ++i)
            out.add_term(i, static_cast<int>(k) - 1 - i, c);
    }
    return out;
}

}  // namespace holopade
