#pragma once

#include <string>
#include <vector>

#include "holopade/errors.hpp"
#include "holopade/laurent.hpp"
#include "holopade/ratfunc.hpp"

namespace holopade {

// Differential operator sum_i c_i(x) d^i with rational-function coefficients,
// in the normal form with all derivative powers on the right. The zero
// operator stores no coefficients.
class DiffOp {
  public:
    explicit DiffOp(Var v = Var::z) : var_(v) {}
    DiffOp(std::vector<RatFunc> coeffs, Var v) : coeffs_(std::move(coeffs)), var_(v) {
        retag();
        trim();
    }

    static DiffOp identity(Var v) { return DiffOp({RatFunc(Rational(1), v)}, v); }
    static DiffOp derivative(Var v) {
        return DiffOp({RatFunc(Rational(0), v), RatFunc(Rational(1), v)}, v);
    }
    // Multiplication operator by a rational function.
    static DiffOp mult(RatFunc f, Var v) { return DiffOp({std::move(f)}, v); }
    static DiffOp mult(const Poly& p, Var v) { return mult(RatFunc(p.with_var(v)), v); }

    Var var() const { return var_; }
    bool is_zero() const { return coeffs_.empty(); }
    int order() const {
        if (coeffs_.empty()) throw std::domain_error("DiffOp: order of zero operator");
        return static_cast<int>(coeffs_.size()) - 1;
    }
    const std::vector<RatFunc>& coeffs() const { return coeffs_; }
    RatFunc coeff(int i) const {
        if (i < 0 || static_cast<size_t>(i) >= coeffs_.size()) return RatFunc(Rational(0), var_);
        return coeffs_[static_cast<size_t>(i)];
    }

    bool has_polynomial_coeffs() const {
        for (const auto& c : coeffs_)
            if (!c.is_polynomial()) return false;
        return true;
    }

    DiffOp operator-() const {
        DiffOp r = *this;
        for (auto& c : r.coeffs_) c = -c;
        return r;
    }

    friend DiffOp operator+(const DiffOp& a, const DiffOp& b) {
        check_var(a, b);
        std::vector<RatFunc> c(std::max(a.coeffs_.size(), b.coeffs_.size()), RatFunc(Rational(0), a.var_));
        for (size_t i = 0; i < a.coeffs_.size(); ++i) c[i] = c[i] + a.coeffs_[i];
        for (size_t i = 0; i < b.coeffs_.size(); ++i) c[i] = c[i] + b.coeffs_[i];
        return DiffOp(std::move(c), a.var_);
    }
    friend DiffOp operator-(const DiffOp& a, const DiffOp& b) { return a + (-b); }

    friend DiffOp operator*(const DiffOp& a, const Rational& s) {
        DiffOp r = a;
        for (auto& c : r.coeffs_) c = c * s;
        r.trim();
        return r;
    }

    friend bool operator==(const DiffOp& a, const DiffOp& b) {
        return a.var_ == b.var_ && a.coeffs_ == b.coeffs_;
    }
    friend bool operator!=(const DiffOp& a, const DiffOp& b) { return !(a == b); }

    std::string to_string() const {
        if (is_zero()) return "0";
        std::string s;
        for (int i = order(); i >= 0; --i) {
            if (coeffs_[static_cast<size_t>(i)].is_zero()) continue;
            if (!s.empty()) s += " + ";
            s += "(" + coeffs_[static_cast<size_t>(i)].to_string() + ")";
            if (i > 0) s += "*d";
            if (i > 1) s += "^" + std::to_string(i);
        }
        return s;
    }

  private:
    static void check_var(const DiffOp& a, const DiffOp& b) {
        if (a.var_ != b.var_) throw std::invalid_argument("DiffOp: variable mismatch");
    }
    void retag() {
        for (auto& c : coeffs_) c = c.with_var(var_);
    }
    void trim() {
        while (!coeffs_.empty() && coeffs_.back().is_zero()) coeffs_.pop_back();
    }

    std::vector<RatFunc> coeffs_;
    Var var_;
};

// Normal-form product in the Ore ring: d * c(x) = c(x) * d + c'(x).
inline DiffOp compose(const DiffOp& D, const DiffOp& E) {
    if (D.var() != E.var()) throw std::invalid_argument("compose: variable mismatch");
    const Var v = D.var();
    if (D.is_zero() || E.is_zero()) return DiffOp(v);
    const int r = D.order(), s = E.order();
    // derivatives of E's coefficients up to order r
    std::vector<std::vector<RatFunc>> der(static_cast<size_t>(s) + 1);
    for (int j = 0; j <= s; ++j) {
        der[static_cast<size_t>(j)].push_back(E.coeff(j));
        for (int k = 1; k <= r; ++k)
            der[static_cast<size_t>(j)].push_back(der[static_cast<size_t>(j)].back().derivative());
    }
    std::vector<RatFunc> out(static_cast<size_t>(r + s) + 1, RatFunc(Rational(0), v));
    for (int i = 0; i <= r; ++i) {
        if (D.coeff(i).is_zero()) continue;
        for (int j = 0; j <= s; ++j) {
            if (E.coeff(j).is_zero()) continue;
            // d^i e_j = sum_k C(i,k) e_j^{(k)} d^{i-k}
            Rational binom = 1;
            for (int k = 0; k <= i; ++k) {
                out[static_cast<size_t>(i - k + j)] =
                    out[static_cast<size_t>(i - k + j)] +
                    D.coeff(i) * binom * der[static_cast<size_t>(j)][static_cast<size_t>(k)];
                binom *= Rational(i - k) / Rational(k + 1);
            }
        }
    }
    return DiffOp(std::move(out), v);
}

inline DiffOp pow_compose(const DiffOp& D, long n) {
    DiffOp r = DiffOp::identity(D.var());
    for (long i = 0; i < n; ++i) r = compose(D, r);
    return r;
}

// The adjoint map: sum P_j(z) d^j  |->  sum (-1)^j d^j P_j(t), re-normalized.
// Requires polynomial coefficients; an involution up to variable relabeling,
// and an anti-homomorphism for composition.
inline DiffOp adjoint(const DiffOp& D) {
    if (!D.has_polynomial_coeffs())
        throw std::invalid_argument("adjoint: operator has non-polynomial coefficients");
    const Var w = other_var(D.var());
    DiffOp out(w);
    if (D.is_zero()) return out;
    for (int j = 0; j <= D.order(); ++j) {
        const RatFunc& pj = D.coeff(j);
        if (pj.is_zero()) continue;
        DiffOp term = compose(pow_compose(DiffOp::derivative(w), j),
                              DiffOp::mult(pj.with_var(w), w));
        out = out + (j % 2 == 0 ? term : -term);
    }
    return out;
}

inline RatFunc apply(const DiffOp& D, const RatFunc& f) {
    RatFunc acc(Rational(0), D.var());
    RatFunc der = f.with_var(D.var());
    if (D.is_zero()) return acc;
    for (int i = 0; i <= D.order(); ++i) {
        if (!D.coeff(i).is_zero()) acc = acc + D.coeff(i) * der;
        if (i < D.order()) der = der.derivative();
    }
    return acc;
}

inline RatFunc apply(const DiffOp& D, const Poly& f) { return apply(D, RatFunc(f)); }

// Exact image of a polynomial that is known to stay polynomial.
inline Poly apply_poly(const DiffOp& D, const Poly& f) { return apply(D, f).as_poly(); }

// Action on a truncated Laurent element; requires polynomial coefficients.
// Each term c_i * f^{(i)} is computed with exact precision accounting.
template <class C>
LaurentPoly<C> apply(const DiffOp& D, const LaurentPoly<C>& f) {
    if (!D.has_polynomial_coeffs())
        throw std::invalid_argument("apply: operator has non-polynomial coefficients");
    if (D.is_zero()) return LaurentPoly<C>(LaurentTail<C>(f.prec()));
    if (f.prec() <= D.order())
        throw PrecisionError("apply: tail precision " + std::to_string(f.prec()) +
                             " does not exceed operator order " + std::to_string(D.order()));
    bool first = true;
    LaurentPoly<C> acc;
    LaurentPoly<C> der = f;
    for (int i = 0; i <= D.order(); ++i) {
        if (!D.coeff(i).is_zero()) {
            LaurentPoly<C> term = der.mul_poly(D.coeff(i).as_poly());
            acc = first ? term : acc + term;
            first = false;
        }
        if (i < D.order()) der = der.derivative();
    }
    return acc;
}

// First-order operator data D = -a(z) d + b(z) with a kept in factored form
// a = a_1 ... a_l; w = max(deg a - 2, deg b - 1) drives the solution basis.
struct FirstOrderData {
    std::vector<Poly> a_factors;
    Poly b;

    FirstOrderData(std::vector<Poly> factors, Poly b_in)
        : a_factors(std::move(factors)), b(std::move(b_in)) {
        if (a_factors.empty()) throw std::invalid_argument("FirstOrderData: no a factors");
        for (const auto& f : a_factors)
            if (f.is_zero()) throw std::invalid_argument("FirstOrderData: zero factor in a");
    }

    Poly a() const {
        Poly p(Rational(1), Var::z);
        for (const auto& f : a_factors) p = p * f.with_var(Var::z);
        return p;
    }

    long w() const {
        long wa = a().degree_nz() - 2;
        long wb = b.is_zero() ? wa - 1 : b.degree_nz() - 1;  // zero b never dominates
        return std::max(wa, wb);
    }

    DiffOp op(Var v = Var::z) const {
        return DiffOp::mult(b.with_var(v), v) - compose(DiffOp::mult(a().with_var(v), v), DiffOp::derivative(v));
    }
};

// Weighted Rodrigues operator (1/n!) (d + b/a)^n a^n prod_v a_v^{-r_v},
// built by repeated composition.
inline DiffOp rodrigues_op(const FirstOrderData& F, long n, const std::vector<long>& weights, Var v) {
    if (n < 0) throw std::invalid_argument("rodrigues_op: negative n");
    if (weights.size() != F.a_factors.size())
        throw std::invalid_argument("rodrigues_op: weight count does not match factor count");
    Poly a = F.a().with_var(v);
    DiffOp e = DiffOp::derivative(v) + DiffOp::mult(RatFunc(F.b.with_var(v), a), v);
    Poly den(Rational(1), v);
    for (size_t i = 0; i < weights.size(); ++i) {
        if (weights[i] < 0) throw std::invalid_argument("rodrigues_op: negative weight");
        den = den * pow_int(F.a_factors[i].with_var(v), weights[i]);
    }
    DiffOp acc = DiffOp::mult(RatFunc(pow_int(a, n), den), v);
    for (long i = 0; i < n; ++i) acc = compose(e, acc);
    return acc * factorial(n).inverse();
}

// Commutativity criterion for R_{j,n} = (1/n!)(d + b_j/a)^n c^n with
// deg c <= 1: the operators commute for all orders iff (b2 - b1) c / a is a
// constant.
inline bool commute_criterion(const Poly& a, const Poly& b1, const Poly& b2, const Poly& c) {
    if (a.is_zero() || c.is_zero())
        throw std::invalid_argument("commute_criterion: a*c must be nonzero");
    if (!c.is_constant() && c.degree_nz() > 1)
        throw std::invalid_argument("commute_criterion: deg c must be <= 1");
    RatFunc q = RatFunc((b2 - b1) * c, a);
    return q.is_polynomial() && q.num().is_constant();
}

inline bool commutes_directly(const DiffOp& R1, const DiffOp& R2) {
    return compose(R1, R2) == compose(R2, R1);
}

}  // namespace holopade
