#pragma once

#include <mpfr.h>

#include <cmath>
#include <string>

#include "holopade/rational.hpp"

namespace holopade {

// Thin RAII wrapper over mpfr_t. Every derived quantity in the criterion
// module is computed from exact integers/rationals through these at an
// explicit binary precision; directed-rounding variants certify the few
// places where an inequality or decimal rounding is asserted.
class Real {
  public:
    explicit Real(mpfr_prec_t prec = 128) { mpfr_init2(v_, prec); mpfr_set_zero(v_, 1); }
    Real(const Real& o) { mpfr_init2(v_, mpfr_get_prec(o.v_)); mpfr_set(v_, o.v_, MPFR_RNDN); }
    Real(Real&& o) noexcept { mpfr_init2(v_, mpfr_get_prec(o.v_)); mpfr_swap(v_, o.v_); }
    Real& operator=(Real o) noexcept { mpfr_swap(v_, o.v_); return *this; }
    ~Real() { mpfr_clear(v_); }

    mpfr_ptr get() { return v_; }
    mpfr_srcptr get() const { return v_; }
    mpfr_prec_t prec() const { return mpfr_get_prec(v_); }

    static Real of_long(long x, mpfr_prec_t prec) {
        Real r(prec);
        mpfr_set_si(r.v_, x, MPFR_RNDN);
        return r;
    }
    static Real of_rational(const Rational& q, mpfr_prec_t prec, mpfr_rnd_t rnd) {
        Real r(prec);
        mpfr_set_q(r.v_, q.raw().get_mpq_t(), rnd);
        return r;
    }

    double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }

    std::string to_string(int significant_digits = 20) const {
        char buf[128];
        mpfr_snprintf(buf, sizeof buf, "%.*Rg", significant_digits, v_);
        return std::string(buf);
    }

    int cmp(const Real& o) const { return mpfr_cmp(v_, o.v_); }
    bool positive() const { return mpfr_sgn(v_) > 0; }

  private:
    mpfr_t v_;
};

inline mpfr_prec_t joint_prec(const Real& a, const Real& b) {
    return std::max(a.prec(), b.prec());
}

inline Real r_add(const Real& a, const Real& b, mpfr_rnd_t rnd = MPFR_RNDN) {
    Real r(joint_prec(a, b));
    mpfr_add(r.get(), a.get(), b.get(), rnd);
    return r;
}
inline Real r_sub(const Real& a, const Real& b, mpfr_rnd_t rnd = MPFR_RNDN) {
    Real r(joint_prec(a, b));
    mpfr_sub(r.get(), a.get(), b.get(), rnd);
    return r;
}
inline Real r_mul(const Real& a, const Real& b, mpfr_rnd_t rnd = MPFR_RNDN) {
    Real r(joint_prec(a, b));
    mpfr_mul(r.get(), a.get(), b.get(), rnd);
    return r;
}
inline Real r_div(const Real& a, const Real& b, mpfr_rnd_t rnd = MPFR_RNDN) {
    Real r(joint_prec(a, b));
    mpfr_div(r.get(), a.get(), b.get(), rnd);
    return r;
}
inline Real r_neg(const Real& a) {
    Real r(a.prec());
    mpfr_neg(r.get(), a.get(), MPFR_RNDN);
    return r;
}
inline Real r_exp(const Real& a, mpfr_rnd_t rnd = MPFR_RNDN) {
    Real r(a.prec());
    mpfr_exp(r.get(), a.get(), rnd);
    return r;
}

// log of a positive rational, exact input.
inline Real r_log_rational(const Rational& q, mpfr_prec_t prec, mpfr_rnd_t rnd = MPFR_RNDN) {
    if (q.sign() <= 0) throw std::domain_error("r_log_rational: non-positive argument");
    Real x = Real::of_rational(q, prec + 32, rnd);
    Real r(prec);
    mpfr_log(r.get(), x.get(), rnd);
    return r;
}

inline Real r_log_long(long x, mpfr_prec_t prec, mpfr_rnd_t rnd = MPFR_RNDN) {
    return r_log_rational(Rational(x), prec, rnd);
}

// Fast double log of a big integer magnitude (for slope fits and growth
// plots where ~1e-15 relative error is ample).
inline double log_abs_mpz(const mpz_class& z) {
    if (sgn(z) == 0) throw std::domain_error("log_abs_mpz: zero");
    long e = 0;
    double m = mpz_get_d_2exp(&e, z.get_mpz_t());
    return std::log(std::abs(m)) + static_cast<double>(e) * std::log(2.0);
}

inline double log_abs_rational(const Rational& q) {
    return log_abs_mpz(q.num()) - log_abs_mpz(q.den());
}

// ceil(100 x) under the given rounding of the multiplication; the pair of
// (RNDD, RNDU) results certifies a two-decimal round-up.
inline long ceil_2dec_scaled(const Real& x, mpfr_rnd_t rnd) {
    Real y(x.prec());
    mpfr_mul_ui(y.get(), x.get(), 100, rnd);
    mpfr_ceil(y.get(), y.get());
    return mpfr_get_si(y.get(), MPFR_RNDN);
}

inline std::string format_2dec(long scaled) {
    std::string sign = scaled < 0 ? "-" : "";
    long a = std::abs(scaled);
    std::string frac = std::to_string(a % 100);
    if (frac.size() < 2) frac = "0" + frac;
    return sign + std::to_string(a / 100) + "." + frac;
}

}  // namespace holopade
