#pragma once

#include <cmath>
#include <vector>

#include "holopade/real.hpp"

namespace holopade {

// A place of Q: the archimedean one or a prime.
struct PlaceQ {
    bool infinite = true;
    long p = 0;

    static PlaceQ inf() { return {true, 0}; }
    static PlaceQ prime(long p) {
        if (p < 2) throw std::invalid_argument("PlaceQ: bad prime");
        return {false, p};
    }
    std::string to_string() const { return infinite ? "inf" : std::to_string(p); }
};

inline std::vector<long> prime_factors(long n) {
    if (n < 1) throw std::invalid_argument("prime_factors: need n >= 1");
    std::vector<long> ps;
    for (long q = 2; q * q <= n; ++q) {
        if (n % q == 0) {
            ps.push_back(q);
            while (n % q == 0) n /= q;
        }
    }
    if (n > 1) ps.push_back(n);
    return ps;
}

inline long totient(long n) {
    long r = n;
    for (long q : prime_factors(n)) r = r / q * (q - 1);
    return r;
}

inline long valuation(const mpz_class& z, long p) {
    if (sgn(z) == 0) throw std::domain_error("valuation: of zero");
    mpz_class q = z;
    long v = 0;
    while (mpz_divisible_ui_p(q.get_mpz_t(), static_cast<unsigned long>(p))) {
        mpz_divexact_ui(q.get_mpz_t(), q.get_mpz_t(), static_cast<unsigned long>(p));
        ++v;
    }
    return v;
}

inline long valuation(const Rational& x, long p) {
    return valuation(x.num(), p) - valuation(x.den(), p);
}

// Absolute logarithmic Weil height of beta = p/q in lowest terms:
// h = log max(|p|, |q|); local pieces h_v = log max(1, |beta|_v).
inline double height(const Rational& b) {
    if (b.is_zero()) return 0.0;
    mpz_class n = abs(b.num());
    return log_abs_mpz(n >= b.den() ? n : b.den());
}

inline double local_height(const Rational& b, const PlaceQ& v) {
    if (b.is_zero()) return 0.0;
    if (v.infinite) {
        Rational a = b.abs();
        return a > Rational(1) ? log_abs_rational(a) : 0.0;
    }
    long val = valuation(b, v.p);
    return val < 0 ? static_cast<double>(-val) * std::log(static_cast<double>(v.p)) : 0.0;
}

// mpfr versions used by the criterion constants.
inline Real height_r(const Rational& b, mpfr_prec_t prec, mpfr_rnd_t rnd) {
    if (b.is_zero()) return Real(prec);
    mpz_class n = abs(b.num());
    return r_log_rational(Rational(n >= b.den() ? n : b.den()), prec, rnd);
}

inline Real local_height_r(const Rational& b, const PlaceQ& v, mpfr_prec_t prec, mpfr_rnd_t rnd) {
    if (b.is_zero()) return Real(prec);
    if (v.infinite) {
        Rational a = b.abs();
        return a > Rational(1) ? r_log_rational(a, prec, rnd) : Real(prec);
    }
    long val = valuation(b, v.p);
    if (val >= 0) return Real(prec);
    Real lp = r_log_long(v.p, prec, rnd);
    Real m = Real::of_long(-val, prec);
    return r_mul(m, lp, rnd);
}

// log nu(u) = log u + sum_{q | u} log q / (q - 1).
inline Real log_nu(long u, mpfr_prec_t prec, mpfr_rnd_t rnd) {
    if (u < 2) throw std::invalid_argument("log_nu: need u >= 2");
    Real s = r_log_long(u, prec, rnd);
    for (long q : prime_factors(u))
        s = r_add(s, r_div(r_log_long(q, prec, rnd), Real::of_long(q - 1, prec), rnd), rnd);
    return s;
}

inline double log_nu_d(long u) {
    double s = std::log(static_cast<double>(u));
    for (long q : prime_factors(u))
        s += std::log(static_cast<double>(q)) / static_cast<double>(q - 1);
    return s;
}

// den(S): least positive integer clearing all denominators.
inline mpz_class den_of(const std::vector<Rational>& xs) {
    mpz_class l = 1;
    for (const auto& x : xs) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.den().get_mpz_t());
    return l;
}

// mu_n(a) = den(a)^n prod_{q | den(a)} q^{floor(n/(q-1))}.
inline mpz_class mu_n(const Rational& a, long n) {
    if (n < 0) throw std::invalid_argument("mu_n: negative n");
    mpz_class r;
    mpz_pow_ui(r.get_mpz_t(), a.den().get_mpz_t(), static_cast<unsigned long>(n));
    if (!a.den().fits_slong_p()) throw std::domain_error("mu_n: denominator too large to factor");
    for (long q : prime_factors(a.den().get_si())) {
        mpz_class qe;
        mpz_ui_pow_ui(qe.get_mpz_t(), static_cast<unsigned long>(q),
                      static_cast<unsigned long>(n / (q - 1)));
        r *= qe;
    }
    return r;
}

// log mu(a) = log den(a) + sum_{q | den(a)} log q / (q - 1).
inline double log_mu(const Rational& a) {
    if (!a.den().fits_slong_p()) throw std::domain_error("log_mu: denominator too large");
    long d = a.den().get_si();
    double s = std::log(static_cast<double>(d));
    for (long q : prime_factors(d))
        s += std::log(static_cast<double>(q)) / static_cast<double>(q - 1);
    return s;
}

}  // namespace holopade
