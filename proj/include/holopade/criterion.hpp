#pragma once

#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "holopade/errors.hpp"
#include "holopade/heights.hpp"

namespace holopade {

// (2 - 1/u)(log u + sum_{q|u} log q/(q-1)) + (u-1)/phi(u) + log 2; the
// threshold on log|alpha| that makes V positive. Monotone in every term, so
// a rounding direction pushed through all operations gives a certified bound.
inline mpfr_rnd_t opposite_rnd(mpfr_rnd_t rnd) {
    if (rnd == MPFR_RNDD) return MPFR_RNDU;
    if (rnd == MPFR_RNDU) return MPFR_RNDD;
    return rnd;
}

inline Real threshold_expression(long u, mpfr_prec_t prec, mpfr_rnd_t rnd) {
    if (u < 2) throw std::invalid_argument("threshold_expression: need u >= 2");
    Real s = log_nu(u, prec, rnd);
    Real factor = r_sub(Real::of_long(2, prec),
                        r_div(Real::of_long(1, prec), Real::of_long(u, prec), opposite_rnd(rnd)), rnd);
    s = r_mul(factor, s, rnd);
    s = r_add(s, r_div(Real::of_long(u - 1, prec), Real::of_long(totient(u), prec), rnd), rnd);
    return r_add(s, r_log_long(2, prec, rnd), rnd);
}

inline Real V_alpha(long u, const Rational& alpha, mpfr_prec_t prec = 128,
                    mpfr_rnd_t rnd = MPFR_RNDN) {
    if (u < 2) throw std::invalid_argument("V_alpha: need u >= 2");
    if (alpha.abs() < Rational(2)) throw std::invalid_argument("V_alpha: need |alpha| >= 2");
    return r_sub(r_log_rational(alpha.abs(), prec, rnd), threshold_expression(u, prec, opposite_rnd(rnd)),
                 rnd);
}

struct TableEntry {
    long u = 0;
    std::string log_alpha_min;  // two decimals, rounded up, certified
    double value = 0.0;         // the unrounded expression
};

// The u = 2..15 row of minimal log|alpha| values at two decimals.
inline std::vector<TableEntry> threshold_table(long u_min = 2, long u_max = 15,
                                               mpfr_prec_t prec = 128) {
    if (u_min < 2 || u_max < u_min) throw std::invalid_argument("threshold_table: bad range");
    std::vector<TableEntry> out;
    for (long u = u_min; u <= u_max; ++u) {
        Real lo = threshold_expression(u, prec, MPFR_RNDD);
        Real hi = threshold_expression(u, prec, MPFR_RNDU);
        long slo = ceil_2dec_scaled(lo, MPFR_RNDD);
        long shi = ceil_2dec_scaled(hi, MPFR_RNDU);
        if (slo != shi)
            throw PrecisionError("threshold_table: two-decimal rounding not certified at u=" +
                                 std::to_string(u) + "; raise precision");
        out.push_back({u, format_2dec(shi), threshold_expression(u, prec, MPFR_RNDN).to_double()});
    }
    return out;
}

struct CriterionReport {
    long u = 0;
    Rational alpha;
    PlaceQ place;
    double epsilon = 0.0;
    mpfr_prec_t precision_bits = 128;
    bool applicable = false;  // V - eps > 0, certified with downward rounding
    Real A, B, U, V, mu, C;

    CriterionReport() : A(128), B(128), U(128), V(128), mu(128), C(128) {}
};

namespace criterion_detail {

// log |nu(u)|_{v}^{-1} at a finite place: (v_p(u) + [p|u]/(p-1)) log p.
inline Real log_inv_nu_at_prime(long u, long p, mpfr_prec_t prec, mpfr_rnd_t rnd) {
    long vpu = (u % p == 0) ? valuation(mpz_class(u), p) : 0;
    Rational exponent(vpu);
    if (u % p == 0) exponent += Rational(1, p - 1);
    if (exponent.is_zero()) return Real(prec);
    return r_mul(Real::of_rational(exponent, prec, rnd), r_log_long(p, prec, rnd), rnd);
}

}  // namespace criterion_detail

// The four constants of the linear-independence machinery, for K = Q. The
// archimedean/nonarchimedean case split follows the defining displays; the
// final lower bound on linear forms is out of scope (external criterion),
// only its ingredients are produced.
inline CriterionReport criterion_constants(long u, const Rational& alpha, const PlaceQ& v0,
                                           double epsilon, mpfr_prec_t prec = 128) {
    if (u < 2) throw HypothesisError("criterion: need u >= 2");
    if (epsilon <= 0) throw HypothesisError("criterion: need epsilon > 0");
    if (v0.infinite) {
        if (!(alpha.abs() > Rational(2)))
            throw HypothesisError("criterion: need |alpha| > 2 at the infinite place");
    } else {
        if (!(valuation(alpha, v0.p) < 0))
            throw HypothesisError("criterion: need |alpha|_p > 1 at the finite place");
    }

    CriterionReport rep;
    rep.u = u;
    rep.alpha = alpha;
    rep.place = v0;
    rep.epsilon = epsilon;
    rep.precision_bits = prec;

    auto compute = [&](mpfr_rnd_t rnd) {
        mpfr_rnd_t opp = opposite_rnd(rnd);
        long eps_u = 0;
        Real A(prec), B(prec), U(prec);
        Real hv_alpha = local_height_r(alpha, v0, prec, rnd);
        if (v0.infinite) {
            A = r_sub(hv_alpha, r_log_long(2, prec, opp), rnd);
            U = r_add(r_mul(Real::of_long(u - 1, prec), hv_alpha, rnd),
                      r_mul(Real::of_long(u + 1, prec), r_log_long(2, prec, rnd), rnd), rnd);
        } else {
            eps_u = (std::gcd(u, v0.p) == 1) ? 1 : 0;
            // h_v0(alpha) - eps * log|p|_p/(p-1) = h_v0(alpha) + eps * log p/(p-1)
            Real corr = r_div(r_log_long(v0.p, prec, rnd), Real::of_long(v0.p - 1, prec), rnd);
            A = hv_alpha;
            if (eps_u == 1) A = r_add(A, corr, rnd);
            U = r_add(r_mul(Real::of_long(u - 1, prec), hv_alpha, rnd),
                      criterion_detail::log_inv_nu_at_prime(u, v0.p, prec, rnd), rnd);
        }
        // B = (u-1)h(alpha) + (u+1)h(2) + (2u-1)log nu/u + (u-1)/phi(u) - U
        Real B_pos = r_mul(Real::of_long(u - 1, prec), height_r(alpha, prec, rnd), rnd);
        B_pos = r_add(B_pos, r_mul(Real::of_long(u + 1, prec), r_log_long(2, prec, rnd), rnd), rnd);
        B_pos = r_add(B_pos, r_div(r_mul(Real::of_long(2 * u - 1, prec), log_nu(u, prec, rnd), rnd),
                                   Real::of_long(u, prec), rnd),
                      rnd);
        B_pos = r_add(B_pos, r_div(Real::of_long(u - 1, prec), Real::of_long(totient(u), prec), rnd), rnd);
        // U was derived with rnd; for a rounded B we need U with the opposite direction.
        Real U_opp(prec);
        if (v0.infinite) {
            Real hv_opp = local_height_r(alpha, v0, prec, opp);
            U_opp = r_add(r_mul(Real::of_long(u - 1, prec), hv_opp, opp),
                          r_mul(Real::of_long(u + 1, prec), r_log_long(2, prec, opp), opp), opp);
        } else {
            Real hv_opp = local_height_r(alpha, v0, prec, opp);
            U_opp = r_add(r_mul(Real::of_long(u - 1, prec), hv_opp, opp),
                          criterion_detail::log_inv_nu_at_prime(u, v0.p, prec, opp), opp);
        }
        B = r_sub(B_pos, U_opp, rnd);
        Real V = r_sub(A, B, rnd);  // for rnd=down this needs B up; handled by caller choice below
        return std::tuple<Real, Real, Real, Real, long>(A, B, U, V, eps_u);
    };

    // Report values: round-to-nearest.
    auto [A, B, U, V, eps_u] = compute(MPFR_RNDN);
    (void)eps_u;
    rep.A = A;
    rep.B = B;
    rep.U = U;
    rep.V = V;

    // Certified applicability: V lower bound = A(down) - B(up).
    auto [Ad, Bd, Ud, Vd, e1] = compute(MPFR_RNDD);
    auto [Au, Bu, Uu, Vu, e2] = compute(MPFR_RNDU);
    (void)Ud; (void)Vd; (void)Uu; (void)Vu; (void)Bd; (void)e1; (void)e2;
    Real V_low = r_sub(Ad, Bu, MPFR_RNDD);
    Real eps_r(prec);
    mpfr_set_d(eps_r.get(), epsilon, MPFR_RNDU);
    rep.applicable = r_sub(V_low, eps_r, MPFR_RNDD).positive();

    if (rep.applicable) {
        mpfr_set_d(eps_r.get(), epsilon, MPFR_RNDN);
        Real denom = r_sub(rep.V, eps_r);
        Real AU = r_add(rep.A, rep.U);
        rep.mu = r_div(AU, denom);
        Real factor = r_add(r_div(r_log_long(2, prec, MPFR_RNDN), denom), Real::of_long(1, prec));
        rep.C = r_exp(r_neg(r_mul(factor, AU)));
    }
    return rep;
}

}  // namespace holopade
