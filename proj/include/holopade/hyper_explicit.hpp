#pragma once

#include <cmath>
#include <vector>

#include "holopade/heights.hpp"
#include "holopade/laurent.hpp"
#include "holopade/poly.hpp"

namespace holopade {

// Explicit formulas for the chebyshev-type system at order n = uN: the
// approximant P_{uN,h}, the matched Q_{uN,l,h}, and the remainder expansion,
// all as finite generalized-binomial / Pochhammer sums.

namespace hyper_detail {
// The bracketed coefficient sum_{s<=k} C(uN-1/u, s+N) C(u(s+N)+h, uN) C(1/u, k-s).
inline Rational bracket(long u, long N, long h, long k) {
    Rational s = 0;
    for (long t = 0; t <= k; ++t)
        s += gen_binomial(Rational(u) * Rational(N) - Rational(1, u), t + N) *
             gen_binomial(Rational(u * (t + N) + h), u * N) * gen_binomial(Rational(1, u), k - t);
    return s;
}
}  // namespace hyper_detail

// The published display of the P expansion; differs from the Rodrigues
// image by (-1)^N (the reindexing step that shifts the binomial series by N
// drops that sign). Kept verbatim so the relation stays tested.
inline Poly explicit_P_display(long u, long N, long h) {
    if (u < 2 || N < 1 || h < 0 || h > u - 1)
        throw std::invalid_argument("explicit_P: need u >= 2, N >= 1, 0 <= h <= u-1");
    Poly out(Var::z);
    for (long k = 0; k <= N * (u - 1); ++k) {
        Rational c = hyper_detail::bracket(u, N, h, k);
        if (k % 2 != 0) c = -c;
        out = out + Poly::monomial(c, static_cast<int>(u * k + h), Var::z);
    }
    if ((u * N) % 2 != 0) out = -out;
    return out;
}

// Explicit expansion of the Rodrigues image itself (display times (-1)^N).
inline Poly explicit_P(long u, long N, long h) {
    Poly p = explicit_P_display(u, N, h);
    return (N % 2 != 0) ? -p : p;
}

inline Poly explicit_Q_display(long u, long N, long l, long h) {
    if (l < 0 || l > u - 2) throw std::invalid_argument("explicit_Q: need 0 <= l <= u-2");
    const long eps_tilde = (h < l + 1) ? 1 : 0;
    Poly out(Var::z);
    for (long v = eps_tilde; v <= N * (u - 1); ++v) {
        Rational sum = 0;
        for (long k = 0; k <= (u - 1) * N - v; ++k) {
            Rational term = hyper_detail::bracket(u, N, h, k + v) * pochhammer(Rational(1 + l, u), k) /
                            pochhammer(Rational(u + l, u), k);
            if ((k + v) % 2 != 0) term = -term;
            sum += term;
        }
        out = out + Poly::monomial(sum, static_cast<int>(u * v + h - l - 1), Var::z);
    }
    if ((u * N) % 2 != 0) out = -out;
    return out;
}

inline Poly explicit_Q(long u, long N, long l, long h) {
    Poly q = explicit_Q_display(u, N, l, h);
    return (N % 2 != 0) ? -q : q;
}

// Remainder tail: coefficient of 1/z^{u(N+k)+l-h+1} for k >= eps_{l,h} is
// pref * C(u(N+k)+l-h, uN) * ((1+l)/u)_k / ((u+l)/u + uN)_k with
// pref = ((u-1)/u)_{uN} / ((u+l)/u)_{uN}.
inline LaurentTail<Rational> explicit_R(long u, long N, long l, long h, long kmax) {
    if (l < 0 || l > u - 2 || h < 0 || h > u - 1)
        throw std::invalid_argument("explicit_R: bad (l,h)");
    const long eps = (l < h) ? 1 : 0;
    const long last_index = u * N + l - h + u * (eps + kmax - 1);
    LaurentTail<Rational> R(last_index + 1);
    Rational pref = pochhammer(Rational(u - 1, u), u * N) / pochhammer(Rational(u + l, u), u * N);
    for (long k = eps; k < eps + kmax; ++k) {
        Rational c = pref * gen_binomial(Rational(u * (N + k) + l - h), u * N) *
                     pochhammer(Rational(1 + l, u), k) /
                     pochhammer(Rational(u + l, u) + Rational(u * N), k);
        R.set_coeff(u * N + l - h + u * k, c);
    }
    return R;
}

// Exact value of the remainder series at z = alpha (archimedean), summed
// until the geometric tail bound drops below 2^-20 of the partial sum.
inline Rational explicit_R_value(long u, long N, long l, long h, const Rational& alpha) {
    if (alpha.abs() <= Rational(2))
        throw std::invalid_argument("explicit_R_value: need |alpha| > 2");
    const long eps = (l < h) ? 1 : 0;
    Rational pref = pochhammer(Rational(u - 1, u), u * N) /
                    (pochhammer(Rational(u + l, u), u * N) * pow_int(alpha, u * N + l - h + 1));
    Rational apow = pow_int(alpha, u).inverse();
    Rational sum = 0;
    Rational prev = 0;
    bool have_prev = false;
    for (long k = eps;; ++k) {
        Rational term = gen_binomial(Rational(u * (N + k) + l - h), u * N) *
                        pochhammer(Rational(1 + l, u), k) /
                        pochhammer(Rational(u + l, u) + Rational(u * N), k) * pow_int(apow, k);
        sum += term;
        if (have_prev && !prev.is_zero() && !term.is_zero()) {
            double ratio = std::exp(log_abs_rational(term) - log_abs_rational(prev));
            if (ratio < 0.5 && !sum.is_zero()) {
                double tail_bound = log_abs_rational(term) + std::log(ratio / (1 - ratio));
                if (tail_bound < log_abs_rational(sum) - 20.0 * std::log(2.0)) break;
            }
        }
        if (term.is_zero() && have_prev && prev.is_zero()) break;
        prev = term;
        have_prev = true;
        if (k > eps + 4000)
            throw std::runtime_error("explicit_R_value: series did not settle");
    }
    return pref * sum;
}

// p-adic valuation of the remainder value at alpha with |alpha|_p > 1:
// terms gain valuation like u k v_p(1/alpha), so the partial sum stabilizes.
inline long explicit_R_valuation(long u, long N, long l, long h, const Rational& alpha, long p) {
    if (valuation(alpha, p) >= 0)
        throw std::invalid_argument("explicit_R_valuation: need |alpha|_p > 1");
    const long eps = (l < h) ? 1 : 0;
    Rational pref = pochhammer(Rational(u - 1, u), u * N) /
                    (pochhammer(Rational(u + l, u), u * N) * pow_int(alpha, u * N + l - h + 1));
    Rational apow = pow_int(alpha, u).inverse();
    Rational sum = 0;
    long stable = 0;
    for (long k = eps; stable < 4; ++k) {
        Rational term = gen_binomial(Rational(u * (N + k) + l - h), u * N) *
                        pochhammer(Rational(1 + l, u), k) /
                        pochhammer(Rational(u + l, u) + Rational(u * N), k) * pow_int(apow, k);
        sum += term;
        if (!sum.is_zero() && !term.is_zero() && valuation(term, p) > valuation(sum, p) + 48)
            ++stable;
        else
            stable = 0;
        if (k > eps + 4000) throw std::runtime_error("explicit_R_valuation: series did not settle");
    }
    if (sum.is_zero()) throw std::runtime_error("explicit_R_valuation: zero partial sum");
    return valuation(pref * sum, p);
}

struct GrowthReport {
    long u = 0;
    std::vector<std::pair<long, double>> points;  // (n, (1/n) log D_n)
    double bound = 0.0;                           // max_l log mu((1+l)/u) + den/phi cap
};

// D_n = den{ ((1+l)/u)_k / ((u+l)/u)_k : l <= u-2, k <= n }, exactly, and
// the per-index normalized logs against the asymptotic denominator bound.
inline GrowthReport denominator_growth(long u, long n_max) {
    if (u < 2) throw std::invalid_argument("denominator_growth: need u >= 2");
    GrowthReport rep;
    rep.u = u;
    for (long l = 0; l <= u - 2; ++l) {
        Rational b = Rational(u + l, u);
        long den_b = b.den().get_si();
        double cap = log_mu(Rational(1 + l, u)) +
                     static_cast<double>(den_b) / static_cast<double>(totient(den_b));
        rep.bound = std::max(rep.bound, cap);
    }
    std::vector<Rational> ratio(static_cast<size_t>(u - 1), Rational(1));
    mpz_class D = 1;
    for (long n = 1; n <= n_max; ++n) {
        for (long l = 0; l <= u - 2; ++l) {
            ratio[static_cast<size_t>(l)] *=
                (Rational(1 + l, u) + Rational(n - 1)) / (Rational(u + l, u) + Rational(n - 1));
            mpz_lcm(D.get_mpz_t(), D.get_mpz_t(), ratio[static_cast<size_t>(l)].den().get_mpz_t());
        }
        rep.points.emplace_back(n, log_abs_mpz(D) / static_cast<double>(n));
    }
    return rep;
}

inline double fit_slope(const std::vector<std::pair<long, double>>& pts) {
    double mx = 0, my = 0;
    for (auto& [x, y] : pts) { mx += static_cast<double>(x); my += y; }
    mx /= static_cast<double>(pts.size());
    my /= static_cast<double>(pts.size());
    double num = 0, den = 0;
    for (auto& [x, y] : pts) {
        num += (static_cast<double>(x) - mx) * (y - my);
        den += (static_cast<double>(x) - mx) * (static_cast<double>(x) - mx);
    }
    return num / den;
}

struct DecayReport {
    long u = 0;
    Rational alpha;
    PlaceQ place;
    std::vector<std::pair<long, double>> remainder_log;  // (N, max_{l,h} log|R_{uN,l,h}(alpha)|_v)
    std::vector<std::pair<long, double>> p_log;          // (N, max_h log|P_{uN,h}(alpha)|_v)
    double slope_R = 0.0, bound_R = 0.0;
    double slope_P = 0.0, bound_P = 0.0;
    double slack = 0.0;
    bool ok = false;
};

inline DecayReport decay_check(long u, const Rational& alpha, long N_min, long N_max,
                               PlaceQ place = PlaceQ::inf()) {
    if (N_min < 1 || N_max <= N_min) throw std::invalid_argument("decay_check: bad N range");
    DecayReport rep;
    rep.u = u;
    rep.alpha = alpha;
    rep.place = place;
    rep.slack = 0.2 * static_cast<double>(u);
    const double log2 = std::log(2.0);
    for (long N = N_min; N <= N_max; ++N) {
        double worst_r = -1e300, worst_p = -1e300;
        for (long h = 0; h <= u - 1; ++h) {
            for (long l = 0; l <= u - 2; ++l) {
                double lv;
                if (place.infinite) {
                    Rational val = explicit_R_value(u, N, l, h, alpha);
                    lv = val.is_zero() ? -1e300 : log_abs_rational(val);
                } else {
                    lv = -static_cast<double>(explicit_R_valuation(u, N, l, h, alpha, place.p)) *
                         std::log(static_cast<double>(place.p));
                }
                worst_r = std::max(worst_r, lv);
            }
            Rational pv = explicit_P(u, N, h).eval(alpha);
            double lp;
            if (place.infinite) {
                lp = pv.is_zero() ? -1e300 : log_abs_rational(pv);
            } else {
                lp = pv.is_zero() ? -1e300
                                  : -static_cast<double>(valuation(pv, place.p)) *
                                        std::log(static_cast<double>(place.p));
            }
            worst_p = std::max(worst_p, lp);
        }
        rep.remainder_log.emplace_back(N, worst_r);
        rep.p_log.emplace_back(N, worst_p);
    }
    rep.slope_R = fit_slope(rep.remainder_log);
    rep.slope_P = fit_slope(rep.p_log);
    if (place.infinite) {
        rep.bound_R = -static_cast<double>(u) * (local_height(alpha, place) - log2);
        rep.bound_P = static_cast<double>(u * (u - 1)) * local_height(alpha, place) +
                      static_cast<double>(u * (u + 1)) * log2;
    } else {
        double lp = std::log(static_cast<double>(place.p));
        double eps_u = (u % place.p == 0) ? 0.0 : 1.0;
        rep.bound_R = -static_cast<double>(u) *
                      (local_height(alpha, place) - eps_u * lp / static_cast<double>(place.p - 1));
        double mu_term = static_cast<double>(valuation(mu_n(Rational(1, u), u), place.p)) * lp;
        rep.bound_P = static_cast<double>(u * (u - 1)) * local_height(alpha, place) + mu_term;
    }
    rep.ok = rep.slope_R <= rep.bound_R + rep.slack && rep.slope_P <= rep.bound_P + rep.slack;
    return rep;
}

}  // namespace holopade
