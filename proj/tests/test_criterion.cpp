#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <set>

#include "holopade/criterion.hpp"
#include "holopade/gop.hpp"
#include "holopade/hyper_explicit.hpp"
#include "holopade/pade.hpp"
#include "test_support.hpp"

using namespace holopade;
using testsup::Rng;
using Catch::Approx;

TEST_CASE("heights of simple rationals") {
    CHECK(height(Rational(2)) == Approx(std::log(2.0)).epsilon(1e-14));
    CHECK(local_height(Rational(2), PlaceQ::inf()) == Approx(std::log(2.0)).epsilon(1e-14));
    CHECK(local_height(Rational(2), PlaceQ::prime(2)) == 0.0);
    CHECK(height(Rational(1)) == 0.0);
    // 3/4: archimedean part 0, 2-adic part log 4, total log 4
    Rational b(3, 4);
    CHECK(local_height(b, PlaceQ::inf()) == 0.0);
    CHECK(local_height(b, PlaceQ::prime(2)) == Approx(std::log(4.0)).epsilon(1e-14));
    CHECK(local_height(b, PlaceQ::prime(3)) == 0.0);
    CHECK(height(b) == Approx(std::log(4.0)).epsilon(1e-14));
}

TEST_CASE("product formula over all places") {
    Rng rng(2);
    for (int i = 0; i < 500; ++i) {
        Rational b(rng.range(-1000000, 1000000), rng.range(1, 1000000));
        if (b.is_zero()) continue;
        double sum = local_height(b, PlaceQ::inf());
        std::set<long> primes;
        for (const mpz_class& part : {b.num(), b.den()}) {
            mpz_class mag = abs(part);
            if (!mag.fits_slong_p()) continue;
            for (long p : prime_factors(mag.get_si())) primes.insert(p);
        }
        for (long p : primes) sum += local_height(b, PlaceQ::prime(p));
        CHECK(sum == Approx(height(b)).margin(1e-12));
    }
}

TEST_CASE("nu values") {
    mpfr_prec_t prec = 96;
    CHECK(log_nu(2, prec, MPFR_RNDN).to_double() == Approx(std::log(4.0)).epsilon(1e-14));
    CHECK(log_nu(3, prec, MPFR_RNDN).to_double() == Approx(1.5 * std::log(3.0)).epsilon(1e-14));
    CHECK(log_nu(6, prec, MPFR_RNDN).to_double() ==
          Approx(std::log(6.0) + std::log(2.0) + 0.5 * std::log(3.0)).epsilon(1e-14));
    CHECK(log_nu_d(2) == Approx(std::log(4.0)).epsilon(1e-14));
}

TEST_CASE("denominators and their growth constants") {
    CHECK(den_of({Rational(1, 2), Rational(1, 3)}) == 6);
    CHECK(mu_n(Rational(1, 2), 2) == 16);  // 2^2 * 2^{floor(2/1)}
    Rng rng(10);
    for (int i = 0; i < 100; ++i) {
        Rational a = testsup::rat(rng, 20, 20);
        long k = rng.range(-5, 5), n = rng.range(0, 40);
        CHECK(mu_n(a, n) == mu_n(a + Rational(k), n));
    }
}

TEST_CASE("divisibility laws of mu_n") {
    Rng rng(11);
    for (int i = 0; i < 200; ++i) {
        Rational a = testsup::rat(rng, 30, 30);
        long n1 = rng.range(0, 40), n2 = rng.range(n1, 40);
        mpz_class m1 = mu_n(a, n1), m2 = mu_n(a, n2), ms = mu_n(a, n1 + n2);
        CHECK(mpz_divisible_p(m2.get_mpz_t(), m1.get_mpz_t()));
        mpz_class prod = m1 * mu_n(a, n2);
        CHECK(mpz_divisible_p(ms.get_mpz_t(), prod.get_mpz_t()));
    }
}

TEST_CASE("V for integer alpha") {
    // u = 2: V(alpha) = log|alpha| - 4 log 2 - 1
    for (long alpha : {3L, 10L, 64L}) {
        double expect = std::log(static_cast<double>(alpha)) - 4 * std::log(2.0) - 1.0;
        CHECK(V_alpha(2, Rational(alpha)).to_double() == Approx(expect).epsilon(1e-12));
    }
    CHECK(V_alpha(2, Rational(64)).positive());
    CHECK(!V_alpha(2, Rational(16)).positive());  // log 16 < 3.7726
}

TEST_CASE("threshold table reproduces the published row") {
    const char* expected[] = {"3.78", "4.44", "5.84", "5.32", "8.76", "5.91", "7.65",
                              "7.22", "9.40", "6.73", "10.59", "7.04", "9.92", "9.52"};
    auto table = threshold_table(2, 15);
    REQUIRE(table.size() == 14);
    for (size_t i = 0; i < table.size(); ++i) {
        CHECK(table[i].u == static_cast<long>(i) + 2);
        CHECK(table[i].log_alpha_min == expected[i]);
    }
    // threshold at u: exp bound consistent with V sign
    CHECK(threshold_table(7, 7)[0].log_alpha_min == std::string("5.91"));
    CHECK(threshold_table(12, 12)[0].log_alpha_min == std::string("10.59"));
}

TEST_CASE("criterion constants at the infinite place") {
    CriterionReport rep = criterion_constants(2, Rational(64), PlaceQ::inf(), 0.1);
    CHECK(rep.applicable);
    double log2 = std::log(2.0);
    double A = 6 * log2 - log2, U = 6 * log2 + 3 * log2, V = 2 * log2 - 1;
    CHECK(rep.A.to_double() == Approx(A).epsilon(1e-12));
    CHECK(rep.U.to_double() == Approx(U).epsilon(1e-12));
    CHECK(rep.V.to_double() == Approx(V).epsilon(1e-12));
    CHECK(rep.mu.to_double() == Approx((A + U) / (V - 0.1)).epsilon(1e-10));
    double C = std::exp(-(log2 / (V - 0.1) + 1.0) * (A + U));
    CHECK(rep.C.to_double() == Approx(C).epsilon(1e-10));
    CHECK(rep.mu.to_double() > 1.0);
    CHECK(rep.C.to_double() > 0.0);
    CHECK(rep.C.to_double() < 1.0);
    // V at the infinite place for integers equals the headline V(alpha)
    CHECK(rep.V.to_double() == Approx(V_alpha(2, Rational(64)).to_double()).epsilon(1e-13));
}

TEST_CASE("mu grows monotonically as epsilon approaches V") {
    double V = criterion_constants(2, Rational(64), PlaceQ::inf(), 0.05).V.to_double();
    double last = 0;
    for (double eps : {0.05, 0.15, 0.25, 0.35}) {
        REQUIRE(eps < V);
        double mu = criterion_constants(2, Rational(64), PlaceQ::inf(), eps).mu.to_double();
        CHECK(mu > last);
        last = mu;
    }
}

TEST_CASE("criterion rejects and marks edge cases") {
    CHECK_THROWS_AS(criterion_constants(2, Rational(2), PlaceQ::inf(), 0.1), HypothesisError);
    CHECK_THROWS_AS(criterion_constants(2, Rational(9), PlaceQ::prime(3), 0.1), HypothesisError);
    // V < eps: marked non-applicable, no mu/C claimed
    CriterionReport rep = criterion_constants(2, Rational(8), PlaceQ::inf(), 0.2);
    CHECK(!rep.applicable);
}

TEST_CASE("criterion constants at a finite place") {
    // alpha = 1/9, v0 = 3 (so |alpha|_3 = 9), u = 2 coprime to 3
    CriterionReport rep = criterion_constants(2, Rational(1, 9), PlaceQ::prime(3), 0.01);
    double log3 = std::log(3.0);
    CHECK(rep.A.to_double() == Approx(2 * log3 + log3 / 2).epsilon(1e-12));
    // U = (u-1) h_3(alpha) + log |nu(2)|_3^{-1} = 2 log 3 + 0 (nu(2)=4 is a 3-unit)
    CHECK(rep.U.to_double() == Approx(2 * log3).epsilon(1e-12));
    // p | u case: epsilon factor drops out of A
    CriterionReport rep2 = criterion_constants(2, Rational(1, 4), PlaceQ::prime(2), 0.01);
    CHECK(rep2.A.to_double() == Approx(2 * std::log(2.0)).epsilon(1e-12));
}

TEST_CASE("explicit formulas match the pipeline") {
    for (long u : {2L, 3L}) {
        FamilyData fam = family_chebyshev(u);
        for (long N : {1L, 2L}) {
            for (long h = 0; h <= u - 1; ++h) {
                PadeSystem sys = construct_family_system(fam, u * N, h, 12 * u);
                CHECK(explicit_P(u, N, h) == sys.P);
                for (long l = 0; l <= u - 2; ++l) {
                    CHECK(explicit_Q(u, N, l, h) == sys.Qs[static_cast<size_t>(l)]);
                    LaurentTail<Rational> re = explicit_R(u, N, l, h, 10);
                    long upto = std::min(re.prec(), sys.remainders[static_cast<size_t>(l)].prec());
                    REQUIRE(upto >= 10);
                    for (long k = 0; k < upto; ++k)
                        CHECK(re.coeff(k) == sys.remainders[static_cast<size_t>(l)].coeff(k));
                }
            }
        }
    }
}

TEST_CASE("published display differs from the derivation by (-1)^N") {
    for (long u : {2L, 3L})
        for (long N : {1L, 2L, 3L})
            for (long h = 0; h <= u - 1; ++h) {
                Poly disp = explicit_P_display(u, N, h);
                Poly corr = explicit_P(u, N, h);
                CHECK(disp == (N % 2 != 0 ? -corr : corr));
            }
}

TEST_CASE("leading remainder coefficient") {
    // first stored coefficient sits at 1/z^{uN+l-h+1} when h <= l and is
    // pref * C(u(N+eps)+l-h, uN) * ((1+l)/u)_eps / ((u+l)/u + uN)_eps
    long u = 3, N = 1, l = 1, h = 0;
    LaurentTail<Rational> R = explicit_R(u, N, l, h, 6);
    OrdInf o = ord_inf(R);
    CHECK(o.exact);
    CHECK(o.value == u * N + l - h + 1);
    Rational pref = pochhammer(Rational(u - 1, u), u * N) / pochhammer(Rational(u + l, u), u * N);
    CHECK(R.coeff(u * N + l - h) == pref * gen_binomial(Rational(u * N + l - h), u * N));
    // and with l < h the expansion starts one stride later
    LaurentTail<Rational> R2 = explicit_R(u, N, 0, 2, 6);
    CHECK(ord_inf(R2).value == u * N + 0 - 2 + u + 1);
}

TEST_CASE("denominator growth") {
    GrowthReport rep = denominator_growth(2, 24);
    // u = 2: every denominator is a power of two
    Rational r = 1;
    mpz_class d = 1;
    for (long k = 1; k <= 24; ++k) {
        r *= Rational(2 * k - 1, 2 * k);
        mpz_lcm(d.get_mpz_t(), d.get_mpz_t(), r.den().get_mpz_t());
        mpz_class q = d;
        while (mpz_even_p(q.get_mpz_t())) q /= 2;
        CHECK(q == 1);
    }
    CHECK(rep.points.back().first == 24);
    CHECK(rep.points.back().second == Approx(log_abs_mpz(d) / 24.0).epsilon(1e-12));
    CHECK(rep.bound == Approx(std::log(4.0) + 1.0).epsilon(1e-12));

    // small-n sanity against the bound with generous slack
    for (long u : {2L, 3L}) {
        GrowthReport g = denominator_growth(u, 60);
        for (const auto& [n, v] : g.points)
            if (n >= 40) CHECK(v <= g.bound + 0.3);
    }
}

TEST_CASE("decay slopes against the published rates") {
    DecayReport rep = decay_check(2, Rational(10), 2, 6);
    CHECK(rep.ok);
    CHECK(rep.bound_R == Approx(-2 * (std::log(10.0) - std::log(2.0))).epsilon(1e-12));
    CHECK(rep.slope_R <= rep.bound_R + rep.slack);
    CHECK(rep.slope_P <= rep.bound_P + rep.slack);
    // larger alpha means faster decay
    DecayReport rep64 = decay_check(2, Rational(64), 2, 6);
    CHECK(rep64.slope_R < rep.slope_R);
}

TEST_CASE("p-adic decay slope") {
    // alpha = 1/9, p = 3 coprime to u = 2: bound -u (h_3(alpha) - log3/2)
    DecayReport rep = decay_check(2, Rational(1, 9), 2, 6, PlaceQ::prime(3));
    double log3 = std::log(3.0);
    CHECK(rep.bound_R == Approx(-2 * (2 * log3 - log3 / 2)).epsilon(1e-12));
    CHECK(rep.ok);
}

TEST_CASE("residue test for the growth class") {
    GopReport g = g_operator_check({Rational(1), Rational(-1)}, {Rational(0)}, Rational(1));
    REQUIRE(g.residues.size() == 2);
    CHECK(g.residues[0] == Rational(1, 2));
    CHECK(g.residues[1] == Rational(1, 2));
    CHECK(g.is_g_operator);
    CHECK(!g.zero_case_value.has_value());

    GopReport zero = g_operator_check({Rational(2), Rational(5)}, {Rational(7)}, Rational(0));
    for (const auto& r : zero.residues) CHECK(r.is_zero());

    // 0 among the roots of a: the auxiliary product is reported too
    GopReport z = g_operator_check({Rational(0), Rational(1)}, {Rational(1, 2)}, Rational(2));
    REQUIRE(z.zero_case_value.has_value());
    CHECK(*z.zero_case_value == Rational(1));
    CHECK(z.residues[0] == Rational(1));   // root 1 after reordering
    CHECK(z.residues[1] == Rational(1));   // root 0

    CHECK_THROWS_AS(g_operator_check({Rational(1), Rational(1)}, {Rational(0)}, Rational(1)),
                    HypothesisError);
    CHECK_THROWS_AS(g_operator_check({Rational(1)}, {}, Rational(1)), HypothesisError);
}

TEST_CASE("real wrapper basics") {
    Real x = Real::of_rational(Rational(1, 3), 128, MPFR_RNDN);
    CHECK(x.to_double() == Approx(1.0 / 3.0).epsilon(1e-15));
    Real lo = r_log_rational(Rational(2), 128, MPFR_RNDD);
    Real hi = r_log_rational(Rational(2), 128, MPFR_RNDU);
    CHECK(lo.cmp(hi) <= 0);
    CHECK(format_2dec(378) == "3.78");
    CHECK(format_2dec(-105) == "-1.05");
    CHECK(format_2dec(1059) == "10.59");
}
