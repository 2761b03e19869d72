#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "holopade/holonomic.hpp"

namespace holopade {

// Parsed family request; parameters interpreted per family tag.
struct FamilySpec {
    std::string family;                // chebyshev | bessel | laguerre-gamma | laguerre-delta | hermite | lerch | custom
    long u = 0;                        // chebyshev
    std::vector<Rational> gammas;      // bessel, laguerre-gamma, lerch
    std::vector<Rational> deltas;      // laguerre-delta, hermite
    std::vector<Rational> alphas;      // lerch
    Rational gamma = 0;                // laguerre-delta, hermite
    Rational delta = 0;                // laguerre-gamma
    std::string custom_a, custom_b;    // custom: polynomial strings in z
};

struct FamilyBlock {
    FirstOrderData fod;
    std::vector<long> weight_unit;  // r_{j,v} = n * weight_unit[v]
    std::vector<StreamPtr> streams;
    std::vector<std::string> labels;
};

// One of the worked operator families: d first-order operators sharing
// a = a1 * a2, their Laurent solution streams with the published seeds, the
// factorization driving the Rodrigues powers (c = a1) and the determinant
// machinery constants.
struct FamilyData {
    std::string family;
    FamilySpec spec;  // raw parameters, kept for reports and closed forms
    int d = 0;
    long w = 0;   // per-block w (identical across blocks for these families)
    long W = 0;   // sum over blocks of (w+1)
    Poly a1{Var::z}, a2{Var::z};
    std::vector<FamilyBlock> blocks;
    // Closed coefficient law f_{j,u_j,k}, when the family publishes one.
    std::function<std::optional<Rational>(int j, int uj, long k)> closed_coeff;

    int eps_a1() const { return (!a1.is_constant() && a1.degree_nz() == 1) ? 1 : 0; }

    // (b_{j1} - b_{j2}) / a2, which these families keep constant.
    Rational gamma_const(int j1, int j2) const {
        RatFunc q(blocks[static_cast<size_t>(j1)].fod.b - blocks[static_cast<size_t>(j2)].fod.b, a2);
        if (!q.is_polynomial() || !q.num().is_constant())
            throw HypothesisError("family: (b_{j1}-b_{j2})/a2 is not constant");
        return q.num().coeff(0);
    }

    Poly F_base(long n, long h) const {
        return Poly::monomial(Rational(1), static_cast<int>(h), Var::z) * pow_int(a2, d * n);
    }
    long degree_bound(long n, long h) const { return n * W + h; }
};

namespace family_detail {

inline void require(bool cond, const std::string& msg) {
    if (!cond) throw HypothesisError(msg);
}

inline bool is_negative_integer(const Rational& r) {
    return r.is_integer() && r.sign() < 0;
}

inline void require_non_integer_differences(const std::vector<Rational>& xs, const std::string& what) {
    for (size_t i = 0; i < xs.size(); ++i)
        for (size_t j = i + 1; j < xs.size(); ++j)
            require(!(xs[i] - xs[j]).is_integer(),
                    what + ": parameter difference " + (xs[i] - xs[j]).to_string() + " is an integer");
}

inline Poly zpow(int k) { return Poly::monomial(Rational(1), k, Var::z); }

}  // namespace family_detail

inline FamilyData family_chebyshev(long u) {
    family_detail::require(u >= 2, "chebyshev: u must be >= 2");
    FamilyData fam;
    fam.family = "chebyshev";
    fam.spec.family = "chebyshev";
    fam.spec.u = u;
    fam.d = 1;
    Poly a = family_detail::zpow(static_cast<int>(u)) - Poly(Rational(1), Var::z);
    Poly b = -family_detail::zpow(static_cast<int>(u - 1));
    fam.a1 = a;
    fam.a2 = Poly(Rational(1), Var::z);
    FirstOrderData fod({a}, b);
    fam.w = fod.w();
    fam.W = fam.w + 1;
    FamilyBlock blk{fod, {0}, {}, {}};
    for (long l = 0; l <= fam.w; ++l) {
        std::vector<Rational> seeds(static_cast<size_t>(fam.w) + 1, Rational(0));
        seeds[static_cast<size_t>(l)] = 1;
        blk.streams.push_back(std::make_shared<HolonomicStream>(fod, std::move(seeds)));
        blk.labels.push_back("f_" + std::to_string(l));
    }
    fam.blocks.push_back(std::move(blk));
    fam.closed_coeff = [u](int, int uj, long k) -> std::optional<Rational> {
        long l = uj;
        if ((k - l) % u != 0 || k < l) return Rational(0);
        long N = (k - l) / u;
        return pochhammer(Rational(1 + l, u), N) / pochhammer(Rational(u + l, u), N);
    };
    return fam;
}

inline FamilyData family_bessel(const std::vector<Rational>& gammas) {
    family_detail::require(!gammas.empty(), "bessel: need at least one gamma");
    for (const auto& g : gammas)
        family_detail::require(!(g.is_integer() && g < Rational(-1)),
                               "bessel: gamma " + g.to_string() + " is an integer below -1");
    family_detail::require_non_integer_differences(gammas, "bessel");
    FamilyData fam;
    fam.family = "bessel";
    fam.spec.family = "bessel";
    fam.spec.gammas = gammas;
    fam.d = static_cast<int>(gammas.size());
    Poly zpoly = family_detail::zpow(1);
    fam.a1 = zpoly;
    fam.a2 = zpoly;
    fam.w = 0;
    fam.W = fam.d;
    for (const auto& g : gammas) {
        FirstOrderData fod({zpoly, zpoly}, Poly({Rational(-1), g}, Var::z));
        FamilyBlock blk{fod, {1, 0}, {}, {}};
        blk.streams.push_back(std::make_shared<HolonomicStream>(fod, std::vector<Rational>{Rational(1)}));
        blk.labels.push_back("f(gamma=" + g.to_string() + ")");
        fam.blocks.push_back(std::move(blk));
    }
    fam.closed_coeff = [gammas](int j, int, long k) -> std::optional<Rational> {
        return pochhammer(Rational(2) + gammas[static_cast<size_t>(j)], k).inverse();
    };
    return fam;
}

inline FamilyData family_laguerre_gamma(const std::vector<Rational>& gammas, const Rational& delta) {
    family_detail::require(!gammas.empty(), "laguerre-gamma: need at least one gamma");
    for (const auto& g : gammas)
        family_detail::require(!g.is_zero(), "laguerre-gamma: gamma must be nonzero");
    for (size_t i = 0; i < gammas.size(); ++i)
        for (size_t j = i + 1; j < gammas.size(); ++j)
            family_detail::require(gammas[i] != gammas[j], "laguerre-gamma: gammas must be pairwise distinct");
    family_detail::require(!family_detail::is_negative_integer(delta),
                           "laguerre-gamma: delta must not be a negative integer");
    FamilyData fam;
    fam.family = "laguerre-gamma";
    fam.spec.family = "laguerre-gamma";
    fam.spec.gammas = gammas;
    fam.spec.delta = delta;
    fam.d = static_cast<int>(gammas.size());
    Poly zpoly = family_detail::zpow(1);
    fam.a1 = Poly(Rational(1), Var::z);
    fam.a2 = zpoly;
    fam.w = 0;
    fam.W = fam.d;
    for (const auto& g : gammas) {
        FirstOrderData fod({zpoly}, Poly({delta, -g}, Var::z));
        FamilyBlock blk{fod, {1}, {}, {}};
        blk.streams.push_back(std::make_shared<HolonomicStream>(fod, std::vector<Rational>{g.inverse()}));
        blk.labels.push_back("f(gamma=" + g.to_string() + ")");
        fam.blocks.push_back(std::move(blk));
    }
    fam.closed_coeff = [gammas, delta](int j, int, long k) -> std::optional<Rational> {
        return pochhammer(Rational(1) + delta, k) / pow_int(gammas[static_cast<size_t>(j)], k + 1);
    };
    return fam;
}

inline FamilyData family_laguerre_delta(const std::vector<Rational>& deltas, const Rational& gamma) {
    family_detail::require(!deltas.empty(), "laguerre-delta: need at least one delta");
    family_detail::require(!gamma.is_zero(), "laguerre-delta: gamma must be nonzero");
    for (const auto& d : deltas)
        family_detail::require(!family_detail::is_negative_integer(d),
                               "laguerre-delta: delta must not be a negative integer");
    family_detail::require_non_integer_differences(deltas, "laguerre-delta");
    FamilyData fam;
    fam.family = "laguerre-delta";
    fam.spec.family = "laguerre-delta";
    fam.spec.deltas = deltas;
    fam.spec.gamma = gamma;
    fam.d = static_cast<int>(deltas.size());
    Poly zpoly = family_detail::zpow(1);
    fam.a1 = zpoly;
    fam.a2 = Poly(Rational(1), Var::z);
    fam.w = 0;
    fam.W = fam.d;
    for (const auto& dl : deltas) {
        FirstOrderData fod({zpoly}, Poly({dl, -gamma}, Var::z));
        FamilyBlock blk{fod, {0}, {}, {}};
        blk.streams.push_back(std::make_shared<HolonomicStream>(fod, std::vector<Rational>{gamma.inverse()}));
        blk.labels.push_back("f(delta=" + dl.to_string() + ")");
        fam.blocks.push_back(std::move(blk));
    }
    fam.closed_coeff = [deltas, gamma](int j, int, long k) -> std::optional<Rational> {
        return pochhammer(Rational(1) + deltas[static_cast<size_t>(j)], k) / pow_int(gamma, k + 1);
    };
    return fam;
}

inline FamilyData family_hermite(const std::vector<Rational>& deltas, const Rational& gamma) {
    family_detail::require(!deltas.empty(), "hermite: need at least one delta");
    family_detail::require(!gamma.is_zero(), "hermite: gamma must be nonzero");
    for (size_t i = 0; i < deltas.size(); ++i)
        for (size_t j = i + 1; j < deltas.size(); ++j)
            family_detail::require(deltas[i] != deltas[j], "hermite: deltas must be pairwise distinct");
    FamilyData fam;
    fam.family = "hermite";
    fam.spec.family = "hermite";
    fam.spec.deltas = deltas;
    fam.spec.gamma = gamma;
    fam.d = static_cast<int>(deltas.size());
    fam.a1 = Poly(Rational(1), Var::z);
    fam.a2 = Poly(Rational(1), Var::z);
    fam.w = 0;
    fam.W = fam.d;
    for (const auto& dl : deltas) {
        FirstOrderData fod({Poly(Rational(1), Var::z)}, Poly({dl, gamma}, Var::z));
        FamilyBlock blk{fod, {0}, {}, {}};
        blk.streams.push_back(std::make_shared<HolonomicStream>(fod, std::vector<Rational>{Rational(1)}));
        blk.labels.push_back("f(delta=" + dl.to_string() + ")");
        fam.blocks.push_back(std::move(blk));
    }
    fam.closed_coeff = nullptr;  // only the recurrence defines the stream
    return fam;
}

inline FamilyData family_lerch(const std::vector<Rational>& alphas, const std::vector<Rational>& gammas) {
    family_detail::require(!alphas.empty() && !gammas.empty(), "lerch: need alphas and gammas");
    for (const auto& a : alphas)
        family_detail::require(!a.is_zero(), "lerch: alphas must be nonzero");
    for (size_t i = 0; i < alphas.size(); ++i)
        for (size_t j = i + 1; j < alphas.size(); ++j)
            family_detail::require(alphas[i] != alphas[j], "lerch: alphas must be pairwise distinct");
    for (const auto& g : gammas)
        family_detail::require(!family_detail::is_negative_integer(g),
                               "lerch: gamma must not be a negative integer");
    family_detail::require_non_integer_differences(gammas, "lerch");
    const int m = static_cast<int>(alphas.size());
    FamilyData fam;
    fam.family = "lerch";
    fam.spec.family = "lerch";
    fam.spec.alphas = alphas;
    fam.spec.gammas = gammas;
    fam.d = static_cast<int>(gammas.size());
    Poly zpoly = family_detail::zpow(1);
    Poly a2(Rational(1), Var::z);
    std::vector<Poly> factors{zpoly};
    for (const auto& al : alphas) {
        Poly lin = zpoly - Poly(al, Var::z);
        factors.push_back(lin);
        a2 = a2 * lin;
    }
    fam.a1 = zpoly;
    fam.a2 = a2;
    fam.w = m - 1;
    fam.W = static_cast<long>(fam.d) * m;
    for (const auto& g : gammas) {
        FirstOrderData fod(factors, Poly(g, Var::z) * a2);
        std::vector<long> unit(factors.size(), 1);
        unit[0] = 0;
        FamilyBlock blk{fod, unit, {}, {}};
        for (const auto& al : alphas) {
            std::vector<Rational> seeds;
            for (long k = 0; k <= fam.w; ++k)
                seeds.push_back(pow_int(al, k + 1) / (Rational(k + 1) + g));
            blk.streams.push_back(std::make_shared<HolonomicStream>(fod, std::move(seeds)));
            blk.labels.push_back("f(alpha=" + al.to_string() + ",gamma=" + g.to_string() + ")");
        }
        fam.blocks.push_back(std::move(blk));
    }
    fam.closed_coeff = [alphas, gammas](int j, int uj, long k) -> std::optional<Rational> {
        return pow_int(alphas[static_cast<size_t>(uj)], k + 1) /
               (Rational(k + 1) + gammas[static_cast<size_t>(j)]);
    };
    return fam;
}

// A single user-supplied operator -a d + b with the canonical solution basis.
inline FamilyData family_custom(const Poly& a, const Poly& b) {
    if (a.is_zero()) throw HypothesisError("custom: a must be nonzero");
    FamilyData fam;
    fam.family = "custom";
    fam.spec.family = "custom";
    fam.spec.custom_a = a.to_string();
    fam.spec.custom_b = b.to_string();
    fam.d = 1;
    fam.a1 = a;
    fam.a2 = Poly(Rational(1), Var::z);
    FirstOrderData fod({a}, b);
    if (fod.w() < 0) throw HypothesisError("custom: max(deg a - 2, deg b - 1) is negative");
    fam.w = fod.w();
    fam.W = fam.w + 1;
    FamilyBlock blk{fod, {0}, {}, {}};
    blk.streams = solution_basis(fod);
    for (long l = 0; l <= fam.w; ++l) blk.labels.push_back("f_" + std::to_string(l));
    fam.blocks.push_back(std::move(blk));
    fam.closed_coeff = nullptr;
    return fam;
}

inline FamilyData family_from_spec(const FamilySpec& spec) {
    if (spec.family == "chebyshev") return family_chebyshev(spec.u);
    if (spec.family == "bessel") return family_bessel(spec.gammas);
    if (spec.family == "laguerre-gamma") return family_laguerre_gamma(spec.gammas, spec.delta);
    if (spec.family == "laguerre-delta") return family_laguerre_delta(spec.deltas, spec.gamma);
    if (spec.family == "hermite") return family_hermite(spec.deltas, spec.gamma);
    if (spec.family == "lerch") return family_lerch(spec.alphas, spec.gammas);
    if (spec.family == "custom")
        return family_custom(parse_poly(spec.custom_a, Var::z), parse_poly(spec.custom_b, Var::z));
    throw HypothesisError("unknown family '" + spec.family + "'");
}

}  // namespace holopade
