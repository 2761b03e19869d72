#pragma once

#include <optional>
#include <string>
#include <vector>

#include "holopade/bipoly.hpp"
#include "holopade/families.hpp"
#include "holopade/holonomic.hpp"
#include "holopade/qlinalg.hpp"

namespace holopade {

// The linear functional t^k -> f_k attached to a stream, together with its
// K[z]-linear extension to K[z,t].
class PhiMap {
  public:
    explicit PhiMap(SeqPtr stream) : f_(std::move(stream)) {
        if (!f_) throw std::invalid_argument("PhiMap: null stream");
    }

    const SeqPtr& stream() const { return f_; }

    Rational operator()(const Poly& p_in_t) const {
        Rational s = 0;
        for (size_t k = 0; k < p_in_t.coeffs().size(); ++k) {
            const Rational& c = p_in_t.coeffs()[k];
            if (!c.is_zero()) s += c * f_->coeff(static_cast<long>(k));
        }
        return s;
    }

    // phi(t^k P(t)) without materializing the shifted polynomial.
    Rational shifted(const Poly& p_in_t, long k) const {
        Rational s = 0;
        for (size_t m = 0; m < p_in_t.coeffs().size(); ++m) {
            const Rational& c = p_in_t.coeffs()[m];
            if (!c.is_zero()) s += c * f_->coeff(k + static_cast<long>(m));
        }
        return s;
    }

    // Applies phi to the t powers of a bivariate polynomial, leaving z alone.
    Poly bivariate(const BiPoly& B) const {
        std::vector<Rational> out;
        for (const auto& [key, c] : B.terms()) {
            const auto [zp, tp] = key;
            if (static_cast<size_t>(zp) >= out.size()) out.resize(static_cast<size_t>(zp) + 1, Rational(0));
            out[static_cast<size_t>(zp)] += c * f_->coeff(tp);
        }
        return Poly(std::move(out), Var::z);
    }

    bool kernel_member(const Poly& p_in_t) const { return (*this)(p_in_t).is_zero(); }

  private:
    SeqPtr f_;
};

struct SeriesCheck {
    std::string label;
    long required = 0;  // order condition: ord >= required
    OrdInf ord;
    bool ok = false;
};

// Constructed approximant system plus its verification record.
struct PadeSystem {
    Poly P{Var::z};
    std::vector<Poly> Qs;
    std::vector<long> weights;
    long degree_bound = 0;
    std::vector<LaurentTail<Rational>> remainders;
    std::vector<SeriesCheck> checks;
    bool deg_ok = false;

    bool verified() const {
        if (!deg_ok) return false;
        for (const auto& c : checks)
            if (!c.ok) return false;
        return true;
    }
};

// Q = phi((P(z)-P(t))/(z-t)) and the remainder tail with coefficients
// phi(t^k P(t)) for k < prec. Both the functional route and plain series
// arithmetic P*f - Q are computed and must agree; a mismatch means a bug in
// the precision bookkeeping, not bad input.
inline std::pair<Poly, LaurentTail<Rational>> q_and_remainder(const PhiMap& phi, const Poly& P,
                                                              long prec) {
    const Poly p_t = P.with_var(Var::t);
    Poly Q = phi.bivariate(divided_difference(P.with_var(Var::z)));
    LaurentTail<Rational> R(prec);
    for (long k = 0; k < prec; ++k) R.set_coeff(k, phi.shifted(p_t, k));

    long dp = P.is_zero() ? 0 : P.degree_nz();
    LaurentPoly<Rational> series =
        LaurentPoly<Rational>(phi.stream()->tail(prec + dp)).mul_poly(P.with_var(Var::z));
    if (poly_part_as_poly(series) != Q || !(series.tail() == R))
        throw std::logic_error("q_and_remainder: functional and series routes disagree");
    return {std::move(Q), std::move(R)};
}

struct OracleResult {
    PadeSystem system;
    int kernel_dim = 0;
};

// Brute-force construction: the order conditions phi_j(t^k P(t)) = 0 for
// k < n_j form a homogeneous linear system in the M+1 coefficients of P;
// any nonzero kernel vector works. Deterministic pivoting: reduced row
// echelon form with leftmost pivots, highest-index free variable set to 1.
inline OracleResult solve_pade_oracle(const std::vector<SeqPtr>& streams,
                                      const std::vector<long>& weights, long M,
                                      long slack = 5) {
    if (streams.size() != weights.size())
        throw std::invalid_argument("solve_pade_oracle: weights/streams size mismatch");
    long N = 0;
    for (long n : weights) {
        if (n < 0) throw std::invalid_argument("solve_pade_oracle: negative weight");
        N += n;
    }
    if (M < N) throw std::invalid_argument("solve_pade_oracle: need M >= sum of weights");
    DenseMat<Rational> A(static_cast<size_t>(N), static_cast<size_t>(M) + 1);
    size_t row = 0;
    for (size_t j = 0; j < streams.size(); ++j)
        for (long k = 0; k < weights[j]; ++k, ++row)
            for (long m = 0; m <= M; ++m)
                A.at(row, static_cast<size_t>(m)) = streams[j]->coeff(k + m);
    NullspaceResult ns = nullspace_vector(std::move(A));

    PadeSystem sys;
    sys.P = Poly(ns.vec, Var::z);
    sys.weights = weights;
    sys.degree_bound = M;
    sys.deg_ok = sys.P.is_zero() || sys.P.degree_nz() <= M;
    for (size_t j = 0; j < streams.size(); ++j) {
        PhiMap phi(streams[j]);
        auto [Q, R] = q_and_remainder(phi, sys.P, weights[j] + slack);
        OrdInf o = ord_inf(R);
        sys.Qs.push_back(std::move(Q));
        sys.remainders.push_back(std::move(R));
        sys.checks.push_back({"series " + std::to_string(j), weights[j] + 1, o,
                              o.value >= weights[j] + 1});
    }
    return {std::move(sys), ns.kernel_dim};
}

// One operator block of the generalized Rodrigues construction.
struct RodriguesBlock {
    FirstOrderData fod;
    std::vector<long> weights;  // r_j, one entry per factor of a
    long n = 0;
    std::vector<SeqPtr> streams;
    std::vector<std::string> labels;
};

inline std::vector<RodriguesBlock> family_blocks(const FamilyData& fam, long n) {
    std::vector<RodriguesBlock> blocks;
    for (const auto& b : fam.blocks) {
        std::vector<long> r;
        for (long m : b.weight_unit) r.push_back(m * n);
        std::vector<SeqPtr> seqs(b.streams.begin(), b.streams.end());
        blocks.push_back({b.fod, std::move(r), n, std::move(seqs), b.labels});
    }
    return blocks;
}

// P = prod_j R_{j,n_j} . F and the matching Q's / remainders. Hypotheses
// checked exactly: w_j >= 0, the recurrence assumption, membership of F in
// the ideal generated by prod_v a_v^{sum_j r_{j,v}}, and pairwise
// commutativity of the Rodrigues operators. Throws PZeroError when the
// construction collapses to P = 0.
inline PadeSystem rodrigues_construct(const std::vector<RodriguesBlock>& blocks, const Poly& F,
                                      std::optional<long> degree_bound = std::nullopt,
                                      long slack = 5) {
    if (blocks.empty()) throw std::invalid_argument("rodrigues_construct: no blocks");
    if (F.is_zero()) throw HypothesisError("rodrigues_construct: F must be nonzero");

    Poly ideal_gen(Rational(1), Var::z);
    for (const auto& blk : blocks) {
        if (blk.fod.w() < 0)
            throw HypothesisError("rodrigues_construct: block has max(deg a - 2, deg b - 1) < 0");
        auto chk = check_assumption(blk.fod);
        if (!chk.ok)
            throw HypothesisError("rodrigues_construct: leading recurrence coefficient vanishes at k=" +
                                  std::to_string(chk.violating_k));
        if (blk.weights.size() != blk.fod.a_factors.size())
            throw std::invalid_argument("rodrigues_construct: weight count mismatch");
        for (size_t v = 0; v < blk.weights.size(); ++v)
            ideal_gen = ideal_gen * pow_int(blk.fod.a_factors[v].with_var(Var::z), blk.weights[v]);
    }
    if (!divides(ideal_gen, F))
        throw HypothesisError("rodrigues_construct: F is not divisible by " + ideal_gen.to_string());

    std::vector<DiffOp> ops;
    for (const auto& blk : blocks) ops.push_back(rodrigues_op(blk.fod, blk.n, blk.weights, Var::z));
    for (size_t i = 0; i < ops.size(); ++i)
        for (size_t j = i + 1; j < ops.size(); ++j)
            if (!commutes_directly(ops[i], ops[j]))
                throw HypothesisError("rodrigues_construct: Rodrigues operators for blocks " +
                                      std::to_string(i) + " and " + std::to_string(j) +
                                      " do not commute");

    RatFunc image(F.with_var(Var::z));
    for (const auto& op : ops) image = apply(op, image);
    Poly P = image.as_poly();
    long total_n = 0;
    for (const auto& blk : blocks) total_n += blk.n;
    if (P.is_zero()) {
        std::string msg = "rodrigues_construct: P = 0 after applying the Rodrigues product (n =";
        for (const auto& blk : blocks) msg += " " + std::to_string(blk.n);
        throw PZeroError(msg + ", F = " + F.to_string() + ")");
    }

    PadeSystem sys;
    sys.P = P;
    sys.degree_bound = degree_bound.value_or(std::max(static_cast<long>(P.degree_nz()), total_n));
    sys.deg_ok = P.degree_nz() <= sys.degree_bound;

    for (long attempt_slack = slack;; attempt_slack *= 2) {
        sys.Qs.clear();
        sys.weights.clear();
        sys.remainders.clear();
        sys.checks.clear();
        bool undecided = false;
        const long T = total_n + P.degree_nz() + attempt_slack;
        for (const auto& blk : blocks) {
            for (size_t s = 0; s < blk.streams.size(); ++s) {
                PhiMap phi(blk.streams[s]);
                auto [Q, R] = q_and_remainder(phi, P, T);
                OrdInf o = ord_inf(R);
                if (!o.exact && o.value <= blk.n) {
                    undecided = true;  // cannot decide ord >= n+1 yet
                    break;
                }
                std::string label = s < blk.labels.size() ? blk.labels[s] : "series";
                sys.Qs.push_back(std::move(Q));
                sys.weights.push_back(blk.n);
                sys.remainders.push_back(std::move(R));
                sys.checks.push_back({label, blk.n + 1, o, o.value >= blk.n + 1});
            }
            if (undecided) break;
        }
        if (!undecided) break;
        if (attempt_slack > (1L << 20))
            throw PrecisionError("rodrigues_construct: order conditions undecidable");
    }
    return sys;
}

// Family-level construction for the h-indexed systems P_h = prod R_{j,n} . [z^h a2^{dn}].
inline PadeSystem construct_family_system(const FamilyData& fam, long n, long h, long slack = 5) {
    if (h < 0 || h > fam.W)
        throw std::invalid_argument("construct_family_system: h out of range 0..W");
    return rodrigues_construct(family_blocks(fam, n), fam.F_base(n, h), fam.degree_bound(n, h), slack);
}

// Just the polynomial P_h, skipping verification.
inline Poly family_P(const FamilyData& fam, long n, long h) {
    RatFunc image(fam.F_base(n, h));
    for (const auto& blk : family_blocks(fam, n))
        image = apply(rodrigues_op(blk.fod, blk.n, blk.weights, Var::z), image);
    return image.as_poly();
}

struct RemainderCoeffCheck {
    Rational direct;   // phi_{j,u_j}(t^n P_h(t))
    Rational closed;   // the product formula over gamma constants
    bool match = false;
};

// Coefficient-of-1/z^{n+1} formula: phi(t^n P_h) against
// ((-1)^n/(n!)^{d-1}) prod_{j'!=j} prod_k (gamma_{j',j} - k eps) phi(t^h a1^n a2^{dn}).
inline RemainderCoeffCheck remainder_first_coeff(const FamilyData& fam, long n, long h, int j, int uj) {
    if (fam.d >= 2) {
        if (!fam.a1.is_constant() && fam.a1.degree_nz() > 1)
            throw HypothesisError("remainder_first_coeff: deg a1 must be <= 1 for d >= 2");
        if (!fam.a1.is_monic() && !(fam.a1.is_constant() && fam.a1.coeff(0) == Rational(1)))
            throw HypothesisError("remainder_first_coeff: a1 must be monic");
        for (int j1 = 0; j1 < fam.d; ++j1)
            for (int j2 = j1 + 1; j2 < fam.d; ++j2)
                if (fam.gamma_const(j1, j2).is_zero())
                    throw HypothesisError("remainder_first_coeff: gamma constants must be nonzero");
    }
    Poly P = family_P(fam, n, h);
    PhiMap phi(fam.blocks[static_cast<size_t>(j)].streams[static_cast<size_t>(uj)]);
    Rational direct = phi.shifted(P.with_var(Var::t), n);

    Rational prod = 1;
    for (int jp = 0; jp < fam.d; ++jp) {
        if (jp == j) continue;
        Rational g = fam.gamma_const(jp, j);
        for (long k = 1; k <= n; ++k) prod *= g - Rational(k * fam.eps_a1());
    }
    Poly arg = Poly::monomial(Rational(1), static_cast<int>(h), Var::t) *
               pow_int(fam.a1.with_var(Var::t), n) * pow_int(fam.a2.with_var(Var::t), fam.d * n);
    Rational closed = prod * phi(arg) / pow_int(factorial(n), fam.d - 1);
    if (n % 2 != 0) closed = -closed;
    return {direct, closed, direct == closed};
}

}  // namespace holopade
