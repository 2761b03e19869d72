#pragma once

#include <deque>
#include <functional>
#include <memory>
#include <mutex>
#include <optional>
#include <vector>

#include "holopade/errors.hpp"
#include "holopade/laurent.hpp"
#include "holopade/weyl.hpp"

namespace holopade {

struct AssumptionCheck {
    bool ok = true;
    long violating_k = -1;  // the k >= 0 where the leading coefficient vanishes
};

// Nonvanishing of the leading recurrence coefficient c_{k,w+1} for all k >= 0.
// c_{k,w+1} is a_u(k+u) when deg a - 2 > deg b - 1, b_v in the opposite case,
// and a_u(k+u) + b_v when equal; affine in k, so at most one root to test.
inline AssumptionCheck check_assumption(const FirstOrderData& F) {
    const Poly a = F.a();
    if (F.w() < 0) throw std::invalid_argument("check_assumption: w < 0");
    const long u = a.degree_nz();
    const long vm1 = F.b.is_zero() ? u - 3 : F.b.degree_nz() - 1;  // anything < u-2 works for zero b
    if (u - 2 != vm1) return {true, -1};
    Rational root = -(Rational(u) + F.b.leading() / a.leading());
    if (root.is_integer() && root >= Rational(0)) return {false, root.to_long()};
    return {true, -1};
}

// Anything that can hand out the coefficients f_0, f_1, ... of an element
// of (1/z) K[[1/z]] on demand.
struct CoeffSeq {
    virtual ~CoeffSeq() = default;
    virtual Rational coeff(long k) const = 0;
    virtual LaurentTail<Rational> tail(long prec) const {
        std::vector<Rational> cs(static_cast<size_t>(prec));
        for (long k = 0; k < prec; ++k) cs[static_cast<size_t>(k)] = coeff(k);
        return LaurentTail<Rational>(std::move(cs));
    }
};

using SeqPtr = std::shared_ptr<const CoeffSeq>;

// Ad-hoc sequence from a function; used by tests and one-off series.
class FnSeq final : public CoeffSeq {
  public:
    explicit FnSeq(std::function<Rational(long)> fn) : fn_(std::move(fn)) {}
    Rational coeff(long k) const override { return fn_(k); }

  private:
    std::function<Rational(long)> fn_;
};

// Coefficient stream f_0, f_1, ... of a Laurent series annihilated modulo
// polynomials by D = -a(z) d + b(z). Seeds fix f_0..f_w; later values follow
// the recurrence sum_i a_i (k+i) f_{k+i-1} + sum_j b_j f_{k+j} = 0. Extension
// is single-writer under a mutex; a deque keeps settled values in place.
class HolonomicStream final : public CoeffSeq {
  public:
    HolonomicStream(FirstOrderData source, std::vector<Rational> seeds)
        : source_(std::move(source)), a_(source_.a()), w_(source_.w()) {
        if (w_ < 0) throw HypothesisError("HolonomicStream: w < 0, no solution basis");
        auto chk = check_assumption(source_);
        if (!chk.ok)
            throw HypothesisError("HolonomicStream: leading recurrence coefficient vanishes at k=" +
                                  std::to_string(chk.violating_k));
        if (static_cast<long>(seeds.size()) != w_ + 1)
            throw std::invalid_argument("HolonomicStream: need exactly w+1 seed values");
        for (auto& s : seeds) cache_.push_back(std::move(s));
    }

    long w() const { return w_; }
    const FirstOrderData& source() const { return source_; }

    Rational coeff(long k) const override {
        if (k < 0) throw std::invalid_argument("HolonomicStream: negative index");
        std::lock_guard<std::mutex> lock(mu_);
        extend_locked(k);
        return cache_[static_cast<size_t>(k)];
    }

    LaurentTail<Rational> tail(long prec) const override {
        std::vector<Rational> cs(static_cast<size_t>(prec));
        {
            std::lock_guard<std::mutex> lock(mu_);
            extend_locked(prec - 1);
            for (long k = 0; k < prec; ++k) cs[static_cast<size_t>(k)] = cache_[static_cast<size_t>(k)];
        }
        return LaurentTail<Rational>(std::move(cs));
    }

    // Exact recurrence residual at index k (should be zero); a re-check hook.
    Rational residual(long k) const {
        Rational s = 0;
        for (long i = 0; i <= a_.degree_nz(); ++i) {
            long idx = k + i - 1;
            if (idx >= 0) s += a_.coeff(static_cast<int>(i)) * Rational(k + i) * coeff(idx);
        }
        if (!source_.b.is_zero())
            for (long j = 0; j <= source_.b.degree_nz(); ++j)
                s += source_.b.coeff(static_cast<int>(j)) * coeff(k + j);
        return s;
    }

  private:
    void extend_locked(long upto) const {
        while (static_cast<long>(cache_.size()) <= upto) {
            const long m = static_cast<long>(cache_.size());
            const long k = m - w_ - 1;
            Rational lead = 0, rest = 0;
            for (long i = 0; i <= a_.degree_nz(); ++i) {
                long idx = k + i - 1;
                Rational c = a_.coeff(static_cast<int>(i)) * Rational(k + i);
                if (idx == m) lead += c;
                else if (idx >= 0) rest += c * cache_[static_cast<size_t>(idx)];
            }
            if (!source_.b.is_zero()) {
                for (long j = 0; j <= source_.b.degree_nz(); ++j) {
                    long idx = k + j;
                    Rational c = source_.b.coeff(static_cast<int>(j));
                    if (idx == m) lead += c;
                    else rest += c * cache_[static_cast<size_t>(idx)];
                }
            }
            if (lead.is_zero())
                throw HypothesisError("HolonomicStream: leading recurrence coefficient vanishes at k=" +
                                      std::to_string(k));
            cache_.push_back(-rest / lead);
        }
    }

    FirstOrderData source_;
    Poly a_;
    long w_;
    mutable std::mutex mu_;
    mutable std::deque<Rational> cache_;
};

using StreamPtr = std::shared_ptr<HolonomicStream>;

// Canonical solution basis: unit-vector seeds on f_0..f_w.
inline std::vector<StreamPtr> solution_basis(const FirstOrderData& F) {
    if (F.w() < 0) throw std::invalid_argument("solution_basis: w < 0");
    auto chk = check_assumption(F);
    if (!chk.ok)
        throw HypothesisError("solution_basis: leading recurrence coefficient vanishes at k=" +
                              std::to_string(chk.violating_k));
    std::vector<StreamPtr> basis;
    for (long l = 0; l <= F.w(); ++l) {
        std::vector<Rational> seeds(static_cast<size_t>(F.w()) + 1, Rational(0));
        seeds[static_cast<size_t>(l)] = 1;
        basis.push_back(std::make_shared<HolonomicStream>(F, std::move(seeds)));
    }
    return basis;
}

// Exact partial sum of 2F1(a,b,c|x): sum_{k<terms} (a)_k (b)_k / ((c)_k k!) x^k.
inline Rational gauss_2f1_partial(const Rational& a, const Rational& b, const Rational& c,
                                  const Rational& x, long terms) {
    Rational sum = 0, term = 1;
    for (long k = 0; k < terms; ++k) {
        sum += term;
        Rational cden = c + Rational(k);
        if (cden.is_zero())
            throw HypothesisError("gauss_2f1_partial: lower parameter hits zero at k=" + std::to_string(k));
        term = term * (a + Rational(k)) * (b + Rational(k)) / (cden * Rational(k + 1)) * x;
    }
    return sum;
}

}  // namespace holopade
