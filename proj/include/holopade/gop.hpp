#pragma once

#include <algorithm>
#include <optional>
#include <vector>

#include "holopade/errors.hpp"
#include "holopade/rational.hpp"

namespace holopade {

struct GopReport {
    std::vector<Rational> residues;          // gamma prod_j (a_i - b_j) / prod_{i'!=i} (a_i - a_{i'})
    std::optional<Rational> zero_case_value; // gamma prod_j b_j / a_j, present when 0 is a root of a
    bool is_g_operator = false;              // rationality verdict; vacuous over Q
};

// Growth-class test for D = -a(z)d + b(z) with a = prod (z - alpha_i),
// b = gamma prod (z - beta_j): D is in the controlled-arithmetic class iff
// every residue below is rational. Over Q the verdict is automatic; the
// residues themselves are the content of the report.
inline GopReport g_operator_check(std::vector<Rational> alphas, const std::vector<Rational>& betas,
                                  const Rational& gamma) {
    const size_t m = alphas.size();
    if (m < 2) throw HypothesisError("g_operator_check: need m >= 2 roots of a");
    if (betas.size() + 1 != m)
        throw HypothesisError("g_operator_check: need exactly m-1 roots of b");
    for (size_t i = 0; i < m; ++i)
        for (size_t j = i + 1; j < m; ++j)
            if (alphas[i] == alphas[j])
                throw HypothesisError("g_operator_check: repeated root of a: " + alphas[i].to_string());

    // The zero root, if any, goes last.
    auto it = std::find(alphas.begin(), alphas.end(), Rational(0));
    const bool has_zero = it != alphas.end();
    if (has_zero) std::rotate(it, it + 1, alphas.end());

    GopReport rep;
    for (size_t i = 0; i < m; ++i) {
        Rational num = gamma, den = 1;
        for (const auto& b : betas) num *= alphas[i] - b;
        for (size_t ip = 0; ip < m; ++ip)
            if (ip != i) den *= alphas[i] - alphas[ip];
        rep.residues.push_back(num / den);
    }
    if (has_zero) {
        Rational extra = gamma;
        for (size_t j = 0; j + 1 < m; ++j) {
            if (alphas[j].is_zero())
                throw HypothesisError("g_operator_check: zero alpha in the auxiliary product");
            extra *= betas[j] / alphas[j];
        }
        rep.zero_case_value = extra;
    }
    rep.is_g_operator = true;  // all inputs rational
    return rep;
}

}  // namespace holopade
