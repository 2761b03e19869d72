#pragma once

#include <json.hpp>

#include "holopade/criterion.hpp"
#include "holopade/determinant.hpp"
#include "holopade/gop.hpp"
#include "holopade/hyper_explicit.hpp"
#include "holopade/pade.hpp"

namespace holopade {

using nlohmann::json;

constexpr int kSchemaVersion = 1;

inline json to_json(const Rational& r) { return r.to_string(); }

inline json to_json(const Poly& p) {
    json arr = json::array();
    for (const auto& c : p.coeffs()) arr.push_back(c.to_string());
    return arr;
}

inline Poly poly_from_json(const json& j, Var v = Var::z) {
    std::vector<Rational> cs;
    for (const auto& e : j) cs.push_back(Rational::from_string(e.get<std::string>()));
    return Poly(std::move(cs), v);
}

inline json to_json(const RatFunc& f) {
    return json{{"num", to_json(f.num())}, {"den", to_json(f.den())}};
}

// DiffOp as a list of (order, coefficient) pairs.
inline json to_json(const DiffOp& d) {
    json arr = json::array();
    if (d.is_zero()) return arr;
    for (int i = 0; i <= d.order(); ++i)
        if (!d.coeff(i).is_zero()) arr.push_back(json::array({i, to_json(d.coeff(i))}));
    return arr;
}

inline json to_json(const OrdInf& o) {
    return json{{"value", o.value}, {"exact", o.exact}};
}

// First nonzero remainder coefficients with their 1/z^{k+1} indices.
inline json remainder_leading_terms(const LaurentTail<Rational>& t, int count = 3) {
    json arr = json::array();
    for (long k = 0; k < t.prec() && arr.size() < static_cast<size_t>(count); ++k)
        if (!t.coeff(k).is_zero())
            arr.push_back(json{{"index", k + 1}, {"coeff", t.coeff(k).to_string()}});
    return arr;
}

inline json to_json(const PadeSystem& s) {
    json j;
    j["P"] = to_json(s.P);
    j["Qs"] = json::array();
    for (const auto& q : s.Qs) j["Qs"].push_back(to_json(q));
    j["weights"] = s.weights;
    j["degree_bound"] = s.degree_bound;
    j["deg_ok"] = s.deg_ok;
    j["verified"] = s.verified();
    j["series"] = json::array();
    for (size_t i = 0; i < s.checks.size(); ++i) {
        const auto& c = s.checks[i];
        j["series"].push_back(json{{"label", c.label},
                                   {"required_order", c.required},
                                   {"order", to_json(c.ord)},
                                   {"ok", c.ok},
                                   {"remainder_leading", remainder_leading_terms(s.remainders[i])}});
    }
    return j;
}

inline json to_json(const Diagnosis& d) {
    json j{{"match", d.match}, {"note", d.note}};
    if (d.ratio) j["ratio"] = d.ratio->to_string();
    return j;
}

inline json to_json(const DetReport& r) {
    json j;
    j["family"] = r.family;
    j["n"] = r.n;
    j["d"] = r.d;
    j["W"] = r.W;
    j["delta"] = r.delta.to_string();
    j["delta_degree"] = r.delta_degree;
    j["theta"] = r.theta.to_string();
    j["p_W"] = r.p_W.to_string();
    j["product_formula_rhs"] = r.prop_rhs.to_string();
    j["product_formula"] = to_json(r.prop);
    if (r.closed_form) j["closed_form"] = r.closed_form->to_string();
    j["closed_form_check"] = to_json(r.closed);
    j["match"] = r.closed.match;
    j["all_orders_verified"] = r.all_orders_verified;
    if (!r.matrix.empty()) {
        json m = json::array();
        for (const auto& row : r.matrix) {
            json jr = json::array();
            for (const auto& p : row) jr.push_back(to_json(p));
            m.push_back(jr);
        }
        j["matrix"] = m;
    }
    return j;
}

inline json to_json(const CriterionReport& r) {
    json j;
    j["u"] = r.u;
    j["alpha"] = r.alpha.to_string();
    j["place"] = r.place.to_string();
    j["epsilon"] = r.epsilon;
    j["precision_bits"] = static_cast<long>(r.precision_bits);
    j["applicable"] = r.applicable;
    j["A"] = r.A.to_string();
    j["B"] = r.B.to_string();
    j["U"] = r.U.to_string();
    j["V"] = r.V.to_string();
    if (r.applicable) {
        j["mu"] = r.mu.to_string();
        j["C"] = r.C.to_string();
    }
    return j;
}

inline json to_json(const std::vector<TableEntry>& table) {
    json arr = json::array();
    for (const auto& e : table)
        arr.push_back(json{{"u", e.u}, {"log_alpha_min", e.log_alpha_min}});
    return arr;
}

inline json to_json(const GrowthReport& r) {
    json j;
    j["u"] = r.u;
    j["bound"] = r.bound;
    j["points"] = json::array();
    for (const auto& [n, v] : r.points) j["points"].push_back(json{{"n", n}, {"value", v}});
    return j;
}

inline json to_json(const DecayReport& r) {
    json j;
    j["u"] = r.u;
    j["alpha"] = r.alpha.to_string();
    j["place"] = r.place.to_string();
    j["slope_R"] = r.slope_R;
    j["bound_R"] = r.bound_R;
    j["slope_P"] = r.slope_P;
    j["bound_P"] = r.bound_P;
    j["slack"] = r.slack;
    j["ok"] = r.ok;
    j["remainder_log"] = json::array();
    for (const auto& [n, v] : r.remainder_log)
        j["remainder_log"].push_back(json{{"N", n}, {"value", v}});
    j["p_log"] = json::array();
    for (const auto& [n, v] : r.p_log) j["p_log"].push_back(json{{"N", n}, {"value", v}});
    return j;
}

inline json to_json(const GopReport& r) {
    json j;
    j["residues"] = json::array();
    for (const auto& x : r.residues) j["residues"].push_back(x.to_string());
    if (r.zero_case_value) j["zero_case_value"] = r.zero_case_value->to_string();
    j["is_g_operator"] = r.is_g_operator;
    return j;
}

inline FamilySpec family_spec_from_json(const json& j) {
    FamilySpec spec;
    spec.family = j.at("family").get<std::string>();
    auto rat = [](const json& e) {
        return e.is_number_integer() ? Rational(e.get<long>())
                                     : Rational::from_string(e.get<std::string>());
    };
    auto rats = [&](const json& e) {
        std::vector<Rational> out;
        for (const auto& x : e) out.push_back(rat(x));
        return out;
    };
    if (j.contains("u")) spec.u = j.at("u").get<long>();
    if (j.contains("gammas")) spec.gammas = rats(j.at("gammas"));
    if (j.contains("deltas")) spec.deltas = rats(j.at("deltas"));
    if (j.contains("alphas")) spec.alphas = rats(j.at("alphas"));
    if (j.contains("gamma")) spec.gamma = rat(j.at("gamma"));
    if (j.contains("delta")) spec.delta = rat(j.at("delta"));
    if (j.contains("a")) spec.custom_a = j.at("a").get<std::string>();
    if (j.contains("b")) spec.custom_b = j.at("b").get<std::string>();
    return spec;
}

inline json to_json(const FamilySpec& s) {
    json j;
    j["family"] = s.family;
    if (s.family == "chebyshev") j["u"] = s.u;
    if (!s.gammas.empty()) {
        json arr = json::array();
        for (const auto& g : s.gammas) arr.push_back(g.to_string());
        j["gammas"] = arr;
    }
    if (!s.deltas.empty()) {
        json arr = json::array();
        for (const auto& d : s.deltas) arr.push_back(d.to_string());
        j["deltas"] = arr;
    }
    if (!s.alphas.empty()) {
        json arr = json::array();
        for (const auto& a : s.alphas) arr.push_back(a.to_string());
        j["alphas"] = arr;
    }
    if (s.family == "laguerre-delta" || s.family == "hermite") j["gamma"] = s.gamma.to_string();
    if (s.family == "laguerre-gamma") j["delta"] = s.delta.to_string();
    if (s.family == "custom") {
        j["a"] = s.custom_a;
        j["b"] = s.custom_b;
    }
    return j;
}

}  // namespace holopade
