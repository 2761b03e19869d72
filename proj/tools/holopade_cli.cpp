// Command-line front end: construct and verify approximant systems, run the
// determinant checks, evaluate the criterion constants and the threshold
// table, and emit machine-readable reports.

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "holopade/holopade.hpp"
#include "tomllite.hpp"

namespace hp = holopade;
using nlohmann::json;

namespace {

constexpr int kExitError = 1;
constexpr int kExitPZero = 2;       // construction collapse P = 0
constexpr int kExitHypothesis = 3;  // violated mathematical hypothesis

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

// Doubles are rendered as fixed-precision strings so reports are byte-stable.
json stable(const json& j) {
    if (j.is_object()) {
        json out = json::object();
        for (auto it = j.begin(); it != j.end(); ++it) out[it.key()] = stable(it.value());
        return out;
    }
    if (j.is_array()) {
        json out = json::array();
        for (const auto& e : j) out.push_back(stable(e));
        return out;
    }
    if (j.is_number_float()) return format_double(j.get<double>());
    return j;
}

void write_atomically(const std::string& path, const std::string& content) {
    namespace fs = std::filesystem;
    fs::path target(path);
    fs::path tmp = target;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot open " + tmp.string());
        out << content;
    }
    fs::rename(tmp, target);
}

struct OutputOptions {
    std::string out_path;
    std::string format = "json";
};

void emit(const json& report, const OutputOptions& opts, const std::string& markdown = "") {
    std::string payload;
    if (opts.format == "markdown" && !markdown.empty()) {
        payload = markdown;
    } else {
        payload = stable(report).dump(2);
        payload += "\n";
    }
    if (opts.out_path.empty())
        std::cout << payload;
    else
        write_atomically(opts.out_path, payload);
}

// Effective configuration: config-file values overridden by explicit flags.
class ConfigMerge {
  public:
    explicit ConfigMerge(const std::string& config_path) {
        if (!config_path.empty()) cfg_ = tomllite::parse_file(config_path);
    }

    template <class T>
    void put(CLI::Option* opt, const std::string& key, const T& flag_value) {
        if (opt != nullptr && opt->count() > 0)
            cfg_[key] = flag_value;
    }
    void put_strings(CLI::Option* opt, const std::string& key, const std::vector<std::string>& v) {
        if (opt != nullptr && opt->count() > 0) cfg_[key] = v;
    }

    const json& get() const { return cfg_; }

  private:
    json cfg_ = json::object();
};

hp::Rational rat(const json& v) {
    if (v.is_number_integer()) return hp::Rational(v.get<long>());
    if (v.is_string()) return hp::Rational::from_string(v.get<std::string>());
    throw std::invalid_argument("expected integer or rational string");
}

std::vector<hp::Rational> rat_list(const json& v) {
    std::vector<hp::Rational> out;
    for (const auto& e : v) out.push_back(rat(e));
    return out;
}

// Family spec from the effective config. The --gamma/--delta flags are lists;
// families with a scalar parameter take a single occurrence.
hp::FamilySpec family_from_config(const json& cfg) {
    hp::FamilySpec spec;
    spec.family = cfg.at("family").get<std::string>();
    auto single = [](const json& v, const char* what) {
        if (v.is_array()) {
            if (v.size() != 1)
                throw hp::HypothesisError(std::string("family expects exactly one ") + what);
            return rat(v.at(0));
        }
        return rat(v);
    };
    if (spec.family == "chebyshev") {
        spec.u = cfg.at("u").get<long>();
    } else if (spec.family == "bessel" || spec.family == "laguerre-gamma") {
        spec.gammas = rat_list(cfg.at("gamma"));
        if (spec.family == "laguerre-gamma")
            spec.delta = cfg.contains("delta") ? single(cfg.at("delta"), "delta") : hp::Rational(0);
    } else if (spec.family == "laguerre-delta" || spec.family == "hermite") {
        spec.deltas = rat_list(cfg.at("delta"));
        spec.gamma = cfg.contains("gamma") ? single(cfg.at("gamma"), "gamma") : hp::Rational(1);
    } else if (spec.family == "lerch") {
        spec.alphas = rat_list(cfg.at("alpha"));
        spec.gammas = rat_list(cfg.at("gamma"));
    } else if (spec.family == "custom") {
        spec.custom_a = cfg.at("a").get<std::string>();
        spec.custom_b = cfg.at("b").get<std::string>();
    } else {
        throw hp::HypothesisError("unknown family '" + spec.family + "'");
    }
    if (cfg.contains("d")) {
        long d = cfg.at("d").get<long>();
        long have = static_cast<long>(std::max({spec.gammas.size(), spec.deltas.size()}));
        if (spec.family != "chebyshev" && spec.family != "custom" && spec.family != "lerch" && d != have)
            throw hp::HypothesisError("d = " + std::to_string(d) + " does not match " +
                                      std::to_string(have) + " parameters");
    }
    return spec;
}

hp::PlaceQ place_from_string(const std::string& s) {
    if (s == "inf" || s == "infinity" || s == "oo") return hp::PlaceQ::inf();
    return hp::PlaceQ::prime(std::stol(s));
}

json base_report(const std::string& command, const json& cfg) {
    json j;
    j["schema_version"] = hp::kSchemaVersion;
    j["command"] = command;
    j["config"] = cfg;
    return j;
}

json construct_report(const json& cfg) {
    hp::FamilySpec spec = family_from_config(cfg);
    long n = cfg.at("n").get<long>();
    long h = cfg.contains("h") ? cfg.at("h").get<long>() : 0;
    hp::FamilyData fam = [&] {
        try {
            return hp::family_from_spec(spec);
        } catch (const hp::HypothesisError&) {
            // When the requested image is identically zero, report the
            // construction collapse rather than the stream-level failure.
            if (spec.family == "custom") {
                hp::FirstOrderData fod({hp::parse_poly(spec.custom_a, hp::Var::z)},
                                       hp::parse_poly(spec.custom_b, hp::Var::z));
                if (fod.w() >= 0) {
                    hp::DiffOp r = hp::rodrigues_op(fod, n, std::vector<long>(fod.a_factors.size(), 0),
                                                    hp::Var::z);
                    hp::RatFunc img = hp::apply(r, hp::Poly::monomial(1, static_cast<int>(h)));
                    if (img.is_zero())
                        throw hp::PZeroError(
                            "construct: P = 0; the Rodrigues image of z^" + std::to_string(h) +
                            " under the operator for a = " + spec.custom_a + ", b = " + spec.custom_b +
                            " vanishes, and the construction requires P(z) != 0");
                }
            }
            throw;
        }
    }();
    hp::PadeSystem sys = hp::construct_family_system(fam, n, h);
    json rep = base_report("construct", cfg);
    rep["family"] = hp::to_json(fam.spec);
    rep["n"] = n;
    rep["h"] = h;
    rep["system"] = hp::to_json(sys);
    return rep;
}

int cmd_construct(const json& cfg, const OutputOptions& out) {
    json rep = construct_report(cfg);
    emit(rep, out);
    return rep["system"]["verified"].get<bool>() ? 0 : kExitError;
}

int cmd_verify(const std::string& in_path, const OutputOptions& out) {
    std::ifstream in(in_path);
    if (!in) throw std::runtime_error("cannot open " + in_path);
    json stored = json::parse(in);
    json rep = construct_report(stored.at("config"));
    bool same = rep["system"]["P"] == stored["system"]["P"] &&
                rep["system"]["Qs"] == stored["system"]["Qs"];
    bool verified = rep["system"]["verified"].get<bool>();
    json vrep = base_report("verify", stored.at("config"));
    vrep["input"] = in_path;
    vrep["reproduced"] = same;
    vrep["verified"] = verified;
    emit(vrep, out);
    return (same && verified) ? 0 : kExitError;
}

int cmd_det(const json& cfg, const OutputOptions& out, bool dump_matrix) {
    hp::FamilySpec spec = family_from_config(cfg);
    hp::FamilyData fam = hp::family_from_spec(spec);
    long n = cfg.at("n").get<long>();
    hp::DetReport det = hp::build_delta(hp::DetSetup(fam, n), dump_matrix);
    json rep = base_report("det", cfg);
    rep["family"] = hp::to_json(fam.spec);
    rep["report"] = hp::to_json(det);
    emit(rep, out);
    return 0;
}

int cmd_criterion(const json& cfg, const OutputOptions& out, mpfr_prec_t prec) {
    long u = cfg.at("u").get<long>();
    hp::Rational alpha = rat(cfg.at("alpha"));
    hp::PlaceQ v0 = place_from_string(cfg.contains("place") ? cfg.at("place").get<std::string>() : "inf");
    double eps = cfg.contains("eps") ? cfg.at("eps").get<double>() : 0.1;
    hp::CriterionReport cr = hp::criterion_constants(u, alpha, v0, eps, prec);
    json rep = base_report("criterion", cfg);
    rep["report"] = hp::to_json(cr);
    emit(rep, out);
    return 0;
}

int cmd_table(const json& cfg, const OutputOptions& out, mpfr_prec_t prec) {
    long lo = 2, hi = 15;
    if (cfg.contains("u")) {
        std::string range = cfg.at("u").is_string() ? cfg.at("u").get<std::string>()
                                                    : std::to_string(cfg.at("u").get<long>());
        size_t dots = range.find("..");
        if (dots == std::string::npos) {
            lo = hi = std::stol(range);
        } else {
            lo = std::stol(range.substr(0, dots));
            hi = std::stol(range.substr(dots + 2));
        }
    }
    auto table = hp::threshold_table(lo, hi, prec);
    json rep = base_report("table", cfg);
    rep["entries"] = hp::to_json(table);
    std::ostringstream md;
    md << "| u | minimal log alpha |\n|---|---|\n";
    for (const auto& e : table) md << "| " << e.u << " | " << e.log_alpha_min << " |\n";
    emit(rep, out, md.str());
    return 0;
}

int cmd_gop(const json& cfg, const OutputOptions& out) {
    auto alphas = rat_list(cfg.at("alpha"));
    auto betas = cfg.contains("beta") ? rat_list(cfg.at("beta")) : std::vector<hp::Rational>{};
    hp::Rational gamma = cfg.contains("gamma") ? rat(cfg.at("gamma")) : hp::Rational(1);
    hp::GopReport g = hp::g_operator_check(alphas, betas, gamma);
    json rep = base_report("gop", cfg);
    rep["report"] = hp::to_json(g);
    emit(rep, out);
    return 0;
}

int cmd_growth(const json& cfg, const OutputOptions& out) {
    long u = cfg.at("u").get<long>();
    long n_max = cfg.contains("n-max") ? cfg.at("n-max").get<long>() : 300;
    hp::GrowthReport g = hp::denominator_growth(u, n_max);
    json rep = base_report("growth", cfg);
    rep["report"] = hp::to_json(g);
    emit(rep, out);
    return 0;
}

int cmd_decay(const json& cfg, const OutputOptions& out) {
    long u = cfg.at("u").get<long>();
    hp::Rational alpha = rat(cfg.at("alpha"));
    long n_min = cfg.contains("n-min") ? cfg.at("n-min").get<long>() : 2;
    long n_max = cfg.contains("n-max") ? cfg.at("n-max").get<long>() : 8;
    hp::PlaceQ place = place_from_string(cfg.contains("place") ? cfg.at("place").get<std::string>() : "inf");
    hp::DecayReport d = hp::decay_check(u, alpha, n_min, n_max, place);
    json rep = base_report("decay", cfg);
    rep["report"] = hp::to_json(d);
    emit(rep, out);
    return d.ok ? 0 : kExitError;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact Pade approximants of holonomic Laurent series"};
    app.require_subcommand(1);
    app.set_help_flag("--help", "Print help");  // frees --h for the column index

    std::string out_path, format = "json", config_path;
    long precision = 128;
    app.add_option("--out", out_path, "Write the report to this path (atomic)")->configurable(false);
    app.add_option("--format", format, "json or markdown")->configurable(false);
    app.add_option("--precision", precision, "Binary precision for real-valued quantities");
    app.add_option("--config", config_path, "TOML config file; flags override its keys");

    // shared family flags
    struct FamilyFlags {
        std::string family, a, b;
        long u = 0, d = 0, n = 0, h = 0;
        std::vector<std::string> gammas, deltas, alphas;
        CLI::Option *of = nullptr, *ou = nullptr, *od = nullptr, *on = nullptr, *oh = nullptr;
        CLI::Option *og = nullptr, *odl = nullptr, *oa = nullptr, *opa = nullptr, *opb = nullptr;
    };
    auto add_family_flags = [](CLI::App* cmd, FamilyFlags& f, bool with_nh) {
        cmd->set_help_flag("--help", "Print help");
        f.of = cmd->add_option("--family", f.family, "Family tag");
        f.ou = cmd->add_option("--u", f.u, "chebyshev stride");
        f.od = cmd->add_option("--d", f.d, "number of operators (consistency check)");
        f.og = cmd->add_option("--gamma", f.gammas, "gamma parameter(s)");
        f.odl = cmd->add_option("--delta", f.deltas, "delta parameter(s)");
        f.oa = cmd->add_option("--alpha", f.alphas, "alpha parameter(s)");
        f.opa = cmd->add_option("--a", f.a, "custom family: a(z)");
        f.opb = cmd->add_option("--b", f.b, "custom family: b(z)");
        if (with_nh) {
            f.on = cmd->add_option("--n", f.n, "approximation order");
            f.oh = cmd->add_option("--h", f.h, "column index h");
        }
    };
    auto merge_family = [](ConfigMerge& m, FamilyFlags& f, bool with_nh) {
        m.put(f.of, "family", f.family);
        m.put(f.ou, "u", f.u);
        m.put(f.od, "d", f.d);
        m.put_strings(f.og, "gamma", f.gammas);
        m.put_strings(f.odl, "delta", f.deltas);
        m.put_strings(f.oa, "alpha", f.alphas);
        m.put(f.opa, "a", f.a);
        m.put(f.opb, "b", f.b);
        if (with_nh) {
            m.put(f.on, "n", f.n);
            m.put(f.oh, "h", f.h);
        }
    };

    auto* c_construct = app.add_subcommand("construct", "Build a Pade-type system by the Rodrigues product");
    FamilyFlags ff_construct;
    add_family_flags(c_construct, ff_construct, true);

    auto* c_verify = app.add_subcommand("verify", "Re-derive and check a stored construct report");
    std::string verify_in;
    c_verify->add_option("--in", verify_in, "construct report to verify")->required();

    auto* c_det = app.add_subcommand("det", "Determinant of the h-indexed systems with closed-form checks");
    FamilyFlags ff_det;
    add_family_flags(c_det, ff_det, true);
    bool dump_matrix = false;
    c_det->add_flag("--dump-matrix", dump_matrix, "Include the polynomial matrix in the report");

    auto* c_criterion = app.add_subcommand("criterion", "Linear-independence criterion constants");
    long crit_u = 0;
    std::string crit_alpha, crit_place = "inf";
    double crit_eps = 0.1;
    auto* o_cu = c_criterion->add_option("--u", crit_u, "stride u >= 2");
    auto* o_ca = c_criterion->add_option("--alpha", crit_alpha, "evaluation point alpha");
    auto* o_cp = c_criterion->add_option("--place", crit_place, "inf or a prime p");
    auto* o_ce = c_criterion->add_option("--eps", crit_eps, "epsilon < V");

    auto* c_table = app.add_subcommand("table", "Minimal log|alpha| table");
    std::string table_range;
    auto* o_tu = c_table->add_option("--u", table_range, "range, e.g. 2..15");

    auto* c_gop = app.add_subcommand("gop", "Residue test for the controlled-growth operator class");
    std::vector<std::string> gop_alphas, gop_betas;
    std::string gop_gamma = "1";
    auto* o_ga = c_gop->add_option("--alpha", gop_alphas, "roots of a");
    auto* o_gb = c_gop->add_option("--beta", gop_betas, "roots of b");
    auto* o_gg = c_gop->add_option("--gamma", gop_gamma, "leading factor of b");

    auto* c_growth = app.add_subcommand("growth", "Exact denominator growth against the asymptotic bound");
    long growth_u = 2, growth_nmax = 300;
    auto* o_wu = c_growth->add_option("--u", growth_u, "stride u >= 2");
    auto* o_wn = c_growth->add_option("--n-max", growth_nmax, "largest index");

    auto* c_decay = app.add_subcommand("decay", "Remainder/approximant decay slopes at alpha");
    long decay_u = 2, decay_nmin = 2, decay_nmax = 8;
    std::string decay_alpha, decay_place = "inf";
    auto* o_du = c_decay->add_option("--u", decay_u, "stride u >= 2");
    auto* o_da = c_decay->add_option("--alpha", decay_alpha, "evaluation point");
    auto* o_dl = c_decay->add_option("--n-min", decay_nmin, "first N");
    auto* o_dh = c_decay->add_option("--n-max", decay_nmax, "last N");
    auto* o_dp = c_decay->add_option("--place", decay_place, "inf or a prime p");

    for (CLI::App* sub : {c_construct, c_verify, c_det, c_criterion, c_table, c_gop, c_growth, c_decay})
        sub->fallthrough();  // global flags may follow the subcommand

    CLI11_PARSE(app, argc, argv);

    OutputOptions out{out_path, format};
    try {
        ConfigMerge merged(config_path);
        if (c_construct->parsed()) {
            merge_family(merged, ff_construct, true);
            return cmd_construct(merged.get(), out);
        }
        if (c_verify->parsed()) return cmd_verify(verify_in, out);
        if (c_det->parsed()) {
            merge_family(merged, ff_det, true);
            return cmd_det(merged.get(), out, dump_matrix);
        }
        if (c_criterion->parsed()) {
            merged.put(o_cu, "u", crit_u);
            merged.put(o_ca, "alpha", crit_alpha);
            merged.put(o_cp, "place", crit_place);
            merged.put(o_ce, "eps", crit_eps);
            return cmd_criterion(merged.get(), out, precision);
        }
        if (c_table->parsed()) {
            merged.put(o_tu, "u", table_range);
            return cmd_table(merged.get(), out, precision);
        }
        if (c_gop->parsed()) {
            merged.put_strings(o_ga, "alpha", gop_alphas);
            merged.put_strings(o_gb, "beta", gop_betas);
            merged.put(o_gg, "gamma", gop_gamma);
            return cmd_gop(merged.get(), out);
        }
        if (c_growth->parsed()) {
            merged.put(o_wu, "u", growth_u);
            merged.put(o_wn, "n-max", growth_nmax);
            return cmd_growth(merged.get(), out);
        }
        if (c_decay->parsed()) {
            merged.put(o_du, "u", decay_u);
            merged.put(o_da, "alpha", decay_alpha);
            merged.put(o_dl, "n-min", decay_nmin);
            merged.put(o_dh, "n-max", decay_nmax);
            merged.put(o_dp, "place", decay_place);
            return cmd_decay(merged.get(), out);
        }
    } catch (const hp::PZeroError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitPZero;
    } catch (const hp::HypothesisError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitHypothesis;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitError;
    }
    return kExitError;
}
