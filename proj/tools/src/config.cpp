#include "fracid_cli/config.hpp"

#include <fstream>
#include <set>

#include "fracid/errors.hpp"

namespace fracid::cli {

using nlohmann::json;

namespace {

void check_keys(const json& obj, const std::set<std::string>& allowed, const std::string& where) {
    if (!obj.is_object()) throw InputError(where + ": expected an object");
    for (const auto& [key, value] : obj.items())
        if (!allowed.count(key)) throw InputError(where + ": unknown key '" + key + "'");
}

double get_number(const json& obj, const char* key, double fallback, const std::string& where) {
    if (!obj.contains(key) || obj.at(key).is_null()) return fallback;
    if (!obj.at(key).is_number()) throw InputError(where + "." + key + ": expected a number");
    return obj.at(key).get<double>();
}

int get_int(const json& obj, const char* key, int fallback, const std::string& where) {
    if (!obj.contains(key) || obj.at(key).is_null()) return fallback;
    if (!obj.at(key).is_number_integer()) throw InputError(where + "." + key + ": expected an integer");
    return obj.at(key).get<int>();
}

std::string get_string(const json& obj, const char* key, const std::string& fallback, const std::string& where) {
    if (!obj.contains(key) || obj.at(key).is_null()) return fallback;
    if (!obj.at(key).is_string()) throw InputError(where + "." + key + ": expected a string");
    return obj.at(key).get<std::string>();
}

bool get_bool(const json& obj, const char* key, bool fallback, const std::string& where) {
    if (!obj.contains(key) || obj.at(key).is_null()) return fallback;
    if (!obj.at(key).is_boolean()) throw InputError(where + "." + key + ": expected true or false");
    return obj.at(key).get<bool>();
}

std::optional<double> get_optional(const json& obj, const char* key, std::optional<double> fallback,
                                   const std::string& where) {
    if (!obj.contains(key)) return fallback;
    if (obj.at(key).is_null()) return std::nullopt;
    if (!obj.at(key).is_number()) throw InputError(where + "." + key + ": expected a number or null");
    return obj.at(key).get<double>();
}

GeometricGrid parse_grid(const json& obj, GeometricGrid g, const std::string& where) {
    check_keys(obj, {"start", "ratio", "count"}, where);
    g.start = get_number(obj, "start", g.start, where);
    g.ratio = get_number(obj, "ratio", g.ratio, where);
    g.count = get_int(obj, "count", g.count, where);
    return g;
}

// Grids whose start defaults to the second-to-last observation time.
void parse_anchored(const json& obj, std::optional<double>& start, double& ratio, int& count, const std::string& where) {
    check_keys(obj, {"start", "ratio", "count"}, where);
    start = get_optional(obj, "start", start, where);
    ratio = get_number(obj, "ratio", ratio, where);
    count = get_int(obj, "count", count, where);
}

json opt_to_json(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

json grid_to_json(const GeometricGrid& g) { return {{"start", g.start}, {"ratio", g.ratio}, {"count", g.count}}; }

NoiseKind parse_noise_kind(const std::string& s) {
    if (s == "none") return NoiseKind::None;
    if (s == "ftn") return NoiseKind::FTN;
    if (s == "stn") return NoiseKind::STN;
    if (s == "ttn") return NoiseKind::TTN;
    throw InputError("noise.kind: expected none, ftn, stn or ttn");
}

const char* noise_kind_name(NoiseKind k) {
    switch (k) {
        case NoiseKind::None: return "none";
        case NoiseKind::FTN: return "ftn";
        case NoiseKind::STN: return "stn";
        case NoiseKind::TTN: return "ttn";
    }
    return "none";
}

NoiseSign parse_noise_sign(const std::string& s) {
    if (s == "plus") return NoiseSign::Plus;
    if (s == "minus") return NoiseSign::Minus;
    if (s == "alternating") return NoiseSign::Alternating;
    throw InputError("noise.sign: expected plus, minus or alternating");
}

const char* noise_sign_name(NoiseSign s) {
    switch (s) {
        case NoiseSign::Plus: return "plus";
        case NoiseSign::Minus: return "minus";
        case NoiseSign::Alternating: return "alternating";
    }
    return "plus";
}

TermConfig parse_term(const json& obj, const std::string& where) {
    check_keys(obj, {"order", "coefficient", "sign"}, where);
    TermConfig t;
    if (!obj.contains("order")) throw InputError(where + ".order: required");
    const auto& order = obj.at("order");
    if (order.is_string()) {
        const auto s = order.get<std::string>();
        if (s == "lead")
            t.kind = OrderKind::UnknownLead;
        else if (s == "second")
            t.kind = OrderKind::UnknownSecond;
        else
            throw InputError(where + ".order: expected a number, \"lead\" or \"second\"");
    } else if (order.is_number()) {
        t.order = order.get<double>();
    } else {
        throw InputError(where + ".order: expected a number, \"lead\" or \"second\"");
    }
    if (!obj.contains("coefficient")) throw InputError(where + ".coefficient: required");
    const auto& coef = obj.at("coefficient");
    if (coef.is_string()) {
        if (coef.get<std::string>() != "unknown") throw InputError(where + ".coefficient: expected pairs or \"unknown\"");
    } else {
        t.coefficient = series_from_json(coef, where + ".coefficient");
    }
    t.sign = get_number(obj, "sign", 1.0, where);
    return t;
}

json term_to_json(const TermConfig& t) {
    json j;
    if (t.kind == OrderKind::UnknownLead)
        j["order"] = "lead";
    else if (t.kind == OrderKind::UnknownSecond)
        j["order"] = "second";
    else
        j["order"] = t.order;
    j["coefficient"] = t.coefficient ? series_to_json(*t.coefficient) : json("unknown");
    j["sign"] = t.sign;
    return j;
}

}  // namespace

PowerSeries series_from_json(const json& j, const std::string& where) {
    if (j.is_number()) return PowerSeries::constant(j.get<double>());
    if (!j.is_array()) throw InputError(where + ": expected a list of [coefficient, exponent] pairs");
    std::vector<Term> terms;
    for (const auto& pair : j) {
        if (!pair.is_array() || pair.size() != 2 || !pair[0].is_number() || !pair[1].is_number())
            throw InputError(where + ": each entry must be a [coefficient, exponent] pair");
        terms.push_back({pair[0].get<double>(), pair[1].get<double>()});
    }
    try {
        return PowerSeries(std::move(terms));
    } catch (const DomainError& e) {
        throw InputError(where + ": " + e.what());
    }
}

json series_to_json(const PowerSeries& s) {
    json out = json::array();
    for (const auto& t : s.terms()) out.push_back({t.coef, t.exponent});
    return out;
}

RunConfig parse_config(const json& j) {
    RunConfig cfg;
    check_keys(j, {"model", "recon", "noise", "simulate", "io"}, "config");

    if (j.contains("model")) {
        const auto& m = j.at("model");
        const std::string w = "model";
        check_keys(m, {"example", "nu", "gamma", "rho_unknown", "fdo_type", "terms", "a0", "b0", "kernel", "gbar",
                       "boundary_trace", "d", "psi0", "psi_true"},
                   w);
        auto& mc = cfg.model;
        mc.example = get_string(m, "example", mc.example, w);
        if (mc.example != "example1" && mc.example != "example2" && mc.example != "custom")
            throw InputError("model.example: expected example1, example2 or custom");
        mc.nu = get_number(m, "nu", mc.nu, w);
        mc.gamma = get_number(m, "gamma", mc.gamma, w);
        mc.rho_unknown = get_bool(m, "rho_unknown", mc.rho_unknown, w);
        const std::set<std::string> custom_only = {"fdo_type", "terms", "a0", "b0", "kernel", "gbar",
                                                   "boundary_trace", "d", "psi0", "psi_true"};
        if (mc.example != "custom") {
            for (const auto& key : custom_only)
                if (m.contains(key)) throw InputError("model." + key + ": only allowed with example = custom");
        } else {
            const auto type = get_string(m, "fdo_type", "I", w);
            if (type != "I" && type != "II") throw InputError("model.fdo_type: expected \"I\" or \"II\"");
            mc.fdo_type = type == "I" ? FdoType::TypeI : FdoType::TypeII;
            if (!m.contains("terms") || !m.at("terms").is_array()) throw InputError("model.terms: required list");
            for (std::size_t i = 0; i < m.at("terms").size(); ++i)
                mc.terms.push_back(parse_term(m.at("terms")[i], "model.terms[" + std::to_string(i) + "]"));
            if (m.contains("a0")) mc.a0 = series_from_json(m.at("a0"), "model.a0");
            if (m.contains("b0")) mc.b0 = series_from_json(m.at("b0"), "model.b0");
            if (m.contains("kernel") && !m.at("kernel").is_null())
                mc.kernel = series_from_json(m.at("kernel"), "model.kernel");
            if (!m.contains("gbar")) throw InputError("model.gbar: required for custom models");
            const auto& g = m.at("gbar");
            if (g.is_object()) {
                check_keys(g, {"t", "values"}, "model.gbar");
                try {
                    mc.gbar_t = g.at("t").get<std::vector<double>>();
                    mc.gbar_values = g.at("values").get<std::vector<double>>();
                } catch (const json::exception&) {
                    throw InputError("model.gbar: table needs numeric lists 't' and 'values'");
                }
            } else {
                mc.gbar_series = series_from_json(g, "model.gbar");
            }
            if (m.contains("boundary_trace")) mc.boundary_trace = series_from_json(m.at("boundary_trace"), "model.boundary_trace");
            mc.d = get_int(m, "d", 0, w);
            if (!m.contains("psi0")) throw InputError("model.psi0: required for custom models");
            mc.psi0 = get_number(m, "psi0", 0.0, w);
            if (m.contains("psi_true") && !m.at("psi_true").is_null())
                mc.psi_true = series_from_json(m.at("psi_true"), "model.psi_true");
        }
    }

    if (j.contains("recon")) {
        const auto& r = j.at("recon");
        const std::string w = "recon";
        check_keys(r, {"betas", "jacobi_count", "weight_exponent", "sigma", "tbar", "sigma_hat", "that", "lambda", "t0",
                       "hat_spread", "strategy", "normalize_type2_lead", "rcond"},
                   w);
        auto& rc = cfg.recon;
        if (r.contains("betas")) {
            const auto& b = r.at("betas");
            if (b.is_number_integer())
                rc.betas = uniform_betas(b.get<int>());
            else if (b.is_array())
                rc.betas = b.get<std::vector<double>>();
            else
                throw InputError("recon.betas: expected a list of exponents or a count");
        }
        rc.jacobi_count = get_int(r, "jacobi_count", rc.jacobi_count, w);
        rc.weight_exponent = get_number(r, "weight_exponent", rc.weight_exponent, w);
        if (r.contains("sigma")) rc.sigma = parse_grid(r.at("sigma"), rc.sigma, "recon.sigma");
        if (r.contains("sigma_hat")) rc.sigma_hat = parse_grid(r.at("sigma_hat"), rc.sigma_hat, "recon.sigma_hat");
        if (r.contains("tbar")) parse_anchored(r.at("tbar"), rc.tbar_start, rc.tbar_ratio, rc.tbar_count, "recon.tbar");
        if (r.contains("that")) parse_anchored(r.at("that"), rc.that_start, rc.that_ratio, rc.that_count, "recon.that");
        rc.lambda = get_number(r, "lambda", rc.lambda, w);
        rc.t0 = get_optional(r, "t0", rc.t0, w);
        rc.hat_spread = get_number(r, "hat_spread", rc.hat_spread, w);
        const auto strategy = get_string(r, "strategy", "second", w);
        if (strategy != "first" && strategy != "second") throw InputError("recon.strategy: expected first or second");
        rc.strategy = strategy == "first" ? Strategy::First : Strategy::Second;
        rc.normalize_type2_lead = get_bool(r, "normalize_type2_lead", rc.normalize_type2_lead, w);
        rc.rcond = get_number(r, "rcond", rc.rcond, w);
    }

    if (j.contains("noise")) {
        const auto& n = j.at("noise");
        const std::string w = "noise";
        check_keys(n, {"kind", "delta", "nu1_for_shape", "sign"}, w);
        cfg.noise.kind = parse_noise_kind(get_string(n, "kind", "none", w));
        cfg.noise.delta = get_number(n, "delta", cfg.noise.delta, w);
        if (n.contains("nu1_for_shape") && !n.at("nu1_for_shape").is_null()) {
            cfg.noise.nu1_for_shape = get_number(n, "nu1_for_shape", 0.5, w);
            cfg.noise_shape_explicit = true;
        }
        cfg.noise.sign = parse_noise_sign(get_string(n, "sign", "plus", w));
    }

    if (j.contains("simulate")) {
        const auto& s = j.at("simulate");
        const std::string w = "simulate";
        check_keys(s, {"source", "times", "nx", "nt"}, w);
        cfg.simulate.source = get_string(s, "source", cfg.simulate.source, w);
        if (cfg.simulate.source != "analytic" && cfg.simulate.source != "direct")
            throw InputError("simulate.source: expected analytic or direct");
        if (s.contains("times")) {
            check_keys(s.at("times"), {"step", "count"}, "simulate.times");
            cfg.simulate.step = get_number(s.at("times"), "step", cfg.simulate.step, "simulate.times");
            cfg.simulate.count = get_int(s.at("times"), "count", cfg.simulate.count, "simulate.times");
        }
        cfg.simulate.nx = get_int(s, "nx", cfg.simulate.nx, w);
        cfg.simulate.nt = get_int(s, "nt", cfg.simulate.nt, w);
    }

    if (j.contains("io")) {
        const auto& io = j.at("io");
        check_keys(io, {"precision", "plot_points"}, "io");
        cfg.io.precision = get_int(io, "precision", cfg.io.precision, "io");
        cfg.io.plot_points = get_int(io, "plot_points", cfg.io.plot_points, "io");
        if (cfg.io.precision < 1 || cfg.io.precision > 17) throw InputError("io.precision: expected 1..17");
        if (cfg.io.plot_points < 2) throw InputError("io.plot_points: expected at least 2");
    }

    try {
        cfg.recon.validate();
    } catch (const ConfigError& e) {
        throw InputError(e.what());
    }
    return cfg;
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open config file '" + path + "'");
    json j;
    try {
        in >> j;
    } catch (const json::parse_error& e) {
        throw InputError("config '" + path + "': " + e.what());
    }
    return parse_config(j);
}

json to_json(const RunConfig& cfg) {
    json j;
    const auto& mc = cfg.model;
    json m = {{"example", mc.example}};
    if (mc.example == "custom") {
        m["fdo_type"] = mc.fdo_type == FdoType::TypeI ? "I" : "II";
        m["terms"] = json::array();
        for (const auto& t : mc.terms) m["terms"].push_back(term_to_json(t));
        m["a0"] = series_to_json(mc.a0);
        m["b0"] = series_to_json(mc.b0);
        m["kernel"] = mc.kernel ? series_to_json(*mc.kernel) : json(nullptr);
        if (mc.gbar_series)
            m["gbar"] = series_to_json(*mc.gbar_series);
        else
            m["gbar"] = {{"t", mc.gbar_t}, {"values", mc.gbar_values}};
        m["boundary_trace"] = series_to_json(mc.boundary_trace);
        m["d"] = mc.d;
        m["psi0"] = mc.psi0;
        m["psi_true"] = mc.psi_true ? series_to_json(*mc.psi_true) : json(nullptr);
    } else {
        m["nu"] = mc.nu;
        if (mc.example == "example1") m["rho_unknown"] = mc.rho_unknown;
        if (mc.example == "example2") m["gamma"] = mc.gamma;
    }
    j["model"] = m;

    const auto& rc = cfg.recon;
    j["recon"] = {
        {"betas", rc.betas},
        {"jacobi_count", rc.jacobi_count},
        {"weight_exponent", rc.weight_exponent},
        {"sigma", grid_to_json(rc.sigma)},
        {"tbar", {{"start", opt_to_json(rc.tbar_start)}, {"ratio", rc.tbar_ratio}, {"count", rc.tbar_count}}},
        {"sigma_hat", grid_to_json(rc.sigma_hat)},
        {"that", {{"start", opt_to_json(rc.that_start)}, {"ratio", rc.that_ratio}, {"count", rc.that_count}}},
        {"lambda", rc.lambda},
        {"t0", opt_to_json(rc.t0)},
        {"hat_spread", rc.hat_spread},
        {"strategy", rc.strategy == Strategy::First ? "first" : "second"},
        {"normalize_type2_lead", rc.normalize_type2_lead},
        {"rcond", rc.rcond},
    };
    const NoiseSpec noise = effective_noise(cfg);
    j["noise"] = {{"kind", noise_kind_name(noise.kind)},
                  {"delta", noise.delta},
                  {"nu1_for_shape", noise.nu1_for_shape},
                  {"sign", noise_sign_name(noise.sign)}};
    j["simulate"] = {{"source", cfg.simulate.source},
                     {"times", {{"step", cfg.simulate.step}, {"count", cfg.simulate.count}}},
                     {"nx", cfg.simulate.nx},
                     {"nt", cfg.simulate.nt}};
    j["io"] = {{"precision", cfg.io.precision}, {"plot_points", cfg.io.plot_points}};
    return j;
}

Problem builtin_problem(const RunConfig& cfg) {
    const auto& mc = cfg.model;
    try {
        if (mc.example == "example1") return example1_truth(mc.nu, mc.rho_unknown);
        if (mc.example == "example2") return example2_truth(mc.nu, mc.gamma);
    } catch (const DomainError& e) {
        throw InputError(std::string("model: ") + e.what());
    }
    throw InputError("model: not a built-in example");
}

ModelSpec build_model(const RunConfig& cfg) {
    const auto& mc = cfg.model;
    if (mc.example != "custom") return builtin_problem(cfg).model;
    ModelSpec m;
    m.op.type = mc.fdo_type;
    for (const auto& t : mc.terms) m.op.terms.push_back({t.kind, t.order, t.coefficient, t.sign});
    m.a0 = mc.a0;
    m.b0 = mc.b0;
    m.kernel = mc.kernel;
    try {
        m.gbar = mc.gbar_series ? TimeFunction(*mc.gbar_series) : TimeFunction::tabulated(mc.gbar_t, mc.gbar_values);
        m.boundary_trace = mc.boundary_trace;
        m.d = mc.d;
        m.psi0 = mc.psi0;
        m.validate();
    } catch (const ConfigError& e) {
        throw InputError(std::string("model: ") + e.what());
    }
    return m;
}

std::optional<PowerSeries> truth_psi(const RunConfig& cfg) {
    if (cfg.model.example == "custom") return cfg.model.psi_true;
    return builtin_problem(cfg).psi;
}

NoiseSpec effective_noise(const RunConfig& cfg) {
    NoiseSpec n = cfg.noise;
    if (!cfg.noise_shape_explicit) n.nu1_for_shape = cfg.model.example == "custom" ? 0.5 : cfg.model.nu;
    return n;
}

}  // namespace fracid::cli
