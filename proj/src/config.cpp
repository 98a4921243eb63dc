#include "sisfront/config.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

namespace sisfront {

using nlohmann::json;

namespace {

const std::set<std::string> kKnownKeys = {
    // model
    "d_I", "alpha", "mu", "n_star", "h0", "beta_expr", "gamma_expr", "beta_inf",
    "gamma_inf", "i0_expr",
    // numerics
    "dt", "n", "t_end", "output_stride",
    // solver tolerances
    "newton_tol", "newton_max_iter", "outer_rel_tol", "outer_max_iter", "clip_tol",
    "max_dt_halvings", "peclet_limit",
    // spectral
    "spectral_n", "spectral_richardson",
    // classification
    "tol_front", "tol_mass", "trailing_fraction", "min_horizon",
    // threshold
    "bracket_lo", "bracket_hi", "width_goal", "horizon_cap", "workers",
    // equilibrium
    "equilibrium_L", "equilibrium_n",
    // speed fit / attractor window
    "x_far", "fit_fraction", "window_halfwidth"};

double get_number(const json& j, const std::string& key, double fallback) {
    if (!j.contains(key)) return fallback;
    if (!j[key].is_number())
        throw ValidationError("config key \"" + key + "\" must be a number");
    return j[key].get<double>();
}

int get_int(const json& j, const std::string& key, int fallback) {
    if (!j.contains(key)) return fallback;
    if (!j[key].is_number_integer())
        throw ValidationError("config key \"" + key + "\" must be an integer");
    return j[key].get<int>();
}

std::string get_expr(const json& j, const std::string& key) {
    if (!j.contains(key))
        throw ValidationError("config is missing required key \"" + key + "\"");
    if (!j[key].is_string())
        throw ValidationError("config key \"" + key + "\" must be a string expression");
    return j[key].get<std::string>();
}

double get_required(const json& j, const std::string& key) {
    if (!j.contains(key))
        throw ValidationError("config is missing required key \"" + key + "\"");
    if (!j[key].is_number())
        throw ValidationError("config key \"" + key + "\" must be a number");
    return j[key].get<double>();
}

}  // namespace

RunConfig parse_config(const std::string& json_text) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw ValidationError(std::string("config is not valid JSON: ") + e.what());
    }
    if (!j.is_object()) throw ValidationError("config must be a JSON object");

    for (const auto& [key, value] : j.items()) {
        (void)value;
        if (!kKnownKeys.count(key))
            throw ValidationError("unknown config key \"" + key + "\"");
    }

    RunConfig cfg;
    cfg.source_text = json_text;

    cfg.model.d_I = get_required(j, "d_I");
    cfg.model.alpha = get_required(j, "alpha");
    cfg.model.mu = get_required(j, "mu");
    cfg.model.n_star = get_required(j, "n_star");
    cfg.model.h0 = get_required(j, "h0");
    cfg.model.beta_inf = get_required(j, "beta_inf");
    cfg.model.gamma_inf = get_required(j, "gamma_inf");
    cfg.model.beta = Expression::parse(get_expr(j, "beta_expr"));
    cfg.model.gamma = Expression::parse(get_expr(j, "gamma_expr"));
    cfg.model.i0 = Expression::parse(get_expr(j, "i0_expr"));

    cfg.run.dt = get_number(j, "dt", cfg.run.dt);
    cfg.run.n = get_int(j, "n", cfg.run.n);
    cfg.run.t_end = get_number(j, "t_end", cfg.run.t_end);
    cfg.run.output_stride = get_int(j, "output_stride", cfg.run.output_stride);

    auto& sol = cfg.run.solver;
    sol.newton_tol = get_number(j, "newton_tol", sol.newton_tol);
    sol.newton_max_iter = get_int(j, "newton_max_iter", sol.newton_max_iter);
    sol.outer_rel_tol = get_number(j, "outer_rel_tol", sol.outer_rel_tol);
    sol.outer_max_iter = get_int(j, "outer_max_iter", sol.outer_max_iter);
    sol.clip_tol = get_number(j, "clip_tol", sol.clip_tol);
    sol.max_dt_halvings = get_int(j, "max_dt_halvings", sol.max_dt_halvings);
    sol.peclet_limit = get_number(j, "peclet_limit", sol.peclet_limit);

    cfg.spectral.n = get_int(j, "spectral_n", cfg.spectral.n);
    if (j.contains("spectral_richardson")) {
        if (!j["spectral_richardson"].is_boolean())
            throw ValidationError("config key \"spectral_richardson\" must be a boolean");
        cfg.spectral.richardson = j["spectral_richardson"].get<bool>();
    }

    cfg.criteria.tol_front_rel = get_number(j, "tol_front", cfg.criteria.tol_front_rel);
    cfg.criteria.tol_mass_rel = get_number(j, "tol_mass", cfg.criteria.tol_mass_rel);
    cfg.criteria.trailing_fraction =
        get_number(j, "trailing_fraction", cfg.criteria.trailing_fraction);
    cfg.criteria.min_horizon = get_number(j, "min_horizon", cfg.criteria.min_horizon);

    cfg.bracket_lo = get_number(j, "bracket_lo", cfg.bracket_lo);
    cfg.bracket_hi = get_number(j, "bracket_hi", cfg.bracket_hi);
    cfg.width_goal = get_number(j, "width_goal", cfg.width_goal);
    cfg.horizon_cap = get_number(j, "horizon_cap", cfg.horizon_cap);
    cfg.workers = get_int(j, "workers", cfg.workers);

    cfg.equilibrium_L = get_number(j, "equilibrium_L", cfg.equilibrium_L);
    cfg.equilibrium_n = get_int(j, "equilibrium_n", cfg.equilibrium_n);

    cfg.x_far = get_number(j, "x_far", cfg.x_far);
    cfg.fit_fraction = get_number(j, "fit_fraction", cfg.fit_fraction);
    cfg.window_halfwidth = get_number(j, "window_halfwidth", cfg.window_halfwidth);

    if (!(cfg.run.dt > 0.0)) throw ValidationError("dt must be positive");
    if (!(cfg.run.t_end > 0.0)) throw ValidationError("t_end must be positive");
    if (cfg.run.n < 16) throw ValidationError("n must be at least 16");
    if (cfg.run.output_stride < 1) throw ValidationError("output_stride must be >= 1");
    if (cfg.workers < 1) throw ValidationError("workers must be >= 1");

    return cfg;
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open config file: " + path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_config(buffer.str());
}

std::string config_hash(const std::string& text) {
    // FNV-1a, 64-bit
    unsigned long long hash = 1469598103934665603ULL;
    for (unsigned char c : text) {
        hash ^= c;
        hash *= 1099511628211ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", hash);
    return buf;
}

ModelSpec reference_model(double alpha, double mu) {
    ModelSpec spec;
    spec.d_I = 4.0;
    spec.alpha = alpha;
    spec.mu = mu;
    spec.n_star = 2.0;
    spec.h0 = 1.0;
    spec.beta = Expression::parse("4 + 2*sin(x)/(1+x^2)");
    spec.gamma = Expression::parse("1 + cos(x)/(1+x^2)");
    spec.i0 = Expression::parse("cos(pi*x/2)");
    spec.beta_inf = 4.0;
    spec.gamma_inf = 1.0;
    return spec;
}

}  // namespace sisfront
