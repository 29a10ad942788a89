#include "pollaczek/report.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>
#include <thread>

#include "json.hpp"
#include "pollaczek/approx.hpp"
#include "pollaczek/zeta.hpp"

namespace pollaczek {

using nlohmann::json;

namespace {

const std::pair<const char*, const char*> kPresets[] = {
#include "presets_data.inc"
};

[[noreturn]] void config_error(const std::string& what) { raise(ErrorCode::ConfigError, what); }

DistributionSpec spec_from_json(const json& j) {
    if (!j.is_object() || !j.contains("kind")) config_error("distribution needs a \"kind\"");
    const std::string kind = j.at("kind").get<std::string>();
    try {
        if (kind == "gamma") return gamma_spec(j.at("shape").get<double>(), j.at("scale").get<double>());
        if (kind == "exponential") return exponential_spec();
        if (kind == "erlang") return erlang_spec(j.at("stages").get<int>());
        if (kind == "bates") return bates_spec(j.at("points").get<int>(), j.at("half_width").get<double>());
        if (kind == "lattice")
            return lattice_spec(j.at("points").get<int>(), j.at("half_width").get<double>());
        if (kind == "two_point") return two_point_spec(j.at("low").get<double>(), j.at("high").get<double>());
        if (kind == "inverse_gaussian") return inverse_gaussian_spec(j.at("shape").get<double>());
        if (kind == "deterministic") return deterministic_spec();
    } catch (const json::exception& e) {
        config_error("bad parameters for distribution kind \"" + kind + "\": " + e.what());
    }
    config_error("unknown distribution kind \"" + kind + "\"");
}

Regime regime_from_name(std::string name) {
    std::replace(name.begin(), name.end(), '-', '_');
    if (name == "classical") return Regime::Classical;
    if (name == "nd_kingman") return Regime::NdKingman;
    if (name == "nd_gaussian") return Regime::NdGaussian;
    config_error("unknown regime \"" + name + "\"");
}

const char* regime_name(Regime r) {
    switch (r) {
        case Regime::Classical: return "classical";
        case Regime::NdKingman: return "nd_kingman";
        default: return "nd_gaussian";
    }
}

const std::vector<std::string> kKnownColumns = {"exact", "asymp", "asymp_refined", "simulation"};

template <class F>
void parallel_for(int njobs, int threads, F&& f) {
    threads = std::max(1, std::min({threads, njobs, int(std::thread::hardware_concurrency())}));
    if (threads <= 1) {
        for (int i = 0; i < njobs; ++i) f(i);
        return;
    }
    std::atomic<int> next{0};
    std::vector<std::thread> pool;
    pool.reserve(size_t(threads));
    for (int t = 0; t < threads; ++t)
        pool.emplace_back([&] {
            for (int i; (i = next.fetch_add(1)) < njobs;) f(i);
        });
    for (auto& th : pool) th.join();
}

std::string fixed(double v, int decimals) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
    return buf;
}

std::string full(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        out += c;
        if (c == '"') out += '"';
    }
    out += '"';
    return out;
}

std::string param_label(Regime r, double p) {
    if (r == Regime::Classical) {
        char buf[48];
        std::snprintf(buf, sizeof buf, "alpha=%g", p);
        return buf;
    }
    char buf[48];
    std::snprintf(buf, sizeof buf, "n=%ld", long(p));
    return buf;
}

std::string column_display(Regime r, const std::string& c) {
    if (c == "exact") return "Exact";
    if (c == "asymp") return r == Regime::NdGaussian ? "Asymp 1" : "Asymp";
    if (c == "asymp_refined") return "Asymp 2";
    if (c == "simulation") return "Sim";
    return c;
}

std::vector<double> moments_tail(const MomentVector& m) {
    return {m.values.begin() + 1, m.values.end()};
}

}  // namespace

DistributionSpec spec_from_json_text(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        config_error(std::string("invalid JSON: ") + e.what());
    }
    return spec_from_json(j);
}

namespace {

json spec_to_json(const DistributionSpec& spec) {
    json j;
    std::visit(
        [&j](const auto& s) {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, GammaSpec>)
                j = {{"kind", "gamma"}, {"shape", s.shape}, {"scale", s.scale}};
            else if constexpr (std::is_same_v<T, BatesSpec>)
                j = {{"kind", "bates"}, {"points", s.points}, {"half_width", s.half_width}};
            else if constexpr (std::is_same_v<T, LatticeSpec>)
                j = {{"kind", "lattice"}, {"points", s.points}, {"half_width", s.half_width}};
            else if constexpr (std::is_same_v<T, TwoPointSpec>)
                j = {{"kind", "two_point"}, {"low", s.low}, {"high", s.high}};
            else if constexpr (std::is_same_v<T, InverseGaussianSpec>)
                j = {{"kind", "inverse_gaussian"}, {"shape", s.shape}};
            else
                j = {{"kind", "deterministic"}};
        },
        spec.variant());
    return j;
}

json run_config_to_json(const RunConfig& cfg) {
    json sets = json::array();
    for (const SetConfig& s : cfg.sets)
        sets.push_back({{"label", s.label},
                        {"service", spec_to_json(s.service)},
                        {"arrival", spec_to_json(s.arrival)}});
    json regime{{"kind", regime_name(cfg.regime.kind)},
                {"columns", cfg.regime.columns},
                {"decimals", cfg.regime.decimals}};
    if (cfg.regime.kind == Regime::Classical)
        regime["alpha"] = cfg.regime.alphas;
    else {
        regime["beta"] = cfg.regime.beta;
        regime["n"] = cfg.regime.ns;
    }
    return json{{"name", cfg.name},
                {"title", cfg.title},
                {"max_order", cfg.max_order},
                {"sets", std::move(sets)},
                {"regime", std::move(regime)},
                {"quadrature",
                 {{"abs_tol", cfg.quadrature.abs_tol},
                  {"rel_tol", cfg.quadrature.rel_tol},
                  {"y0", cfg.quadrature.initial_truncation},
                  {"y_max", cfg.quadrature.max_truncation},
                  {"max_panels", cfg.quadrature.max_panels},
                  {"precision",
                   cfg.quadrature.precision == WorkingPrecision::Extended ? "extended" : "double"}}},
                {"euler",
                 {{"discretization", cfg.euler.discretization},
                  {"terms", cfg.euler.terms},
                  {"average", cfg.euler.average}}},
                {"sim",
                 {{"warmup", cfg.sim.warmup},
                  {"customers", cfg.sim.customers},
                  {"replications", cfg.sim.replications},
                  {"seed", cfg.sim.seed}}}};
}

}  // namespace

std::string spec_to_json_text(const DistributionSpec& spec) { return spec_to_json(spec).dump(); }

std::string run_config_to_json_text(const RunConfig& cfg) { return run_config_to_json(cfg).dump(); }

RunConfig parse_run_config(const std::string& text, const std::string& regime_override) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        config_error(std::string("invalid JSON: ") + e.what());
    }
    if (!j.is_object()) config_error("config root must be an object");

    RunConfig cfg;
    cfg.name = j.value("name", "");
    cfg.title = j.value("title", "");
    cfg.max_order = j.value("max_order", 5);
    if (cfg.max_order < 1 || cfg.max_order > 12) config_error("max_order must be in 1..12");

    if (!j.contains("sets") || !j.at("sets").is_array() || j.at("sets").empty())
        config_error("config needs a nonempty \"sets\" array");
    for (const json& js : j.at("sets")) {
        SetConfig s{js.value("label", ""), spec_from_json(js.at("service")),
                    spec_from_json(js.at("arrival"))};
        if (s.label.empty())
            s.label = "V " + s.service.describe() + ", U " + s.arrival.describe();
        cfg.sets.push_back(std::move(s));
    }

    std::string chosen = regime_override.empty() ? j.value("regime", "classical") : regime_override;
    cfg.regime.kind = regime_from_name(chosen);
    if (!j.contains("regimes")) config_error("config needs a \"regimes\" object");
    const json& regimes = j.at("regimes");
    std::string key = regime_name(cfg.regime.kind);
    if (!regimes.contains(key)) config_error("config has no parameters for regime " + key);
    const json& rb = regimes.at(key);

    if (cfg.regime.kind == Regime::Classical) {
        for (const json& a : rb.at("alpha")) {
            const double alpha = a.get<double>();
            if (!(alpha > 0.0 && alpha < 1.0)) config_error("alpha values must lie in (0,1)");
            cfg.regime.alphas.push_back(alpha);
        }
        if (cfg.regime.alphas.empty()) config_error("empty alpha grid");
    } else {
        cfg.regime.beta = rb.value("beta", 1.0);
        if (!(cfg.regime.beta > 0.0)) config_error("beta must be positive");
        for (const json& a : rb.at("n")) {
            const long n = a.get<long>();
            if (n < 1) config_error("n values must be >= 1");
            cfg.regime.ns.push_back(n);
        }
        if (cfg.regime.ns.empty()) config_error("empty n grid");
    }

    if (rb.contains("columns"))
        cfg.regime.columns = rb.at("columns").get<std::vector<std::string>>();
    else if (cfg.regime.kind == Regime::NdGaussian)
        cfg.regime.columns = {"exact", "asymp", "asymp_refined"};
    else
        cfg.regime.columns = {"exact", "asymp"};
    if (cfg.regime.columns.empty()) config_error("at least one column must be requested");
    for (const std::string& c : cfg.regime.columns) {
        if (std::find(kKnownColumns.begin(), kKnownColumns.end(), c) == kKnownColumns.end())
            config_error("unknown column \"" + c + "\"");
        if (c == "asymp_refined" && cfg.regime.kind != Regime::NdGaussian)
            config_error("asymp_refined exists only in the nd_gaussian regime");
    }
    cfg.regime.decimals = rb.value("decimals", cfg.regime.kind == Regime::NdGaussian ? 4 : 3);

    if (j.contains("quadrature")) {
        const json& q = j.at("quadrature");
        cfg.quadrature.abs_tol = q.value("abs_tol", cfg.quadrature.abs_tol);
        cfg.quadrature.rel_tol = q.value("rel_tol", cfg.quadrature.rel_tol);
        cfg.quadrature.initial_truncation = q.value("y0", cfg.quadrature.initial_truncation);
        cfg.quadrature.max_truncation = q.value("y_max", cfg.quadrature.max_truncation);
        cfg.quadrature.max_panels = q.value("max_panels", cfg.quadrature.max_panels);
        const std::string prec = q.value("precision", "double");
        if (prec == "extended")
            cfg.quadrature.precision = WorkingPrecision::Extended;
        else if (prec != "double")
            config_error("precision must be \"double\" or \"extended\"");
    }
    if (j.contains("euler")) {
        const json& e = j.at("euler");
        cfg.euler.discretization = e.value("discretization", cfg.euler.discretization);
        cfg.euler.terms = e.value("terms", cfg.euler.terms);
        cfg.euler.average = e.value("average", cfg.euler.average);
    }
    if (j.contains("sim")) {
        const json& s = j.at("sim");
        cfg.sim.warmup = s.value("warmup", cfg.sim.warmup);
        cfg.sim.customers = s.value("customers", cfg.sim.customers);
        cfg.sim.replications = s.value("replications", cfg.sim.replications);
        cfg.sim.seed = s.value("seed", cfg.sim.seed);
    }
    cfg.sim.max_order = cfg.max_order;
    if (j.contains("cdf")) {
        const json& c = j.at("cdf");
        cfg.cdf.t_max = c.value("t_max", cfg.cdf.t_max);
        cfg.cdf.points = c.value("points", cfg.cdf.points);
    }
    return cfg;
}

std::vector<std::string> preset_names() {
    std::vector<std::string> out;
    for (const auto& p : kPresets) out.push_back(p.first);
    return out;
}

std::string preset_text(const std::string& name) {
    for (const auto& p : kPresets)
        if (name == p.first) return p.second;
    config_error("unknown preset \"" + name + "\" (available: example1..example5, example7, mds)");
}

RunConfig preset_config(const std::string& name, const std::string& regime_override) {
    return parse_run_config(preset_text(name), regime_override);
}

// --- moments tables --------------------------------------------------------

namespace {

bool wants(const RunConfig& cfg, const char* col) {
    return std::find(cfg.regime.columns.begin(), cfg.regime.columns.end(), col) !=
           cfg.regime.columns.end();
}

GroupResult compute_group(const RunConfig& cfg, const SetConfig& set, double param) {
    GroupResult g;
    g.param = param;
    const auto t0 = std::chrono::steady_clock::now();
    const int K = cfg.max_order;

    // Columns fail independently: a diverging quadrature marks its own cells
    // FAILED and leaves the remaining columns of the table alone.
    auto guard = [&](const char* column, auto&& fn) {
        if (!wants(cfg, column)) return;
        try {
            fn();
        } catch (const std::exception& e) {
            g.failed = true;
            if (!g.message.empty()) g.message += "; ";
            g.message += std::string(column) + ": " + e.what();
        }
    };
    auto store_sim = [&](const SimResult& sr) {
        std::vector<double> mean, hw;
        for (const SimEstimate& e : sr.moments) {
            mean.push_back(e.mean);
            hw.push_back(e.half_width);
        }
        g.columns["simulation"] = std::move(mean);
        g.errors["simulation"] = std::move(hw);
    };

    try {
        if (cfg.regime.kind == Regime::Classical) {
            QueueInstance q(set.service, set.arrival, 1.0 - param);
            guard("exact", [&] {
                ExactMoments em = exact_scaled_moments(q, K, cfg.quadrature);
                g.columns["exact"] = moments_tail(em.moments);
                g.errors["exact"] = em.cumulants.errors;
            });
            guard("asymp", [&] { g.columns["asymp"] = moments_tail(classical_kingman(q, K)); });
            guard("simulation", [&] {
                SimConfig sc = cfg.sim;
                sc.max_order = K;
                store_sim(simulate_waiting(q, sc));
            });
        } else {
            ThinnedQueueInstance tq =
                make_thinned(set.service, set.arrival, long(param), cfg.regime.beta, cfg.regime.kind);
            std::optional<SaddleInfo> saddle;
            if (cfg.regime.kind == Regime::NdGaussian) saddle = gaussian_regime_params(tq);
            guard("exact", [&] {
                ExactMoments em = exact_scaled_moments(tq, K, cfg.quadrature);
                g.columns["exact"] = moments_tail(em.moments);
                g.errors["exact"] = em.cumulants.errors;
            });
            guard("asymp", [&] {
                g.columns["asymp"] = moments_tail(cfg.regime.kind == Regime::NdKingman
                                                      ? nd_kingman_approx(tq, K)
                                                      : nd_gaussian_standard(tq, K, *saddle));
            });
            guard("asymp_refined",
                  [&] { g.columns["asymp_refined"] = moments_tail(nd_gaussian_refined(tq, K, *saddle)); });
            guard("simulation", [&] {
                SimConfig sc = cfg.sim;
                sc.max_order = K;
                const double scale = cfg.regime.kind == Regime::NdGaussian
                                         ? std::sqrt(double(tq.n)) / saddle->sigma_n
                                         : 1.0;
                store_sim(simulate_waiting(tq, sc, scale));
            });
            g.saddle = saddle;
        }
    } catch (const std::exception& e) {
        // instance construction failed; every cell of the group is lost
        g.failed = true;
        g.message = e.what();
        g.columns.clear();
        g.errors.clear();
    }
    g.wall_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    return g;
}

std::vector<double> group_params(const RunConfig& cfg) {
    std::vector<double> out;
    if (cfg.regime.kind == Regime::Classical)
        out = cfg.regime.alphas;
    else
        for (long n : cfg.regime.ns) out.push_back(double(n));
    return out;
}

}  // namespace

bool MomentReport::any_failed() const {
    for (const SetResult& s : sets)
        for (const GroupResult& g : s.groups)
            if (g.failed) return true;
    return false;
}

MomentReport run_moments(const RunConfig& cfg, int threads) {
    MomentReport rep;
    rep.name = cfg.name;
    rep.title = cfg.title;
    rep.regime = cfg.regime.kind;
    rep.max_order = cfg.max_order;
    rep.decimals = cfg.regime.decimals;
    rep.columns = cfg.regime.columns;
    rep.config_echo = run_config_to_json_text(cfg);

    const std::vector<double> params = group_params(cfg);
    const int nsets = int(cfg.sets.size());
    const int nparams = int(params.size());
    rep.sets.resize(size_t(nsets));
    for (int s = 0; s < nsets; ++s) {
        rep.sets[size_t(s)].label = cfg.sets[size_t(s)].label;
        rep.sets[size_t(s)].groups.resize(size_t(nparams));
    }
    parallel_for(nsets * nparams, threads, [&](int job) {
        const int s = job / nparams;
        const int p = job % nparams;
        rep.sets[size_t(s)].groups[size_t(p)] =
            compute_group(cfg, cfg.sets[size_t(s)], params[size_t(p)]);
    });
    return rep;
}

std::string render_markdown(const MomentReport& r) {
    std::ostringstream os;
    if (!r.title.empty()) os << "## " << r.title << "\n\n";
    for (const SetResult& set : r.sets) {
        os << "### " << set.label << "\n\n";
        os << "| k |";
        for (const GroupResult& g : set.groups)
            for (const std::string& c : r.columns)
                os << ' ' << param_label(r.regime, g.param) << ' '
                   << column_display(r.regime, c) << " |";
        os << "\n|---|";
        for (size_t i = 0; i < set.groups.size() * r.columns.size(); ++i) os << "---|";
        os << '\n';
        for (int k = 1; k <= r.max_order; ++k) {
            os << "| " << k << " |";
            for (const GroupResult& g : set.groups)
                for (const std::string& c : r.columns) {
                    if (!g.columns.count(c))
                        os << " FAILED |";
                    else
                        os << ' ' << fixed(g.columns.at(c)[size_t(k) - 1], r.decimals) << " |";
                }
            os << '\n';
        }
        os << '\n';
        for (const GroupResult& g : set.groups)
            if (g.failed)
                os << "- " << param_label(r.regime, g.param) << " FAILED: " << g.message << '\n';
    }
    return os.str();
}

std::string render_csv(const MomentReport& r) {
    std::ostringstream os;
    os << "set,param,k,column,value,error\r\n";
    for (const SetResult& set : r.sets)
        for (const GroupResult& g : set.groups)
            for (int k = 1; k <= r.max_order; ++k)
                for (const std::string& c : r.columns) {
                    os << csv_field(set.label) << ',' << full(g.param) << ',' << k << ',' << c << ',';
                    if (!g.columns.count(c)) {
                        os << "FAILED,";
                    } else {
                        os << full(g.columns.at(c)[size_t(k) - 1]) << ',';
                        const auto it = g.errors.find(c);
                        if (it != g.errors.end() && size_t(k) <= it->second.size())
                            os << full(it->second[size_t(k) - 1]);
                    }
                    os << "\r\n";
                }
    return os.str();
}

namespace {

json saddle_to_json(const SaddleInfo& s) {
    return json{{"zeta_sp", s.zeta_sp},
                {"h_pp", s.h_pp},
                {"h_ppp", s.h_ppp},
                {"sigma_n", s.sigma_n},
                {"beta_n", s.beta_n},
                {"d2", s.d2},
                {"phi_n", s.phi_n},
                {"B_n", s.B_n},
                {"newton_iterations", s.newton_iterations},
                {"assumption_ok", s.assumption_ok},
                {"assumption_margin", s.assumption_margin}};
}

SaddleInfo saddle_from_json(const json& j) {
    SaddleInfo s;
    s.zeta_sp = j.at("zeta_sp").get<double>();
    s.h_pp = j.at("h_pp").get<double>();
    s.h_ppp = j.at("h_ppp").get<double>();
    s.sigma_n = j.at("sigma_n").get<double>();
    s.beta_n = j.at("beta_n").get<double>();
    s.d2 = j.at("d2").get<double>();
    s.phi_n = j.at("phi_n").get<double>();
    s.B_n = j.at("B_n").get<double>();
    s.newton_iterations = j.at("newton_iterations").get<int>();
    s.assumption_ok = j.at("assumption_ok").get<bool>();
    s.assumption_margin = j.at("assumption_margin").get<double>();
    return s;
}

}  // namespace

std::string render_json(const MomentReport& r) {
    json out;
    out["name"] = r.name;
    out["title"] = r.title;
    out["regime"] = regime_name(r.regime);
    out["max_order"] = r.max_order;
    out["decimals"] = r.decimals;
    out["columns"] = r.columns;
    if (!r.config_echo.empty()) out["config"] = json::parse(r.config_echo);
    json jsets = json::array();
    for (const SetResult& set : r.sets) {
        json jgroups = json::array();
        for (const GroupResult& g : set.groups) {
            json jg;
            jg["param"] = g.param;
            jg["failed"] = g.failed;
            if (g.failed) jg["message"] = g.message;
            jg["wall_ms"] = g.wall_ms;
            jg["columns"] = g.columns;
            jg["errors"] = g.errors;
            if (g.saddle) jg["saddle"] = saddle_to_json(*g.saddle);
            jgroups.push_back(std::move(jg));
        }
        jsets.push_back(json{{"label", set.label}, {"groups", std::move(jgroups)}});
    }
    out["sets"] = std::move(jsets);
    return out.dump(2);
}

MomentReport report_from_json(const std::string& text) {
    json j = json::parse(text);
    MomentReport r;
    r.name = j.value("name", "");
    r.title = j.value("title", "");
    r.regime = regime_from_name(j.at("regime").get<std::string>());
    r.max_order = j.at("max_order").get<int>();
    r.decimals = j.at("decimals").get<int>();
    r.columns = j.at("columns").get<std::vector<std::string>>();
    if (j.contains("config")) r.config_echo = j.at("config").dump();
    for (const json& js : j.at("sets")) {
        SetResult set;
        set.label = js.at("label").get<std::string>();
        for (const json& jg : js.at("groups")) {
            GroupResult g;
            g.param = jg.at("param").get<double>();
            g.failed = jg.at("failed").get<bool>();
            if (g.failed) g.message = jg.value("message", "");
            g.wall_ms = jg.at("wall_ms").get<double>();
            g.columns = jg.at("columns").get<std::map<std::string, std::vector<double>>>();
            g.errors = jg.at("errors").get<std::map<std::string, std::vector<double>>>();
            if (jg.contains("saddle")) g.saddle = saddle_from_json(jg.at("saddle"));
            set.groups.push_back(std::move(g));
        }
        r.sets.push_back(std::move(set));
    }
    return r;
}

// --- error scans ------------------------------------------------------------

ErrorScan run_error_scan(const RunConfig& cfg, int threads) {
    RunConfig c = cfg;
    c.regime.columns = {"exact", "asymp"};
    if (cfg.regime.kind == Regime::NdGaussian) c.regime.columns.push_back("asymp_refined");
    const MomentReport rep = run_moments(c, threads);

    ErrorScan scan;
    scan.name = cfg.name;
    scan.regime = cfg.regime.kind;
    scan.refined = cfg.regime.kind == Regime::NdGaussian;
    const double nan = std::numeric_limits<double>::quiet_NaN();

    for (const SetResult& set : rep.sets) {
        for (const GroupResult& g : set.groups) {
            if (g.failed)
                raise(ErrorCode::ConfigError,
                      "error scan group failed at " + param_label(rep.regime, g.param) + ": " +
                          g.message);
            for (int k = 1; k <= rep.max_order; ++k) {
                ErrorScan::Row row;
                row.set = set.label;
                row.param = g.param;
                row.k = k;
                row.exact = g.columns.at("exact")[size_t(k) - 1];
                row.asymp = g.columns.at("asymp")[size_t(k) - 1];
                row.asymp_refined =
                    scan.refined ? g.columns.at("asymp_refined")[size_t(k) - 1] : nan;
                scan.rows.push_back(row);
            }
        }
        // least-squares slope of log|err| against log(param), per order
        if (set.groups.size() >= 2) {
            for (int k = 1; k <= rep.max_order; ++k) {
                auto fit = [&](const char* col) {
                    double sx = 0, sy = 0, sxx = 0, sxy = 0;
                    int n = 0;
                    for (const GroupResult& g : set.groups) {
                        const double err = std::abs(g.columns.at(col)[size_t(k) - 1] -
                                                    g.columns.at("exact")[size_t(k) - 1]);
                        if (!(err > 0.0)) continue;
                        const double x = std::log(g.param), y = std::log(err);
                        sx += x;
                        sy += y;
                        sxx += x * x;
                        sxy += x * y;
                        ++n;
                    }
                    if (n < 2) return nan;
                    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
                };
                ErrorScan::Slope sl;
                sl.set = set.label;
                sl.k = k;
                sl.asymp = fit("asymp");
                sl.asymp_refined = scan.refined ? fit("asymp_refined") : nan;
                scan.slopes.push_back(sl);
            }
        }
    }
    return scan;
}

std::string render_error_scan_csv(const ErrorScan& s) {
    std::ostringstream os;
    os << "set,param,k,exact,asymp,abs_error_asymp";
    if (s.refined) os << ",asymp_refined,abs_error_refined";
    os << "\r\n";
    for (const ErrorScan::Row& r : s.rows) {
        os << csv_field(r.set) << ',' << full(r.param) << ',' << r.k << ',' << full(r.exact) << ','
           << full(r.asymp) << ',' << full(std::abs(r.asymp - r.exact));
        if (s.refined)
            os << ',' << full(r.asymp_refined) << ',' << full(std::abs(r.asymp_refined - r.exact));
        os << "\r\n";
    }
    for (const ErrorScan::Slope& sl : s.slopes) {
        os << csv_field(sl.set) << ",slope," << sl.k << ",,,"
           << (std::isnan(sl.asymp) ? "" : full(sl.asymp));
        if (s.refined) os << ",," << (std::isnan(sl.asymp_refined) ? "" : full(sl.asymp_refined));
        os << "\r\n";
    }
    return os.str();
}

// --- CDF scans ---------------------------------------------------------------

CdfScan run_cdf(const RunConfig& cfg, int threads) {
    if (cfg.sets.empty()) config_error("cdf scan needs at least one set");
    const SetConfig& set = cfg.sets.front();
    const std::vector<double> params = group_params(cfg);

    struct Column {
        std::string name;
        LSTHandle handle;
    };
    std::vector<Column> cols;
    for (double p : params) {
        const std::string tag = param_label(cfg.regime.kind, p);
        if (cfg.regime.kind == Regime::Classical) {
            QueueInstance q(set.service, set.arrival, 1.0 - p);
            if (wants(cfg, "exact"))
                cols.push_back({"exact " + tag, make_exact_lst(q, cfg.quadrature)});
            if (wants(cfg, "asymp"))
                cols.push_back({"asymp " + tag, make_exponential_lst(0.5 * sigma_alpha_sq(q))});
        } else {
            ThinnedQueueInstance tq =
                make_thinned(set.service, set.arrival, long(p), cfg.regime.beta, cfg.regime.kind);
            if (wants(cfg, "exact"))
                cols.push_back({"exact " + tag, make_exact_lst(tq, cfg.quadrature)});
            if (cfg.regime.kind == Regime::NdKingman) {
                if (wants(cfg, "asymp"))
                    cols.push_back({"asymp " + tag, make_exponential_lst(gamma_coefficient(tq))});
            } else {
                const SaddleInfo saddle = gaussian_regime_params(tq);
                if (wants(cfg, "asymp"))
                    cols.push_back({"asymp " + tag, make_mgw_lst(saddle.beta_n, cfg.quadrature)});
                if (wants(cfg, "asymp_refined"))
                    cols.push_back(
                        {"asymp_refined " + tag, make_mgw_refined_lst(saddle, cfg.quadrature)});
            }
        }
    }

    double t_max = cfg.cdf.t_max;
    if (t_max <= 0.0) {
        double mean = 0.0;
        for (const Column& c : cols) mean = std::max(mean, c.handle.mean_hint);
        t_max = 5.0 * (mean > 0.0 ? mean : 1.0);
    }
    const int pts = std::max(2, cfg.cdf.points);

    CdfScan scan;
    scan.t.push_back(0.0);
    for (int i = 1; i <= pts; ++i) scan.t.push_back(t_max * i / pts);
    std::vector<std::vector<double>*> slots;
    for (const Column& c : cols) {
        scan.columns.push_back(c.name);
        auto& v = scan.values[c.name];
        v.assign(scan.t.size(), 0.0);
        slots.push_back(&v);
    }

    const int njobs = int(cols.size()) * (pts + 1);
    parallel_for(njobs, threads, [&](int job) {
        const int ci = job / (pts + 1);
        const int ti = job % (pts + 1);
        const Column& c = cols[size_t(ci)];
        double v;
        if (ti == 0)
            v = atom_at_zero(c.handle, cfg.euler);
        else
            v = std::min(1.0, std::max(0.0, invert_cdf_at(c.handle, scan.t[size_t(ti)], cfg.euler)));
        (*slots[size_t(ci)])[size_t(ti)] = v;
    });
    return scan;
}

std::string render_cdf_csv(const CdfScan& s) {
    std::ostringstream os;
    os << "t";
    for (const std::string& c : s.columns) os << ',' << csv_field(c);
    os << "\r\n";
    for (size_t i = 0; i < s.t.size(); ++i) {
        os << full(s.t[i]);
        for (const std::string& c : s.columns) os << ',' << full(s.values.at(c)[i]);
        os << "\r\n";
    }
    return os.str();
}

// --- self check ---------------------------------------------------------------

bool SelfCheck::all_pass() const {
    for (const Item& i : items)
        if (!i.pass) return false;
    return true;
}

SelfCheck run_selfcheck() {
    SelfCheck out;
    auto add = [&](const std::string& name, bool pass, const std::string& detail) {
        out.items.push_back({name, pass, detail});
    };

    {
        const double z1 = riemann_zeta(-1.0), z3 = riemann_zeta(-3.0), z2 = riemann_zeta(2.0);
        add("zeta(-1) = -1/12", std::abs(z1 + 1.0 / 12.0) < 1e-14, full(z1));
        add("zeta(-3) = 1/120", std::abs(z3 - 1.0 / 120.0) < 1e-14, full(z3));
        add("zeta(2) = pi^2/6", std::abs(z2 - M_PI * M_PI / 6.0) < 1e-13, full(z2));
    }
    try {
        double worst = 0.0;
        for (double beta : {0.5, 1.0, 2.0}) {
            const CumulantVector ci = mgw_cumulants_integral(beta, 3);
            const CumulantVector cz = mgw_cumulants_zeta(beta, 3);
            for (int l = 1; l <= 3; ++l)
                worst = std::max(worst, std::abs(ci.c(l) - cz.c(l)));
        }
        add("gaussian walk: integral vs zeta series", worst < 1e-8, "max diff " + full(worst));
    } catch (const std::exception& e) {
        add("gaussian walk: integral vs zeta series", false, e.what());
    }
    try {
        QueueInstance mm1(exponential_spec(), exponential_spec(), 0.5);
        const ExactMoments em = exact_scaled_moments(mm1, 1);
        const double expect = 0.5;  // alpha * rho/(1-rho)
        add("M/M/1 mean via contour", std::abs(em.moments.m(1) - expect) < 1e-8,
            full(em.moments.m(1)));
    } catch (const std::exception& e) {
        add("M/M/1 mean via contour", false, e.what());
    }
    try {
        QueueInstance q(gamma_spec(2.0, 0.5), gamma_spec(0.4, 2.5), 0.9);
        QuadratureConfig a, b;
        b.abscissa_factor = 0.5;
        const double c1 = exact_scaled_moments(q, 1, a).cumulants.c(1);
        const double c2 = exact_scaled_moments(q, 1, b).cumulants.c(1);
        add("contour independence (abscissa halving)", std::abs(c1 - c2) < 1e-8,
            "diff " + full(std::abs(c1 - c2)));
    } catch (const std::exception& e) {
        add("contour independence (abscissa halving)", false, e.what());
    }
    return out;
}

std::string render_selfcheck(const SelfCheck& s) {
    std::ostringstream os;
    for (const SelfCheck::Item& i : s.items)
        os << (i.pass ? "[PASS] " : "[FAIL] ") << i.name << " (" << i.detail << ")\n";
    os << (s.all_pass() ? "selfcheck: all checks passed\n" : "selfcheck: FAILURES present\n");
    return os.str();
}

OutputFormat parse_format(const std::string& name) {
    if (name == "md" || name == "markdown") return OutputFormat::Markdown;
    if (name == "csv") return OutputFormat::Csv;
    if (name == "json") return OutputFormat::Json;
    config_error("unknown format \"" + name + "\" (md|csv|json)");
}

}  // namespace pollaczek
