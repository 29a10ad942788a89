// Command line front end: moments tables, error scans, CDF scans, selfcheck.

#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "pollaczek/report.hpp"

namespace {

using namespace pollaczek;

struct CommonOpts {
    std::string preset;
    std::string config_path;
    std::string regime;
    std::string format = "md";
    std::string out_path;
    int threads = 1;
    std::string precision;
    int max_order = 0;
};

void add_common(CLI::App* cmd, CommonOpts& o, bool with_format = true) {
    cmd->add_option("--preset", o.preset, "bundled config name (example1..example5, example7, mds)");
    cmd->add_option("--config", o.config_path, "path to a config document");
    cmd->add_option("--regime", o.regime, "classical | nd-kingman | nd-gaussian");
    if (with_format) cmd->add_option("--format", o.format, "md | csv | json");
    cmd->add_option("--out", o.out_path, "write output to this path instead of stdout");
    cmd->add_option("--threads", o.threads, "worker threads for table cells");
    cmd->add_option("--precision", o.precision, "double | extended quadrature kernels");
    cmd->add_option("--max-order", o.max_order, "override the highest moment order");
}

RunConfig load_config(const CommonOpts& o) {
    if (o.preset.empty() == o.config_path.empty())
        raise(ErrorCode::ConfigError, "exactly one of --preset / --config is required");
    std::string text;
    if (!o.preset.empty()) {
        text = preset_text(o.preset);
    } else {
        std::ifstream in(o.config_path);
        if (!in) raise(ErrorCode::ConfigError, "cannot read config file " + o.config_path);
        std::ostringstream ss;
        ss << in.rdbuf();
        text = ss.str();
    }
    RunConfig cfg = parse_run_config(text, o.regime);
    if (o.max_order > 0) {
        if (o.max_order > 12) raise(ErrorCode::ConfigError, "--max-order must be <= 12");
        cfg.max_order = o.max_order;
        cfg.sim.max_order = o.max_order;
    }
    if (!o.precision.empty()) {
        if (o.precision == "extended")
            cfg.quadrature.precision = WorkingPrecision::Extended;
        else if (o.precision == "double")
            cfg.quadrature.precision = WorkingPrecision::Double;
        else
            raise(ErrorCode::ConfigError, "--precision must be double or extended");
    }
    return cfg;
}

void emit(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(out_path, std::ios::binary);
    if (!out) raise(ErrorCode::ConfigError, "cannot write " + out_path);
    out << text;
}

int run_moments_cmd(const CommonOpts& o) {
    const RunConfig cfg = load_config(o);
    const MomentReport rep = run_moments(cfg, o.threads);
    switch (parse_format(o.format)) {
        case OutputFormat::Markdown: emit(render_markdown(rep), o.out_path); break;
        case OutputFormat::Csv: emit(render_csv(rep), o.out_path); break;
        case OutputFormat::Json: emit(render_json(rep), o.out_path); break;
    }
    // full-precision sidecar next to any rendered file
    if (!o.out_path.empty() && parse_format(o.format) != OutputFormat::Json)
        emit(render_json(rep), o.out_path + ".json");
    return rep.any_failed() ? 1 : 0;
}

int run_error_scan_cmd(const CommonOpts& o) {
    const RunConfig cfg = load_config(o);
    const ErrorScan scan = run_error_scan(cfg, o.threads);
    emit(render_error_scan_csv(scan), o.out_path);
    return 0;
}

int run_cdf_cmd(const CommonOpts& o, double t_max, int points) {
    RunConfig cfg = load_config(o);
    if (t_max > 0.0) cfg.cdf.t_max = t_max;
    if (points > 0) cfg.cdf.points = points;
    const CdfScan scan = run_cdf(cfg, o.threads);
    emit(render_cdf_csv(scan), o.out_path);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Waiting-time moments and CDFs for GI/G/1 and cyclically thinned queues"};
    app.require_subcommand(1);

    CommonOpts mo, eo, co;
    double t_max = 0.0;
    int points = 0;

    CLI::App* moments = app.add_subcommand("moments", "exact and asymptotic moment tables");
    add_common(moments, mo);

    CLI::App* escan = app.add_subcommand("error-scan", "CSV of |asymp - exact| with log-log slopes");
    add_common(escan, eo, false);

    CLI::App* cdf = app.add_subcommand("cdf", "CSV of inverted waiting-time CDFs");
    add_common(cdf, co, false);
    cdf->add_option("--tmax", t_max, "largest t on the grid (default 5x the mean)");
    cdf->add_option("--points", points, "number of grid points");

    app.add_subcommand("selfcheck", "fast internal consistency battery");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (app.got_subcommand("moments")) return run_moments_cmd(mo);
        if (app.got_subcommand("error-scan")) return run_error_scan_cmd(eo);
        if (app.got_subcommand("cdf")) return run_cdf_cmd(co, t_max, points);
        const pollaczek::SelfCheck sc = pollaczek::run_selfcheck();
        std::cout << pollaczek::render_selfcheck(sc);
        return sc.all_pass() ? 0 : 1;
    } catch (const pollaczek::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return e.code() == pollaczek::ErrorCode::ConfigError ? 2 : 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
