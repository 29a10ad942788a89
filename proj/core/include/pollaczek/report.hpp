#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "pollaczek/config.hpp"

namespace pollaczek {

enum class OutputFormat { Markdown, Csv, Json };

OutputFormat parse_format(const std::string& name);

// Results for one (set, parameter) combination; columns are indexed k-1 for
// k = 1..max_order. A failing cell group carries its error message and leaves
// the rest of the table intact.
struct GroupResult {
    double param = 0.0;  // alpha, or n
    bool failed = false;
    std::string message;
    std::map<std::string, std::vector<double>> columns;
    std::map<std::string, std::vector<double>> errors;  // quadrature / CI half-widths
    std::optional<SaddleInfo> saddle;
    double wall_ms = 0.0;
};

struct SetResult {
    std::string label;
    std::vector<GroupResult> groups;
};

struct MomentReport {
    std::string name;
    std::string title;
    Regime regime = Regime::Classical;
    int max_order = 5;
    int decimals = 3;
    std::vector<std::string> columns;
    std::vector<SetResult> sets;
    std::string config_echo;  // resolved config as JSON, carried into sidecars

    bool any_failed() const;
};

MomentReport run_moments(const RunConfig& cfg, int threads = 1);

std::string render_markdown(const MomentReport& r);
std::string render_csv(const MomentReport& r);
std::string render_json(const MomentReport& r);  // full precision sidecar
// Rebuild a report from its JSON sidecar (rendering round-trips exactly).
MomentReport report_from_json(const std::string& json_text);

struct ErrorScan {
    std::string name;
    Regime regime = Regime::Classical;
    bool refined = false;  // gaussian regime carries both approximations

    struct Row {
        std::string set;
        double param = 0.0;
        int k = 0;
        double exact = 0.0;
        double asymp = 0.0;
        double asymp_refined = 0.0;  // NaN unless refined
    };
    std::vector<Row> rows;

    struct Slope {
        std::string set;
        int k = 0;
        double asymp = 0.0;          // log-log fit of |asymp - exact| vs param
        double asymp_refined = 0.0;  // NaN unless refined
    };
    std::vector<Slope> slopes;
};

ErrorScan run_error_scan(const RunConfig& cfg, int threads = 1);
std::string render_error_scan_csv(const ErrorScan& s);

struct CdfScan {
    std::vector<double> t;  // t[0] = 0 carries the atoms P(X = 0)
    std::vector<std::string> columns;
    std::map<std::string, std::vector<double>> values;
};

CdfScan run_cdf(const RunConfig& cfg, int threads = 1);
std::string render_cdf_csv(const CdfScan& s);

struct SelfCheck {
    struct Item {
        std::string name;
        bool pass = false;
        std::string detail;
    };
    std::vector<Item> items;
    bool all_pass() const;
};

// Fast internal consistency battery: zeta constants, dual-method Gaussian
// walk, M/M/1 closed form, contour independence.
SelfCheck run_selfcheck();
std::string render_selfcheck(const SelfCheck& s);

}  // namespace pollaczek
