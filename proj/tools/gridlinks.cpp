// Command-line front end: exhaustive enumeration, exact tables, sampling
// experiments, and least-squares fits over their CSV output.

#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "gridlinks/enumerate.hpp"
#include "gridlinks/exact.hpp"
#include "gridlinks/experiments.hpp"
#include "gridlinks/stats.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitVerificationFailed = 1;
constexpr int kExitUsage = 2;

struct Range {
    int start = 0;
    int end = 0;
    int step = 1;
};

Range parse_range(const std::string& text) {
    Range r;
    const auto dots = text.find("..");
    if (dots == std::string::npos) {
        r.start = r.end = std::stoi(text);
        return r;
    }
    r.start = std::stoi(text.substr(0, dots));
    std::string rest = text.substr(dots + 2);
    const auto colon = rest.find(':');
    if (colon != std::string::npos) {
        r.step = std::stoi(rest.substr(colon + 1));
        rest = rest.substr(0, colon);
    }
    r.end = std::stoi(rest);
    if (r.step < 1 || r.end < r.start)
        throw CLI::ValidationError("range", "expected START..END[:STEP] with END >= START, STEP >= 1");
    return r;
}

std::ostream& open_output(const std::string& path, std::ofstream& file) {
    if (path.empty() || path == "-")
        return std::cout;
    file.open(path);
    if (!file)
        throw std::runtime_error("cannot open output file: " + path);
    return file;
}

std::string fmt_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

// --- enumerate ---

int run_enumerate(const std::string& range_text, bool verify, bool allow_large,
                  const std::string& out_path, const std::string& format) {
    const Range range = parse_range(range_text);
    std::ofstream file;
    std::ostream& os = open_output(out_path, file);

    const int k_columns = std::max(1, range.end / 2);
    std::vector<gridlinks::EnumerationRow> rows;
    for (int n = range.start; n <= range.end; n += range.step)
        rows.push_back(gridlinks::exact_table_by_enumeration(n, allow_large));

    bool verified = true;
    if (verify) {
        const auto table = gridlinks::exact::cbar_table_recurrence(range.end, k_columns);
        for (const auto& row : rows) {
            for (int k = 1; k <= row.n / 2; ++k) {
                if (gridlinks::BigInt(row.count(k)) != table.count(row.n, k)) {
                    std::cerr << "verify: c_{" << row.n << "," << k << "} = " << row.count(k)
                              << " disagrees with exact value " << table.count(row.n, k) << "\n";
                    verified = false;
                }
            }
            if (gridlinks::BigInt(row.total) != gridlinks::exact::count_links(row.n)) {
                std::cerr << "verify: c_" << row.n << " = " << row.total
                          << " disagrees with n! * !n\n";
                verified = false;
            }
        }
    }

    if (format == "json") {
        nlohmann::json out{{"schema", "gridlinks v1"}, {"experiment", "enumerate"}};
        auto& json_rows = out["rows"] = nlohmann::json::array();
        for (const auto& row : rows) {
            std::vector<std::uint64_t> counts(row.count_by_k);
            counts.resize(k_columns, 0);
            json_rows.push_back({{"n", row.n},
                                 {"counts", counts},
                                 {"c_n", row.total},
                                 {"mean_k", gridlinks::to_double(row.mean_components)}});
        }
        os << out.dump(2) << "\n";
    } else {
        os << "# gridlinks v1 enumerate\n";
        os << "n";
        for (int k = 1; k <= k_columns; ++k)
            os << ",c_n" << k;
        os << ",c_n,mean_k\n";
        for (const auto& row : rows) {
            os << row.n;
            for (int k = 1; k <= k_columns; ++k)
                os << ',' << row.count(k);
            os << ',' << row.total << ','
               << fmt_double(gridlinks::to_double(row.mean_components)) << "\n";
        }
    }
    return verified ? kExitOk : kExitVerificationFailed;
}

// --- sample ---

int run_sample(const std::string& experiment_name, std::optional<std::string> range_text,
               std::optional<std::uint64_t> samples, std::uint64_t seed, int threads,
               const std::string& format, const std::string& out_path, bool verify,
               double bin_width, double length_cap) {
    namespace ex = gridlinks::experiments;
    const ex::Experiment experiment = ex::experiment_from_name(experiment_name);

    ex::SweepConfig cfg = ex::SweepConfig::preset(experiment);
    if (range_text) {
        const Range r = parse_range(*range_text);
        cfg.n_start = r.start;
        cfg.n_end = r.end;
        cfg.n_step = r.step;
    }
    if (samples)
        cfg.samples = *samples;
    cfg.seed = seed;
    cfg.threads = threads;
    cfg.bin_width = bin_width;
    cfg.length_cap = length_cap;
    if (cfg.n_start < 2)
        throw CLI::ValidationError("--n-range", "grid sizes start at 2");
    if (cfg.samples == 0)
        throw CLI::ValidationError("--samples", "need at least one sample");

    const auto rows = ex::run_sweep(experiment, cfg);

    std::ofstream file;
    std::ostream& os = open_output(out_path, file);
    if (format == "json")
        os << ex::to_json(experiment, cfg, rows).dump(2) << "\n";
    else
        ex::write_csv(os, experiment, cfg, rows);

    if (verify) {
        const auto problems = ex::verify_sweep(experiment, cfg, rows);
        for (const auto& p : problems)
            std::cerr << "verify: " << p << "\n";
        if (!problems.empty())
            return kExitVerificationFailed;
    }
    return kExitOk;
}

// --- exact ---

int run_exact(const std::string& range_text, int k_max, bool summary,
              const std::string& out_path, const std::string& format) {
    const Range range = parse_range(range_text);
    if (range.start < 2)
        throw CLI::ValidationError("--n-range", "exact tables start at n = 2");
    if (range.end > 500)
        throw CLI::ValidationError("--n-range", "exact tables are capped at n = 500");
    if (k_max <= 0)
        k_max = std::min(range.end / 2, 20);

    const auto table = gridlinks::exact::cbar_table_recurrence(range.end, k_max);

    std::ofstream file;
    std::ostream& os = open_output(out_path, file);

    if (format == "json") {
        nlohmann::json out{{"schema", "gridlinks v1"},
                           {"experiment", summary ? "exact-summary" : "exact-table"}};
        auto& json_rows = out["rows"] = nlohmann::json::array();
        for (int n = range.start; n <= range.end; n += range.step) {
            if (summary) {
                const auto ev = gridlinks::exact::expected_components(n);
                const auto var = gridlinks::exact::variance_components(n);
                json_rows.push_back({{"n", n},
                                     {"c_n", gridlinks::exact::count_links(n).str()},
                                     {"ev", gridlinks::to_string(ev)},
                                     {"var", gridlinks::to_string(var)},
                                     {"ev_decimal", gridlinks::to_double(ev)},
                                     {"var_decimal", gridlinks::to_double(var)}});
            } else {
                for (int k = 1; k <= std::min(k_max, n / 2); ++k) {
                    const auto& q = table.cbar(n, k);
                    json_rows.push_back(
                        {{"n", n},
                         {"k", k},
                         {"c_nk", table.count(n, k).str()},
                         {"cbar", gridlinks::to_string(q)},
                         {"bound_margin",
                          gridlinks::exact::bound_margin(table, n, k).convert_to<double>()}});
                }
            }
        }
        os << out.dump(2) << "\n";
        return kExitOk;
    }

    if (summary)
        gridlinks::exact::write_summary_csv(os, table, /*with_decimals=*/true, range.start,
                                            range.step);
    else
        gridlinks::exact::write_count_table_csv(os, table, /*with_margins=*/true, range.start,
                                                range.step);
    return kExitOk;
}

// --- fit ---

std::vector<std::vector<std::string>> read_csv(std::istream& is) {
    std::vector<std::vector<std::string>> rows;
    std::string line;
    while (std::getline(is, line)) {
        if (line.empty() || line[0] == '#')
            continue;
        std::vector<std::string> fields;
        std::stringstream ss(line);
        std::string field;
        while (std::getline(ss, field, ','))
            fields.push_back(field);
        rows.push_back(std::move(fields));
    }
    return rows;
}

int run_fit(const std::string& input_path, const std::string& model, const std::string& x_col,
            const std::string& y_col, int x_power, const std::string& out_path) {
    std::ifstream input_file;
    std::istream* is = &std::cin;
    if (input_path != "-") {
        input_file.open(input_path);
        if (!input_file) {
            std::cerr << "fit: cannot open input: " << input_path << "\n";
            return kExitUsage;
        }
        is = &input_file;
    }
    const auto rows = read_csv(*is);
    if (rows.size() < 2) {
        std::cerr << "fit: input has no data rows\n";
        return kExitUsage;
    }
    const auto& header = rows.front();
    auto find_col = [&](const std::string& name) {
        for (std::size_t i = 0; i < header.size(); ++i)
            if (header[i] == name)
                return static_cast<std::ptrdiff_t>(i);
        return static_cast<std::ptrdiff_t>(-1);
    };
    const auto xi = find_col(x_col);
    const auto yi = find_col(y_col);
    if (xi < 0 || yi < 0) {
        std::cerr << "fit: column missing: " << (xi < 0 ? x_col : y_col) << "\n";
        return kExitUsage;
    }

    std::vector<std::pair<double, double>> points;
    for (std::size_t r = 1; r < rows.size(); ++r) {
        const auto& row = rows[r];
        if (static_cast<std::ptrdiff_t>(row.size()) <= std::max(xi, yi))
            continue;
        double x = std::stod(row[xi]);
        const double y = std::stod(row[yi]);
        if (std::isnan(x) || std::isnan(y))
            continue;
        double xt = 1;
        for (int p = 0; p < x_power; ++p)
            xt *= x;
        if (model == "log2")
            xt = std::log2(xt);
        else if (model == "ln")
            xt = std::log(xt);
        points.emplace_back(xt, y);
    }

    gridlinks::stats::FitResult fit;
    try {
        fit = gridlinks::stats::ols_fit(points, model == "zero-intercept");
    } catch (const gridlinks::stats::DegenerateDesign& e) {
        std::cerr << "fit: degenerate design: " << e.what() << "\n";
        return kExitUsage;
    }

    nlohmann::json out{{"model", model},
                       {"x_col", x_col},
                       {"y_col", y_col},
                       {"x_power", x_power},
                       {"slope", fit.slope},
                       {"intercept", fit.intercept},
                       {"r_squared", fit.r_squared},
                       {"n_points", fit.n_points},
                       {"residual_std_error", fit.residual_std_error}};
    std::ofstream file;
    std::ostream& os = open_output(out_path, file);
    os << out.dump(2) << "\n";
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"random grid-diagram links: enumeration, exact counts, experiments, fits"};
    app.require_subcommand(1);

    // enumerate
    auto* cmd_enumerate = app.add_subcommand(
        "enumerate", "exhaustively tally all n x n diagrams by component count");
    std::string enum_range = "2..7";
    bool enum_verify = false, enum_allow_large = false;
    std::string enum_out, enum_format = "csv";
    cmd_enumerate->add_option("--n", enum_range, "grid sizes, N or START..END[:STEP] (max 7, 8 with --allow-large)");
    cmd_enumerate->add_flag("--verify", enum_verify, "cross-check against the exact recurrence; exit 1 on mismatch");
    cmd_enumerate->add_flag("--allow-large", enum_allow_large, "permit n = 8 (~595M diagrams)");
    cmd_enumerate->add_option("--out", enum_out, "output path (default stdout)");
    cmd_enumerate->add_option("--format", enum_format, "csv|json")
        ->check(CLI::IsMember({"csv", "json"}));

    // sample
    auto* cmd_sample = app.add_subcommand("sample", "run a seeded sampling experiment");
    std::string sample_experiment;
    std::optional<std::string> sample_range;
    std::optional<std::uint64_t> sample_count;
    std::uint64_t sample_seed = 0;
    int sample_threads = 1;
    std::string sample_format = "csv", sample_out;
    bool sample_verify = false;
    double sample_bin_width = 10000, sample_length_cap = 650000;
    cmd_sample
        ->add_option("--experiment", sample_experiment,
                     "knot-size|components|writhe-grid|writhe-length")
        ->required()
        ->check(CLI::IsMember({"knot-size", "components", "writhe-grid", "writhe-length"}));
    cmd_sample->add_option("--n-range", sample_range,
                           "grid sizes START..END[:STEP]; for writhe-length, the uniform size "
                           "support (default: full-scale preset)");
    cmd_sample->add_option("--samples", sample_count,
                           "samples per grid size (total for writhe-length; default: full-scale preset)");
    cmd_sample->add_option("--seed", sample_seed, "RNG seed (default 0, never clock-seeded)");
    cmd_sample->add_option("--threads", sample_threads, "worker threads; output is identical for any value")
        ->check(CLI::PositiveNumber);
    cmd_sample->add_option("--format", sample_format, "csv|json")
        ->check(CLI::IsMember({"csv", "json"}));
    cmd_sample->add_option("--out", sample_out, "output path (default stdout)");
    cmd_sample->add_flag("--verify", sample_verify,
                         "check sampled means against exact predictions; exit 1 outside 4 sigma");
    cmd_sample->add_option("--bin-width", sample_bin_width, "writhe-length: length rounding bin");
    cmd_sample->add_option("--length-cap", sample_length_cap,
                           "writhe-length: drop bins above this rounded length");

    // exact
    auto* cmd_exact = app.add_subcommand("exact", "emit exact count tables and moments");
    std::string exact_range = "2..60";
    int exact_k_max = 0;
    bool exact_summary = false;
    std::string exact_out, exact_format = "csv";
    cmd_exact->add_option("--n-range", exact_range, "grid sizes START..END[:STEP], END <= 500");
    cmd_exact->add_option("--k-max", exact_k_max, "largest component count tabulated (default min(n/2, 20))");
    cmd_exact->add_flag("--summary", exact_summary,
                        "per-n summary (c_n, EV, Var) instead of the (n,k) table");
    cmd_exact->add_option("--out", exact_out, "output path (default stdout)");
    cmd_exact->add_option("--format", exact_format, "csv|json")
        ->check(CLI::IsMember({"csv", "json"}));

    // fit
    auto* cmd_fit = app.add_subcommand("fit", "least-squares fit over a sample CSV");
    std::string fit_input, fit_model, fit_x, fit_y, fit_out;
    int fit_x_power = 1;
    cmd_fit->add_option("--input", fit_input, "CSV produced by `sample` ('-' for stdin)")->required();
    cmd_fit->add_option("--model", fit_model, "linear|log2|ln|zero-intercept")
        ->required()
        ->check(CLI::IsMember({"linear", "log2", "ln", "zero-intercept"}));
    cmd_fit->add_option("--x-col", fit_x, "regressor column name")->required();
    cmd_fit->add_option("--y-col", fit_y, "response column name")->required();
    cmd_fit->add_option("--x-power", fit_x_power, "raise x to this power before fitting (default 1)")
        ->check(CLI::PositiveNumber);
    cmd_fit->add_option("--out", fit_out, "output path (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (*cmd_enumerate)
            return run_enumerate(enum_range, enum_verify, enum_allow_large, enum_out, enum_format);
        if (*cmd_sample)
            return run_sample(sample_experiment, sample_range, sample_count, sample_seed,
                              sample_threads, sample_format, sample_out, sample_verify,
                              sample_bin_width, sample_length_cap);
        if (*cmd_exact)
            return run_exact(exact_range, exact_k_max, exact_summary, exact_out, exact_format);
        if (*cmd_fit)
            return run_fit(fit_input, fit_model, fit_x, fit_y, fit_x_power, fit_out);
    } catch (const CLI::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const gridlinks::SizeLimitExceeded& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitOk;
}
