#include "bandext/cli.hpp"

#include "bandext/csv.hpp"
#include "bandext/errors.hpp"
#include "bandext/experiments.hpp"
#include "bandext/extrapolate.hpp"

#include <CLI11.hpp>

#include <charconv>
#include <cmath>
#include <fstream>
#include <iostream>
#include <memory>
#include <numbers>
#include <optional>
#include <sstream>
#include <thread>

#ifndef BANDEXT_VERSION
#define BANDEXT_VERSION "unknown"
#endif

namespace bandext::cli {

namespace {

std::string_view trim(std::string_view s)
{
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) {
        s.remove_prefix(1);
    }
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) {
        s.remove_suffix(1);
    }
    return s;
}

double parse_number(std::string_view text, std::string_view what)
{
    text = trim(text);
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (text.empty() || ec != std::errc() || ptr != text.data() + text.size()) {
        throw InvalidParams("cannot parse " + std::string(what) + " '" + std::string(text) + "'");
    }
    return v;
}

int parse_int(std::string_view text, std::string_view what)
{
    text = trim(text);
    int v = 0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (text.empty() || ec != std::errc() || ptr != text.data() + text.size()) {
        throw InvalidParams("cannot parse " + std::string(what) + " '" + std::string(text) + "'");
    }
    return v;
}

std::vector<std::string_view> split(std::string_view text, char sep)
{
    std::vector<std::string_view> parts;
    std::size_t start = 0;
    while (true) {
        const auto pos = text.find(sep, start);
        parts.push_back(text.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
        if (pos == std::string_view::npos) {
            return parts;
        }
        start = pos + 1;
    }
}

} // namespace

double parse_angle(std::string_view text)
{
    const auto s = trim(text);
    const auto pi_pos = s.find("pi");
    if (pi_pos == std::string_view::npos) {
        return parse_number(s, "angle");
    }
    auto coeff_text = trim(s.substr(0, pi_pos));
    if (!coeff_text.empty() && coeff_text.back() == '*') {
        coeff_text = trim(coeff_text.substr(0, coeff_text.size() - 1));
    }
    const double coeff = coeff_text.empty() ? 1.0 : parse_number(coeff_text, "angle coefficient");
    auto rest = trim(s.substr(pi_pos + 2));
    double divisor = 1.0;
    if (!rest.empty()) {
        if (rest.front() != '/') {
            throw InvalidParams("cannot parse angle '" + std::string(s) + "'");
        }
        divisor = parse_number(rest.substr(1), "angle divisor");
        if (divisor == 0.0) {
            throw InvalidParams("angle divisor is zero in '" + std::string(s) + "'");
        }
    }
    return coeff * std::numbers::pi / divisor;
}

std::vector<std::pair<int, int>> parse_pairs(std::string_view text)
{
    std::vector<std::pair<int, int>> pairs;
    for (auto item : split(text, ',')) {
        const auto parts = split(trim(item), ':');
        if (parts.size() != 2) {
            throw InvalidParams("truncation pair must look like N1:N2, got '" + std::string(item) + "'");
        }
        pairs.emplace_back(parse_int(parts[0], "N1"), parse_int(parts[1], "N2"));
    }
    return pairs;
}

std::vector<int> parse_int_list(std::string_view text)
{
    std::vector<int> out;
    for (auto item : split(text, ',')) {
        out.push_back(parse_int(item, "integer list entry"));
    }
    return out;
}

namespace {

using csv::format_number;

std::string version_line(std::string_view command)
{
    return "bandext " BANDEXT_VERSION " " + std::string(command);
}

// Writes to --out when given, otherwise to the command's stdout stream.
class Output {
public:
    Output(const std::string& path, std::ostream& fallback) : stream_(&fallback)
    {
        if (!path.empty() && path != "-") {
            file_ = std::make_unique<std::ofstream>(path, std::ios::binary);
            if (!*file_) {
                throw InvalidParams("cannot open output file '" + path + "'");
            }
            stream_ = file_.get();
        }
    }
    std::ostream& stream() { return *stream_; }

private:
    std::unique_ptr<std::ofstream> file_;
    std::ostream* stream_;
};

unsigned default_jobs()
{
    return std::max(1u, std::thread::hardware_concurrency());
}

struct ExtrapolateArgs {
    std::string input = "-";
    std::string omega;
    double rho = 0.4;
    int n_trunc = 0;
    int horizon = 0;
    bool highband = false;
    std::string method = "direct";
    int depth = 200;
    bool allow_unregularized = false;
    std::string out;
};

void cmd_extrapolate(const ExtrapolateArgs& a, std::istream& stdin_stream, std::ostream& stdout_stream)
{
    std::vector<double> values;
    if (a.input == "-") {
        values = csv::read_column(stdin_stream);
    } else {
        std::ifstream in(a.input);
        if (!in) {
            throw InvalidParams("cannot open input file '" + a.input + "'");
        }
        values = csv::read_column(in);
    }

    BandParams p;
    p.omega = parse_angle(a.omega);
    p.rho = a.rho;
    p.n_trunc = a.n_trunc > 0 ? a.n_trunc : std::max(1, static_cast<int>(values.size()) - 1);
    p.horizon = a.horizon;

    ExtrapolateOptions options;
    options.allow_unregularized = a.allow_unregularized;
    if (a.method == "direct") {
        options.method = SolveMethod::direct();
    } else if (a.method == "neumann") {
        options.method = SolveMethod::neumann(a.depth);
    } else {
        throw InvalidParams("--method must be direct or neumann, got '" + a.method + "'");
    }

    const PastSignal x(std::move(values));
    const Extension ext = a.highband ? extrapolate_highband(x, p, options) : extrapolate(x, p, options);

    Output output(a.out, stdout_stream);
    auto& os = output.stream();
    csv::write_comment(os, version_line("extrapolate"));
    csv::write_comment(os, "input=" + a.input + " rows=" + std::to_string(x.size()));
    csv::write_comment(os, "omega=" + format_number(p.omega) + " rho=" + format_number(p.rho) +
                               " n_trunc=" + std::to_string(p.n_trunc) + " horizon=" + std::to_string(p.horizon) +
                               " band=" + (a.highband ? "high" : "low") + " method=" + ext.diagnostics.method.name() +
                               " allow_unregularized=" + (a.allow_unregularized ? "true" : "false"));
    csv::write_comment(os, "residual_norm=" + format_number(ext.diagnostics.residual_norm) +
                               " condition_estimate=" + format_number(ext.diagnostics.condition_estimate));
    if (p.horizon > p.n_trunc) {
        csv::write_comment(os, "t > n_trunc uses the tail formula b(t)/(1+rho)");
    }
    csv::write_row(os, {"t", "forecast"});
    for (std::size_t i = 0; i < ext.forecast.size(); ++i) {
        csv::write_row(os, {std::to_string(i + 1), format_number(ext.forecast[i])});
    }
}

struct BenchArgs {
    std::string panel;
    std::optional<int> nu;
    std::string omega;
    std::optional<int> n_trunc;
    double rho = 0.4;
    int window = 10;
    std::string horizons = "1,3,6,12";
    double switch_prob = 0.5;
    std::size_t trials = 10000;
    std::uint64_t seed = 1;
    unsigned jobs = default_jobs();
    std::string out;
};

void cmd_bench(const BenchArgs& a, std::ostream& stdout_stream)
{
    ComparisonConfig cfg;
    if (!a.panel.empty()) {
        if (a.panel.size() != 1) {
            throw InvalidParams("--panel must be a or b, got '" + a.panel + "'");
        }
        cfg = ComparisonConfig::panel(a.panel[0]);
    } else if (a.omega.empty()) {
        throw InvalidParams("bench needs --panel or an explicit --omega");
    }
    if (a.nu) {
        cfg.nu = *a.nu;
    }
    if (!a.omega.empty()) {
        cfg.omega = parse_angle(a.omega);
    }
    if (a.n_trunc) {
        cfg.n_trunc = *a.n_trunc;
    }
    cfg.rho = a.rho;
    cfg.window = a.window;
    cfg.horizons = parse_int_list(a.horizons);
    cfg.switch_prob = a.switch_prob;
    if (a.trials < 1) {
        throw InvalidParams("--trials must be >= 1");
    }
    const auto table = run_comparison(cfg, a.trials, a.seed, a.jobs);

    Output output(a.out, stdout_stream);
    auto& os = output.stream();
    csv::write_comment(os, version_line("bench"));
    csv::write_comment(os, "panel=" + (a.panel.empty() ? std::string("custom") : a.panel) +
                               " nu=" + std::to_string(cfg.nu) + " c=ones omega=" + format_number(cfg.omega) +
                               " n_trunc=" + std::to_string(cfg.n_trunc) + " rho=" + format_number(cfg.rho) +
                               " window=" + std::to_string(cfg.window) + " switch_prob=" +
                               format_number(cfg.switch_prob) + " horizons=" + a.horizons);
    csv::write_comment(os, "trials=" + std::to_string(a.trials) + " seed=" + std::to_string(a.seed));
    csv::write_comment(os, "ratio_eD = mean(e_bl)/mean(e_D); D: 1 not-a-knot cubic, 2 shape-preserving cubic, 3 linear");
    csv::write_row(os, {"horizon", "ratio_e1", "ratio_e2", "ratio_e3", "mean_bl", "se_bl", "mean_e1", "se_e1",
                        "mean_e2", "se_e2", "mean_e3", "se_e3"});
    for (const auto& row : table.rows) {
        csv::write_row(os, {std::to_string(row.horizon), format_number(row.ratio[0]), format_number(row.ratio[1]),
                            format_number(row.ratio[2]), format_number(row.mean_bl), format_number(row.se_bl),
                            format_number(row.mean_d[0]), format_number(row.se_d[0]), format_number(row.mean_d[1]),
                            format_number(row.se_d[1]), format_number(row.mean_d[2]), format_number(row.se_d[2])});
    }
}

struct TruncationArgs {
    std::string pairs = "25:50,50:100,100:250,250:500,500:1000";
    int nu = 8;
    std::string omega = "pi/2";
    double rho = 0.4;
    int horizon = 12;
    double switch_prob = 0.5;
    bool allow_equal_pairs = false;
    std::size_t trials = 10000;
    std::uint64_t seed = 1;
    unsigned jobs = default_jobs();
    std::string out;
};

void cmd_truncation(const TruncationArgs& a, std::ostream& stdout_stream)
{
    TruncationConfig cfg;
    cfg.nu = a.nu;
    cfg.omega = parse_angle(a.omega);
    cfg.rho = a.rho;
    cfg.horizon = a.horizon;
    cfg.switch_prob = a.switch_prob;
    cfg.allow_equal_pairs = a.allow_equal_pairs;
    const auto pairs = parse_pairs(a.pairs);
    if (a.trials < 1) {
        throw InvalidParams("--trials must be >= 1");
    }
    const auto rows = run_truncation_table(cfg, pairs, a.trials, a.seed, a.jobs);

    Output output(a.out, stdout_stream);
    auto& os = output.stream();
    csv::write_comment(os, version_line("truncation"));
    csv::write_comment(os, "nu=" + std::to_string(cfg.nu) + " c=ones omega=" + format_number(cfg.omega) +
                               " rho=" + format_number(cfg.rho) + " horizon=" + std::to_string(cfg.horizon) +
                               " switch_prob=" + format_number(cfg.switch_prob) + " pairs=" + a.pairs);
    csv::write_comment(os, "trials=" + std::to_string(a.trials) + " seed=" + std::to_string(a.seed));
    csv::write_row(os, {"n1", "n2", "mean_E", "se_E"});
    for (const auto& row : rows) {
        csv::write_row(os, {std::to_string(row.n1), std::to_string(row.n2), format_number(row.discrepancy.mean),
                            format_number(row.discrepancy.std_error)});
    }
}

struct FigureArgs {
    int figure = 0;
    std::uint64_t seed = 1;
    std::uint64_t trial = 0;
    std::string out;
};

void cmd_figure(const FigureArgs& a, std::ostream& stdout_stream)
{
    const auto spec = FigureSpec::standard(a.figure);
    const auto fig = figure_data(spec, a.seed, a.trial);

    Output output(a.out, stdout_stream);
    auto& os = output.stream();
    csv::write_comment(os, version_line("figure"));
    const char* spline_name = spec.spline == SplineKind::pchip ? "shape-preserving cubic"
                              : spec.spline == SplineKind::linear ? "linear"
                                                                  : "not-a-knot cubic";
    std::string params = "figure=" + std::to_string(spec.id) + " nu=" + std::to_string(spec.nu) +
                         " c=ones omega=" + format_number(spec.omega) + " n_trunc=" + std::to_string(spec.n_trunc) +
                         " window=" + std::to_string(spec.window) + " rho=" + format_number(spec.rho) +
                         " horizon=" + std::to_string(spec.horizon) + " spline=" + spline_name;
    if (spec.n_second) {
        params += " n_trunc_2=" + std::to_string(*spec.n_second);
    }
    csv::write_comment(os, params);
    csv::write_comment(os, "seed=" + std::to_string(a.seed) + " trial=" + std::to_string(a.trial));
    if (!spec.note.empty()) {
        csv::write_comment(os, spec.note);
    }
    csv::write_comment(os, "the band-limited approximation is not computed for t <= 0");

    std::vector<std::string> header{"t", "x", "bl_forecast", "moving_avg", "spline_forecast"};
    if (spec.n_second) {
        header.emplace_back("bl_forecast_N2");
    }
    csv::write_row(os, header);
    for (std::size_t i = 0; i < fig.t.size(); ++i) {
        std::vector<std::string> row{std::to_string(fig.t[i]), format_number(fig.x[i]),
                                     format_number(fig.bl_forecast[i]), format_number(fig.moving_avg[i]),
                                     format_number(fig.spline_forecast[i])};
        if (spec.n_second) {
            row.push_back(format_number(fig.bl_forecast_second[i]));
        }
        csv::write_row(os, row);
    }
}

} // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Band-limited extrapolation of one-sided sequences", "bandext"};
    app.require_subcommand(1);
    app.set_version_flag("--version", BANDEXT_VERSION);

    ExtrapolateArgs ex;
    auto* sub_ex = app.add_subcommand("extrapolate", "Forecast a one-column CSV (oldest first, last row is t = 0)");
    sub_ex->add_option("input", ex.input, "Input CSV, '-' for stdin");
    sub_ex->add_option("--omega", ex.omega, "Band edge in (0, pi); accepts forms like pi/2")->required();
    sub_ex->add_option("--rho", ex.rho, "Tikhonov weight")->capture_default_str();
    sub_ex->add_option("--n-trunc", ex.n_trunc, "Truncation horizon N (default: all history)");
    sub_ex->add_option("--horizon", ex.horizon, "Forecast horizon L")->required();
    sub_ex->add_flag("--highband", ex.highband, "Approximate by a high-frequency band-limited sequence");
    sub_ex->add_option("--method", ex.method, "direct or neumann")->capture_default_str();
    sub_ex->add_option("--depth", ex.depth, "Neumann partial-sum depth")->capture_default_str();
    sub_ex->add_flag("--allow-unregularized", ex.allow_unregularized, "Solve at rho = 0 even when ill-conditioned");
    sub_ex->add_option("--out", ex.out, "Output CSV (default stdout)");

    BenchArgs bench;
    auto* sub_bench = app.add_subcommand("bench", "Monte-Carlo comparison against spline extrapolation");
    sub_bench->add_option("--panel", bench.panel, "Preset a (nu=1, omega=pi/2, N=50) or b (nu=8, omega=pi/5, N=100)");
    sub_bench->add_option("--nu", bench.nu, "State dimension");
    sub_bench->add_option("--omega", bench.omega, "Band edge");
    sub_bench->add_option("--n-trunc", bench.n_trunc, "Truncation horizon N");
    sub_bench->add_option("--rho", bench.rho, "Tikhonov weight")->capture_default_str();
    sub_bench->add_option("--window", bench.window, "Moving-average window")->capture_default_str();
    sub_bench->add_option("--horizons", bench.horizons, "Comma-separated forecast horizons")->capture_default_str();
    sub_bench->add_option("--switch-prob", bench.switch_prob, "Per-step probability of a new transition matrix")
        ->capture_default_str();
    sub_bench->add_option("--trials", bench.trials, "Monte-Carlo trials")->capture_default_str();
    sub_bench->add_option("--seed", bench.seed, "Master seed")->capture_default_str();
    sub_bench->add_option("--jobs", bench.jobs, "Worker threads (results do not depend on it)");
    sub_bench->add_option("--out", bench.out, "Output CSV (default stdout)");

    TruncationArgs trunc;
    auto* sub_trunc = app.add_subcommand("truncation", "Sensitivity of the forecast to the truncation horizon");
    sub_trunc->add_option("--pairs", trunc.pairs, "Comma-separated N1:N2 pairs")->capture_default_str();
    sub_trunc->add_option("--nu", trunc.nu, "State dimension")->capture_default_str();
    sub_trunc->add_option("--omega", trunc.omega, "Band edge")->capture_default_str();
    sub_trunc->add_option("--rho", trunc.rho, "Tikhonov weight")->capture_default_str();
    sub_trunc->add_option("--horizon", trunc.horizon, "Forecast horizon L")->capture_default_str();
    sub_trunc->add_option("--switch-prob", trunc.switch_prob, "Per-step switching probability")->capture_default_str();
    sub_trunc->add_flag("--allow-equal-pairs", trunc.allow_equal_pairs, "Accept N1 == N2 (diagnostic)");
    sub_trunc->add_option("--trials", trunc.trials, "Monte-Carlo trials")->capture_default_str();
    sub_trunc->add_option("--seed", trunc.seed, "Master seed")->capture_default_str();
    sub_trunc->add_option("--jobs", trunc.jobs, "Worker threads (results do not depend on it)");
    sub_trunc->add_option("--out", trunc.out, "Output CSV (default stdout)");

    FigureArgs fig;
    auto* sub_fig = app.add_subcommand("figure", "Export the curves of an example figure as CSV");
    sub_fig->add_option("--figure", fig.figure, "Figure id: 1, 2 or 3")->required();
    sub_fig->add_option("--seed", fig.seed, "Master seed")->capture_default_str();
    sub_fig->add_option("--trial", fig.trial, "Trial id of the plotted path")->capture_default_str();
    sub_fig->add_option("--out", fig.out, "Output CSV (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        if (code == 0) {
            return kExitOk;
        }
        err << app.help();
        return kExitUsage;
    }

    try {
        if (sub_ex->parsed()) {
            cmd_extrapolate(ex, std::cin, out);
        } else if (sub_bench->parsed()) {
            cmd_bench(bench, out);
        } else if (sub_trunc->parsed()) {
            cmd_truncation(trunc, out);
        } else if (sub_fig->parsed()) {
            cmd_figure(fig, out);
        }
    } catch (const csv::ParseError& e) {
        err << "bandext: malformed input: " << e.what() << '\n';
        return kExitUsage;
    } catch (const InvalidParams& e) {
        err << "bandext: " << e.what() << '\n';
        return kExitUsage;
    } catch (const NearSingular& e) {
        err << "bandext: " << e.what() << "; use --rho > 0 or pass --allow-unregularized\n";
        return kExitNumerical;
    } catch (const Error& e) {
        err << "bandext: " << e.what() << '\n';
        return kExitNumerical;
    }
    return kExitOk;
}

} // namespace bandext::cli
