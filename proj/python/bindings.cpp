#include <bandext/baselines.hpp>
#include <bandext/errors.hpp>
#include <bandext/experiments.hpp>
#include <bandext/extrapolate.hpp>
#include <bandext/kernel.hpp>
#include <bandext/metrics.hpp>
#include <bandext/solver.hpp>

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace bandext;

namespace {

BandParams band(double omega, double rho, int n_trunc, int horizon)
{
    return BandParams{omega, rho, n_trunc, horizon};
}

py::dict extension_dict(const Extension& e)
{
    py::dict d;
    d["forecast"] = e.forecast;
    d["residual_norm"] = e.diagnostics.residual_norm;
    d["condition_estimate"] = e.diagnostics.condition_estimate;
    return d;
}

py::list ratio_rows(const BenchmarkTable& table)
{
    py::list rows;
    for (const auto& r : table.rows) {
        py::dict d;
        d["horizon"] = r.horizon;
        d["ratio"] = py::make_tuple(r.ratio[0], r.ratio[1], r.ratio[2]);
        d["mean_bl"] = r.mean_bl;
        d["se_bl"] = r.se_bl;
        d["mean_d"] = py::make_tuple(r.mean_d[0], r.mean_d[1], r.mean_d[2]);
        d["se_d"] = py::make_tuple(r.se_d[0], r.se_d[1], r.se_d[2]);
        rows.append(d);
    }
    return rows;
}

SmoothedSignal smoothed(std::vector<double> values) { return SmoothedSignal{std::move(values), 1}; }

} // namespace

PYBIND11_MODULE(_bandext, m)
{
    m.doc() = "Band-limited extrapolation of discrete-time signals";

    auto error = py::register_exception<Error>(m, "Error");
    py::register_exception<InvalidParams>(m, "InvalidParams", error.ptr());
    py::register_exception<NearSingular>(m, "NearSingular", error.ptr());
    py::register_exception<TooFewKnots>(m, "TooFewKnots", error.ptr());
    py::register_exception<LengthMismatch>(m, "LengthMismatch", error.ptr());
    py::register_exception<EmptyInput>(m, "EmptyInput", error.ptr());

    m.def("lowpass_coeff", &lowpass_coeff, py::arg("omega"), py::arg("t"));
    m.def(
        "operator_first_row",
        [](double omega, int n) {
            const auto op = build_operator(omega, n);
            return std::vector<double>(op.first_row().begin(), op.first_row().end());
        },
        py::arg("omega"), py::arg("n"));
    m.def(
        "condition_estimate",
        [](double omega, int n, double rho) { return condition_estimate(build_operator(omega, n), rho); },
        py::arg("omega"), py::arg("n"), py::arg("rho"));

    m.def(
        "extrapolate",
        [](std::vector<double> x, double omega, double rho, int n_trunc, int horizon, bool allow_unregularized,
           bool highband) {
            ExtrapolateOptions options;
            options.allow_unregularized = allow_unregularized;
            const PastSignal past(std::move(x));
            const auto p = band(omega, rho, n_trunc, horizon);
            return extension_dict(highband ? extrapolate_highband(past, p, options) : extrapolate(past, p, options));
        },
        py::arg("x"), py::arg("omega"), py::arg("rho") = 0.4, py::arg("n_trunc"), py::arg("horizon"),
        py::arg("allow_unregularized") = false, py::arg("highband") = false);

    m.def(
        "moving_average",
        [](std::vector<double> x, int window) { return moving_average(PastSignal(std::move(x)), window).values; },
        py::arg("x"), py::arg("window"));
    m.def(
        "spline_extrapolate",
        [](std::vector<double> values, int horizon) { return spline_notaknot_extrapolate(smoothed(std::move(values)), horizon); },
        py::arg("values"), py::arg("horizon"));
    m.def(
        "pchip_extrapolate",
        [](std::vector<double> values, int horizon) { return pchip_extrapolate(smoothed(std::move(values)), horizon); },
        py::arg("values"), py::arg("horizon"));
    m.def(
        "linear_extrapolate",
        [](std::vector<double> values, int horizon) { return linear_extrapolate(smoothed(std::move(values)), horizon); },
        py::arg("values"), py::arg("horizon"));

    m.def("horizon_error", [](std::vector<double> truth, std::vector<double> forecast, int l) {
        return horizon_error(truth, forecast, l);
    }, py::arg("truth"), py::arg("forecast"), py::arg("l"));

    m.def(
        "run_comparison",
        [](char panel, std::size_t trials, std::uint64_t seed, unsigned jobs, std::optional<double> rho) {
            auto cfg = ComparisonConfig::panel(panel);
            if (rho) {
                cfg.rho = *rho;
            }
            BenchmarkTable table;
            {
                py::gil_scoped_release release;
                table = run_comparison(cfg, trials, seed, jobs);
            }
            return ratio_rows(table);
        },
        py::arg("panel"), py::arg("trials") = 10000, py::arg("seed") = 1, py::arg("jobs") = 1,
        py::arg("rho") = py::none());

    m.def(
        "run_truncation_table",
        [](std::optional<std::vector<std::pair<int, int>>> pairs, std::size_t trials, std::uint64_t seed,
           unsigned jobs) {
            const auto ladder = pairs.value_or(standard_truncation_pairs());
            std::vector<TruncationRow> rows;
            {
                py::gil_scoped_release release;
                rows = run_truncation_table(TruncationConfig::standard(), ladder, trials, seed, jobs);
            }
            py::list out;
            for (const auto& r : rows) {
                py::dict d;
                d["n1"] = r.n1;
                d["n2"] = r.n2;
                d["mean"] = r.discrepancy.mean;
                d["std_error"] = r.discrepancy.std_error;
                out.append(d);
            }
            return out;
        },
        py::arg("pairs") = py::none(), py::arg("trials") = 10000, py::arg("seed") = 1, py::arg("jobs") = 1);
}
