#include <pybind11/complex.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "kdnls/acceptance.hpp"
#include "kdnls/jobs.hpp"

namespace py = pybind11;
using namespace kdnls;

namespace {

Grid2D to_grid(const py::object& g) {
    if (py::isinstance<py::str>(g)) return parse_grid(g.cast<std::string>());
    const auto v = g.cast<std::tuple<double, double, std::size_t, double, double, std::size_t>>();
    return Grid2D::make(std::get<0>(v), std::get<1>(v), std::get<2>(v), std::get<3>(v), std::get<4>(v), std::get<5>(v));
}

// complex array of shape (nt, nx), row j at t_j
py::array_t<cd> as_array(const ComplexField2D& f) {
    const Grid2D& g = f.grid();
    py::array_t<cd> out({g.nt, g.nx});
    auto w = out.mutable_unchecked<2>();
    for (std::size_t j = 0; j < g.nt; ++j)
        for (std::size_t i = 0; i < g.nx; ++i) w(j, i) = f(i, j);
    return out;
}

SolutionSource source(const std::string& name, const ParamMap& params, const std::string& transcription,
                      const std::string& precision) {
    return build_solution(name, params, parse_transcription(transcription), parse_precision(precision));
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Kundu-DNLS solutions by Darboux transformation";
    m.attr("__version__") = kToolVersion;

    py::register_exception<Error>(m, "KdnlsError", PyExc_ValueError);

    m.def("solution_names", &solution_names);
    m.def("param_schema", [](const std::string& name) {
        py::dict d;
        for (const ParamSpec& p : param_schema(name)) d[py::str(p.key)] = p.default_value;
        return d;
    });

    m.def(
        "field",
        [](const std::string& name, const py::object& grid, const ParamMap& params, const std::string& transcription,
           const std::string& precision) {
            const SolutionSource src = source(name, params, transcription, precision);
            const Grid2D g = to_grid(grid);
            ComplexField2D f;
            {
                py::gil_scoped_release nogil;
                f = sample(src.field, g);
            }
            return as_array(f);
        },
        py::arg("solution"), py::arg("grid"), py::arg("params") = ParamMap{}, py::arg("transcription") = "corrected",
        py::arg("precision") = "auto", "Q on a grid given as 'x0:x1:nx,t0:t1:nt' or a 6-tuple; shape (nt, nx).");

    m.def(
        "evaluate",
        [](const std::string& name, double x, double t, const ParamMap& params, const std::string& transcription) {
            return source(name, params, transcription, "auto").field(x, t);
        },
        py::arg("solution"), py::arg("x"), py::arg("t"), py::arg("params") = ParamMap{},
        py::arg("transcription") = "corrected");

    m.def(
        "residual_order",
        [](const std::string& name, const py::object& grid, const ParamMap& params, int refinements) {
            const SolutionSource src = source(name, params, "corrected", "auto");
            const ConventionVariant v{+1, VConjugation::GIndependent};
            return pde_residual(src.field, src.seed, v, to_grid(grid), refinements).estimated_order;
        },
        py::arg("solution"), py::arg("grid"), py::arg("params") = ParamMap{}, py::arg("refinements") = 3,
        "Estimated convergence order of the finite-difference PDE residual.");

    m.def(
        "peaks",
        [](const std::string& name, const py::object& grid, const ParamMap& params, int order) {
            const SolutionSource src = source(name, params, "corrected", "auto");
            PeakOptions opt;
            opt.order = order;
            const PeakSet p = peak_analysis(sample(src.field, to_grid(grid)), opt);
            py::list peaks;
            for (const Peak& k : p.peaks) peaks.append(py::make_tuple(k.x, k.t, k.height));
            py::dict d;
            d["classification"] = to_string(p.classification);
            d["background"] = p.background;
            d["ring_count"] = p.ring_count;
            d["has_center"] = p.has_center;
            d["peaks"] = peaks;
            return d;
        },
        py::arg("solution"), py::arg("grid"), py::arg("params") = ParamMap{}, py::arg("order") = 0);

    m.def("pin_down_convention", []() {
        const PinDownResult r = pin_down_convention(make_plane_wave_seed(-2, 1));
        py::list scores;
        for (const VariantScore& s : r.scores)
            scores.append(py::make_tuple(s.variant.name(), s.pde_residual, s.lax_x_residual, s.lax_t_residual, s.passes));
        return py::make_tuple(r.selected ? py::cast(r.selected->name()) : py::none(), scores);
    });

    m.def(
        "run_criterion",
        [](int id) {
            CriterionResult r;
            {
                py::gil_scoped_release nogil;
                r = run_criterion(id);
            }
            py::list checks;
            for (const Check& c : r.checks) checks.append(py::make_tuple(c.label, c.ok, c.detail));
            return py::make_tuple(r.passed(), r.seconds, checks);
        },
        py::arg("id"));

    m.def("figure_commands", []() {
        py::dict d;
        for (const FigureSpec& f : figures()) d[py::int_(f.number)] = figure_command(f);
        return d;
    });
}
