#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "wavefront/fronts.hpp"
#include "wavefront/hypotheses.hpp"
#include "wavefront/speeds.hpp"
#include "wavefront/waves.hpp"

namespace py = pybind11;
using namespace wavefront;

namespace {

ExtensionPolicy policy_from(const std::string& left, const std::string& right) {
    auto parse = [](const std::string& s) {
        if (s == "edge") return Extension::EdgeConstant;
        if (s == "zero") return Extension::Zero;
        throw std::domain_error("extension must be 'edge' or 'zero'");
    };
    return {parse(left), parse(right)};
}

Kernel kernel_from(const std::string& kind, double alpha) {
    if (kind == "dirac") return Kernel::dirac();
    if (kind == "gaussian") return Kernel::gaussian(alpha);
    throw std::domain_error("kernel kind must be 'dirac' or 'gaussian'");
}

struct PyModel {
    ModelSpec spec;
};

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Spreading speeds, forced waves and steady states for monotone "
              "evolution models in shifting habitats";

    py::class_<Grid>(m, "Grid")
        .def(py::init([](double x_min, double x_max, double dx) {
                 return make_grid(x_min, x_max, dx);
             }),
             py::arg("x_min"), py::arg("x_max"), py::arg("dx"))
        .def_readonly("x_min", &Grid::x_min)
        .def_readonly("dx", &Grid::dx)
        .def_readonly("n", &Grid::n)
        .def_property_readonly("x_max", &Grid::x_max)
        .def("x", &Grid::x);

    py::class_<GridFunction>(m, "GridFunction")
        .def(py::init([](const Grid& g, std::vector<double> values, const std::string& left,
                         const std::string& right) {
                 return GridFunction(g, std::move(values), policy_from(left, right));
             }),
             py::arg("grid"), py::arg("values"), py::arg("left") = "edge",
             py::arg("right") = "edge")
        .def_static("constant",
                    [](const Grid& g, double v) { return GridFunction::constant(g, v); })
        .def_property_readonly("grid", &GridFunction::grid)
        .def_property_readonly("values",
                               [](const GridFunction& u) { return u.values(); })
        .def("value_at", &GridFunction::value_at)
        .def("min", &GridFunction::min_value)
        .def("max", &GridFunction::max_value)
        .def("__len__", &GridFunction::size);

    m.def("translate", &translate, py::arg("u"), py::arg("y"));
    m.def("weighted_sup_norm", &weighted_sup_norm);
    m.def("sup_abs_diff", &sup_abs_diff);
    m.def("compare", [](const GridFunction& u, const GridFunction& v) {
        switch (compare(u, v)) {
            case Ordering::Equal: return "equal";
            case Ordering::Leq: return "leq";
            case Ordering::Geq: return "geq";
            default: return "incomparable";
        }
    });

    m.def(
        "bump_fixture",
        [](const std::string& kind, double d, const Grid& g) {
            return bump_fixture(kind == "h" ? BumpKind::H : BumpKind::XiD, d, g);
        },
        py::arg("kind"), py::arg("d"), py::arg("grid"));
    m.def("heaviside_fixture", &heaviside_fixture, py::arg("grid"), py::arg("x0"));

    py::class_<Kernel>(m, "Kernel")
        .def_static("dirac", &Kernel::dirac)
        .def_static("gaussian", &Kernel::gaussian)
        .def("khat", &Kernel::khat);
    m.def("convolve", &convolve);

    py::class_<ShiftProfile>(m, "ShiftProfile");
    m.def("constant_profile", &constant_profile);
    m.def("ramp_profile", &ramp_profile, py::arg("r_left"), py::arg("r_right"),
          py::arg("s_width"));
    m.def("tabulated_profile", &tabulated_profile);

    py::class_<Reaction>(m, "Reaction")
        .def_readonly("u_star", &Reaction::u_star)
        .def_readonly("fprime0", &Reaction::fprime0)
        .def("__call__", [](const Reaction& f, double s, double u) { return f.f(s, u); });
    m.def("shifted_logistic", &shifted_logistic, py::arg("profile"), py::arg("mu"));
    m.def("logistic_reaction", &logistic_reaction, py::arg("r"), py::arg("mu"));

    py::class_<KppReaction>(m, "KppReaction")
        .def_readonly("u_minus_star", &KppReaction::u_minus_star)
        .def_readonly("u_plus_star", &KppReaction::u_plus_star)
        .def("__call__", [](const KppReaction& h, double x, double u) { return h.h(x, u); });
    m.def("kpp_reaction", &kpp_reaction);

    py::class_<PyModel>(m, "Model");
    m.def(
        "model_a",
        [](double d, double mu, double tau, double c_shift, const Kernel& k, const Reaction& f) {
            PyModel pm{ModelA{d, mu, tau, c_shift, k, f}};
            validate(pm.spec);
            return pm;
        },
        py::arg("d"), py::arg("mu"), py::arg("tau"), py::arg("c_shift"), py::arg("kernel"),
        py::arg("reaction"));
    m.def(
        "model_b",
        [](double d, double mu, double tau, double c_shift, const Kernel& k, const Reaction& f) {
            PyModel pm{ModelB{d, mu, tau, c_shift, k, f}};
            validate(pm.spec);
            return pm;
        },
        py::arg("d"), py::arg("mu"), py::arg("tau"), py::arg("c_shift"), py::arg("kernel"),
        py::arg("reaction"));
    m.def(
        "model_c",
        [](double d, double mu, double tau, const Reaction& f) {
            PyModel pm{ModelC{d, mu, tau, f}};
            validate(pm.spec);
            return pm;
        },
        py::arg("d"), py::arg("mu"), py::arg("tau"), py::arg("reaction"));
    m.def(
        "model_d",
        [](double d, const KppReaction& h) {
            PyModel pm{ModelD{d, h}};
            validate(pm.spec);
            return pm;
        },
        py::arg("d"), py::arg("reaction"));

    m.def("stable_dt",
          [](const PyModel& pm, const Grid& g) { return stable_dt(pm.spec, g); });
    m.def("upper_state", [](const PyModel& pm) { return upper_state(pm.spec); });

    py::class_<RunRecord>(m, "RunRecord")
        .def_readonly("times", &RunRecord::times)
        .def_readonly("snapshots", &RunRecord::snapshots)
        .def_readonly("min_seen", &RunRecord::min_seen)
        .def_readonly("max_seen", &RunRecord::max_seen)
        .def("snapshot", &RunRecord::snapshot)
        .def("final_state", &RunRecord::final_state);
    m.def(
        "simulate",
        [](const PyModel& pm, const GridFunction& phi0, double T, double record_every) {
            return simulate(pm.spec, phi0, T, record_every);
        },
        py::arg("model"), py::arg("phi0"), py::arg("T"), py::arg("record_every") = 1.0);
    m.def(
        "moving_frame_map",
        [](const PyModel& pm, double c, double t0) { return moving_frame_map(pm.spec, c, t0); },
        py::arg("model"), py::arg("c"), py::arg("t0"));

    py::class_<LocalSpeed>(m, "LocalSpeed")
        .def_readonly("value", &LocalSpeed::value)
        .def_readonly("degenerate", &LocalSpeed::degenerate);
    m.def("kpp_local_speed", &kpp_local_speed, py::arg("d"), py::arg("mu"), py::arg("fprime0"));
    m.def("kpp_rd_speed", &kpp_rd_speed, py::arg("d"), py::arg("hprime0"));

    py::class_<DispersionParams>(m, "DispersionParams")
        .def(py::init([](double d, double mu, double tau, double fprime0, const std::string& kind,
                         double alpha) {
                 return DispersionParams{d, mu, tau, fprime0, kernel_from(kind, alpha)};
             }),
             py::arg("d"), py::arg("mu"), py::arg("tau"), py::arg("fprime0"),
             py::arg("kernel") = "gaussian", py::arg("alpha") = 1.0);
    m.def(
        "dispersion_speed",
        [](const DispersionParams& p, double c, const std::string& sign) {
            auto s = dispersion_speed(p, c, sign == "minus" ? Branch::Minus : Branch::Plus);
            return py::make_tuple(s.value, s.argmin_rho);
        },
        py::arg("params"), py::arg("c"), py::arg("sign") = "plus");
    m.def("min_wave_speed", [](const DispersionParams& p) {
        auto w = min_wave_speed(p);
        return py::make_tuple(w.c_star, w.c_star_dual, w.argmin_rho);
    });

    py::class_<WaveProfile>(m, "WaveProfile")
        .def_readonly("profile", &WaveProfile::profile)
        .def_readonly("c", &WaveProfile::c)
        .def_readonly("residual", &WaveProfile::residual)
        .def_readonly("iterations", &WaveProfile::iterations)
        .def_readonly("converged", &WaveProfile::converged)
        .def_readonly("left_value", &WaveProfile::left_value)
        .def_readonly("right_value", &WaveProfile::right_value)
        .def_readonly("monotone", &WaveProfile::monotone);
    m.def(
        "monotone_wave_iterate",
        [](const std::function<GridFunction(const GridFunction&)>& map, const Grid& g,
           double r_star, double tol, int max_iter, double c) {
            return monotone_wave_iterate(map, g, r_star, tol, max_iter, c);
        },
        py::arg("map"), py::arg("grid"), py::arg("r_star"), py::arg("tol") = 1e-8,
        py::arg("max_iter") = 2000, py::arg("c") = 0.0);
    m.def(
        "nonlocal_wave_map",
        [](const GridFunction& phi, double c, double d, double mu, double tau, const Kernel& k,
           const Reaction& f) { return nonlocal_wave_map(phi, c, WaveMapParams{d, mu, tau, k, f}); },
        py::arg("phi"), py::arg("c"), py::arg("d"), py::arg("mu"), py::arg("tau"),
        py::arg("kernel"), py::arg("reaction"));
    m.def(
        "dirichlet_steady_oracle",
        [](double d, double mu, const Reaction& f, const Grid& g, double L, double tol) {
            auto r = dirichlet_steady_oracle(d, mu, f, g, L, tol);
            return py::make_tuple(r.w, r.slope0);
        },
        py::arg("d"), py::arg("mu"), py::arg("reaction"), py::arg("grid"), py::arg("L"),
        py::arg("tol") = 1e-6);

    m.def(
        "level_position",
        [](const GridFunction& u, double lam, const std::string& side) {
            auto p = level_position(u, lam, side == "leftmost" ? Side::Leftmost : Side::Rightmost);
            return p ? py::cast(*p) : py::none().cast<py::object>();
        },
        py::arg("u"), py::arg("level"), py::arg("side") = "rightmost");
    m.def(
        "empirical_speed",
        [](const RunRecord& rec, double level, const std::string& side, double t_lo, double t_hi) {
            auto tr = track_front(rec, level, side == "leftmost" ? Side::Leftmost : Side::Rightmost);
            auto fit = empirical_speed(tr, t_lo, t_hi);
            return py::make_tuple(fit.slope, fit.stderr_slope);
        },
        py::arg("record"), py::arg("level"), py::arg("side"), py::arg("t_lo"), py::arg("t_hi"));
    m.def(
        "interval_convergence",
        [](const RunRecord& rec, double r_star, double c_lo, double c_hi, double eps) {
            Curve c = interval_convergence(rec, r_star, c_lo, c_hi, eps);
            return py::make_tuple(c.t, c.value);
        },
        py::arg("record"), py::arg("r_star"), py::arg("c_lo"), py::arg("c_hi"), py::arg("eps"));
    m.def(
        "tail_decay_behind",
        [](const RunRecord& rec, double c, double eps) {
            Curve m_ = tail_decay_behind(rec, c, eps);
            return py::make_tuple(m_.t, m_.value);
        },
        py::arg("record"), py::arg("c"), py::arg("eps"));
}
