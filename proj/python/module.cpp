#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "crossing/corpus.hpp"
#include "crossing/error.hpp"
#include "crossing/normalform.hpp"
#include "crossing/oscquad.hpp"
#include "crossing/schrodinger.hpp"
#include "crossing/sweep.hpp"
#include "crossing/symbolcalc.hpp"

namespace py = pybind11;
using namespace crossing;

namespace {

using Matrix = std::array<std::array<cplx, 2>, 2>;
using Terms = std::vector<std::tuple<int, int, double>>;

Poly2 poly2(const Terms& terms) {
  Poly2 p;
  for (auto [i, j, c] : terms) p += Poly2::monomial(i, j, c);
  return p;
}

CrossingPoint crossing_point(const std::string& s) {
  if (s == "plus") return CrossingPoint::Plus;
  if (s == "minus") return CrossingPoint::Minus;
  if (s == "caustic") return CrossingPoint::Caustic;
  throw Error(ErrorCode::Domain, "crossing must be plus, minus or caustic");
}

SchrodingerProblem schrodinger(std::vector<double> V1, std::vector<double> V2, double E0, const Coupling& W, double h,
                               double x_in, double x_out) {
  SchrodingerProblem p;
  p.V1 = Poly1(std::move(V1));
  p.V2 = Poly1(std::move(V2));
  p.E0 = E0;
  p.W = W;
  p.h = h;
  p.x_in = x_in;
  p.x_out = x_out;
  return p;
}

py::dict report_dict(const SweepReport& rep) {
  py::list rows;
  for (const auto& r : rep.rows) {
    py::dict d;
    d["h"] = r.h;
    d["extracted"] = r.extracted.t;
    d["predicted"] = r.predicted.t;
    d["abs_err"] = r.abs_err;
    d["rel_err"] = r.rel_err;
    d["status"] = r.status;
    d["solver"] = r.solver;
    rows.append(d);
  }
  py::dict fits;
  for (const auto& f : rep.fits) {
    py::dict d;
    d["exponent"] = f.fit.exponent;
    d["amplitude"] = f.fit.amplitude;
    d["log_coeff"] = f.fit.log_coeff;
    d["residual"] = f.fit.residual;
    d["prefactor"] = f.prefactor;
    d["predicted_prefactor"] = f.predicted_prefactor;
    fits[py::str(f.entry)] = d;
  }
  py::dict verdicts;
  for (const auto& v : rep.verdicts) verdicts[py::str(v.name)] = py::make_tuple(v.pass, v.value, v.lo, v.hi);
  py::dict out;
  out["m"] = rep.m;
  out["rows"] = rows;
  out["fits"] = fits;
  out["verdicts"] = verdicts;
  out["all_pass"] = rep.all_pass();
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Transfer matrices at tangential crossings";

  static py::exception<Error> exc(m, "CrossingError", PyExc_RuntimeError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      PyErr_SetString(exc.ptr(), e.what());
    }
  });

  py::class_<Coupling>(m, "Coupling")
      .def_static("zero", &Coupling::zero)
      .def_static("constant", &Coupling::constant, py::arg("amplitude"))
      .def_static("bump", &Coupling::bump, py::arg("amplitude"), py::arg("radius"), py::arg("center") = 0.0)
      .def_static("plateau", &Coupling::plateau, py::arg("amplitude"), py::arg("inner"), py::arg("outer"),
                  py::arg("center") = 0.0)
      .def("__call__", &Coupling::operator())
      .def("__repr__", &Coupling::describe);

  m.def("mu_m", &mu_m, py::arg("m"), py::arg("theta"));
  m.def("gamma_real", &gamma_real, py::arg("x"));
  m.def(
      "osc_leading_term",
      [](int order, double scale, cplx a0, double h) { return osc_leading_term(PhaseSpec::monomial(order, scale), a0, h); },
      py::arg("m"), py::arg("scale"), py::arg("a0"), py::arg("h"),
      "Leading term for F = scale * y^{m+1} / (m+1)!.");
  m.def(
      "osc_integral",
      [](int order, double scale, const Coupling& amp, double h, double a, double b) {
        const auto r = osc_integral_numeric(PhaseSpec::monomial(order, scale), AmplitudeSpec::from_coupling(amp), h, a, b);
        return py::make_tuple(r.value, r.error);
      },
      py::arg("m"), py::arg("scale"), py::arg("amplitude"), py::arg("h"), py::arg("a") = -1.0, py::arg("b") = 1.0,
      "(value, error estimate) of int amp(y) e^{iF(y)/h} dy with F = scale * y^{m+1} / (m+1)!.");

  m.def(
      "poisson_bracket", [](const Terms& a, const Terms& b) {
        Terms out;
        const Poly2 r = poisson_bracket(poly2(a), poly2(b));
        for (const auto& [k, c] : r.coeffs()) out.emplace_back(k.first, k.second, c);
        return out;
      },
      py::arg("a"), py::arg("b"), "Symbols are lists of (i, j, c) for c x^i xi^j.");
  m.def(
      "contact_order",
      [](const Terms& p1, const Terms& p2) {
        const auto c = contact_order(poly2(p1), poly2(p2));
        return py::make_tuple(c.m, c.bracket);
      },
      py::arg("p1"), py::arg("p2"));
  m.def(
      "predict_general",
      [](const Terms& p1, const Terms& p2, cplx q1, cplx q2, double h) -> Matrix {
        return transfer_predicted_general(crossing_data(poly2(p1), poly2(p2), q1, q2), h).t;
      },
      py::arg("p1"), py::arg("p2"), py::arg("q1"), py::arg("q2"), py::arg("h"));

  m.def("model_omega", &model_omega, py::arg("m"), py::arg("f_m_0"));
  m.def(
      "model_transfer",
      [](std::vector<double> f, const Coupling& r1, const Coupling& r2, double h, const std::string& solver) {
        auto p = NormalFormProblem::polynomial(Poly1(std::move(f)), r1, r2, -1.0, 1.0, h);
        p.validate();
        SweepOptions opt;
        opt.solver = solver == "neumann" ? ModelSolver::Neumann : solver == "ode" ? ModelSolver::Ode : ModelSolver::Auto;
        const auto row = evaluate_row(p, h, opt);
        return py::make_tuple(row.extracted.t, row.predicted.t, row.solver);
      },
      py::arg("f"), py::arg("r1"), py::arg("r2"), py::arg("h"), py::arg("solver") = "auto",
      "(extracted, predicted, solver) on [-1, 1] for f given by its coefficients.");

  m.def(
      "schrodinger_predict",
      [](std::vector<double> V1, std::vector<double> V2, double E0, const Coupling& W, double h,
         const std::string& which) -> Matrix {
        const auto p = schrodinger(std::move(V1), std::move(V2), E0, W, h, -1.0, 1.0);
        const auto c = crossing_point(which);
        return (c == CrossingPoint::Caustic ? predict_transfer_case_ii(p) : predict_transfer_case_i(p, c)).t;
      },
      py::arg("V1"), py::arg("V2"), py::arg("E0"), py::arg("W"), py::arg("h"), py::arg("crossing") = "plus");
  m.def(
      "schrodinger_numeric",
      [](std::vector<double> V1, std::vector<double> V2, double E0, const Coupling& W, double h, const std::string& which,
         double x_in, double x_out) -> Matrix {
        const auto p = schrodinger(std::move(V1), std::move(V2), E0, W, h, x_in, x_out);
        py::gil_scoped_release release;
        return numeric_transfer_case_i(p, crossing_point(which)).T.t;
      },
      py::arg("V1"), py::arg("V2"), py::arg("E0"), py::arg("W"), py::arg("h"), py::arg("crossing") = "plus",
      py::arg("x_in") = -1.0, py::arg("x_out") = 1.0);

  m.def(
      "fit_power_law",
      [](const std::vector<std::pair<double, double>>& pts, bool with_log) {
        const auto f = fit_power_law(pts, with_log);
        return py::make_tuple(f.exponent, f.amplitude, f.residual);
      },
      py::arg("points"), py::arg("with_log") = false);
  m.def("geometric_grid", &geometric_grid, py::arg("hmax"), py::arg("hmin"), py::arg("n"));
  m.def(
      "model_sweep",
      [](int order, const std::vector<double>& h_values, int jobs) {
        SweepOptions opt;
        opt.jobs = jobs;
        SweepReport rep;
        {
          py::gil_scoped_release release;
          rep = run_sweep(corpus::model_monomial(order, h_values.front()), h_values, opt);
          evaluate_verdicts(rep, {});
        }
        return report_dict(rep);
      },
      py::arg("m"), py::arg("h_values"), py::arg("jobs") = 1,
      "Sweep of f = x^m with unit bump couplings; returns rows, fits and verdicts.");
}
