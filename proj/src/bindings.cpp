#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <array>
#include <cstdint>
#include <memory>
#include <string>
#include <utility>

#include "gevrey/bounds.hpp"
#include "gevrey/config.hpp"
#include "gevrey/dynamics.hpp"
#include "gevrey/errors.hpp"
#include "gevrey/ic.hpp"
#include "gevrey/io.hpp"
#include "gevrey/norms.hpp"
#include "gevrey/run.hpp"
#include "gevrey/xform.hpp"

namespace py = pybind11;

namespace {

std::shared_ptr<const gevrey::Lattice> lattice_of(int truncation) {
  return std::make_shared<const gevrey::Lattice>(truncation);
}

gevrey::EquationSpec equation_from(const std::string& kind, double alpha, double s, double nu,
                                   bool projected) {
  if (kind == "euler") return gevrey::Euler{};
  if (kind == "burgers") return gevrey::Burgers{projected};
  if (kind == "euler_voigt") return gevrey::EulerVoigt{alpha, s};
  if (kind == "ns_voigt") return gevrey::NSVoigt{alpha, s, nu};
  throw gevrey::config_error("unknown equation kind '" + kind + "'");
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Galerkin-truncated incompressible flows with Gevrey-envelope diagnostics";

  py::class_<gevrey::SpectralField>(m, "Field",
                                    "Fourier coefficients of a 3-component velocity field on the "
                                    "cube-truncated integer lattice (zero mode excluded)")
      .def_property_readonly(
          "truncation",
          [](const gevrey::SpectralField& f) { return f.lattice().truncation(); })
      .def_property_readonly("size",
                             [](const gevrey::SpectralField& f) { return f.lattice().size(); })
      .def_property_readonly("solenoidal", &gevrey::SpectralField::solenoidal_tag)
      .def(
          "coeff",
          [](const gevrey::SpectralField& f, int n1, int n2, int n3) {
            return f.at(f.lattice().index_of({n1, n2, n3}));
          },
          py::arg("n1"), py::arg("n2"), py::arg("n3"),
          "three complex components of the coefficient at mode (n1, n2, n3)")
      .def(
          "set_coeff",
          [](gevrey::SpectralField& f, int n1, int n2, int n3,
             const std::array<gevrey::Complex, 3>& value) {
            f.set(f.lattice().index_of({n1, n2, n3}), value);
            f.set_solenoidal_tag(false);
          },
          py::arg("n1"), py::arg("n2"), py::arg("n3"), py::arg("value"))
      .def("scale", &gevrey::SpectralField::scale, py::arg("factor"))
      .def("copy", [](const gevrey::SpectralField& f) { return f; });

  m.def(
      "taylor_green",
      [](int n, double amplitude) {
        return gevrey::make_ic(gevrey::TaylorGreenIC{amplitude}, lattice_of(n));
      },
      py::arg("n"), py::arg("amplitude") = 1.0);
  m.def(
      "abc_flow",
      [](int n, double a, double b, double c, double amplitude) {
        return gevrey::make_ic(gevrey::AbcIC{a, b, c, amplitude}, lattice_of(n));
      },
      py::arg("n"), py::arg("a") = 1.0, py::arg("b") = 1.0, py::arg("c") = 1.0,
      py::arg("amplitude") = 1.0);
  m.def(
      "gevrey_random",
      [](int n, double sigma0, double q0, std::uint64_t seed, double amplitude) {
        return gevrey::make_ic(gevrey::GevreyRandomIC{sigma0, q0, seed, amplitude}, lattice_of(n));
      },
      py::arg("n"), py::arg("sigma0"), py::arg("q0") = 0.0, py::arg("seed") = 0,
      py::arg("amplitude") = 1.0);
  m.def(
      "load_field", [](const std::string& path) { return gevrey::load_field(path); },
      py::arg("path"));
  m.def(
      "save_field",
      [](const gevrey::SpectralField& f, const std::string& path) { gevrey::save_field(f, path); },
      py::arg("field"), py::arg("path"));

  m.def(
      "energy",
      [](const gevrey::SpectralField& f) { return gevrey::conserved_quantity(f, gevrey::Euler{}); },
      py::arg("field"), "squared L2 size, the inviscid invariant of the undamped flow");
  m.def(
      "sobolev_norm",
      [](const gevrey::SpectralField& f, double q) { return gevrey::sobolev_norm(f, q); },
      py::arg("field"), py::arg("q"));
  m.def(
      "gevrey_norm",
      [](const gevrey::SpectralField& f, double sigma, double q) {
        return gevrey::gevrey_norm(f, gevrey::GevreyIndex{sigma, q});
      },
      py::arg("field"), py::arg("sigma"), py::arg("q"));
  m.def(
      "triple_norm",
      [](const gevrey::SpectralField& f, double alpha, double s) {
        return gevrey::triple_norm(f, gevrey::TripleNormParams{alpha, s});
      },
      py::arg("field"), py::arg("alpha"), py::arg("s"));
  m.def(
      "gevrey_triple_norm",
      [](const gevrey::SpectralField& f, double sigma, double alpha, double s) {
        return gevrey::gevrey_triple_norm(f, sigma, gevrey::TripleNormParams{alpha, s});
      },
      py::arg("field"), py::arg("sigma"), py::arg("alpha"), py::arg("s"));
  m.def(
      "fit_radius",
      [](const gevrey::SpectralField& f) {
        const gevrey::RadiusFit fit = gevrey::fit_analyticity_radius(f);
        return py::make_tuple(fit.sigma_hat, fit.r2);
      },
      py::arg("field"), "least-squares analyticity-radius estimate (sigma_hat, r2)");

  m.def(
      "max_divergence_ratio",
      [](const gevrey::SpectralField& f) { return gevrey::max_divergence_ratio(f); },
      py::arg("field"));
  m.def(
      "project_solenoidal",
      [](const gevrey::SpectralField& f) { return gevrey::project_solenoidal(f); },
      py::arg("field"));
  m.def(
      "enforce_hermitian",
      [](const gevrey::SpectralField& f) { return gevrey::enforce_hermitian(f); },
      py::arg("field"));
  m.def(
      "nonlinear_term",
      [](const gevrey::SpectralField& f, bool projected) {
        return gevrey::nonlinear_term(f, projected);
      },
      py::arg("field"), py::arg("projected") = true);

  m.def(
      "solve_psi_sobolev",
      [](const gevrey::SpectralField& v, double beta, double epsilon, double q) {
        const gevrey::PsiSolution sol =
            gevrey::solve_psi(v, beta, epsilon, gevrey::SobolevWeight{q});
        return py::make_tuple(sol.psi, sol.residual, sol.iterations);
      },
      py::arg("field"), py::arg("beta"), py::arg("epsilon"), py::arg("q"));
  m.def(
      "solve_psi_triple",
      [](const gevrey::SpectralField& v, double beta, double epsilon, double alpha, double s) {
        const gevrey::PsiSolution sol =
            gevrey::solve_psi(v, beta, epsilon, gevrey::TripleWeight{alpha, s});
        return py::make_tuple(sol.psi, sol.residual, sol.iterations);
      },
      py::arg("field"), py::arg("beta"), py::arg("epsilon"), py::arg("alpha"), py::arg("s"));
  m.def(
      "apply_gevrey_weight",
      [](const gevrey::SpectralField& v, double sigma) {
        return gevrey::apply_exponential_weight(v, sigma);
      },
      py::arg("field"), py::arg("sigma"),
      "multiply each coefficient by exp(sigma |n|); negative sigma inverts");

  m.def(
      "step",
      [](gevrey::SpectralField f, const std::string& equation, double dt, double alpha, double s,
         double nu, bool projected) {
        const gevrey::EquationSpec eq = equation_from(equation, alpha, s, nu, projected);
        gevrey::step(f, eq, dt);
        return f;
      },
      py::arg("field"), py::arg("equation"), py::arg("dt"), py::arg("alpha") = 1.0,
      py::arg("s") = 1.0, py::arg("nu") = 1.0, py::arg("projected") = false,
      "one fixed-step fourth-order step; returns the new field");
  m.def(
      "integrate",
      [](const gevrey::SpectralField& v0, const std::string& equation, double dt, double t_end,
         double sample_interval, const std::vector<double>& sobolev_indices, double alpha,
         double s, double nu, bool projected) {
        const gevrey::EquationSpec eq = equation_from(equation, alpha, s, nu, projected);
        const gevrey::RunSeries series =
            gevrey::integrate(v0, eq, gevrey::IntegrationParams{dt, t_end, sample_interval},
                              sobolev_indices, nullptr);
        py::dict out;
        py::list t, energy, sobolev;
        for (const gevrey::Sample& smp : series.samples) {
          t.append(smp.t);
          energy.append(smp.energy);
          sobolev.append(smp.sobolev);
        }
        out["t"] = std::move(t);
        out["energy"] = std::move(energy);
        out["sobolev"] = std::move(sobolev);
        out["blew_up"] = series.blew_up;
        out["last_valid_time"] = series.last_valid_time;
        return out;
      },
      py::arg("field"), py::arg("equation"), py::arg("dt"), py::arg("t_end"),
      py::arg("sample_interval") = 0.0, py::arg("sobolev_indices") = std::vector<double>{},
      py::arg("alpha") = 1.0, py::arg("s") = 1.0, py::arg("nu") = 1.0,
      py::arg("projected") = false);

  m.def(
      "lattice_sum_cs",
      [](double s, double tail_tol) { return gevrey::lattice_sum_cs(s, tail_tol); }, py::arg("s"),
      py::arg("tail_tol") = 1e-8);

  m.def(
      "run_config",
      [](const std::string& config_path, const std::string& out_dir, bool quiet) {
        const gevrey::RunConfig cfg = gevrey::load_config(config_path);
        return gevrey::run_pipeline(cfg, out_dir, quiet).exit_code;
      },
      py::arg("config_path"), py::arg("out_dir") = ".", py::arg("quiet") = true,
      "full pipeline: integrate, export series, certify; returns the run exit code");
}
