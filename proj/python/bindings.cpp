// Copyright 2026 The Boussinesq Spectral Authors
// SPDX-License-Identifier: Apache-2.0

#include <pybind11/complex.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include <cstring>
#include <limits>

#include "boussinesq/commands.hpp"
#include "boussinesq/diagnostics.hpp"
#include "boussinesq/fft.hpp"
#include "boussinesq/io.hpp"
#include "boussinesq/nonlinear.hpp"
#include "boussinesq/spectral.hpp"
#include "boussinesq/stepper.hpp"

namespace py = pybind11;
namespace bq = boussinesq;

namespace
{

using CArray = py::array_t<bq::Complex, py::array::c_style | py::array::forcecast>;

std::vector<py::ssize_t> field_shape(const bq::GridSpec &g)
{
  return std::vector<py::ssize_t>(g.dim(), g.modes());
}

CArray to_array(const bq::Coeffs &c, const bq::GridSpec &g)
{
  CArray out(field_shape(g));
  std::memcpy(out.mutable_data(), c.data(), c.size() * sizeof(bq::Complex));
  return out;
}

bq::Coeffs from_array(const CArray &a, const bq::GridSpec &g, const char *what)
{
  if (static_cast<std::size_t>(a.size()) != g.size())
    throw py::value_error(std::string(what) + ": expected " + std::to_string(g.size()) +
                          " coefficients, got " + std::to_string(a.size()));
  return bq::Coeffs(a.data(), a.data() + a.size());
}

CArray vector_to_array(const bq::VectorField &u)
{
  std::vector<py::ssize_t> shape = field_shape(u.grid);
  shape.insert(shape.begin(), u.components());
  CArray out(shape);
  bq::Complex *p = out.mutable_data();
  for (const auto &c : u.comps)
  {
    std::memcpy(p, c.data(), c.size() * sizeof(bq::Complex));
    p += c.size();
  }
  return out;
}

bq::VectorField vector_from_array(const bq::GridSpec &g, const CArray &a)
{
  if (a.ndim() < 1 || a.shape(0) != g.dim() ||
      static_cast<std::size_t>(a.size()) != g.size() * g.dim())
    throw py::value_error("velocity: expected shape (dim, modes, ...)");
  bq::VectorField u = bq::VectorField::zeros(g);
  for (int c = 0; c < g.dim(); ++c)
    std::memcpy(u.comps[c].data(), a.data() + c * g.size(), g.size() * sizeof(bq::Complex));
  return u;
}

double fit_or_nan(const std::optional<bq::RadiusFit> &f)
{
  return f ? f->tau_est : std::numeric_limits<double>::quiet_NaN();
}

py::dict record_dict(const bq::DiagnosticsRecord &r)
{
  py::dict d;
  d["t"] = r.t;
  d["l2_u"] = r.l2_u;
  d["l2_theta"] = r.l2_theta;
  d["h1_u"] = r.h1_u;
  d["h1_theta"] = r.h1_theta;
  d["gevrey_X"] = r.gevrey_X;
  d["tau_used"] = r.tau_used;
  d["radius_fit"] = r.radius_fit;
  d["radius_fit_quality"] = r.radius_fit_quality;
  d["energy_residual_theta"] = r.energy_residual_theta;
  d["energy_residual_u"] = r.energy_residual_u;
  d["div_max"] = r.div_max;
  return d;
}

py::list records_list(const std::vector<bq::DiagnosticsRecord> &rs)
{
  py::list out;
  for (const auto &r : rs) out.append(record_dict(r));
  return out;
}

bq::Scheme scheme_of(const std::string &name)
{
  auto s = bq::parse_scheme(name);
  if (!s) throw py::value_error("unknown scheme: " + name);
  return *s;
}

}  // namespace

PYBIND11_MODULE(_core, m)
{
  m.doc() = "Pseudospectral Boussinesq solver on the periodic torus.";

  py::register_exception<bq::ConfigError>(m, "ConfigError", PyExc_ValueError);
  py::register_exception<bq::SnapshotError>(m, "SnapshotError", PyExc_IOError);
  py::register_exception<bq::NonfiniteStateError>(m, "NonfiniteStateError", PyExc_ArithmeticError);

  py::class_<bq::GridSpec>(m, "Grid")
      .def(py::init(&bq::make_grid), py::arg("dim"), py::arg("modes"))
      .def_property_readonly("dim", &bq::GridSpec::dim)
      .def_property_readonly("modes", &bq::GridSpec::modes)
      .def_property_readonly("size", &bq::GridSpec::size)
      .def_property_readonly("dealias_cutoff", &bq::GridSpec::dealias_cutoff)
      .def_property_readonly("tau_cap", &bq::GridSpec::tau_cap)
      .def("wavenumbers", [](const bq::GridSpec &g) {
        // (dim, modes, ...) integer array of j_i
        std::vector<py::ssize_t> shape = field_shape(g);
        shape.insert(shape.begin(), g.dim());
        py::array_t<int> out(shape);
        int *p = out.mutable_data();
        for (std::size_t i = 0; i < g.size(); ++i)
        {
          const bq::Wavevector j = g.wavevector(i);
          for (int c = 0; c < g.dim(); ++c) p[c * g.size() + i] = j[c];
        }
        return out;
      })
      .def("__repr__", [](const bq::GridSpec &g) {
        return "Grid(dim=" + std::to_string(g.dim()) + ", modes=" + std::to_string(g.modes()) + ")";
      });

  py::class_<bq::ScalarField>(m, "ScalarField")
      .def(py::init([](const bq::GridSpec &g, const CArray &a) {
             return bq::ScalarField{g, from_array(a, g, "scalar")};
           }),
           py::arg("grid"), py::arg("coeffs"))
      .def_static("zeros", &bq::ScalarField::zeros)
      .def_readonly("grid", &bq::ScalarField::grid)
      .def_property_readonly("coeffs", [](const bq::ScalarField &f) { return to_array(f.coeffs, f.grid); })
      .def("physical", [](const bq::ScalarField &f) {
        // Real-space samples on the uniform M^N grid.
        const bq::GridSpec &g = f.grid;
        py::array_t<double> out(field_shape(g));
        const auto v = bq::SpectralTransform::for_grid(g).to_physical(f.coeffs);
        std::memcpy(out.mutable_data(), v.data(), v.size() * sizeof(double));
        return out;
      });

  py::class_<bq::VectorField>(m, "VectorField")
      .def(py::init(&vector_from_array), py::arg("grid"), py::arg("coeffs"))
      .def_static("zeros", &bq::VectorField::zeros)
      .def_readonly("grid", &bq::VectorField::grid)
      .def_property_readonly("coeffs", &vector_to_array);

  py::class_<bq::PhysicalParams>(m, "PhysicalParams")
      .def(py::init([](double nu, double kappa) { return bq::PhysicalParams{nu, kappa}; }),
           py::arg("nu") = 1.0, py::arg("kappa") = 1.0)
      .def_readwrite("nu", &bq::PhysicalParams::nu)
      .def_readwrite("kappa", &bq::PhysicalParams::kappa);

  py::class_<bq::SimulationState>(m, "State")
      .def(py::init([](bq::VectorField u, bq::ScalarField th, double t, std::int64_t n) {
             return bq::SimulationState{std::move(u), std::move(th), t, n};
           }),
           py::arg("u"), py::arg("theta"), py::arg("t") = 0.0, py::arg("step_index") = 0)
      .def_readwrite("u", &bq::SimulationState::u)
      .def_readwrite("theta", &bq::SimulationState::theta)
      .def_readwrite("t", &bq::SimulationState::t)
      .def_readwrite("step_index", &bq::SimulationState::step_index);

  py::class_<bq::StepperConfig>(m, "StepperConfig")
      .def(py::init([](double dt, const std::string &scheme, double cfl, bool adaptive, double trunc) {
             return bq::StepperConfig{dt, scheme_of(scheme), cfl, adaptive, trunc};
           }),
           py::arg("dt") = 1e-3, py::arg("scheme") = "if_rk4", py::arg("cfl_safety") = 0.5,
           py::arg("adaptive") = false, py::arg("truncation_radius") = 0.0)
      .def_readwrite("dt", &bq::StepperConfig::dt)
      .def_property_readonly("scheme", [](const bq::StepperConfig &c) { return std::string(bq::to_string(c.scheme)); })
      .def_readwrite("cfl_safety", &bq::StepperConfig::cfl_safety)
      .def_readwrite("adaptive", &bq::StepperConfig::adaptive)
      .def_readwrite("truncation_radius", &bq::StepperConfig::truncation_radius);

  // Initial data and spectral operators.
  m.def(
      "synthesize_initial",
      [](const std::string &kind, const bq::GridSpec &g, std::uint64_t seed, std::optional<double> p) {
        auto k = bq::parse_initial_kind(kind);
        if (!k) throw py::value_error("unknown initial kind: " + kind);
        return bq::synthesize_initial(*k, g, seed, p);
      },
      py::arg("kind"), py::arg("grid"), py::arg("seed") = 0, py::arg("sobolev_exponent") = py::none());
  m.def("leray_project", &bq::leray_project);
  m.def("dealias", py::overload_cast<const bq::ScalarField &>(&bq::dealias));
  m.def("dealias", py::overload_cast<const bq::VectorField &>(&bq::dealias));
  m.def("enforce_constraints", py::overload_cast<const bq::ScalarField &>(&bq::enforce_constraints));
  m.def("enforce_constraints", py::overload_cast<const bq::VectorField &>(&bq::enforce_constraints));
  m.def("norm", py::overload_cast<const bq::ScalarField &, double, double, double>(&bq::norm),
        py::arg("f"), py::arg("r") = 0.0, py::arg("tau") = 0.0, py::arg("s") = 1.0);
  m.def("norm", py::overload_cast<const bq::VectorField &, double, double, double>(&bq::norm),
        py::arg("f"), py::arg("r") = 0.0, py::arg("tau") = 0.0, py::arg("s") = 1.0);
  m.def("inner", py::overload_cast<const bq::ScalarField &, const bq::ScalarField &>(&bq::inner));
  m.def("inner", py::overload_cast<const bq::VectorField &, const bq::VectorField &>(&bq::inner));
  m.def("divergence_max", &bq::divergence_max);
  m.def("reality_defect", py::overload_cast<const bq::ScalarField &>(&bq::reality_defect));
  m.def("reality_defect", py::overload_cast<const bq::VectorField &>(&bq::reality_defect));

  // Nonlinear terms.
  m.def("convect_pseudospectral", [](const bq::VectorField &u, const bq::VectorField &v) {
    return bq::convect_pseudospectral(u, v).field;
  });
  m.def("convect_pseudospectral", [](const bq::VectorField &u, const bq::ScalarField &v) {
    return bq::convect_pseudospectral(u, v).field;
  });
  m.def("convect_convolution", [](const bq::VectorField &u, const bq::VectorField &v) {
    return bq::convect_convolution(u, v).field;
  });
  m.def("convect_convolution", [](const bq::VectorField &u, const bq::ScalarField &v) {
    return bq::convect_convolution(u, v).field;
  });
  m.def("buoyancy", &bq::buoyancy);

  // Time stepping.
  m.def("step", &bq::step, py::arg("state"), py::arg("params"), py::arg("config"));
  m.def("stable_dt", &bq::stable_dt, py::arg("state"), py::arg("cfl_safety") = 0.5);
  m.def(
      "run_simulation",
      [](const bq::StepperConfig &cfg, const bq::PhysicalParams &params, const bq::SimulationState &init,
         double t_final, std::int64_t snapshot_every) {
        bq::RunControl ctl;
        ctl.t_final = t_final;
        ctl.snapshot_every = snapshot_every;
        bq::Trajectory tr;
        {
          py::gil_scoped_release release;
          tr = bq::run_simulation(cfg, ctl, params, init);
        }
        std::vector<double> t, l2u, l2t;
        for (const auto &s : tr.steps)
        {
          t.push_back(s.t);
          l2u.push_back(s.l2_u);
          l2t.push_back(s.l2_theta);
        }
        py::list budget;
        for (const auto &b : bq::energy_budget(tr, params))
          budget.append(py::make_tuple(b.t, b.residual_theta, b.residual_u));
        py::dict out;
        out["status"] = tr.status == bq::RunStatus::completed ? "completed" : "blow_up";
        out["message"] = tr.message;
        out["snapshots"] = tr.snapshots;
        out["t"] = t;
        out["l2_u"] = l2u;
        out["l2_theta"] = l2t;
        out["energy_budget"] = budget;
        return out;
      },
      py::arg("config"), py::arg("params"), py::arg("initial"), py::arg("t_final"),
      py::arg("snapshot_every") = 10);

  // Diagnostics.
  m.def("gevrey_energy", [](const bq::VectorField &u, const bq::ScalarField &th, double t) {
    const bq::GevreyEnergy e = bq::gevrey_energy(u, th, t);
    return py::make_tuple(e.X, e.tau_used, e.clamped);
  });
  m.def("fit_radius", [](const bq::ScalarField &f, double s) { return fit_or_nan(bq::fit_radius(f, s)); },
        py::arg("f"), py::arg("s") = 1.0);
  m.def("fit_radius", [](const bq::VectorField &f, double s) { return fit_or_nan(bq::fit_radius(f, s)); },
        py::arg("f"), py::arg("s") = 1.0);
  m.def("recover_pressure", &bq::recover_pressure);
  m.def("helmholtz_check", &bq::helmholtz_check);
  m.def("diagnose", [](const bq::SimulationState &s) { return record_dict(bq::make_record(s)); });
  m.def("spectrum_table", &bq::spectrum_table);

  // Files and commands.
  m.def("write_snapshot", &bq::write_snapshot, py::arg("state"), py::arg("params"), py::arg("path"));
  m.def("read_snapshot", [](const std::filesystem::path &p) {
    bq::Snapshot s = bq::read_snapshot(p);
    return py::make_tuple(s.state, s.params);
  });
  m.def("read_diagnostics", [](const std::filesystem::path &p) { return records_list(bq::read_diagnostics(p)); });
  m.def("diagnose_snapshots", [](const std::vector<std::filesystem::path> &p) {
    return records_list(bq::diagnose_snapshots(p));
  });
  m.def("run_config", [](const std::string &text, std::optional<std::string> output_dir) {
    bq::RunConfig cfg = bq::parse_config_text(text);
    if (output_dir) cfg.output_dir = *output_dir;
    bq::RunSummary s;
    {
      py::gil_scoped_release release;
      s = bq::run_to_disk(cfg);
    }
    py::dict out;
    out["status"] = s.status == bq::RunStatus::completed ? "completed" : "blow_up";
    out["message"] = s.message;
    out["snapshots"] = s.snapshots;
    out["diagnostics"] = s.diagnostics;
    return out;
  }, py::arg("config_text"), py::arg("output_dir") = py::none());
  m.def("oracle_check", [](const std::string &text) {
    const bq::OracleReport r = bq::oracle_check(bq::parse_config_text(text));
    py::dict out;
    out["convolution_ran"] = r.convolution_ran;
    out["convection_velocity_deviation"] = r.convection_velocity_deviation;
    out["convection_temperature_deviation"] = r.convection_temperature_deviation;
    out["galerkin_velocity_modes"] = r.galerkin.velocity_modes;
    out["galerkin_scalar_modes"] = r.galerkin.scalar_modes;
    out["galerkin_max_antisymmetry_A"] = r.galerkin.max_antisymmetry_A;
    out["galerkin_max_antisymmetry_B"] = r.galerkin.max_antisymmetry_B;
    out["galerkin_max_relative_deviation"] = r.galerkin.max_relative_deviation;
    return out;
  });
}
