#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "platonic/errors.hpp"
#include "platonic/greens.hpp"
#include "platonic/mode_matrix.hpp"
#include "platonic/scattering.hpp"
#include "platonic/steering.hpp"

namespace py = pybind11;
using namespace platonic;

namespace {

TruncationPolicy policy_from(int n_self, int n_far, bool tail) {
  TruncationPolicy p;
  p.n_self = n_self;
  p.n_far = n_far;
  p.tail_correction = tail;
  p.validate();
  return p;
}

PinStack stack_from(const std::string& kind, double eta, double xi, double d) {
  if (kind == "empty") return PinStack::empty(d);
  if (kind == "single") return PinStack::single(d);
  if (kind == "pair") return PinStack::pair(eta, d);
  if (kind == "triplet") return PinStack::triplet({eta, xi, d});
  throw Error(ErrorKind::InvalidArgument, "stack must be empty, single, pair or triplet");
}

py::dict steering_dict(const SteeringResult& r) {
  py::dict d;
  d["theta_i"] = r.theta_i;
  d["beta_g"] = r.beta_g;
  d["alpha0_g"] = r.alpha0_g;
  d["one_minus_rg"] = r.one_minus_rg;
  d["eta_guess"] = r.eta_guess;
  d["eta_star"] = r.eta_star;
  d["pair_transmittance"] = r.pair_transmittance;
  d["m_eff"] = r.m_eff;
  d["eta_triplet"] = r.eta_triplet;
  d["beta_odd"] = r.beta_odd;
  d["beta_even"] = r.beta_even;
  d["edit_supported"] = r.edit_supported;
  d["xi_edit"] = r.xi_edit;
  d["beta_edit"] = r.beta_edit;
  d["q_notch"] = r.q_notch;
  d["q_pair"] = r.q_pair;
  d["q_outer_isolated"] = r.q_outer_isolated;
  d["status"] = r.status;
  return d;
}

}  // namespace

PYBIND11_MODULE(_platonic, m) {
  m.doc() = "Pinned gratings in a thin elastic plate: Green's function, triplet modes, spectra, EDIT steering.";

  py::register_exception<Error>(m, "PlatonicError", PyExc_RuntimeError);

  m.def(
      "greens",
      [](double alpha0, double beta, double x, double y, double d, int n_self, int n_far, bool tail) {
        return greens({alpha0, beta, d}, x, y, policy_from(n_self, n_far, tail)).value;
      },
      py::arg("alpha0"), py::arg("beta"), py::arg("x"), py::arg("y"), py::arg("d") = 1.0, py::arg("n_self") = 1000,
      py::arg("n_far") = 20, py::arg("tail_correction") = true,
      "Quasi-periodic Green's function G(x, y) (absolute coordinates).");

  m.def(
      "greens_truncated",
      [](double alpha0, double beta, double x, double y, int terms, double d, bool tail) {
        return greens_truncated({alpha0, beta, d}, x, y, terms, 1e-8, tail).value;
      },
      py::arg("alpha0"), py::arg("beta"), py::arg("x"), py::arg("y"), py::arg("terms"), py::arg("d") = 1.0,
      py::arg("tail_correction") = false);

  m.def(
      "order_quantities",
      [](double alpha0, double beta, int n, double d) {
        const auto q = order_quantities({alpha0, beta, d}, n);
        return py::make_tuple(q.alpha_n, q.chi_n, q.tau_n);
      },
      py::arg("alpha0"), py::arg("beta"), py::arg("n"), py::arg("d") = 1.0, "(alpha_n, chi_n, tau_n)");

  m.def(
      "mode_matrix",
      [](double alpha0, double beta, double eta, double xi, double d, int n_self, int n_far) {
        return Eigen::Matrix3cd(assemble({alpha0, beta, d}, {eta, xi, d}, policy_from(n_self, n_far, true)).entries);
      },
      py::arg("alpha0"), py::arg("beta"), py::arg("eta") = 1.0, py::arg("xi") = 0.0, py::arg("d") = 1.0,
      py::arg("n_self") = 1000, py::arg("n_far") = 20, "Triplet matrix, pins ordered top, centre, bottom.");

  m.def(
      "eigensystem",
      [](cplx m11, cplx m12, cplx m21, cplx m13) {
        const auto es = eigensystem(ModeMatrix::from_entries(m11, m12, m21, m13));
        py::dict d;
        d["lambda1"] = es.lambda1;
        d["lambda_minus"] = es.lambda_minus;
        d["lambda_plus"] = es.lambda_plus;
        d["v_odd"] = Eigen::Vector3cd(es.v_odd);
        d["v_e_minus"] = Eigen::Vector3cd(es.v_e_minus);
        d["v_e_plus"] = Eigen::Vector3cd(es.v_e_plus);
        return d;
      },
      py::arg("m11"), py::arg("m12"), py::arg("m21"), py::arg("m13"));

  m.def(
      "dispersion_residual",
      [](double alpha0, double beta, double eta, double xi, double d) {
        const auto r = dispersion_residual(assemble({alpha0, beta, d}, {eta, xi, d}, TruncationPolicy{}));
        return py::make_tuple(r.odd, r.even);
      },
      py::arg("alpha0"), py::arg("beta"), py::arg("eta") = 1.0, py::arg("xi") = 0.0, py::arg("d") = 1.0,
      "(M11 - M13, 2 M12 M21 - M11 (M11 + M13))");

  m.def(
      "spectrum_scan",
      [](const std::string& stack, double beta_lo, double beta_hi, int points, std::optional<double> theta_i,
         std::optional<double> alpha0, double eta, double xi, double d, bool refine, unsigned threads) {
        if (theta_i.has_value() == alpha0.has_value()) {
          throw Error(ErrorKind::InvalidArgument, "give exactly one of theta_i and alpha0");
        }
        ScanSpec spec;
        spec.mode = theta_i ? ScanMode::FixedAngle : ScanMode::FixedAlpha0;
        spec.theta_i = theta_i.value_or(0.0);
        spec.alpha0 = alpha0.value_or(0.0);
        spec.beta_lo = beta_lo;
        spec.beta_hi = beta_hi;
        spec.points = points;
        spec.refine = refine;
        spec.threads = threads;
        std::vector<SpectrumRecord> recs;
        {
          py::gil_scoped_release release;
          recs = spectrum_scan(stack_from(stack, eta, xi, d), spec, TruncationPolicy{});
        }
        const auto n = static_cast<py::ssize_t>(recs.size());
        py::array_t<double> b(n), a0(n), r(n), t(n), res(n);
        py::list status;
        for (py::ssize_t i = 0; i < n; ++i) {
          const auto& rec = recs[static_cast<std::size_t>(i)];
          b.mutable_at(i) = rec.beta;
          a0.mutable_at(i) = rec.alpha0;
          r.mutable_at(i) = rec.r;
          t.mutable_at(i) = rec.t;
          res.mutable_at(i) = rec.energy_residual;
          status.append(rec.status);
        }
        py::dict out;
        out["beta"] = b;
        out["alpha0"] = a0;
        out["R"] = r;
        out["T"] = t;
        out["energy_residual"] = res;
        out["status"] = status;
        return out;
      },
      py::arg("stack"), py::arg("beta_lo"), py::arg("beta_hi"), py::arg("points") = 201,
      py::arg("theta_i") = py::none(), py::arg("alpha0") = py::none(), py::arg("eta") = 1.0, py::arg("xi") = 0.0,
      py::arg("d") = 1.0, py::arg("refine") = false, py::arg("threads") = 0,
      "Transmittance scan; theta_i (radians) re-derives alpha0 per beta, alpha0 holds it fixed.");

  m.def(
      "single_grating_reflectance",
      [](double alpha0, double beta, double d) { return single_grating_reflectance({alpha0, beta, d}, TruncationPolicy{}); },
      py::arg("alpha0"), py::arg("beta"), py::arg("d") = 1.0);

  m.def("fabry_perot_model", &fabry_perot_model, py::arg("r_g"), py::arg("delta"));

  m.def(
      "find_beta_g",
      [](std::optional<double> theta_i, std::optional<double> alpha0) {
        if (theta_i.has_value() == alpha0.has_value()) {
          throw Error(ErrorKind::InvalidArgument, "give exactly one of theta_i and alpha0");
        }
        const auto inc = theta_i ? Incidence::angle(*theta_i) : Incidence::bloch(*alpha0);
        const auto r = find_beta_g(inc, std::nullopt, TruncationPolicy{});
        return py::make_tuple(r.beta, r.alpha0, r.one_minus_r);
      },
      py::arg("theta_i") = py::none(), py::arg("alpha0") = py::none(), "(beta_g, alpha0_g, 1 - R_g)");

  m.def("slab_guess", &slab_guess, py::arg("beta"), py::arg("alpha0"), py::arg("m") = 1, py::arg("d") = 1.0);

  m.def(
      "find_eta_star",
      [](double beta, double eta_guess, std::optional<double> theta_i, std::optional<double> alpha0) {
        if (theta_i.has_value() == alpha0.has_value()) {
          throw Error(ErrorKind::InvalidArgument, "give exactly one of theta_i and alpha0");
        }
        const auto inc = theta_i ? Incidence::angle(*theta_i) : Incidence::bloch(*alpha0);
        const auto r = find_eta_star(inc, beta, eta_guess, TruncationPolicy{});
        return py::make_tuple(r.eta, r.transmittance);
      },
      py::arg("beta"), py::arg("eta_guess"), py::arg("theta_i") = py::none(), py::arg("alpha0") = py::none(),
      "(eta*, pair transmittance)");

  m.def(
      "steer",
      [](const std::vector<double>& theta_i, bool measure_q, unsigned threads) {
        SteeringOptions opts;
        opts.measure_q = measure_q;
        opts.threads = threads;
        std::vector<SteeringResult> rs;
        {
          py::gil_scoped_release release;
          rs = steer(theta_i, TruncationPolicy{}, opts);
        }
        py::list out;
        for (const auto& r : rs) out.append(steering_dict(r));
        return out;
      },
      py::arg("theta_i"), py::arg("measure_q") = true, py::arg("threads") = 0,
      "Full steering pipeline per angle (radians); one dict per angle.");

  m.def("standard_angles_deg", &standard_angles_deg);
}
