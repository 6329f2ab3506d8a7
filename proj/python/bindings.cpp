#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "rmt/arithmetic.hpp"
#include "rmt/charpoly.hpp"
#include "rmt/contours.hpp"
#include "rmt/excised.hpp"
#include "rmt/haar.hpp"
#include "rmt/identities.hpp"
#include "rmt/moments.hpp"

namespace py = pybind11;
using namespace rmt;

PYBIND11_MODULE(rmtpy, m) {
  m.doc() =
      "mixed moments of characteristic polynomials over SO(2N)/USp(2N), "
      "excised-ensemble densities, and quadratic-twist predictions";

  py::register_exception<PoleError>(m, "PoleError");
  py::register_exception<NonConvergence>(m, "NonConvergenceError");
  py::register_exception<BranchNotClosed>(m, "BranchNotClosedError");

  py::enum_<haar::SampleMethod>(m, "SampleMethod")
      .value("MatrixQR", haar::SampleMethod::MatrixQR)
      .value("JpdfMcmc", haar::SampleMethod::JpdfMcmc);

  py::class_<haar::SamplerConfig>(m, "SamplerConfig")
      .def(py::init<>())
      .def_readwrite("seed", &haar::SamplerConfig::seed)
      .def_readwrite("method", &haar::SamplerConfig::method)
      .def_readwrite("mcmc_burn_in", &haar::SamplerConfig::mcmc_burn_in)
      .def_readwrite("mcmc_thin", &haar::SamplerConfig::mcmc_thin);

  m.def(
      "sample_so2n",
      [](int n, const haar::SamplerConfig& cfg, std::uint64_t index) {
        return haar::sample_so2n(n, cfg, index).angles;
      },
      py::arg("n"), py::arg("cfg") = haar::SamplerConfig{},
      py::arg("index") = 0,
      "eigenangles in (0, pi] of a Haar SO(2n) matrix");
  m.def(
      "sample_usp2n",
      [](int n, const haar::SamplerConfig& cfg, std::uint64_t index) {
        return haar::sample_usp2n(n, cfg, index).angles;
      },
      py::arg("n"), py::arg("cfg") = haar::SamplerConfig{},
      py::arg("index") = 0);

  m.def("lambda_at", [](std::vector<double> angles, Complex s) {
    haar::SpectrumSample sm{int(angles.size()), std::move(angles)};
    return charpoly::lambda_at(sm, s);
  });
  m.def("log_lambda_1", [](std::vector<double> angles) {
    haar::SpectrumSample sm{int(angles.size()), std::move(angles)};
    const auto l = charpoly::log_lambda_1(sm);
    return py::make_tuple(l.value, l.degenerate);
  });
  m.def("log_deriv", [](std::vector<double> angles, Complex s) {
    haar::SpectrumSample sm{int(angles.size()), std::move(angles)};
    return charpoly::log_deriv(sm, s);
  });

  m.def("predict_v", &moments::predict_V, py::arg("n"), py::arg("r"));
  m.def("predict_mixed_so", [](int n, Complex r, Complex phi) {
    const auto p = moments::predict_mixed_so(n, r, phi);
    return py::make_tuple(p.total, p.v_factor, p.u_factor);
  });
  m.def("predict_mixed_usp", [](int n, Complex r, Complex phi) {
    const auto p = moments::predict_mixed_usp(n, r, phi);
    return py::make_tuple(p.total, p.v_factor, p.u_factor);
  });
  m.def("predict_moment_so", &moments::predict_moment_so);
  m.def("predict_ratio_so", &moments::predict_ratio_so);
  m.def(
      "mc_mixed_moment",
      [](const std::string& ensemble, int n, Complex r, Complex phi,
         std::int64_t samples, std::uint64_t seed) {
        moments::MomentSpec spec;
        spec.ensemble = ensemble == "usp"
                            ? haar::EnsembleKind::UnitarySymplectic
                            : haar::EnsembleKind::SpecialOrthogonalEven;
        spec.n = n;
        spec.r = r;
        spec.phi = phi;
        haar::SamplerConfig cfg;
        cfg.seed = seed;
        const auto e = moments::mc_mixed_moment(spec, samples, cfg);
        return py::make_tuple(e.mean, e.stderr_re, e.stderr_im, e.count);
      },
      py::arg("ensemble"), py::arg("n"), py::arg("r"), py::arg("phi"),
      py::arg("samples"), py::arg("seed") = 1);

  m.def("ratios_contour_so", [](int n, int k, Complex a, Complex g) {
    return contours::ratios_contour_so(n, k, a, g);
  });
  m.def("m_integral", &contours::m_integral, py::arg("k"),
        py::arg("points") = 32);
  m.def("j_integral", &contours::j_integral, py::arg("k"),
        py::arg("points") = 32);
  m.def("moment_contour_so", &contours::moment_contour_so);

  m.def("m_gamma_det", [](int k) {
    const auto v = identities::m_gamma_det(k);
    return py::make_tuple(v.coeff.to_string(), v.two_pi_i_power);
  });
  m.def("m_closed_form", [](int k) {
    const auto v = identities::m_closed_form(k);
    return py::make_tuple(v.coeff.to_string(), v.two_pi_i_power);
  });
  m.def("interesting_det_relation_check",
        &identities::interesting_det_relation_check);
  m.def("all_zero_det_check", &identities::all_zero_det_check);

  m.def("r0_density", &excised::r0_density, py::arg("n"), py::arg("phi"));
  m.def(
      "excised_density_series",
      [](int n, double chi, std::vector<double> grid, int k_max,
         bool unit_area) {
        const auto c =
            excised::excised_density_series(n, chi, grid, k_max, unit_area);
        return py::make_tuple(c.phi, c.density);
      },
      py::arg("n"), py::arg("chi"), py::arg("phi_grid"), py::arg("k_max") = 3,
      py::arg("unit_area") = false);
  m.def(
      "mc_excised_density",
      [](int n, double chi, int bins, std::int64_t samples,
         std::uint64_t seed) {
        excised::ExcisedConfig cfg;
        cfg.n = n;
        cfg.chi = chi;
        cfg.bins = bins;
        cfg.n_samples = samples;
        haar::SamplerConfig sampler;
        sampler.seed = seed;
        const auto r = excised::mc_excised_density(cfg, sampler);
        return py::make_tuple(r.curve.phi, r.curve.density, r.acceptance_rate);
      },
      py::arg("n"), py::arg("chi"), py::arg("bins"), py::arg("samples"),
      py::arg("seed") = 1);
  m.def("residue_at", &excised::residue_at, py::arg("n"), py::arg("chi"),
        py::arg("phi"), py::arg("k"), py::arg("circle_points") = 256);

  m.def("count_points_mod_p", [](std::int64_t p) {
    return arith::count_points_mod_p(arith::CurveConfig::e11(), p);
  });
  m.def(
      "lambda_table",
      [](std::int64_t p_max) {
        const auto t = arith::build_ap_table(arith::CurveConfig::e11(), p_max);
        return t.lambda;
      },
      py::arg("p_max"));
  m.def(
      "twist_family",
      [](double X) {
        const auto f = arith::twist_family(X, arith::CurveConfig::e11());
        return py::make_tuple(f.d, f.log_conductor);
      },
      py::arg("X"));
  m.def(
      "r0_density_lfun",
      [](double X, std::vector<double> grid, std::int64_t p_max) {
        const auto curve = arith::CurveConfig::e11();
        const auto table = arith::build_ap_table(curve, p_max);
        const auto fam = arith::twist_family(X, curve);
        const auto c = arith::r0_density_lfun(fam, grid, curve, table);
        return py::make_tuple(c.phi, c.density);
      },
      py::arg("X"), py::arg("phi_grid"), py::arg("p_max") = 1000);
}
