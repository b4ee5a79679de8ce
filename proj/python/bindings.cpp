#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "unruh/bosonic.hpp"
#include "unruh/fermionic.hpp"
#include "unruh/wavepacket.hpp"

namespace py = pybind11;
using namespace unruh;

namespace {

TensorSpace space_from_dims(const std::vector<std::size_t>& dims) {
  std::vector<TensorSpace::Factor> f;
  for (std::size_t i = 0; i < dims.size(); ++i) f.push_back({std::to_string(i), dims[i]});
  return TensorSpace(std::move(f));
}

py::dict convergence_dict(const bosonic::ConvergenceReport& c) {
  py::dict d;
  d["n_max_used"] = c.n_max_used;
  d["delta"] = c.delta;
  d["tail"] = c.tail;
  d["converged"] = c.converged;
  d["effectively_infinite"] = c.effectively_infinite;
  return d;
}

py::dict report_dict(const wavepacket::PeakingReport& r) {
  py::dict d;
  d["peak_omega"] = r.peak_omega;
  d["delta_omega"] = r.delta_omega;
  d["delta_log"] = r.delta_log;
  d["uncertainty_product"] = r.uncertainty_product;
  d["leakage"] = r.leakage;
  d["dominant_is_R"] = r.dominant_is_R;
  d["sma_valid"] = r.sma_valid;
  d["parseval_residual"] = r.parseval_residual;
  return d;
}

wavepacket::MinkowskiSmearing make_packet(const std::string& family, double lambda, double mu, double omega0) {
  const wavepacket::LogGaussianParams p{lambda, mu, omega0};
  if (family == "log-gaussian") return wavepacket::f_log_gaussian(p);
  if (family == "gamma") return wavepacket::alternate_packet(wavepacket::PacketFamily::Gamma, p);
  if (family == "bessel") return wavepacket::alternate_packet(wavepacket::PacketFamily::Bessel, p);
  throw InvalidArgument("unknown packet family '" + family + "'");
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Negativity of inertial/accelerated field modes beyond the single-mode approximation";

  py::register_exception<InvalidArgument>(m, "InvalidArgument", PyExc_ValueError);
  py::register_exception<NumericError>(m, "NumericError", PyExc_ArithmeticError);

  m.def(
      "negativity",
      [](const CMatrix& rho, const std::vector<std::size_t>& dims, std::size_t factor) {
        auto space = space_from_dims(dims);
        return negativity(DensityOperator::from_matrix(space, rho), std::to_string(factor)).value;
      },
      py::arg("rho"), py::arg("dims"), py::arg("factor"));
  m.def(
      "partial_transpose",
      [](const CMatrix& rho, const std::vector<std::size_t>& dims, std::size_t factor) {
        return partial_transpose(space_from_dims(dims), rho, std::to_string(factor));
      },
      py::arg("rho"), py::arg("dims"), py::arg("factor"));
  m.def(
      "partial_trace",
      [](const CMatrix& rho, const std::vector<std::size_t>& dims, const std::vector<std::size_t>& keep) {
        std::vector<std::string> labels;
        for (auto k : keep) labels.push_back(std::to_string(k));
        return partial_trace(DensityOperator::from_matrix(space_from_dims(dims), rho), labels).matrix();
      },
      py::arg("rho"), py::arg("dims"), py::arg("keep"));

  m.def(
      "fermion_negativities",
      [](double r, cplx q_R, cplx q_L, const std::string& method) {
        if (method != "blocks" && method != "full") throw InvalidArgument("method must be 'blocks' or 'full'");
        auto n = fermionic::fermionic_negativity_pair(
            {{r}, {q_R, q_L}}, method == "full" ? fermionic::NegativityMethod::Full : fermionic::NegativityMethod::Blocks);
        return py::make_tuple(n.alice_rob, n.alice_antirob);
      },
      py::arg("r"), py::arg("q_R") = cplx(1.0), py::arg("q_L") = cplx(0.0), py::arg("method") = "blocks");
  m.def(
      "fermion_curve",
      [](double q_abs, const std::vector<double>& r) {
        auto c = fermionic::fermionic_curve(q_abs, r);
        std::vector<double> ar, aar, res;
        for (const auto& row : c.rows) ar.push_back(row.alice_rob), aar.push_back(row.alice_antirob), res.push_back(row.method_residual);
        py::dict d;
        d["r"] = r;
        d["N_AR"] = ar;
        d["N_AAR"] = aar;
        d["method_residual"] = res;
        return d;
      },
      py::arg("q_abs"), py::arg("r"));
  m.def("fermion_squeezing_from_energy", [](double e) { return fermionic::fermion_squeezing_from_energy(e).r; });

  m.def(
      "boson_negativities",
      [](double r, cplx q_R, cplx q_L, int n_max, bool adaptive) {
        const bosonic::BosonScenario s{{r, false}, {q_R, q_L}, {n_max}};
        bosonic::BosonSolverOptions opt;
        opt.throw_on_failure = false;
        opt.n_max_cap = std::max(opt.n_max_cap, n_max);
        auto n = adaptive ? bosonic::bosonic_negativity_pair(s, opt) : bosonic::bosonic_negativity_fixed(s);
        return py::make_tuple(n.alice_rob, n.alice_antirob, convergence_dict(n.convergence));
      },
      py::arg("r"), py::arg("q_R") = cplx(1.0), py::arg("q_L") = cplx(0.0), py::arg("n_max") = 30,
      py::arg("adaptive") = true);
  m.def("boson_squeezing_from_acceleration", [](double omega, double a) {
    auto s = bosonic::squeezing_from_acceleration(omega, a);
    return py::make_tuple(s.r, s.effectively_infinite);
  });

  m.def(
      "packet_transform",
      [](const std::string& family, double lambda, double mu, double omega0, int epsilon, double l) {
        auto f = make_packet(family, lambda, mu, omega0);
        const wavepacket::BogoliubovKernel k{epsilon, l};
        auto g = wavepacket::g_from_f(f, k);
        std::vector<double> om(g.size());
        for (std::size_t i = 0; i < g.size(); ++i) om[i] = g.omega(i);
        py::dict d;
        d["Omega"] = om;
        d["g_R"] = g.g_R;
        d["g_L"] = g.g_L;
        d["round_trip_error"] = wavepacket::l2_distance(f, wavepacket::f_from_g(g, k));
        d["report"] = report_dict(wavepacket::peaking_report(f, k));
        return d;
      },
      py::arg("family") = "log-gaussian", py::arg("lam") = 1.0, py::arg("mu") = 5.0, py::arg("omega0") = 1.0,
      py::arg("epsilon") = 1, py::arg("l") = 1.0);
}
