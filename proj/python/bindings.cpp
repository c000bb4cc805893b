#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>


#include "rankone/discretize_oracle.hpp"
#include "rankone/factor_recovery.hpp"
#include "rankone/krein_resolvent.hpp"
#include "rankone/laplace_testbed.hpp"
#include "rankone/rank_one_inverse.hpp"
#include "rankone/verify.hpp"

namespace py = pybind11;
using namespace rankone;

namespace {

using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;

RankOneForm form(const Vec& f, const Vec& l) { return RankOneForm(Vector(f), Functional(l.transpose())); }

Vec as_array(const Functional& l) { return l.weights().transpose(); }

Probe probe_for(const DenseOperator& d, const std::optional<Vec>& f0, const std::optional<Vec>& l0) {
  if (f0.has_value() != l0.has_value()) throw InvalidArgument("give both f0 and l0, or neither");
  if (!f0) return choose_probe(d);
  return make_probe(d, Vector(*f0), Functional(l0->transpose()));
}

py::dict probe_dict(const Probe& p) {
  py::dict out;
  out["f0"] = p.f0.entries();
  out["l0"] = as_array(p.l0);
  out["pairing"] = p.pairing;
  return out;
}

py::dict difference_dict(const ResolventDifference& rd) {
  py::dict out;
  out["matrix"] = rd.materialize().matrix();
  out["left"] = rd.left.entries();
  out["right"] = as_array(rd.right);
  out["denominator"] = rd.denominator;
  return out;
}

laplace::KernelPoint point(double x, double xi) { return laplace::KernelPoint(x, xi); }

SpectralPoint spectral(Complex z) { return SpectralPoint::from_z(z); }

}  // namespace

PYBIND11_MODULE(_rankone, m) {
  m.doc() = "Rank-one perturbation algebra: Sherman-Morrison, Krein resolvent formula, factor recovery";

  auto error = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
  py::register_exception<DimensionMismatch>(m, "DimensionMismatch", error);
  py::register_exception<InvalidArgument>(m, "InvalidArgument", error);
  py::register_exception<SingularMatrix>(m, "SingularMatrix", error);
  py::register_exception<SingularPerturbation>(m, "SingularPerturbation", error);
  py::register_exception<EigenvalueHit>(m, "EigenvalueHit", error);
  py::register_exception<SpectrumHit>(m, "SpectrumHit", error);
  py::register_exception<ZeroDifference>(m, "ZeroDifference", error);
  py::register_exception<InadmissibleProbe>(m, "InadmissibleProbe", error);
  py::register_exception<NotRankOne>(m, "NotRankOne", error);
  py::register_exception<PoleError>(m, "PoleError", error);

  m.def("invert", [](const Mat& a) { return invert(DenseOperator(a)).matrix(); }, py::arg("a"),
        "Inverse by LU with partial pivoting. Raises SingularMatrix.");

  m.def(
      "denominator", [](const Mat& a_inv, const Vec& f, const Vec& l) { return denominator(DenseOperator(a_inv), form(f, l)); },
      py::arg("a_inv"), py::arg("f"), py::arg("l"), "1 - <l|A^-1 f>.");

  m.def(
      "perturbed_inverse",
      [](const Mat& a_inv, const Vec& f, const Vec& l, std::optional<double> tol) {
        const DenseOperator ai(a_inv);
        const auto res = perturbed_inverse(ai, form(f, l), tol);
        py::dict out;
        if (const auto* reg = std::get_if<RegularInverse>(&res)) {
          out["branch"] = "regular";
          out["inverse"] = reg->inverse(ai).matrix();
          out["correction"] = reg->correction.matrix();
          out["denominator"] = reg->denominator;
        } else {
          const auto& sing = std::get<SingularInverse>(res);
          out["branch"] = "singular";
          out["null_vector"] = sing.null_vector.entries();
          out["denominator"] = sing.denominator;
        }
        return out;
      },
      py::arg("a_inv"), py::arg("f"), py::arg("l"), py::arg("tol") = py::none(),
      "Inverse of B = A - |f><l| from A^-1. Returns a dict with 'branch' of 'regular' or 'singular'.");

  m.def(
      "solve_perturbed",
      [](const Mat& a_inv, const Vec& f, const Vec& l, const Vec& w, std::optional<double> tol) {
        return solve_perturbed(DenseOperator(a_inv), form(f, l), Vector(w), tol).entries();
      },
      py::arg("a_inv"), py::arg("f"), py::arg("l"), py::arg("w"), py::arg("tol") = py::none(),
      "Solves (A - |f><l|) v = w without forming B^-1. Raises SingularPerturbation.");

  m.def(
      "resolvent_difference",
      [](const Mat& r1, Complex z, const Vec& f, const Vec& l) {
        return difference_dict(resolvent_difference(DenseOperator(r1), z, form(f, l)));
      },
      py::arg("r1"), py::arg("z"), py::arg("f"), py::arg("l"),
      "(z - T2)^-1 - (z - T1)^-1 from R1 = (z - T1)^-1 when T2^-1 - T1^-1 = |f><l|.");

  m.def(
      "choose_probe", [](const Mat& d, double tol) { return probe_dict(choose_probe(DenseOperator(d), tol)); },
      py::arg("d"), py::arg("tol") = 0.0, "Coordinate probe at the largest entry of D.");

  m.def(
      "recover_factors",
      [](const Mat& d, std::optional<Vec> f0, std::optional<Vec> l0) {
        const DenseOperator dd(d);
        const RankOneForm r = recover_factors(dd, probe_for(dd, f0, l0));
        return py::make_tuple(r.f().entries(), as_array(r.l()));
      },
      py::arg("d"), py::arg("f0") = py::none(), py::arg("l0") = py::none(),
      "Factors (f, l) with D = |f><l|, read off by probing D.");

  m.def(
      "bilinear_value",
      [](const Mat& d, const Mat& s, std::optional<Vec> f0, std::optional<Vec> l0) {
        const DenseOperator dd(d);
        return bilinear_value(dd, DenseOperator(s), probe_for(dd, f0, l0));
      },
      py::arg("d"), py::arg("s"), py::arg("f0") = py::none(), py::arg("l0") = py::none(),
      "<l|S f> for any factorization of D, computed from D alone.");

  m.def(
      "resolvent_difference_factor_free",
      [](const Mat& r1, Complex z, const Mat& d) {
        const DenseOperator dd(d);
        return difference_dict(resolvent_difference_factor_free(DenseOperator(r1), z, dd, choose_probe(dd)));
      },
      py::arg("r1"), py::arg("z"), py::arg("d"), "Resolvent difference from D = T2^-1 - T1^-1 without its factors.");

  m.def(
      "find_new_eigenvalues",
      [](const std::function<Complex(Complex)>& fn, double lo, double hi, std::size_t max_count,
         const std::vector<double>& exclusions) {
        const auto res = find_new_eigenvalues(fn, lo, hi, max_count, exclusions);
        std::vector<double> out;
        for (const auto& pair : res.pairs) out.push_back(pair.z.real());
        return py::make_tuple(out, res.truncated);
      },
      py::arg("denominator"), py::arg("lo"), py::arg("hi"), py::arg("max_count"),
      py::arg("exclusions") = std::vector<double>{},
      "Real roots of a denominator function on [lo, hi], skipping the listed poles. Returns (roots, truncated).");

  m.def(
      "verify",
      [](std::uint64_t seed) {
        py::list out;
        for (const auto& r : verify::run_invariant_suite(seed)) {
          py::dict d;
          d["name"] = r.name;
          d["passed"] = r.passed;
          d["measured"] = r.measured;
          d["threshold"] = r.threshold;
          out.append(d);
        }
        return out;
      },
      py::arg("seed") = 20240611, "Runs the built-in invariant suite.");

  auto lap = m.def_submodule("laplace", "Closed-form Green's functions of -d²/dx² on [0,1], DD and DN conditions");
  lap.def("g_dd_static", [](double x, double xi) { return laplace::g_dd_static(point(x, xi)); }, py::arg("x"), py::arg("xi"));
  lap.def("g_dn_static", [](double x, double xi) { return laplace::g_dn_static(point(x, xi)); }, py::arg("x"), py::arg("xi"));
  lap.def("g_dd_spectral", [](double x, double xi, Complex z) { return laplace::g_dd_spectral(point(x, xi), spectral(z)); },
          py::arg("x"), py::arg("xi"), py::arg("z"));
  lap.def("g_dn_spectral", [](double x, double xi, Complex z) { return laplace::g_dn_spectral(point(x, xi), spectral(z)); },
          py::arg("x"), py::arg("xi"), py::arg("z"));
  lap.def("spectral_difference",
          [](double x, double xi, Complex z) { return laplace::spectral_difference(point(x, xi), spectral(z)); },
          py::arg("x"), py::arg("xi"), py::arg("z"));
  lap.def("f_z", [](double x, Complex z) { return laplace::f_z_vector(x, spectral(z)); }, py::arg("x"), py::arg("z"));
  lap.def("scalar_pairing", [](Complex z) { return laplace::scalar_pairing(spectral(z)); }, py::arg("z"));
  lap.def("krein_denominator", [](Complex z) { return laplace::krein_denominator_analytic(spectral(z)); }, py::arg("z"));
  lap.def(
      "dn_eigenvalues",
      [](std::size_t count) {
        std::vector<double> out;
        for (const auto& s : laplace::dn_eigenvalues(count)) out.push_back(s.z().real());
        return out;
      },
      py::arg("count"));

  auto disc = m.def_submodule("discrete", "Finite-difference DD/DN Laplacian pair");
  disc.def(
      "build_pair",
      [](Index n) {
        const auto dp = discrete::build_pair(n);
        py::dict out;
        out["h"] = dp.grid.h();
        out["nodes"] = dp.grid.nodes();
        out["t_dd"] = Eigen::MatrixXd(dp.t_dd.matrix().real());
        out["t_dn"] = Eigen::MatrixXd(dp.t_dn.matrix().real());
        out["f"] = Eigen::VectorXd(dp.f_vec.entries().real());
        out["l"] = Eigen::VectorXd(dp.l_fun.weights().real().transpose());
        return out;
      },
      py::arg("n"));
  disc.def(
      "inverse_difference",
      [](Index n) { return Eigen::MatrixXd(discrete::inverse_difference(discrete::build_pair(n)).matrix().real()); },
      py::arg("n"), "T_DN^-1 - T_DD^-1 by direct inversion.");
  disc.def(
      "new_eigenvalues", [](Index n, std::size_t count) { return discrete::discrete_new_eigenvalues(discrete::build_pair(n), count); },
      py::arg("n"), py::arg("count"));
  disc.def(
      "resolvent", [](const Mat& t, Complex z) { return discrete::resolvent(DenseOperator(t), z).matrix(); }, py::arg("t"),
      py::arg("z"), "(z - T)^-1. Raises SpectrumHit.");
}
