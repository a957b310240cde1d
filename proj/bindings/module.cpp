#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "qcert/certifier.hpp"
#include "qcert/oracles.hpp"

namespace py = pybind11;

namespace {

qcert::ConstructionParams make_params(std::int64_t p, std::int64_t a,
                                      std::array<std::int64_t, 3> l1,
                                      std::array<std::int64_t, 3> l2) {
  return {p, a, l1, l2};
}

std::int64_t resolve_a(std::int64_t p, const py::object& a) {
  if (py::isinstance<py::str>(a)) {
    if (a.cast<std::string>() != "auto") throw std::invalid_argument("a must be an int or 'auto'");
    return qcert::PrimeField(p).find_nonsquare();
  }
  return a.cast<std::int64_t>();
}

} // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "exact certifier for quadric-bundle residue conditions over F_p";

  m.def("is_square", [](std::int64_t p, std::int64_t a) { return qcert::PrimeField(p).is_square(a); },
        py::arg("p"), py::arg("a"), "Euler criterion in F_p; rejects zero");
  m.def("find_nonsquare", [](std::int64_t p) { return qcert::PrimeField(p).find_nonsquare(); },
        py::arg("p"), "smallest positive nonsquare mod p");
  m.def("square_class_in_extension",
        [](std::int64_t p, std::int64_t a, int mdeg) {
          return qcert::square_class_in_extension(qcert::PrimeField(p), a, mdeg);
        },
        py::arg("p"), py::arg("a"), py::arg("m"),
        "whether a becomes a square in F_{p^m}");

  m.def("factor_poly",
        [](std::int64_t p, const std::vector<std::int64_t>& coeffs) {
          qcert::UniPoly f(qcert::PrimeField(p), coeffs);
          std::vector<std::pair<std::vector<std::int64_t>, int>> out;
          for (const auto& [q, mult] : qcert::factor_univariate(f))
            out.emplace_back(q.coeffs(), mult);
          return out;
        },
        py::arg("p"), py::arg("coeffs"),
        "monic irreducible factors (ascending coefficients) with multiplicities");

  m.def("check_arrangement",
        [](std::int64_t p, std::array<std::int64_t, 3> l1, std::array<std::int64_t, 3> l2) {
          auto arr = qcert::LineArrangement::build(qcert::PrimeField(p), l1, l2);
          py::dict d;
          d["i"] = qcert::check_condition_i(arr);
          d["ii"] = qcert::check_condition_ii_iii(arr, qcert::LineRole::AxisX);
          d["ii_primed"] = qcert::check_condition_primed(arr, qcert::PrimedVariant::II);
          d["iii"] = qcert::check_condition_ii_iii(arr, qcert::LineRole::AxisY);
          d["iii_primed"] = qcert::check_condition_primed(arr, qcert::PrimedVariant::III);
          return d;
        },
        py::arg("p"), py::arg("l1"), py::arg("l2"));

  m.def("certify_json",
        [](std::int64_t p, const py::object& a, std::array<std::int64_t, 3> l1,
           std::array<std::int64_t, 3> l2) {
          return qcert::certify(make_params(p, resolve_a(p, a), l1, l2)).dump();
        },
        py::arg("p"), py::arg("a"), py::arg("l1"), py::arg("l2"),
        "full JSON certificate (schema version 1)");
  m.def("certify_verdict",
        [](std::int64_t p, const py::object& a, std::array<std::int64_t, 3> l1,
           std::array<std::int64_t, 3> l2) {
          return qcert::certify(make_params(p, resolve_a(p, a), l1, l2)).verdict;
        },
        py::arg("p"), py::arg("a"), py::arg("l1"), py::arg("l2"));

  m.def("search",
        [](std::int64_t lo, std::int64_t hi, std::array<std::int64_t, 3> l1,
           std::array<std::int64_t, 3> l2, const py::object& a) {
          std::optional<std::int64_t> fixed;
          if (!py::isinstance<py::str>(a)) fixed = a.cast<std::int64_t>();
          std::vector<std::tuple<std::int64_t, std::int64_t, std::string>> out;
          for (const auto& r : qcert::search_primes(lo, hi, l1, l2, fixed))
            out.emplace_back(r.p, r.a, r.verdict);
          return out;
        },
        py::arg("lo"), py::arg("hi"), py::arg("l1"), py::arg("l2"), py::arg("a") = "auto");

  m.def("exceptional_primes",
        [](std::array<std::int64_t, 3> l1, std::array<std::int64_t, 3> l2) {
          auto s = qcert::exceptional_prime_set(l1, l2);
          return std::make_pair(s.all_primes,
                                std::vector<std::int64_t>(s.primes.begin(), s.primes.end()));
        },
        py::arg("l1"), py::arg("l2"),
        "(all_primes, sorted primes breaking the arrangement conditions)");

  m.attr("__version__") = "0.1.0";
}
