#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "polydeck/iso.hpp"
#include "polydeck/kocay.hpp"
#include "polydeck/spectral.hpp"
#include "polydeck/verify.hpp"

namespace py = pybind11;
using namespace polydeck;

namespace {

kocay::Family family_or_throw(const std::string& name) {
  auto f = kocay::parse_family(name);
  if (!f) throw py::value_error("unknown family '" + name + "'");
  return *f;
}

spectral::SolverConfig solver_config(double tol, long long max_iter, double shift, std::uint64_t seed) {
  spectral::SolverConfig cfg;
  cfg.tolerance = tol;
  cfg.max_iterations = max_iter;
  cfg.shift = shift;
  cfg.seed = seed;
  return cfg;
}

// JSON crosses the boundary as text; the Python side parses it.
std::string claims_json(const std::vector<verify::Claim>& cs) { return verify::to_json(cs).dump(); }

}  // namespace

PYBIND11_MODULE(_polydeck, m) {
  m.doc() = "Kocay hypergraph pairs: constructions, spectra, decks and claim verification";

  py::register_exception<kocay::InvalidParameter>(m, "InvalidParameter", PyExc_ValueError);
  py::register_exception<spectral::NotConnected>(m, "NotConnected", PyExc_RuntimeError);
  py::register_exception<iso::SizeBoundExceeded>(m, "SizeBoundExceeded", PyExc_ValueError);

  py::class_<Hypergraph>(m, "Hypergraph")
      .def(py::init<unsigned, std::vector<Vertex>, std::vector<Edge>>(), py::arg("rank"),
           py::arg("vertices"), py::arg("edges"))
      .def_property_readonly("rank", &Hypergraph::rank)
      .def_property_readonly("vertices", &Hypergraph::vertices)
      .def_property_readonly("edges", &Hypergraph::edges)
      .def("to_hg", [](const Hypergraph& h) { return to_hg(h); })
      .def_static("from_hg", [](const std::string& text) { return parse_hg(text); })
      .def("__eq__", [](const Hypergraph& a, const Hypergraph& b) { return a == b; })
      .def("__repr__", [](const Hypergraph& h) {
        return "<Hypergraph rank " + std::to_string(h.rank()) + ", " + std::to_string(h.num_vertices()) +
               " vertices, " + std::to_string(h.num_edges()) + " edges>";
      });

  m.def("family", [](const std::string& name, int n, int k) {
    return kocay::family_hypergraph({family_or_throw(name), n, k});
  }, py::arg("name"), py::arg("n") = 3, py::arg("k") = 0);

  m.def("spectrum_json", [](const Hypergraph& h, double tol, long long max_iter, double shift, std::uint64_t seed) {
    const auto ep = spectral::principal_eigenpair(h, solver_config(tol, max_iter, shift, seed));
    auto rec = spectral::report_record("input", std::nullopt, ep);
    rec["vector"] = ep.vector;
    return rec.dump();
  }, py::arg("h"), py::arg("tol") = 1e-12, py::arg("max_iter") = 1'000'000, py::arg("shift") = 1.0,
     py::arg("seed") = 0);

  m.def("oracle_radius", [](const Hypergraph& h, int restarts, std::uint64_t seed) {
    return spectral::oracle_radius(h, restarts, seed);
  }, py::arg("h"), py::arg("restarts") = 8, py::arg("seed") = 1);

  m.def("compare", [](const Hypergraph& a, const Hypergraph& b) {
    using V = verify::Comparison::Verdict;
    const auto c = verify::compare_spectra(a, b);
    return c.verdict == V::FirstGreater ? "first > second" : c.verdict == V::SecondGreater ? "second > first"
                                                                                           : "not different";
  });

  m.def("are_isomorphic", [](const Hypergraph& a, const Hypergraph& b) { return iso::are_isomorphic(a, b); });
  m.def("automorphism_count", [](const Hypergraph& h) { return iso::automorphism_count(h); });
  m.def("deck_json", [](const Hypergraph& h) { return iso::deck_to_json(iso::deck(h)).dump(); });
  m.def("hypomorphism", [](const Hypergraph& a, const Hypergraph& b) { return iso::hypomorphism(a, b); });

  m.def("verify_json", [](int n, bool exact_only) {
    py::gil_scoped_release release;
    return claims_json(exact_only ? verify::verify_identity_suite(n) : verify::verify_all(n));
  }, py::arg("n"), py::arg("exact_only") = false);
}
