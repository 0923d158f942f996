#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "commongraphs/acceptance.hpp"
#include "commongraphs/commonness.hpp"
#include "commongraphs/cone.hpp"
#include "commongraphs/identities.hpp"

namespace py = pybind11;
using namespace commongraphs;

namespace {

// Complex values cross the boundary as JSON text; the Python side decodes it.
py::object from_json(const nlohmann::json& j) { return py::module_::import("json").attr("loads")(j.dump()); }
nlohmann::json to_cpp_json(const py::object& o) {
  return nlohmann::json::parse(py::module_::import("json").attr("dumps")(o).cast<std::string>());
}

Graph graph_arg(const py::object& o) {
  if (py::isinstance<Graph>(o)) return o.cast<Graph>();
  return graph_from_json(to_cpp_json(o));
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Homomorphism densities, gluing templates and commonness certificates.";

  py::register_exception<BudgetExceeded>(m, "BudgetExceeded");

  py::class_<Graph>(m, "Graph")
      .def(py::init([](int n, const std::vector<std::pair<int, int>>& edges) {
             std::vector<Edge> e;
             for (auto [u, v] : edges) e.push_back({u, v});
             return Graph(n, e);
           }),
           py::arg("n"), py::arg("edges"))
      .def_static("named", &named_graph)
      .def_property_readonly("vertex_count", &Graph::vertex_count)
      .def_property_readonly("edge_count", &Graph::edge_count)
      .def_property_readonly("edges",
                             [](const Graph& g) {
                               std::vector<std::pair<int, int>> out;
                               for (const Edge& e : g.edges()) out.emplace_back(e.u, e.v);
                               return out;
                             })
      .def("to_json", [](const Graph& g) { return from_json(to_json(g)); })
      .def("__eq__", [](const Graph& a, const Graph& b) { return a == b; })
      .def("__repr__", [](const Graph& g) {
        return "Graph(" + std::to_string(g.vertex_count()) + ", " + std::to_string(g.edge_count()) + " edges)";
      });

  py::class_<StepKernel>(m, "StepKernel")
      .def(py::init<std::vector<double>, std::vector<std::vector<double>>, bool>(), py::arg("measures"),
           py::arg("values"), py::arg("graphon") = true)
      .def_static("constant", &StepKernel::constant, py::arg("value"), py::arg("graphon") = true)
      .def_property_readonly("measures", &StepKernel::measures)
      .def_property_readonly("values", &StepKernel::values)
      .def_property_readonly("is_graphon", &StepKernel::is_graphon)
      .def("to_json", [](const StepKernel& w) { return from_json(to_json(w)); });

  m.def("named_graph", &named_graph);
  m.def("hom_count", [](const py::object& h, const py::object& g) {
    return py::int_(py::str(hom_count(graph_arg(h), graph_arg(g)).str()));
  });
  m.def("automorphism_count", [](const py::object& g) { return automorphisms(graph_arg(g)).size(); });
  m.def("density", [](const py::object& h, const StepKernel& w) { return density(graph_arg(h), w); });
  m.def("sample_graphon", &sample_graphon, py::arg("seed"), py::arg("max_blocks") = 4);
  m.def("sample_kernel", &sample_kernel, py::arg("seed"), py::arg("max_blocks"), py::arg("lo"), py::arg("hi"));

  m.def("goodman_residual", &goodman_residual);
  m.def("c5_goodman_residual", &c5_goodman_residual);
  m.def("expansion_residual",
        [](const py::object& h, const StepKernel& w, double p) { return expansion_residual(graph_arg(h), w, p); });
  m.def("strongly_common_gap",
        [](const py::object& f, const StepKernel& w) { return strongly_common_gap(graph_arg(f), w); });
  m.def("common_gap", [](const py::object& h, const StepKernel& w) { return common_gap(graph_arg(h), w); });
  m.def("supersaturation_gap", &supersaturation_gap);

  m.def("check_good", [](const py::object& tmpl) {
    return from_json(to_json(check_good(template_from_json(to_cpp_json(tmpl)))));
  }, "Decide goodness of a template given as a JSON-like dict; returns the certificate dict.");
  m.def("verify_certificate",
        [](const py::object& cert) { return verify_certificate(certificate_from_json(to_cpp_json(cert))); });
  m.def("build_j", [](const py::object& tmpl) { return build_j(template_from_json(to_cpp_json(tmpl))).j; });

  m.def("pair_gap", [](const py::object& h1, const py::object& h2, double p1, const StepKernel& w) {
    return pair_gap(CommonPairSpec{graph_arg(h1), graph_arg(h2), p1, std::nullopt}, w);
  });
  m.def("certify_pair", [](const py::object& t1, int l1, const py::object& t2, int l2, double p1) {
    const PairCertification c = certify_pair_via_templates(template_from_json(to_cpp_json(t1)), l1,
                                                           template_from_json(to_cpp_json(t2)), l2, p1);
    py::dict out;
    out["certified"] = c.certified;
    out["message"] = c.message;
    out["balance_lhs"] = c.balance_lhs;
    out["balance_rhs"] = c.balance_rhs;
    return out;
  });
  m.def("solve_simple_tree_p", &solve_simple_tree_p, py::arg("e1"), py::arg("v1"), py::arg("e2"), py::arg("v2"),
        py::arg("m"));
  m.def("girth_obstruction", [](const py::object& h1, const py::object& h2, int m, double p1) {
    return girth_obstruction(graph_arg(h1), graph_arg(h2), m, p1);
  });
  m.def("dk3k2_function", [](double x, const std::string& which) {
    if (which == "y0") return dk3k2_functions(x, Dk3k2Function::y0);
    if (which == "y1") return dk3k2_functions(x, Dk3k2Function::y1);
    if (which == "g0") return dk3k2_functions(x, Dk3k2Function::g0);
    if (which == "g1") return dk3k2_functions(x, Dk3k2Function::g1);
    throw std::invalid_argument("which must be y0, y1, g0 or g1");
  });
  m.def("dk3k2_verify", [](int samples) {
    std::vector<std::uint64_t> seeds(samples);
    for (int i = 0; i < samples; ++i) seeds[i] = i;
    return from_json(to_json(dk3k2_verify(seeds)));
  }, py::arg("samples") = 100);
  m.def("falsify_common", [](const py::object& h, std::uint64_t seed, int restarts, int steps) {
    SearchOptions opt;
    opt.seed = seed;
    opt.restarts = restarts;
    opt.steps = steps;
    return from_json(to_json(falsify(common_gap_objective(graph_arg(h)), opt)));
  }, py::arg("h"), py::arg("seed") = 1, py::arg("restarts") = 50, py::arg("steps") = 200);

  m.def("run_acceptance", [](const std::string& data_dir) {
    AcceptanceConfig cfg;
    cfg.data_dir = data_dir.empty() ? std::string(COMMONGRAPHS_DATA_DIR) : data_dir;
    py::list rows;
    for (const CriterionResult& r : run_acceptance(cfg)) {
      py::dict row;
      row["id"] = r.id;
      row["name"] = r.name;
      row["passed"] = r.passed;
      row["detail"] = r.detail;
      rows.append(row);
    }
    return rows;
  }, py::arg("data_dir") = "");
}
