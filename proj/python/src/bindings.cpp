#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "cgim/diffusion.hpp"
#include "cgim/errors.hpp"
#include "cgim/generators.hpp"
#include "cgim/graph.hpp"
#include "cgim/oracle.hpp"
#include "cgim/selection.hpp"
#include "cgim/thresholds.hpp"

namespace py = pybind11;
using namespace cgim;

namespace {

py::dict selection_dict(const SeedSelection& sel) {
  py::dict d;
  d["algorithm"] = sel.algorithm;
  d["seeds"] = sel.seeds;
  d["gain_curve"] = sel.gain_curve;
  d["pick_ms"] = sel.pick_ms;
  return d;
}

py::object witness_object(const std::optional<Witness>& w, const ThresholdModel& model) {
  if (!w) return py::none();
  py::dict d;
  d["kind"] = w->kind == Witness::Kind::Submodularity ? "submodularity" : "monotonicity";
  d["smaller"] = w->smaller;
  d["larger"] = w->larger;
  d["node"] = w->node;
  d["margin_smaller"] = w->margin_smaller;
  d["margin_larger"] = w->margin_larger;
  d["node_count"] = w->graph.node_count();
  d["edges"] = w->graph.edges();
  std::ostringstream text;
  write_witness(text, *w, model);
  d["text"] = text.str();
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Influence maximization under the coordination game threshold model";

  py::register_exception<ContractViolation>(m, "ContractViolation", PyExc_ValueError);
  py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
  py::register_exception<GuardExceeded>(m, "GuardExceeded", PyExc_RuntimeError);

  py::class_<Graph>(m, "Graph")
      .def_static(
          "from_edges",
          [](std::size_t n, const std::vector<Edge>& edges, bool directed, std::vector<NodeLabel> labels) {
            return Graph::from_edges(n, edges, directed, std::move(labels));
          },
          py::arg("node_count"), py::arg("edges"), py::arg("directed") = false,
          py::arg("labels") = std::vector<NodeLabel>{})
      .def_property_readonly("node_count", &Graph::node_count)
      .def_property_readonly("edge_count", &Graph::edge_count)
      .def_property_readonly("directed", &Graph::directed)
      .def("out_neighbors",
           [](const Graph& g, NodeId v) {
             auto s = spread_targets(g, v);
             return std::vector<NodeId>(s.begin(), s.end());
           })
      .def("in_neighbors",
           [](const Graph& g, NodeId v) {
             auto s = influence_neighbors(g, v);
             return std::vector<NodeId>(s.begin(), s.end());
           })
      .def("label", &Graph::label)
      .def("find", &Graph::find)
      .def("edges", &Graph::edges)
      .def("__repr__", [](const Graph& g) {
        return "<Graph nodes=" + std::to_string(g.node_count()) + " edges=" + std::to_string(g.edge_count()) +
               (g.directed() ? " directed>" : " undirected>");
      });

  m.def(
      "load_edge_list",
      [](const std::string& path, bool directed) {
        auto loaded = load_edge_list_file(path, directed);
        py::dict drops;
        drops["self_loops"] = loaded.self_loops_dropped;
        drops["duplicates"] = loaded.duplicates_dropped;
        return py::make_tuple(std::move(loaded.graph), drops);
      },
      py::arg("path"), py::arg("directed") = false,
      "Returns (graph, {'self_loops': n, 'duplicates': n}).");
  m.def(
      "preferential_attachment",
      [](std::size_t n, std::size_t links, std::uint64_t seed) {
        Rng rng(seed);
        return preferential_attachment(n, links, rng);
      },
      py::arg("n"), py::arg("links"), py::arg("seed") = 1);

  py::class_<ThresholdModel>(m, "ThresholdModel")
      .def(py::init([](const std::string& spec) { return parse_model_spec(spec); }), py::arg("spec"))
      .def_static("linear", &ThresholdModel::linear)
      .def_static("concave_square", &ThresholdModel::concave_square)
      .def_static("convex_sqrt", &ThresholdModel::convex_sqrt)
      .def_static("constant", &ThresholdModel::constant, py::arg("delta0"))
      .def_static("power_law", &ThresholdModel::power_law, py::arg("gamma"))
      .def("cdf", [](const ThresholdModel& model, double x) { return cdf(model, x); })
      .def("concavity", [](const ThresholdModel& model) { return std::string(to_string(is_concave_cdf(model))); })
      .def_property_readonly("spec", [](const ThresholdModel& model) { return to_spec(model); })
      .def("__eq__", [](const ThresholdModel& a, const ThresholdModel& b) { return a == b; })
      .def("__repr__", [](const ThresholdModel& model) { return "ThresholdModel('" + to_spec(model) + "')"; });

  m.def("delta_from_payoffs", &delta_from_payoffs, py::arg("payoff_a"), py::arg("payoff_b"));
  m.def("requirement_for", &requirement_for, py::arg("delta"), py::arg("degree"));

  m.def(
      "simulate",
      [](const Graph& g, const std::vector<std::uint32_t>& requirements, const std::vector<NodeId>& seeds) {
        return simulate(g, requirements, seeds).active;
      },
      py::arg("graph"), py::arg("requirements"), py::arg("seeds"),
      "Final adopter set for fixed per-node requirements.");
  m.def(
      "estimate_sigma_mc",
      [](const Graph& g, const ThresholdModel& model, const std::vector<NodeId>& seeds, std::size_t runs,
         std::uint64_t seed, unsigned workers) {
        py::gil_scoped_release release;
        auto est = estimate_sigma_mc(g, model, seeds, runs, seed, workers);
        return std::make_pair(est.mean, est.standard_error);
      },
      py::arg("graph"), py::arg("model"), py::arg("seeds"), py::arg("runs") = 10000, py::arg("seed") = 1,
      py::arg("workers") = 1, "Returns (mean, standard_error).");
  m.def(
      "estimate_sigma_snapshots",
      [](const Graph& g, const ThresholdModel& model, const std::vector<NodeId>& seeds, std::size_t count,
         std::uint64_t seed, unsigned workers) {
        py::gil_scoped_release release;
        auto pool = generate_snapshots(g, model, seed, count);
        return estimate_sigma_snapshots(g, pool, seeds, workers);
      },
      py::arg("graph"), py::arg("model"), py::arg("seeds"), py::arg("snapshots") = 100, py::arg("seed") = 1,
      py::arg("workers") = 1);

  m.def(
      "greedy",
      [](const Graph& g, const ThresholdModel& model, std::size_t k, std::size_t runs, std::uint64_t seed,
         unsigned workers) {
        SeedSelection sel;
        {
          py::gil_scoped_release release;
          sel = greedy(g, model, k, runs, seed, workers);
        }
        return selection_dict(sel);
      },
      py::arg("graph"), py::arg("model"), py::arg("k"), py::arg("runs") = 10000, py::arg("seed") = 1,
      py::arg("workers") = 1);
  m.def(
      "greedy_pp",
      [](const Graph& g, const ThresholdModel& model, std::size_t k, std::size_t snapshots, std::uint64_t seed,
         unsigned workers) {
        SeedSelection sel;
        {
          py::gil_scoped_release release;
          sel = greedy_pp(g, model, k, snapshots, seed, workers);
        }
        return selection_dict(sel);
      },
      py::arg("graph"), py::arg("model"), py::arg("k"), py::arg("snapshots") = 100, py::arg("seed") = 1,
      py::arg("workers") = 1);
  m.def(
      "degree_heuristic", [](const Graph& g, std::size_t k) { return selection_dict(degree_heuristic(g, k)); },
      py::arg("graph"), py::arg("k"));
  m.def(
      "pagerank_heuristic",
      [](const Graph& g, std::size_t k, double alpha) { return selection_dict(pagerank_heuristic(g, k, alpha)); },
      py::arg("graph"), py::arg("k"), py::arg("alpha") = 0.9);
  m.def(
      "pagerank_scores", [](const Graph& g, double alpha) { return pagerank_scores(g, alpha).scores; },
      py::arg("graph"), py::arg("alpha") = 0.9);
  m.def(
      "random_heuristic",
      [](const Graph& g, std::size_t k, std::uint64_t seed) {
        Rng rng(seed);
        return selection_dict(random_heuristic(g, k, rng));
      },
      py::arg("graph"), py::arg("k"), py::arg("seed") = 1);

  m.def(
      "exact_sigma",
      [](const Graph& g, const ThresholdModel& model, const std::vector<NodeId>& seeds) {
        return exact_sigma(g, model, seeds);
      },
      py::arg("graph"), py::arg("model"), py::arg("seeds"));
  m.def(
      "brute_force_opt",
      [](const Graph& g, const ThresholdModel& model, std::size_t k) {
        auto best = brute_force_opt(g, model, k);
        return py::make_tuple(best.seeds, best.value);
      },
      py::arg("graph"), py::arg("model"), py::arg("k"), "Returns (seeds, value).");
  m.def(
      "check_monotone_submodular",
      [](const Graph& g, const ThresholdModel& model) {
        auto report = check_monotone_submodular(g, model);
        return witness_object(report.witness, model);
      },
      py::arg("graph"), py::arg("model"), "None if sigma is monotone and submodular, else a witness dict.");
  m.def(
      "find_submodularity_violation",
      [](const ThresholdModel& model, std::size_t budget, std::uint64_t seed) {
        return witness_object(find_submodularity_violation(model, budget, seed), model);
      },
      py::arg("model"), py::arg("budget") = 500, py::arg("seed") = 1);
}
