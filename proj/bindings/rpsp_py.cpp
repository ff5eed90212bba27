#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "rpsp/io.hpp"
#include "rpsp/kernelization.hpp"
#include "rpsp/reductions.hpp"
#include "rpsp/rejection.hpp"
#include "rpsp/solvers.hpp"

namespace py = pybind11;
using namespace rpsp;

namespace {

RejectionBudget budget_from(py::object c) {
  if (c.is_none()) return RejectionBudget::unbounded();
  return RejectionBudget::limit(c.cast<int>());
}

Algo algo_from(const std::string& name) {
  if (name == "auto") return Algo::automatic;
  if (name == "fpt") return Algo::fpt;
  if (name == "one-rej") return Algo::one_rejection;
  if (name == "brute") return Algo::brute;
  if (name == "ke") return Algo::ke;
  throw InvalidParameterError("unknown algorithm '" + name + "'");
}

py::dict result_dict(const SolveResult& res) {
  py::dict out;
  out["yes"] = res.yes;
  out["witness"] = res.witness ? py::cast(*res.witness) : py::none();
  py::dict stats;
  stats["subsets_examined"] = res.stats.subsets_examined;
  stats["dp_cells"] = res.stats.dp_cells;
  stats["rejections_checked"] = res.stats.rejections_checked;
  stats["wall_ms"] = res.stats.wall_ms;
  out["stats"] = stats;
  return out;
}

}  // namespace

PYBIND11_MODULE(rpsp_py, m) {
  m.doc() = "rejection-proof d-set packing and kidney exchange solvers";

  py::class_<Instance>(m, "Instance")
      .def_readonly("n", &Instance::n)
      .def_readonly("p", &Instance::p)
      .def_readonly("d", &Instance::d)
      .def_readonly("k", &Instance::k)
      .def_readonly("agent_of", &Instance::agent_of)
      .def_readonly("sets", &Instance::sets)
      .def("__repr__", [](const Instance& inst) {
        return "<Instance n=" + std::to_string(inst.n) + " m=" +
               std::to_string(inst.num_sets()) + " p=" +
               std::to_string(inst.p) + " d=" + std::to_string(inst.d) +
               " k=" + std::to_string(inst.k) + ">";
      });

  m.def(
      "make_instance",
      [](int n, int p, std::vector<int> agent_of,
         std::vector<std::vector<int>> sets, int d, int k) {
        return make_instance(n, p, std::move(agent_of), std::move(sets), d, k);
      },
      py::arg("n"), py::arg("p"), py::arg("agent_of"), py::arg("sets"),
      py::arg("d"), py::arg("k"));
  m.def("with_k", [](const Instance& inst, int k) {
    Instance copy = inst;
    copy.k = k;
    return copy;
  });
  m.def("validate_instance", &validate_instance);

  m.def("parse_instance", &parse_instance);
  m.def("serialize_instance", &serialize_instance);
  m.def("load_instance", [](const std::string& text) {
    return load_instance_text(text).instance;
  });
  m.def("parse_packing", &parse_packing);
  m.def("serialize_packing", &serialize_packing);

  m.def(
      "solve",
      [](const Instance& inst, py::object c, const std::string& algo,
         int threads, bool unguarded) {
        SolveOptions options;
        options.threads = threads;
        options.unguarded = unguarded;
        return result_dict(solve(inst, budget_from(c), algo_from(algo),
                                 options));
      },
      py::arg("instance"), py::arg("c") = py::none(),
      py::arg("algo") = "auto", py::arg("threads") = 1,
      py::arg("unguarded") = false);
  m.def("max_coverage", [](const Instance& inst) {
    auto res = solve_ke(inst);
    return py::make_tuple(res.max_coverage, res.witness);
  });

  m.def(
      "is_rejection_proof",
      [](const Instance& inst, const Packing& x, py::object c, bool oracle) {
        return is_rejection_proof(inst, x, budget_from(c), oracle);
      },
      py::arg("instance"), py::arg("packing"), py::arg("c") = py::none(),
      py::arg("oracle") = false);
  m.def(
      "find_rejection",
      [](const Instance& inst, const Packing& x, int agent,
         py::object c) -> py::object {
        auto w = find_rejection(inst, x, agent, budget_from(c));
        if (!w) return py::none();
        py::dict out;
        out["agent"] = w->agent;
        out["rejected"] = w->rejected;
        out["added"] = w->added;
        out["record"] = format_witness(*w);
        return out;
      },
      py::arg("instance"), py::arg("packing"), py::arg("agent"),
      py::arg("c") = py::none());
  m.def("is_candidate_solution", &is_candidate_solution);

  m.def("f_bound", &f_bound);
  m.def("g_bound", &g_bound);
  m.def("kernelize", [](const Instance& inst) {
    auto outcome = kernelize(inst);
    py::dict out;
    out["decided_yes"] =
        outcome.verdict == KernelOutcome::Verdict::decided_yes;
    out["instance"] =
        outcome.instance ? py::cast(*outcome.instance) : py::none();
    std::vector<std::string> trace;
    for (const auto& rec : outcome.trace)
      trace.push_back(format_rule_record(rec));
    out["trace"] = trace;
    out["kept"] = outcome.kept;
    return out;
  });

  m.def(
      "random_instance",
      [](int n, int m, int p, int d, int k, std::uint64_t seed) {
        return random_instance(n, m, p, d, k, seed);
      },
      py::arg("n"), py::arg("m"), py::arg("p"), py::arg("d"), py::arg("k"),
      py::arg("seed"));

  m.def(
      "reduce_subgraph_iso",
      [](int n_g, const std::vector<std::pair<int, int>>& g_edges, int n_h,
         const std::vector<std::pair<int, int>>& h_edges) {
        auto art = reduce_subgraph_iso(make_undirected_graph(n_g, g_edges),
                                       make_undirected_graph(n_h, h_edges));
        py::dict out;
        out["k"] = art.k;
        out["n_vertices"] = art.gprime.n;
        out["agent_of"] = art.agent_of;
        out["edges"] = art.gprime.edges;
        out["instance"] = artifact_instance(art);
        return out;
      },
      py::arg("n_g"), py::arg("g_edges"), py::arg("n_h"), py::arg("h_edges"));
  m.def(
      "brute_subgraph_iso",
      [](int n_g, const std::vector<std::pair<int, int>>& g_edges, int n_h,
         const std::vector<std::pair<int, int>>& h_edges) -> py::object {
        auto found = brute_subgraph_iso(make_undirected_graph(n_g, g_edges),
                                        make_undirected_graph(n_h, h_edges));
        if (!found) return py::none();
        return py::cast(*found);
      },
      py::arg("n_g"), py::arg("g_edges"), py::arg("n_h"), py::arg("h_edges"));

  py::register_exception<InvalidParameterError>(m, "InvalidParameterError",
                                                PyExc_ValueError);
  py::register_exception<InvalidPackingError>(m, "InvalidPackingError",
                                              PyExc_ValueError);
  py::register_exception<SizeLimitError>(m, "SizeLimitError",
                                         PyExc_ValueError);
  py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
}
