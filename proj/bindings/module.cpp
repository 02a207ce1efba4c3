#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <nlohmann/json.hpp>

#include "siso/io.hpp"
#include "siso/oracle.hpp"
#include "siso/suites.hpp"

namespace py = pybind11;
using namespace siso;
using nlohmann::json;

namespace {

SolverConfig config_from_kwargs(double brute_cap, double c1, double c2,
                                std::uint64_t seed) {
  SolverConfig cfg;
  cfg.brute_cap = uint128(brute_cap);
  cfg.c1 = c1;
  cfg.c2 = c2;
  cfg.seed = seed;
  return cfg;
}

std::string iso_json(const IsoResult &r) { return io::iso_result_to_json(r).dump(); }

Graph graph_from_obj(const py::object &obj) {
  if (py::isinstance<py::str>(obj))
    return io::graph_from_text(obj.cast<std::string>());
  // (n, edges) pair with 1-indexed edges
  auto tup = obj.cast<std::pair<int, std::vector<std::pair<int, int>>>>();
  std::vector<std::pair<int, int>> edges;
  for (auto [u, v] : tup.second) edges.push_back({u - 1, v - 1});
  return Graph::from_edges(tup.first, std::move(edges));
}

} // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "string and graph isomorphism toolkit for groups with restricted "
            "composition factors";

  py::register_exception<Error>(m, "SisoError");

  py::class_<Perm>(m, "Perm")
      .def(py::init([](const std::string &cycles, int n) {
             return Perm::parse_cycles(cycles, n);
           }),
           py::arg("cycles"), py::arg("n"))
      .def_static("identity", [](int n) { return Perm(n); })
      .def("degree", &Perm::degree)
      .def("apply", [](const Perm &p, int v) { return p[v - 1] + 1; })
      .def("compose", &Perm::then)
      .def("inverse", &Perm::inverse)
      .def("is_identity", &Perm::is_identity)
      .def("__mul__", &Perm::then)
      .def("__eq__", [](const Perm &a, const Perm &b) { return a == b; })
      .def("__str__", &Perm::cycle_string)
      .def("__repr__", [](const Perm &p) {
        return "Perm('" + p.cycle_string() + "', " + std::to_string(p.degree()) + ")";
      });

  py::class_<StabChain>(m, "Group")
      .def(py::init([](int n, const std::vector<std::string> &gens) {
             std::vector<Perm> parsed;
             for (const auto &g : gens) parsed.push_back(Perm::parse_cycles(g, n));
             return StabChain::build(GenSet(n, std::move(parsed)));
           }),
           py::arg("n"), py::arg("gens"))
      .def("degree", &StabChain::degree)
      .def("order", [](const StabChain &c) { return u128_str(c.order()); })
      .def("contains",
           [](const StabChain &c, const std::string &cycles) {
             return c.contains(Perm::parse_cycles(cycles, c.degree()));
           })
      .def("orbits",
           [](const StabChain &c) {
             std::vector<std::vector<int>> out;
             for (auto orb : c.orbits()) {
               for (int &v : orb) ++v;
               out.push_back(std::move(orb));
             }
             return out;
           })
      .def("generators",
           [](const StabChain &c) {
             std::vector<std::string> out;
             for (const Perm &g : c.strong_gens()) out.push_back(g.cycle_string());
             return out;
           })
      .def("is_giant",
           [](const StabChain &c) {
             switch (is_giant(c)) {
             case GiantKind::SYM: return "SYM";
             case GiantKind::ALT: return "ALT";
             default: return "NEITHER";
             }
           })
      .def("point_stabilizer",
           [](const StabChain &c, std::vector<int> pts) {
             for (int &v : pts) --v;
             return c.pointwise_stabilizer(pts);
           })
      .def("setwise_stabilizer",
           [](const StabChain &c, std::vector<int> pts) {
             for (int &v : pts) --v;
             return c.setwise_stabilizer(pts);
           })
      .def("__repr__", [](const StabChain &c) {
        return "Group(n=" + std::to_string(c.degree()) + ", order=" +
               u128_str(c.order()) + ")";
      });

  m.def(
      "string_iso",
      [](const std::string &instance_json, double brute_cap, double c1, double c2,
         std::uint64_t seed) {
        auto parsed = io::instance_from_json(json::parse(instance_json));
        Solver solver(config_from_kwargs(brute_cap, c1, c2, seed));
        return iso_json(solver.string_iso_main(parsed.inst, parsed.seq));
      },
      py::arg("instance_json"), py::arg("brute_cap") = 10000.0, py::arg("c1") = 1.0,
      py::arg("c2") = 10.0, py::arg("seed") = 0x5150,
      "solve a string-isomorphism instance given as JSON; returns a JSON coset");

  m.def(
      "brute_string_iso",
      [](const std::string &instance_json) {
        auto parsed = io::instance_from_json(json::parse(instance_json));
        Coset base = oracle::brute_string_iso(parsed.inst.group.subgroup().gen_set(),
                                              parsed.inst.x, parsed.inst.y,
                                              parsed.inst.window);
        return iso_json(base);
      },
      py::arg("instance_json"), "exhaustive reference filter for cross-checks");

  m.def(
      "graph_iso",
      [](const py::object &g1, const py::object &g2, double brute_cap) {
        Solver solver(config_from_kwargs(brute_cap, 1.0, 10.0, 0x5150));
        return iso_json(
            graph_iso_bounded_degree(solver, graph_from_obj(g1), graph_from_obj(g2)));
      },
      py::arg("graph1"), py::arg("graph2"), py::arg("brute_cap") = 10000.0,
      "bounded-degree graph isomorphism; graphs as edge-list text or (n, edges)");

  m.def(
      "graph_aut_order",
      [](const py::object &g) {
        Solver solver;
        return u128_str(graph_aut_bounded_degree(solver, graph_from_obj(g)).order());
      },
      py::arg("graph"));

  m.def(
      "validate_sequence",
      [](const std::string &instance_json) {
        auto parsed = io::instance_from_json(json::parse(instance_json));
        return io::validation_report_to_json(validate_almost_d_ary(parsed.seq)).dump();
      },
      py::arg("instance_json"), "almost-d-ary validation report as JSON");

  m.def(
      "reduce",
      [](const std::string &instance_json, const std::string &step) {
        auto parsed = io::instance_from_json(json::parse(instance_json));
        SolverConfig cfg;
        if (step == "one")
          return io::augmented_to_json(reduce_step_one(parsed.inst, parsed.seq.d, cfg),
                                       parsed.sigma)
              .dump();
        if (step == "two")
          return io::augmented_to_json(reduce_step_two(parsed.inst, parsed.seq, cfg),
                                       parsed.sigma)
              .dump();
        auto one = reduce_step_one(parsed.inst, parsed.seq.d, cfg);
        return io::augmented_to_json(reduce_step_two(one.inst, one.seq, cfg),
                                     parsed.sigma)
            .dump();
      },
      py::arg("instance_json"), py::arg("step") = "both",
      "change-of-action reduction; returns the augmented instance as JSON");

  m.def(
      "hypergraph_iso",
      [](const std::string &h1_json, const std::string &h2_json) {
        Solver solver;
        Hypergraph h1 = io::hypergraph_from_json(json::parse(h1_json));
        Hypergraph h2 = io::hypergraph_from_json(json::parse(h2_json));
        return iso_json(hypergraph_iso(solver, h1, h2));
      },
      py::arg("h1_json"), py::arg("h2_json"));

  m.def(
      "relational_structure_iso",
      [](const std::string &a_json, const std::string &b_json) {
        Solver solver;
        RelStructure a = io::structure_from_json(json::parse(a_json));
        RelStructure b = io::structure_from_json(json::parse(b_json));
        return iso_json(relational_structure_iso(solver, a, b));
      },
      py::arg("a_json"), py::arg("b_json"));

  m.attr("__version__") = "0.1.0";
}
