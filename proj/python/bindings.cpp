#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "cwq/andim.hpp"
#include "cwq/corpus.hpp"
#include "cwq/decomposer.hpp"
#include "cwq/errors.hpp"
#include "cwq/expr.hpp"
#include "cwq/generators.hpp"
#include "cwq/io.hpp"
#include "cwq/quasi_iso.hpp"
#include "cwq/treedecomp.hpp"

namespace py = pybind11;
using cwq::io::Json;

namespace {

py::object to_py(const Json& j) {
  switch (j.type()) {
    case Json::value_t::null: return py::none();
    case Json::value_t::boolean: return py::bool_(j.get<bool>());
    case Json::value_t::number_integer: return py::int_(j.get<long long>());
    case Json::value_t::number_unsigned: return py::int_(j.get<unsigned long long>());
    case Json::value_t::number_float: return py::float_(j.get<double>());
    case Json::value_t::string: return py::str(j.get<std::string>());
    case Json::value_t::array: {
      py::list out;
      for (const auto& x : j) out.append(to_py(x));
      return out;
    }
    case Json::value_t::object: {
      py::dict out;
      for (const auto& [k, v] : j.items()) out[py::str(k)] = to_py(v);
      return out;
    }
    default: return py::none();
  }
}

Json from_py(const py::handle& obj) {
  const std::string text = py::module_::import("json").attr("dumps")(obj).cast<std::string>();
  return Json::parse(text);
}

cwq::Partition partition_from(const py::dict& parts) {
  std::map<cwq::PartId, cwq::VertexSet> out;
  for (const auto& [id, members] : parts) {
    cwq::VertexSet s;
    for (const auto& v : members) s.insert(v.cast<std::string>());
    out.emplace(id.cast<std::string>(), std::move(s));
  }
  return cwq::Partition(std::move(out));
}

cwq::QiMap map_from(const cwq::Graph& source, const cwq::Graph& target, const std::map<std::string, std::string>& f,
                    double c) {
  return cwq::QiMap{source, target, {f.begin(), f.end()}, c};
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Clique-width expressions, dominated partitions, quasi-isometry and cover checks";

  auto base = py::register_exception<cwq::Error>(m, "Error");
  py::register_exception<cwq::InputError>(m, "InputError", base);
  py::register_exception<cwq::ParseError>(m, "ParseError", base);
  py::register_exception<cwq::ContractError>(m, "ContractError", base);
  py::register_exception<cwq::CapExceeded>(m, "CapExceeded", base);

  py::class_<cwq::Graph>(m, "Graph")
      .def(py::init([](std::vector<std::string> vertices, const std::vector<std::pair<std::string, std::string>>& edges) {
             std::vector<cwq::Edge> es(edges.begin(), edges.end());
             return cwq::Graph(std::move(vertices), es);
           }),
           py::arg("vertices"), py::arg("edges"))
      .def_property_readonly("vertices", &cwq::Graph::vertices)
      .def_property_readonly("edges", &cwq::Graph::edges)
      .def("vertex_count", &cwq::Graph::vertex_count)
      .def("edge_count", &cwq::Graph::edge_count)
      .def("adjacent", [](const cwq::Graph& g, const std::string& a, const std::string& b) { return g.adjacent(a, b); })
      .def("to_dict", [](const cwq::Graph& g) { return to_py(cwq::io::to_json(g)); })
      .def("__eq__", [](const cwq::Graph& a, const cwq::Graph& b) { return a == b; })
      .def("__repr__", [](const cwq::Graph& g) {
        return "<Graph " + std::to_string(g.vertex_count()) + " vertices, " + std::to_string(g.edge_count()) +
               " edges>";
      });

  py::class_<cwq::ColoredGraph>(m, "ColoredGraph")
      .def_readonly("graph", &cwq::ColoredGraph::graph)
      .def_readonly("k", &cwq::ColoredGraph::k)
      .def_property_readonly("colors",
                             [](const cwq::ColoredGraph& g) {
                               return g.color;
                             })
      .def("to_dict", [](const cwq::ColoredGraph& g) { return to_py(cwq::io::to_json(g)); });

  py::class_<cwq::CwExpr>(m, "Expr")
      .def_readonly("k", &cwq::CwExpr::k)
      .def("leaf_count", [](const cwq::CwExpr& e) { return cwq::leaf_count(*e.root); })
      .def("__str__", [](const cwq::CwExpr& e) { return cwq::print(e); })
      .def("evaluate", &cwq::evaluate)
      .def("is_strict", [](const cwq::CwExpr& e) { return cwq::validate_strict(e).strict_valid(); })
      .def("validate", [](const cwq::CwExpr& e) { return to_py(cwq::io::to_json(cwq::validate_strict(e))); })
      .def("normalize", &cwq::normalize);

  m.def("parse", [](const std::string& text) { return cwq::parse(text); }, py::arg("text"),
        "Parse the textual expression format.");
  m.def("print_expr", &cwq::print, py::arg("expr"));

  m.def(
      "decompose", [](const cwq::CwExpr& e) { return to_py(cwq::io::to_json(cwq::decompose(e))); }, py::arg("expr"),
      "Dominated monochromatic partition and quotient tree decomposition, as a dict.");
  m.def(
      "verify_result",
      [](const cwq::CwExpr& e, const py::dict& result) {
        return to_py(cwq::io::to_json(cwq::verify_result(cwq::evaluate(e), cwq::io::decomposition_from_json(from_py(result)))));
      },
      py::arg("expr"), py::arg("result"));

  m.def(
      "brute_treewidth",
      [](const cwq::Graph& g, std::optional<std::size_t> cap, bool reduce) {
        cwq::TreewidthOptions options;
        options.cap = cap ? *cap : cwq::oracle_cap_from_env(options.cap);
        options.reduce = reduce;
        return cwq::brute_treewidth(g, options);
      },
      py::arg("graph"), py::arg("cap") = py::none(), py::arg("reduce") = true);
  m.def(
      "has_minor", [](const cwq::Graph& g, const cwq::Graph& h) { return cwq::has_minor(g, h); }, py::arg("graph"),
      py::arg("pattern"));
  m.def(
      "find_minor", [](const cwq::Graph& g, const cwq::Graph& h) { return cwq::find_minor(g, h); }, py::arg("graph"),
      py::arg("pattern"));

  m.def(
      "check_qi",
      [](const cwq::Graph& source, const cwq::Graph& target, const std::map<std::string, std::string>& f, double c) {
        return to_py(cwq::io::to_json(cwq::check_qi(map_from(source, target, f, c))));
      },
      py::arg("source"), py::arg("target"), py::arg("f"), py::arg("c"));
  m.def(
      "projection_map",
      [](const cwq::Graph& g, const py::dict& partition) {
        const cwq::QiMap qm = cwq::projection_map(g, partition_from(partition));
        return py::make_tuple(qm.target, std::map<std::string, std::string>(qm.f.begin(), qm.f.end()), qm.c);
      },
      py::arg("graph"), py::arg("partition"), "Returns (quotient graph, map dict, c).");
  m.def(
      "check_partqi_tight",
      [](const cwq::Graph& g, const py::dict& partition, std::optional<int> c) {
        return to_py(cwq::io::to_json(cwq::check_partqi_tight(g, partition_from(partition), c)));
      },
      py::arg("graph"), py::arg("partition"), py::arg("c") = py::none());

  m.def("complete_graph", &cwq::complete_graph, py::arg("n"));
  m.def(
      "subdivide",
      [](const cwq::Graph& base, std::size_t times) {
        return cwq::subdivide(cwq::SubdivisionSpec::uniform(base, times));
      },
      py::arg("graph"), py::arg("times"));
  m.def(
      "gen_path",
      [](const std::string& x, const std::string& y, std::size_t length, int n, int i, int j, int k) {
        return cwq::gen_path(x, y, length, n, i, j, k);
      },
      py::arg("x"), py::arg("y"), py::arg("length"), py::arg("n") = 3, py::arg("i") = 1, py::arg("j") = 2,
      py::arg("k") = 1);
  m.def(
      "gen_spider",
      [](std::size_t t, const std::vector<std::size_t>& legs) { return cwq::gen_spider(t, legs); }, py::arg("t"),
      py::arg("legs"));
  m.def(
      "gen_subdivided_clique", [](std::size_t n, std::size_t times) { return cwq::gen_subdivided_clique(n, times); },
      py::arg("n"), py::arg("times"));
  m.def(
      "build_minor_model",
      [](const cwq::Graph& h, const cwq::Graph& source, const cwq::Graph& target,
         const std::map<std::string, std::string>& f, double c) {
        const cwq::MinorModelResult r = cwq::build_minor_model(h, target, map_from(source, target, f, c), c);
        py::dict out;
        out["model"] = to_py(cwq::io::to_json(r.model));
        out["facts"] = to_py(cwq::io::to_json(r.facts));
        out["problem"] = cwq::check_minor_model(target, h, r.model);
        return out;
      },
      py::arg("pattern"), py::arg("source"), py::arg("target"), py::arg("f"), py::arg("c"));

  m.def(
      "validate_cover",
      [](const cwq::Graph& g, const py::dict& cover) {
        return to_py(cwq::io::to_json(cwq::validate_cover(g, cwq::io::cover_from_json(from_py(cover)))));
      },
      py::arg("graph"), py::arg("cover"));
  m.def(
      "banded_cover", [](const cwq::Graph& g, double r) { return to_py(cwq::io::to_json(cwq::banded_cover(g, r))); },
      py::arg("graph"), py::arg("r"));
  m.def(
      "pullback_cover",
      [](const cwq::Graph& source, const cwq::Graph& target, const std::map<std::string, std::string>& f, double c,
         const py::dict& cover, double r, double slope) {
        const cwq::CoverFamily out = cwq::pullback_cover(map_from(source, target, f, c),
                                                         cwq::io::cover_from_json(from_py(cover)), r,
                                                         cwq::ControlDilation(slope));
        return to_py(cwq::io::to_json(out));
      },
      py::arg("source"), py::arg("target"), py::arg("f"), py::arg("c"), py::arg("cover"), py::arg("r"),
      py::arg("slope"));

  m.def(
      "random_strict_expression",
      [](std::uint64_t seed, int k, std::size_t max_leaves) {
        std::mt19937_64 rng(seed);
        return cwq::random_strict_expression(rng, k, max_leaves);
      },
      py::arg("seed"), py::arg("k"), py::arg("max_leaves"));
}
