#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "smplab/error.hpp"
#include "smplab/gadgets.hpp"
#include "smplab/io.hpp"
#include "smplab/lab.hpp"
#include "smplab/protocols.hpp"
#include "smplab/random.hpp"

namespace py = pybind11;
using namespace smplab;

namespace {

Graph make_graph(std::size_t n, const std::vector<Edge>& edges, const std::string& self_loops,
                 const std::vector<Vertex>& loops) {
  return Graph::from_edges(n, edges, self_loops_from_string(self_loops), loops);
}

py::dict verdict_to_dict(const Verdict& v) {
  py::dict d;
  d["outcome"] = to_string(v.outcome);
  d["value"] = v.value;
  d["positive"] = v.positive();
  d["bits_a"] = v.bits_a;
  d["bits_b"] = v.bits_b;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Universal SMP protocols, lattices, planar structure and labeling schemes";

  auto base = py::register_exception<std::runtime_error>(m, "SmplabError");
  py::register_exception<InputError>(m, "InputError", PyExc_ValueError);
  py::register_exception<CapacityError>(m, "CapacityError", base.ptr());
  py::register_exception<PreconditionError>(m, "PreconditionError", PyExc_ValueError);
  py::register_exception<ConstructionError>(m, "ConstructionError", base.ptr());
  py::register_exception<VerificationError>(m, "VerificationError", base.ptr());

  py::class_<Graph>(m, "Graph")
      .def(py::init(&make_graph), py::arg("n"), py::arg("edges"), py::arg("self_loops") = "none",
           py::arg("loops") = std::vector<Vertex>{})
      .def_property_readonly("n", &Graph::size)
      .def("__len__", &Graph::size)
      .def("adjacent", &Graph::adjacent)
      .def("neighbors", &Graph::neighbors)
      .def("degree", &Graph::degree)
      .def("edges", &Graph::edges)
      .def("loops", &Graph::loops)
      .def_property_readonly("edge_count", &Graph::edge_count)
      .def_property_readonly("self_loops", [](const Graph& g) { return std::string(to_string(g.self_loops())); })
      .def("to_json", [](const Graph& g) { return io::graph_to_json(g).dump(); })
      .def_static("from_json", [](const std::string& s) { return io::graph_from_json(io::Json::parse(s)); })
      .def("__eq__", [](const Graph& a, const Graph& b) { return a == b; });

  m.def("bfs_distance", [](const Graph& g, Vertex x, Vertex y) -> std::optional<std::uint32_t> {
    const auto d = bfs_distance(g, x, y);
    if (d == kInfiniteDistance) return std::nullopt;
    return d;
  });
  m.def("k_closure", &k_closure);
  m.def("degeneracy", &degeneracy);
  m.def("equiv_reduction", [](const Graph& g) {
    auto r = equiv_reduction(g);
    return py::make_tuple(r.graph, r.quotient.image);
  });
  m.def(
      "find_embedding",
      [](const Graph& g, const Graph& h, std::size_t cap, bool injective) -> std::optional<std::vector<Vertex>> {
        const auto phi = find_embedding(g, h, {.cap = cap, .injective = injective});
        if (!phi) return std::nullopt;
        return phi->image;
      },
      py::arg("g"), py::arg("h"), py::arg("cap") = 8, py::arg("injective") = false);

  py::class_<Poset>(m, "Poset")
      .def(py::init([](std::size_t n, const std::vector<Cover>& covers) { return Poset::from_covers(n, covers); }),
           py::arg("n"), py::arg("covers"))
      .def("__len__", &Poset::size)
      .def("covers", &Poset::covers);

  py::class_<Lattice>(m, "Lattice")
      .def(py::init(&build_lattice), py::arg("poset"))
      .def("__len__", &Lattice::size)
      .def("meet", &Lattice::meet)
      .def("join", &Lattice::join)
      .def("leq", &Lattice::leq)
      .def("rank", &Lattice::rank)
      .def("original_id", &Lattice::original_id)
      .def("classify", [](const Lattice& l) { return std::string(to_string(classify(l))); })
      .def("distance", [](const Lattice& l, Element x, Element y) { return lattice_distance(l, x, y); })
      .def("cover_graph", [](const Lattice& l) { return cover_graph(l); })
      .def("join_irreducibles", &join_irreducibles);
  m.def("boolean_lattice", &boolean_lattice);
  m.def("diamond_lattice", &diamond_lattice);
  m.def("pentagon_lattice", &pentagon_lattice);
  m.def("downset_lattice", [](const Poset& p) { return downset_lattice(p).lattice; });

  py::class_<lab::Instance>(m, "Instance")
      .def_readonly("family", &lab::Instance::family)
      .def_readonly("n", &lab::Instance::n)
      .def_readonly("seed", &lab::Instance::seed)
      .def_readonly("graph", &lab::Instance::graph)
      .def_property_readonly("id", &lab::Instance::id)
      .def("to_json", [](const lab::Instance& i) { return io::dump(lab::instance_to_json(i)); })
      .def_static("from_json",
                  [](const std::string& s) { return lab::instance_from_json(io::Json::parse(s)); })
      .def("distance",
           [](const lab::Instance& i, Vertex x, Vertex y) -> std::optional<std::uint32_t> {
             const auto d = lab::DistanceOracle(i)(x, y);
             if (d == kInfiniteDistance) return std::nullopt;
             return d;
           })
      .def("verify", [](const lab::Instance& i, bool all_props) {
        py::list out;
        for (const auto& c : lab::verify_instance(i, all_props)) out.append(py::make_tuple(c.name, c.pass, c.detail));
        return out;
      }, py::arg("all_props") = false);
  m.def("family_names", &lab::family_names);
  m.def("generate", &lab::generate, py::arg("family"), py::arg("n"), py::arg("seed") = 0);

  py::class_<Protocol, std::shared_ptr<Protocol>>(m, "Protocol")
      .def_property_readonly("name", &Protocol::name)
      .def_property_readonly("cost_bits", &Protocol::cost_bits)
      .def_property_readonly("one_sided", &Protocol::one_sided)
      .def("__len__", &Protocol::size)
      .def("expected", &Protocol::expected)
      .def("run",
           [](const Protocol& p, Vertex x, Vertex y, std::uint64_t seed) {
             SeededTape tape(seed);
             return verdict_to_dict(p.run(tape, x, y));
           },
           py::arg("x"), py::arg("y"), py::arg("seed"))
      .def("correct", [](const Protocol& p, Vertex x, Vertex y, std::uint64_t seed) {
        SeededTape tape(seed);
        return p.correct(p.run(tape, x, y), x, y);
      });
  m.def(
      "make_protocol",
      [](const lab::Instance& inst, const std::string& variant, std::uint32_t k, double eps) {
        return std::const_pointer_cast<Protocol>(lab::make_protocol(inst, {variant, k, eps}));
      },
      py::arg("instance"), py::arg("variant") = "universal", py::arg("k") = 1, py::arg("eps") = 1.0 / 3.0);
  m.def(
      "predicted_bits",
      [](const lab::Instance& inst, const std::string& variant, std::uint32_t k, double eps) {
        return lab::predicted_bits(inst, {variant, k, eps});
      },
      py::arg("instance"), py::arg("variant") = "universal", py::arg("k") = 1, py::arg("eps") = 1.0 / 3.0);

  m.def(
      "run_experiment",
      [](const std::string& config_json) {
        return lab::run_experiment(lab::ExperimentConfig::from_json(io::Json::parse(config_json))).render();
      },
      py::arg("config_json"), "Runs an experiment from a JSON config; returns the report text.");
  m.def(
      "label_pipeline",
      [](const std::string& family, std::size_t n, std::uint32_t k, double eps, const std::string& out_dir,
         std::uint64_t seed) {
        lab::LabelConfig cfg;
        cfg.family = family;
        cfg.n = n;
        cfg.protocol = {"universal", k, eps};
        cfg.out_dir = out_dir;
        cfg.master_seed = seed;
        return lab::label_pipeline(cfg).to_json().dump();
      },
      py::arg("family"), py::arg("n"), py::arg("k"), py::arg("eps"), py::arg("out_dir"), py::arg("seed") = 0);
  m.def(
      "decode",
      [](const std::string& labeling_path, const std::string& x, const std::string& y) {
        const auto s = io::labeling_from_json(io::read_json(labeling_path));
        return decode_labels(s, BitString::from_hex(x, s.label_bits), BitString::from_hex(y, s.label_bits));
      },
      py::arg("labeling_path"), py::arg("x"), py::arg("y"));

  m.def("modular_padded_size", &modular_padded_size);
  m.def("modular_gadget_json", [](const Graph& g) { return io::gadget_to_json(modular_gadget(g)).dump(); });
  m.def("arboricity2_gadget", [](const Graph& g) {
    auto gi = arboricity2_gadget(g);
    return py::make_tuple(gi.product, gi.injection.image);
  });
  m.def("interval_less", [](std::size_t n, std::uint32_t x, std::uint32_t y) {
    const auto iv = interval_gt_instance(n);
    const auto [q1, q2] = iv.queries(x, y);
    return IntervalInstance::decide_less(iv.graph.adjacent(q1.first, q1.second),
                                         iv.graph.adjacent(q2.first, q2.second));
  });
}
