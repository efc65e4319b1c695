#include "smplab/io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "smplab/error.hpp"

namespace smplab::io {

namespace {

template <typename T>
T get(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw InputError(std::string("missing field '") + key + "'");
  try {
    return j.at(key).get<T>();
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("field '") + key + "': " + e.what());
  }
}

std::vector<Vertex> vertex_list(const Json& j, const char* key) {
  return j.contains(key) ? get<std::vector<Vertex>>(j, key) : std::vector<Vertex>{};
}

}  // namespace

Json graph_to_json(const Graph& g) {
  Json j;
  j["n"] = g.size();
  Json edges = Json::array();
  for (const auto& [u, v] : g.edges()) edges.push_back({u, v});
  j["edges"] = std::move(edges);
  j["self_loops"] = to_string(g.self_loops());
  if (g.self_loops() == SelfLoops::Explicit) j["loops"] = g.loops();
  return j;
}

Graph graph_from_json(const Json& j) {
  const auto n = get<std::size_t>(j, "n");
  const auto pairs = get<std::vector<std::array<Vertex, 2>>>(j, "edges");
  std::vector<Edge> edges;
  edges.reserve(pairs.size());
  for (const auto& p : pairs) edges.emplace_back(p[0], p[1]);
  const auto policy = j.contains("self_loops") ? self_loops_from_string(get<std::string>(j, "self_loops"))
                                               : SelfLoops::None;
  const auto loops = vertex_list(j, "loops");
  if (!loops.empty() && policy != SelfLoops::Explicit) {
    throw InputError("graph: 'loops' requires self_loops = explicit");
  }
  return Graph::from_edges(n, edges, policy, loops);
}

Json poset_to_json(const Poset& p) {
  Json j;
  j["n"] = p.size();
  Json covers = Json::array();
  for (const auto& [x, y] : p.covers()) covers.push_back({x, y});
  j["covers"] = std::move(covers);
  return j;
}

Poset poset_from_json(const Json& j) {
  const auto n = get<std::size_t>(j, "n");
  const auto pairs = get<std::vector<std::array<Element, 2>>>(j, "covers");
  std::vector<Cover> covers;
  covers.reserve(pairs.size());
  for (const auto& p : pairs) covers.emplace_back(p[0], p[1]);
  return Poset::from_covers(n, covers);
}

Json embedding_to_json(const PlanarEmbedding& emb) {
  Json j;
  j["n"] = emb.size();
  j["rotation"] = emb.rotation;
  j["outer_face"] = emb.outer_face;
  return j;
}

PlanarEmbedding embedding_from_json(const Json& j) {
  const auto n = get<std::size_t>(j, "n");
  auto rotation = get<std::vector<std::vector<Vertex>>>(j, "rotation");
  if (rotation.size() != n) throw InputError("embedding: rotation has the wrong number of vertices");
  return PlanarEmbedding::from_rotation(std::move(rotation), vertex_list(j, "outer_face"));
}

Json labeling_to_json(const LabelingScheme& s) {
  Json j;
  j["decoder"] = s.decoder;
  Json params = Json::object();
  for (const auto& [key, value] : s.params) params[key] = value;
  j["params"] = std::move(params);
  j["repetitions"] = s.repetitions;
  j["label_bits"] = s.label_bits;
  Json labels = Json::array();
  for (const auto& l : s.labels) labels.push_back(l.to_hex());
  j["labels"] = std::move(labels);
  return j;
}

LabelingScheme labeling_from_json(const Json& j) {
  LabelingScheme s;
  s.decoder = get<std::string>(j, "decoder");
  s.params = j.contains("params") ? get<RefereeParams>(j, "params") : RefereeParams{};
  s.label_bits = get<std::size_t>(j, "label_bits");
  s.repetitions = j.contains("repetitions") ? get<std::size_t>(j, "repetitions") : 1;
  if (s.repetitions == 0 || s.label_bits % s.repetitions != 0) {
    throw InputError("labeling: label_bits is not a multiple of repetitions");
  }
  for (const auto& hex : get<std::vector<std::string>>(j, "labels")) {
    s.labels.push_back(BitString::from_hex(hex, s.label_bits));
  }
  return s;
}

Json gadget_to_json(const GadgetInstance& g) {
  Json j;
  j["family"] = to_string(g.family);
  j["source"] = graph_to_json(g.source);
  j["product"] = graph_to_json(g.product);
  if (g.order) j["poset"] = poset_to_json(*g.order);
  j["injection"] = g.injection.image;
  if (g.family == GadgetFamily::Modular) {
    j["unpadded_size"] = g.unpadded_size;
    j["quoted_bound"] = g.quoted_bound;
  }
  return j;
}

Json read_json(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path.string());
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw InputError(path.string() + ": " + e.what());
  }
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

void write_text(const std::filesystem::path& path, const std::string& text) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write " + path.string());
  out << text;
}

void write_json(const std::filesystem::path& path, const Json& j) { write_text(path, dump(j)); }

std::string format_double(double x) {
  char buf[64];
  const auto [end, ec] = std::to_chars(buf, buf + sizeof buf, x);
  return ec == std::errc{} ? std::string(buf, end) : std::string("nan");
}

std::string trial_csv_header() { return "instance_id,protocol,k,eps,x,y,true_dist,verdict,bits_a,bits_b,seed"; }

std::string to_csv_row(const TrialRecord& r) {
  std::ostringstream out;
  out << r.instance_id << ',' << r.protocol << ',' << r.k << ',' << format_double(r.eps) << ',' << r.x << ','
      << r.y << ',';
  if (r.true_dist == kInfiniteDistance) {
    out << "inf";
  } else {
    out << r.true_dist;
  }
  out << ',' << r.verdict << ',' << r.bits_a << ',' << r.bits_b << ',' << r.seed;
  return out.str();
}

}  // namespace smplab::io
