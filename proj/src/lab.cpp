#include "smplab/lab.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <queue>
#include <sstream>

#include "smplab/error.hpp"
#include "smplab/protocols.hpp"
#include "smplab/random.hpp"

namespace smplab::lab {

namespace {

constexpr std::size_t kMaxAllPairs = 3000;

bool is_lattice_family(const std::string& f) { return f == "distributive" || f == "hypercube" || f == "lattice"; }
bool is_gadget_family(const std::string& f) { return f.rfind("gadget:", 0) == 0; }
std::string canonical_family(const std::string& f) { return f == "planar" ? "planar2" : f; }

void require_size(const std::string& family, std::size_t n, std::size_t lo, std::size_t hi) {
  if (n < lo) throw InputError(family + ": n must be at least " + std::to_string(lo));
  if (n > hi) throw CapacityError(family + ": n = " + std::to_string(n) + " exceeds the cap " + std::to_string(hi));
}

void attach_lattice(Instance& inst, Lattice lattice) {
  inst.lattice = std::move(lattice);
  inst.graph = cover_graph(*inst.lattice);
  if (classify(*inst.lattice) == LatticeClass::Distributive) inst.birkhoff = birkhoff(*inst.lattice);
}

void attach_gadget(Instance& inst, const Graph& source) {
  const auto family = gadget_family_from_string(inst.family.substr(7));
  switch (family) {
    case GadgetFamily::Modular:
      inst.gadget = modular_construction(source);
      break;
    case GadgetFamily::Arboricity2:
      inst.gadget = arboricity2_gadget(source);
      break;
    case GadgetFamily::Interval:
      inst.interval = interval_gt_instance(inst.n);
      inst.graph = inst.interval->graph;
      return;
    case GadgetFamily::AllGraphs:
      break;
  }
  inst.graph = source;
}

std::string stratum_name(std::uint32_t key, std::uint32_t cap) {
  if (key == kInfiniteDistance) return "d=inf";
  if (key > cap) return "d>" + std::to_string(cap);
  return "d=" + std::to_string(key);
}

std::uint32_t stratum_key(std::uint32_t d, std::uint32_t cap) {
  if (d == kInfiniteDistance) return d;
  return std::min(d, cap + 1);
}

double default_delta(double eps) { return std::min(0.1, (0.5 - eps) / 4.0); }

}  // namespace

const std::vector<std::string>& family_names() {
  static const std::vector<std::string> names{"distributive",       "hypercube",       "tree",
                                              "arboricity",         "planar2",         "gadget:modular",
                                              "gadget:arboricity2", "gadget:interval", "gadget:allgraphs"};
  return names;
}

std::string Instance::id() const { return family + "-n" + std::to_string(n) + "-s" + std::to_string(seed); }

Graph random_labeled_tree(std::size_t n, std::mt19937_64& rng) {
  if (n <= 1) return Graph::from_edges(n, {});
  if (n == 2) return Graph::from_edges(2, std::vector<Edge>{{0, 1}});
  std::uniform_int_distribution<Vertex> pick(0, static_cast<Vertex>(n - 1));
  std::vector<Vertex> code(n - 2);
  for (auto& c : code) c = pick(rng);
  std::vector<std::size_t> degree(n, 1);
  for (const auto c : code) ++degree[c];
  std::priority_queue<Vertex, std::vector<Vertex>, std::greater<>> leaves;
  for (Vertex v = 0; v < n; ++v) {
    if (degree[v] == 1) leaves.push(v);
  }
  std::vector<Edge> edges;
  for (const auto c : code) {
    const Vertex leaf = leaves.top();
    leaves.pop();
    edges.emplace_back(std::min(leaf, c), std::max(leaf, c));
    if (--degree[c] == 1) leaves.push(c);
  }
  const Vertex a = leaves.top();
  leaves.pop();
  const Vertex b = leaves.top();
  edges.emplace_back(std::min(a, b), std::max(a, b));
  return Graph::from_edges(n, edges);
}

Poset random_poset(std::size_t n, std::mt19937_64& rng, double p) {
  std::bernoulli_distribution coin(p);
  std::vector<Cover> relation;
  for (Element x = 0; x < n; ++x) {
    for (Element y = x + 1; y < n; ++y) {
      if (coin(rng)) relation.emplace_back(x, y);
    }
  }
  return transitive_reduction(n, relation);
}

Instance generate(const std::string& requested, std::size_t n, std::uint64_t seed) {
  Instance inst;
  inst.family = canonical_family(requested);
  inst.n = n;
  inst.seed = seed;
  std::mt19937_64 rng(seed);
  const auto& f = inst.family;
  if (f == "distributive" || f == "hypercube") {
    require_size(f, n, 1, kMaxBasePoset);
    inst.base = f == "hypercube" ? Poset::antichain(n) : random_poset(n, rng);
    attach_lattice(inst, downset_lattice(*inst.base).lattice);
  } else if (f == "tree") {
    require_size(f, n, 1, kMaxTree);
    inst.graph = random_labeled_tree(n, rng);
  } else if (f == "arboricity") {
    require_size(f, n, 2, kMaxTree);
    GraphBuilder b(n);
    for (int t = 0; t < 2; ++t) {
      for (const auto& [u, v] : random_labeled_tree(n, rng).edges()) b.add_edge(u, v);
    }
    inst.graph = std::move(b).build();
  } else if (f == "planar2") {
    require_size(f, n, 3, kMaxTriangulation);
    inst.embedding = stacked_triangulation(n, seed);
    inst.graph = inst.embedding->graph;
  } else if (is_gadget_family(f)) {
    const auto kind = gadget_family_from_string(f.substr(7));
    require_size(f, n, kind == GadgetFamily::Interval ? 2 : 1, kMaxGadgetSource);
    const Graph source =
        kind == GadgetFamily::Arboricity2 ? [&] {
          std::bernoulli_distribution coin(0.5);
          GraphBuilder b(n);
          for (Vertex u = 0; u < n; ++u) {
            for (Vertex v = u + 1; v < n; ++v) {
              if (coin(rng)) b.add_edge(u, v);
            }
          }
          return std::move(b).build();
        }()
                                          : random_all_loops_graph(n, rng);
    attach_gadget(inst, source);
  } else {
    throw InputError("unknown family '" + requested + "'");
  }
  return inst;
}

io::Json instance_to_json(const Instance& inst) {
  io::Json j;
  j["family"] = inst.family;
  j["n"] = inst.n;
  j["seed"] = inst.seed;
  if (inst.base) j["poset"] = io::poset_to_json(*inst.base);
  if (inst.family == "lattice" && inst.lattice) j["poset"] = io::poset_to_json(inst.lattice->poset());
  if (inst.family == "tree") j["root"] = inst.root;
  if (inst.embedding) j["embedding"] = io::embedding_to_json(*inst.embedding);
  if (inst.gadget) j["gadget"] = io::gadget_to_json(*inst.gadget);
  j["graph"] = io::graph_to_json(inst.graph);
  return j;
}

Instance instance_from_json(const io::Json& j) {
  Instance inst;
  if (!j.is_object()) throw InputError("instance: expected a JSON object");
  if (!j.contains("family")) {
    if (j.contains("rotation")) {
      inst.family = "planar2";
      inst.embedding = io::embedding_from_json(j);
      inst.graph = inst.embedding->graph;
    } else if (j.contains("covers")) {
      inst.family = "lattice";
      attach_lattice(inst, build_lattice(io::poset_from_json(j)));
    } else {
      inst.family = "graph";
      inst.graph = io::graph_from_json(j);
    }
    inst.n = inst.graph.size();
    return inst;
  }
  inst.family = canonical_family(j.at("family").get<std::string>());
  inst.n = j.value("n", std::size_t{0});
  inst.seed = j.value("seed", std::uint64_t{0});
  const auto& f = inst.family;
  if (f == "distributive" || f == "hypercube") {
    inst.base = io::poset_from_json(j.at("poset"));
    attach_lattice(inst, downset_lattice(*inst.base).lattice);
  } else if (f == "lattice") {
    attach_lattice(inst, build_lattice(io::poset_from_json(j.at("poset"))));
  } else if (f == "planar2") {
    inst.embedding = io::embedding_from_json(j.at("embedding"));
    inst.graph = inst.embedding->graph;
  } else if (f == "tree" || f == "arboricity" || f == "graph" || f == "gadget:allgraphs") {
    inst.graph = io::graph_from_json(j.at("graph"));
    inst.root = j.value("root", Vertex{0});
  } else if (is_gadget_family(f)) {
    const Graph source = j.contains("gadget") ? io::graph_from_json(j.at("gadget").at("source")) : Graph{};
    attach_gadget(inst, source);
  } else {
    throw InputError("instance: unknown family '" + f + "'");
  }
  if (inst.n == 0) inst.n = inst.graph.size();
  return inst;
}

// Protocols ----------------------------------------------------------------------------

std::shared_ptr<const Protocol> make_protocol(const Instance& inst, const ProtocolSpec& spec) {
  const auto& f = inst.family;
  if (is_lattice_family(f)) {
    if (!inst.birkhoff) throw PreconditionError(f + ": lattice is not distributive");
    if (spec.variant == "weak") {
      return std::make_shared<WeakDistributiveProtocol>(*inst.birkhoff, SketchParams::weak(spec.k, spec.eps));
    }
    if (spec.variant != "universal") throw InputError("unknown protocol variant '" + spec.variant + "'");
    return std::make_shared<UniversalDistributiveProtocol>(*inst.birkhoff, SketchParams::universal(spec.k, spec.eps));
  }
  if (f == "tree") return std::make_shared<TreeDistanceProtocol>(inst.graph, inst.root, TreeParams{spec.k, spec.eps, {}});
  if (f == "arboricity") {
    return std::make_shared<ArboricityProtocol>(inst.graph, degeneracy_orientation(inst.graph),
                                                ArboricityParams{spec.eps, {}, {}});
  }
  if (f == "planar2") {
    if (!inst.embedding) throw InputError("planar2: instance has no embedding");
    const auto tri = validate_embedding(*inst.embedding).faces == 2 * inst.n - 4 ? *inst.embedding
                                                                                 : triangulate(*inst.embedding);
    return std::make_shared<PlanarDistanceTwoProtocol>(planar_precompute(inst.graph, schnyder_wood(tri)), spec.eps);
  }
  if (is_gadget_family(f)) {
    if (inst.gadget && inst.gadget->family == GadgetFamily::Modular) modular_gadget(inst.gadget->source);
    return std::make_shared<BucketMajorityProtocol>(inst.graph);
  }
  throw InputError("no protocol for family '" + f + "'");
}

std::size_t predicted_bits(const Instance& inst, const ProtocolSpec& spec) {
  const auto& f = inst.family;
  if (is_lattice_family(f)) {
    if (spec.variant == "weak") return SketchParams::weak(spec.k, spec.eps).q;
    const auto p = SketchParams::universal(spec.k, spec.eps);
    return p.m * p.r;
  }
  if (f == "tree") return bit_width_for(spec.k) + 2 * spec.k * bit_width_for(ceil_tolerant(6.0 / spec.eps));
  if (f == "arboricity") {
    const std::size_t slots = std::max<std::size_t>(1, degeneracy_orientation(inst.graph).max_outdegree);
    return (1 + slots) * bit_width_for(ceil_tolerant(2.0 * static_cast<double>(slots) / spec.eps));
  }
  if (f == "planar2") {
    return 13 * bit_width_for(ceil_tolerant(42.0 / spec.eps)) +
           (1 + kClosureSlots) * bit_width_for(ceil_tolerant(2.0 * kClosureSlots * 7.0 / spec.eps));
  }
  if (is_gadget_family(f)) return BucketMajorityProtocol::kBudgetBits;
  throw InputError("no protocol for family '" + f + "'");
}

DistanceOracle::DistanceOracle(const Instance& inst) : inst_(&inst), rows_(inst.graph.size()) {}

std::uint32_t DistanceOracle::operator()(Vertex x, Vertex y) const {
  if (inst_->birkhoff) return static_cast<std::uint32_t>(inst_->birkhoff->distance(x, y));
  auto& row = rows_.at(x);
  if (row.empty()) row = bfs_distances(inst_->graph, x);
  return row.at(y);
}

// Experiments ---------------------------------------------------------------------------

void ExperimentConfig::validate() const {
  if (trials < 1) throw InputError("config: trials must be at least 1");
  if (!(protocol.eps > 0.0 && protocol.eps < 0.5)) throw InputError("config: eps must lie in (0, 1/2)");
  if (n_range.empty()) throw InputError("config: n_range is empty");
  if (format != "csv" && format != "json") throw InputError("config: format must be csv or json");
  if (pairs.sampled && *pairs.sampled == 0) throw InputError("config: sampled pair count must be positive");
}

ExperimentConfig ExperimentConfig::from_json(const io::Json& j) {
  ExperimentConfig c;
  try {
    c.family = j.at("family").get<std::string>();
    c.protocol.variant = j.value("protocol", std::string("universal"));
    c.protocol.k = j.value("k", 1u);
    c.protocol.eps = j.at("eps").get<double>();
    c.n_range = j.at("n_range").get<std::vector<std::size_t>>();
    c.trials = j.at("trials").get<std::size_t>();
    c.master_seed = j.value("master_seed", std::uint64_t{0});
    if (j.contains("pair_policy")) {
      const auto& p = j.at("pair_policy");
      if (p.is_string()) {
        if (p.get<std::string>() != "all") throw InputError("config: pair_policy must be 'all' or {sampled: count}");
      } else {
        c.pairs.sampled = p.at("sampled").get<std::size_t>();
      }
    }
    if (j.contains("output")) {
      const auto& o = j.at("output");
      if (o.is_string()) {
        c.output_path = o.get<std::string>();
      } else {
        c.output_path = o.value("path", std::string());
        c.format = o.value("format", std::string("csv"));
      }
    }
    c.format = j.value("format", c.format);
    c.trial_log = j.value("trial_log", std::string());
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("config: ") + e.what());
  }
  c.validate();
  return c;
}

io::Json ExperimentConfig::to_json() const {
  io::Json j;
  j["family"] = family;
  j["protocol"] = protocol.variant;
  j["k"] = protocol.k;
  j["eps"] = protocol.eps;
  j["n_range"] = n_range;
  j["trials"] = trials;
  if (pairs.sampled) {
    j["pair_policy"] = {{"sampled", *pairs.sampled}};
  } else {
    j["pair_policy"] = "all";
  }
  j["master_seed"] = master_seed;
  j["output"] = {{"path", output_path}, {"format", format}};
  if (!trial_log.empty()) j["trial_log"] = trial_log;
  return j;
}

std::string Report::to_csv() const {
  std::ostringstream out;
  out << "family,n,protocol,k,eps,stratum,pairs,trials,errors,error_rate,violations,mean_bits,predicted_bits,status\n";
  for (const auto& r : rows) {
    std::string status = r.status;
    std::replace(status.begin(), status.end(), ',', ';');
    std::replace(status.begin(), status.end(), '\n', ' ');
    out << config.family << ',' << r.n << ',' << r.protocol << ',' << config.protocol.k << ','
        << io::format_double(config.protocol.eps) << ',' << r.stratum << ',' << r.pairs << ',' << r.trials << ','
        << r.errors << ',' << io::format_double(r.error_rate) << ',' << r.violations << ','
        << io::format_double(r.mean_bits) << ',' << r.predicted_bits << ',' << status << '\n';
  }
  return out.str();
}

std::string Report::to_json() const {
  io::Json j;
  j["config"] = config.to_json();
  io::Json rows_json = io::Json::array();
  for (const auto& r : rows) {
    rows_json.push_back({{"n", r.n},
                         {"protocol", r.protocol},
                         {"stratum", r.stratum},
                         {"pairs", r.pairs},
                         {"trials", r.trials},
                         {"errors", r.errors},
                         {"error_rate", r.error_rate},
                         {"violations", r.violations},
                         {"mean_bits", r.mean_bits},
                         {"predicted_bits", r.predicted_bits},
                         {"status", r.status}});
  }
  j["rows"] = std::move(rows_json);
  return io::dump(j);
}

Report run_experiment(const ExperimentConfig& cfg) {
  cfg.validate();
  Report report;
  report.config = cfg;
  const std::uint32_t cap = cfg.protocol.k + 3;
  for (const auto n : cfg.n_range) {
    const std::uint64_t n_seed = derive_seed(cfg.master_seed, n);
    try {
      const Instance inst = generate(cfg.family, n, n_seed);
      const auto protocol = make_protocol(inst, cfg.protocol);
      const std::size_t predicted = predicted_bits(inst, cfg.protocol);
      const std::size_t size = is_gadget_family(inst.family) ? inst.graph.size() : protocol->size();
      const DistanceOracle dist(inst);

      std::vector<Edge> pool;
      if (cfg.pairs.sampled) {
        std::mt19937_64 rng(derive_seed(n_seed, 0x70a1));
        std::uniform_int_distribution<Vertex> pick(0, static_cast<Vertex>(size - 1));
        for (std::size_t i = 0; i < *cfg.pairs.sampled; ++i) {
          const Vertex a = pick(rng), b = pick(rng);
          pool.emplace_back(std::min(a, b), std::max(a, b));
        }
      } else {
        if (size > kMaxAllPairs) {
          throw CapacityError("all-pairs policy above " + std::to_string(kMaxAllPairs) + " vertices");
        }
        for (Vertex x = 0; x < size; ++x) {
          for (Vertex y = x; y < size; ++y) pool.emplace_back(x, y);
        }
      }
      std::map<std::uint32_t, std::vector<Edge>> strata;
      for (const auto& [x, y] : pool) strata[stratum_key(dist(x, y), cap)].emplace_back(x, y);

      for (const auto& [key, pairs] : strata) {
        ReportRow row;
        row.n = n;
        row.protocol = protocol->name();
        row.stratum = stratum_name(key, cap);
        row.pairs = pairs.size();
        row.trials = cfg.trials;
        row.predicted_bits = predicted;
        const std::uint64_t row_seed = derive_seed(n_seed, key);
        std::mt19937_64 rng(row_seed);
        std::uniform_int_distribution<std::size_t> pick(0, pairs.size() - 1);
        double bits = 0.0;
        for (std::size_t t = 0; t < cfg.trials; ++t) {
          auto [x, y] = pairs[pick(rng)];
          if (rng() & 1) std::swap(x, y);
          const std::uint64_t seed = derive_seed(row_seed, t);
          SeededTape tape(seed);
          const Verdict v = protocol->run(tape, x, y);
          if (!protocol->correct(v, x, y)) ++row.errors;
          if (protocol->one_sided() && protocol->expected(x, y) && !v.positive()) ++row.violations;
          bits += 0.5 * static_cast<double>(v.bits_a + v.bits_b);
          if (!cfg.trial_log.empty()) {
            report.trials.push_back({inst.id(), protocol->name(), cfg.protocol.k, cfg.protocol.eps, x, y, dist(x, y),
                                     v.to_string(), v.bits_a, v.bits_b, seed});
          }
        }
        row.error_rate = static_cast<double>(row.errors) / static_cast<double>(cfg.trials);
        row.mean_bits = bits / static_cast<double>(cfg.trials);
        report.rows.push_back(std::move(row));
      }
    } catch (const std::exception& e) {
      ReportRow row;
      row.n = n;
      row.protocol = "-";
      row.stratum = "-";
      row.status = std::string("error: ") + e.what();
      report.rows.push_back(std::move(row));
    }
  }
  return report;
}

// Labeling --------------------------------------------------------------------------------

io::Json LabelReport::to_json() const {
  io::Json j;
  j["instance"] = instance_id;
  j["cost_bits"] = cost_bits;
  j["label_bits"] = label_bits;
  j["log2_n"] = log2_n;
  j["bits_per_cost_log_n"] = cost_bits && log2_n > 0 ? static_cast<double>(label_bits) / (cost_bits * log2_n) : 0.0;
  j["bank_size"] = bank_size;
  j["attempts"] = attempts;
  j["worst_bad_fraction"] = worst_bad_fraction;
  j["pairs_checked"] = pairs_checked;
  j["decode_errors"] = decode_errors;
  j["round_trip_identical"] = round_trip_identical;
  j["labeling"] = labeling_path.filename().string();
  return j;
}

LabelReport label_pipeline(const LabelConfig& cfg) {
  const Instance inst = generate(cfg.family, cfg.n, derive_seed(cfg.master_seed, cfg.n));
  const auto protocol = make_protocol(inst, cfg.protocol);
  if (protocol->is_weak()) throw PreconditionError("label pipeline: needs a universal-model protocol");
  const double delta = cfg.delta.value_or(default_delta(cfg.protocol.eps));
  std::mt19937_64 rng(derive_seed(cfg.master_seed, 0x1abe1));
  const SeedBank bank = newman_seed_bank(*protocol, cfg.protocol.eps, delta, rng, cfg.retries);
  const LabelingScheme scheme = derandomized_labeling(*protocol, bank);

  LabelReport r;
  r.instance_id = inst.id();
  r.cost_bits = protocol->cost_bits();
  r.label_bits = scheme.label_bits;
  r.log2_n = std::log2(static_cast<double>(protocol->size()));
  r.bank_size = bank.seeds.size();
  r.attempts = bank.attempts;
  r.worst_bad_fraction = bank.check.worst_fraction;
  r.labeling_path = cfg.out_dir / "labeling.json";
  io::write_json(cfg.out_dir / "instance.json", instance_to_json(inst));
  io::write_json(r.labeling_path, io::labeling_to_json(scheme));

  std::ifstream in(r.labeling_path, std::ios::binary);
  const std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  const LabelingScheme reread = io::labeling_from_json(io::Json::parse(text));
  r.round_trip_identical = io::dump(io::labeling_to_json(reread)) == text;
  const auto referee = referee_from_params(reread.decoder, reread.params);
  for (Vertex x = 0; x < reread.labels.size(); ++x) {
    for (Vertex y = 0; y < reread.labels.size(); ++y) {
      ++r.pairs_checked;
      if (decode_labels(*referee, reread.repetitions, reread.labels[x], reread.labels[y]) != protocol->expected(x, y)) {
        ++r.decode_errors;
      }
    }
  }
  io::write_json(cfg.out_dir / "report.json", r.to_json());
  return r;
}

// Verification ------------------------------------------------------------------------------

std::vector<PropertyCheck> verify_instance(const Instance& inst, bool all_props) {
  std::vector<PropertyCheck> out;
  auto add = [&](std::string name, bool pass, std::string detail = {}) {
    out.push_back({std::move(name), pass, std::move(detail)});
  };
  const auto& g = inst.graph;
  add("graph", true, std::to_string(g.size()) + " vertices, " + std::to_string(g.edge_count()) + " edges");
  const auto& f = inst.family;

  if (f == "tree") {
    const auto d = bfs_distances(g, 0);
    const bool connected = std::none_of(d.begin(), d.end(), [](auto x) { return x == kInfiniteDistance; });
    add("tree", connected && g.edge_count() + 1 == g.size());
  }
  if (f == "arboricity") add("degeneracy", true, std::to_string(degeneracy(g)));

  if (inst.lattice) {
    const auto cls = classify(*inst.lattice);
    add("lattice-class", f == "lattice" || cls == LatticeClass::Distributive, to_string(cls));
    if (inst.birkhoff) {
      const auto ideals = downset_lattice(inst.birkhoff->irreducible_poset);
      add("birkhoff-round-trip", birkhoff_round_trip(*inst.lattice, *inst.birkhoff, ideals));
    }
    if (all_props && cls != LatticeClass::Neither && is_lower_semimodular(*inst.lattice)) {
      const auto table = all_pairs_distances(g);
      const LatticeMetric metric(*inst.lattice);
      std::size_t mismatches = 0;
      for (Element x = 0; x < g.size(); ++x) {
        for (Element y = 0; y < g.size(); ++y) mismatches += metric.distance(x, y) != table[x * g.size() + y];
      }
      add("distance-lemma", mismatches == 0, std::to_string(mismatches) + " mismatches");
    }
  }

  if (inst.embedding) {
    const auto faces = validate_embedding(*inst.embedding);
    add("embedding", faces.valid, faces.valid ? std::to_string(faces.faces) + " faces" : faces.diagnostic);
    if (faces.valid && inst.n >= 3) {
      const auto tri = faces.faces == 2 * inst.n - 4 ? *inst.embedding : triangulate(*inst.embedding);
      const auto wood = schnyder_wood(tri);
      const auto problems = check_wood(tri, wood);
      add("schnyder-wood", problems.empty(), problems.empty() ? "" : problems.front());
      if (all_props) {
        const auto split = split_graph(g, wood);
        const std::size_t bound = split.graph.size() >= 3 ? 3 * split.graph.size() - 6 : 0;
        add("split-edge-bound", split.graph.edge_count() <= bound,
            std::to_string(split.graph.edge_count()) + " <= " + std::to_string(bound));
        const auto h2h = head_to_head_closure(g, wood);
        std::size_t worst = 0;
        for (const auto& c : h2h.per_color) worst = std::max(worst, degeneracy(c));
        add("head-to-head-degeneracy", worst <= 5 && degeneracy(h2h.combined) <= kClosureSlots,
            "per color " + std::to_string(worst) + ", combined " + std::to_string(degeneracy(h2h.combined)));
        const auto tax = check_path_taxonomy(g, wood, h2h.combined);
        add("path-taxonomy", tax.uncovered == 0,
            std::to_string(tax.uncovered) + " of " + std::to_string(tax.distance_two_pairs) + " uncovered");
      }
    }
  }

  if (inst.gadget) {
    const auto& gi = *inst.gadget;
    if (gi.family == GadgetFamily::Modular) {
      bool modular = false;
      std::string detail = "product above the lattice cap";
      if (gi.order) {
        try {
          const auto l = build_lattice(*gi.order);
          const auto cls = classify(l);
          modular = cls != LatticeClass::Neither;
          detail = to_string(cls);
        } catch (const ConstructionError& e) {
          detail = e.what();
        }
      }
      add("modular-lattice", modular, detail);
      add("size", true,
          std::to_string(gi.unpadded_size) + " before padding, quoted bound " + std::to_string(gi.quoted_bound));
    }
    if (gi.family == GadgetFamily::Arboricity2) {
      add("degeneracy<=2", degeneracy(gi.product) <= 2);
      bool low = true;
      for (Vertex v = static_cast<Vertex>(gi.source.size()); v < gi.product.size(); ++v) low &= gi.product.degree(v) <= 2;
      add("edge-vertex-degree<=2", low);
    }
    const auto bad = first_distance_two_mismatch(gi.source, gi.product, gi.injection);
    add("induced-square", !bad.has_value(),
        bad ? "pair (" + std::to_string(bad->first) + ", " + std::to_string(bad->second) + ")" : "");
  }
  if (inst.interval) {
    const auto& iv = *inst.interval;
    bool ok = true;
    for (std::uint32_t x = 1; x <= iv.n; ++x) {
      for (std::uint32_t y = 1; y <= iv.n; ++y) {
        const auto [q1, q2] = iv.queries(x, y);
        ok &= IntervalInstance::decide_less(iv.graph.adjacent(q1.first, q1.second),
                                            iv.graph.adjacent(q2.first, q2.second)) == (x < y);
      }
    }
    add("greater-than-rule", ok);
  }
  if (f == "gadget:allgraphs" || f == "gadget:modular") {
    bool loops = true;
    for (Vertex v = 0; v < g.size(); ++v) loops &= g.adjacent(v, v);
    add("all-self-loops", loops);
  }
  return out;
}

}  // namespace smplab::lab
