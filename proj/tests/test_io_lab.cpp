#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>

#include "smplab/error.hpp"
#include "smplab/io.hpp"
#include "smplab/lab.hpp"
#include "test_util.hpp"

namespace smplab {
namespace {

namespace fs = std::filesystem;

fs::path scratch_dir(const std::string& name) {
  const auto dir = fs::temp_directory_path() / ("smplab_test_" + name);
  fs::remove_all(dir);
  return dir;
}

TEST(Io, GraphRoundTrip) {
  const auto g = testing::cycle_graph(5);
  EXPECT_EQ(io::graph_from_json(io::graph_to_json(g)), g);
  const auto looped = Graph::from_edges(3, std::vector<Edge>{{0, 1}}, SelfLoops::Explicit, std::vector<Vertex>{2});
  EXPECT_EQ(io::graph_from_json(io::graph_to_json(looped)), looped);
}

TEST(Io, GraphRejectsMalformedInput) {
  EXPECT_THROW(io::graph_from_json(io::Json::parse(R"({"edges": []})")), InputError);
  EXPECT_THROW(io::graph_from_json(io::Json::parse(R"({"n": 2, "edges": [[0, 5]]})")), InputError);
  EXPECT_THROW(io::graph_from_json(io::Json::parse(R"({"n": 2, "edges": [[0, 1], [1, 0]]})")), InputError);
  EXPECT_THROW(io::graph_from_json(io::Json::parse(R"({"n": 2, "edges": [], "loops": [0]})")), InputError);
  EXPECT_THROW(io::graph_from_json(io::Json::parse(R"({"n": "x", "edges": []})")), InputError);
}

TEST(Io, PosetAndEmbeddingRoundTrip) {
  const auto p = Poset::chain(4);
  EXPECT_EQ(io::poset_from_json(io::poset_to_json(p)).covers(), p.covers());
  const auto emb = stacked_triangulation(12, 3);
  const auto back = io::embedding_from_json(io::embedding_to_json(emb));
  EXPECT_EQ(back.rotation, emb.rotation);
  EXPECT_EQ(back.outer_face, emb.outer_face);
  EXPECT_EQ(back.graph, emb.graph);
}

TEST(Io, TrialRowFormat) {
  io::TrialRecord r{"tree-n4-s1", "tree-kdist", 2, 0.25, 1, 3, kInfiniteDistance, "reject", 10, 10, 77};
  EXPECT_EQ(io::to_csv_row(r), "tree-n4-s1,tree-kdist,2,0.25,1,3,inf,reject,10,10,77");
  EXPECT_EQ(io::trial_csv_header(), "instance_id,protocol,k,eps,x,y,true_dist,verdict,bits_a,bits_b,seed");
}

TEST(Lab, GeneratorsAreDeterministic) {
  for (const auto& family : lab::family_names()) {
    if (family == "gadget:modular") continue;
    const std::size_t n = family == "distributive" || family == "hypercube" ? 5 : 12;
    const auto a = lab::generate(family, n, 42);
    const auto b = lab::generate(family, n, 42);
    EXPECT_EQ(io::dump(lab::instance_to_json(a)), io::dump(lab::instance_to_json(b))) << family;
  }
}

TEST(Lab, GeneratedFamiliesHaveTheirShape) {
  const auto tree = lab::generate("tree", 50, 1);
  EXPECT_EQ(tree.graph.edge_count(), 49u);
  const auto cube = lab::generate("hypercube", 4, 1);
  EXPECT_EQ(cube.graph.size(), 16u);
  EXPECT_EQ(cube.graph.edge_count(), 32u);
  const auto arb = lab::generate("arboricity", 40, 1);
  EXPECT_LE(degeneracy(arb.graph), 3u);
  const auto planar = lab::generate("planar", 30, 1);
  EXPECT_EQ(planar.family, "planar2");
  EXPECT_EQ(planar.graph.edge_count(), 3u * 30 - 6);
}

TEST(Lab, CapsAndUnknownFamilies) {
  EXPECT_THROW(lab::generate("distributive", lab::kMaxBasePoset + 1, 0), CapacityError);
  EXPECT_THROW(lab::generate("tree", lab::kMaxTree + 1, 0), CapacityError);
  EXPECT_THROW(lab::generate("nonsense", 4, 0), InputError);
}

TEST(Lab, InstanceJsonRoundTrip) {
  for (const std::string family : {"distributive", "tree", "planar2", "gadget:arboricity2", "gadget:interval"}) {
    const auto inst = lab::generate(family, 6, 9);
    const auto text = io::dump(lab::instance_to_json(inst));
    const auto back = lab::instance_from_json(io::Json::parse(text));
    EXPECT_EQ(back.graph, inst.graph) << family;
    EXPECT_EQ(io::dump(lab::instance_to_json(back)), text) << family;
  }
}

TEST(Lab, BareFilesAreAccepted) {
  const auto graph = lab::instance_from_json(io::graph_to_json(testing::path_graph(4)));
  EXPECT_EQ(graph.family, "graph");
  const auto lattice = lab::instance_from_json(io::poset_to_json(boolean_lattice(2).poset()));
  EXPECT_EQ(lattice.family, "lattice");
  EXPECT_TRUE(lattice.birkhoff.has_value());
  const auto planar = lab::instance_from_json(io::embedding_to_json(stacked_triangulation(8, 1)));
  EXPECT_EQ(planar.family, "planar2");
}

TEST(Lab, DistanceOracleMatchesBfs) {
  const auto inst = lab::generate("distributive", 6, 5);
  const lab::DistanceOracle dist(inst);
  const auto table = all_pairs_distances(inst.graph);
  for (Vertex x = 0; x < inst.graph.size(); ++x) {
    for (Vertex y = 0; y < inst.graph.size(); ++y) EXPECT_EQ(dist(x, y), table[x * inst.graph.size() + y]);
  }
}

TEST(Lab, PredictedBitsMatchProtocols) {
  const lab::ProtocolSpec spec{"universal", 2, 0.25};
  for (const std::string family : {"distributive", "tree", "arboricity", "planar2", "gadget:allgraphs"}) {
    const auto inst = lab::generate(family, family == "distributive" ? 6 : 40, 3);
    EXPECT_EQ(lab::make_protocol(inst, spec)->cost_bits(), lab::predicted_bits(inst, spec)) << family;
  }
  const auto inst = lab::generate("distributive", 6, 3);
  const lab::ProtocolSpec weak{"weak", 1, 0.25};
  EXPECT_EQ(lab::make_protocol(inst, weak)->cost_bits(), lab::predicted_bits(inst, weak));
}

lab::ExperimentConfig small_config() {
  lab::ExperimentConfig c;
  c.family = "tree";
  c.protocol = {"universal", 2, 0.2};
  c.n_range = {16, 32};
  c.trials = 50;
  c.master_seed = 11;
  return c;
}

TEST(Lab, ExperimentIsDeterministic) {
  const auto a = lab::run_experiment(small_config()).to_csv();
  const auto b = lab::run_experiment(small_config()).to_csv();
  EXPECT_EQ(a, b);
  EXPECT_NE(a.find("d=0"), std::string::npos);
  EXPECT_NE(a.find("d>5"), std::string::npos);
}

TEST(Lab, ExperimentRowsCarryErrors) {
  auto c = small_config();
  c.n_range = {16, lab::kMaxTree + 1};
  const auto report = lab::run_experiment(c);
  ASSERT_FALSE(report.rows.empty());
  EXPECT_EQ(report.rows.front().status, "ok");
  EXPECT_NE(report.rows.back().status.find("error"), std::string::npos);
}

TEST(Lab, ConfigValidation) {
  auto c = small_config();
  c.trials = 0;
  EXPECT_THROW(c.validate(), InputError);
  c = small_config();
  c.protocol.eps = 0.6;
  EXPECT_THROW(c.validate(), InputError);
  c = small_config();
  const auto back = lab::ExperimentConfig::from_json(c.to_json());
  EXPECT_EQ(back.to_json(), c.to_json());
  EXPECT_THROW(lab::ExperimentConfig::from_json(io::Json::parse(R"({"family": "tree"})")), InputError);
}

TEST(Lab, TrialLogHasOneRecordPerTrial) {
  auto c = small_config();
  c.n_range = {16};
  c.trial_log = "trials.csv";
  const auto report = lab::run_experiment(c);
  std::size_t trials = 0;
  for (const auto& r : report.rows) trials += r.trials;
  EXPECT_EQ(report.trials.size(), trials);
}

void expect_clean_labeling(const lab::LabelConfig& cfg) {
  const auto r = lab::label_pipeline(cfg);
  EXPECT_EQ(r.decode_errors, 0u);
  EXPECT_TRUE(r.round_trip_identical);
  EXPECT_GT(r.pairs_checked, 0u);
  EXPECT_EQ(r.label_bits, r.bank_size * r.cost_bits);
  EXPECT_TRUE(fs::exists(cfg.out_dir / "labeling.json"));
  EXPECT_TRUE(fs::exists(cfg.out_dir / "report.json"));
  EXPECT_TRUE(fs::exists(cfg.out_dir / "instance.json"));
}

TEST(Lab, LabelPipelineOnTree) {
  lab::LabelConfig cfg;
  cfg.family = "tree";
  cfg.n = 64;
  cfg.protocol = {"universal", 2, 0.2};
  cfg.out_dir = scratch_dir("label_tree");
  expect_clean_labeling(cfg);
}

TEST(Lab, LabelPipelineOnHypercube) {
  lab::LabelConfig cfg;
  cfg.family = "hypercube";
  cfg.n = 5;
  cfg.protocol = {"universal", 1, 0.2};
  cfg.out_dir = scratch_dir("label_cube");
  expect_clean_labeling(cfg);
}

TEST(Lab, VerifyReportsProperties) {
  for (const std::string family : {"distributive", "tree", "planar2", "gadget:arboricity2", "gadget:interval"}) {
    const auto inst = lab::generate(family, 6, 2);
    for (const auto& check : lab::verify_instance(inst, true)) EXPECT_TRUE(check.pass) << family << ": " << check.name;
  }
}

TEST(Lab, VerifyFlagsBrokenModularGadget) {
  const auto inst = lab::generate("gadget:modular", 6, 1);
  bool failed = false;
  for (const auto& check : lab::verify_instance(inst, false)) failed |= !check.pass;
  EXPECT_TRUE(failed);
}

}  // namespace
}  // namespace smplab
