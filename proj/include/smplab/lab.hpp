#pragma once

#include <filesystem>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "smplab/gadgets.hpp"
#include "smplab/io.hpp"
#include "smplab/lattice.hpp"
#include "smplab/planar.hpp"
#include "smplab/protocol.hpp"
#include "smplab/universal.hpp"

namespace smplab::lab {

/// Per-family size caps of generate().
inline constexpr std::size_t kMaxBasePoset = 14;
inline constexpr std::size_t kMaxTree = 10'000;
inline constexpr std::size_t kMaxTriangulation = 10'000;
inline constexpr std::size_t kMaxGadgetSource = 64;

/// Family names accepted by generate().
const std::vector<std::string>& family_names();

/*
 * A generated instance. `graph` carries the predicate the family's protocol
 * decides: the cover graph for lattices, the tree, the planar graph, and the
 * source graph for gadgets (queries stay on the injection image).
 */
struct Instance {
  std::string family;
  std::size_t n = 0;
  std::uint64_t seed = 0;
  Graph graph;
  Vertex root = 0;
  std::optional<Poset> base;
  std::optional<Lattice> lattice;
  std::optional<BirkhoffRep> birkhoff;
  std::optional<PlanarEmbedding> embedding;
  std::optional<GadgetInstance> gadget;
  std::optional<IntervalInstance> interval;

  std::string id() const;
};

/// Deterministic in (family, n, seed). Throws CapacityError above the family
/// cap, InputError for unknown families.
Instance generate(const std::string& family, std::size_t n, std::uint64_t seed);

io::Json instance_to_json(const Instance& inst);
/// Accepts instance files and bare graph, poset or embedding files.
Instance instance_from_json(const io::Json& j);

/// Uniform labeled tree through a Prüfer sequence.
Graph random_labeled_tree(std::size_t n, std::mt19937_64& rng);
/// Random DAG on n elements (edge probability p), transitively reduced.
Poset random_poset(std::size_t n, std::mt19937_64& rng, double p = 0.3);

struct ProtocolSpec {
  /// "universal" or "weak" (distributive families only).
  std::string variant = "universal";
  std::uint32_t k = 1;
  double eps = 1.0 / 3.0;
};

std::shared_ptr<const Protocol> make_protocol(const Instance& inst, const ProtocolSpec& spec);
/// Message length from the cost formulas, without building the protocol.
std::size_t predicted_bits(const Instance& inst, const ProtocolSpec& spec);

/// Exact distance for lattices (Birkhoff), BFS otherwise.
class DistanceOracle {
 public:
  explicit DistanceOracle(const Instance& inst);
  std::uint32_t operator()(Vertex x, Vertex y) const;

 private:
  const Instance* inst_;
  mutable std::vector<std::vector<std::uint32_t>> rows_;
};

struct PairPolicy {
  /// Empty: all pairs x <= y.
  std::optional<std::size_t> sampled;
};

struct ExperimentConfig {
  std::string family;
  ProtocolSpec protocol;
  std::vector<std::size_t> n_range;
  std::size_t trials = 1;
  PairPolicy pairs;
  std::uint64_t master_seed = 0;
  std::string output_path;
  /// "csv" or "json".
  std::string format = "csv";
  /// Optional CSV of every trial.
  std::string trial_log;

  /// Throws InputError when trials < 1, eps outside (0, 1/2) or n_range is empty.
  void validate() const;
  static ExperimentConfig from_json(const io::Json& j);
  io::Json to_json() const;
};

struct ReportRow {
  std::size_t n = 0;
  std::string protocol;
  /// "d=<distance>", "d>=<cap>" or "d=inf".
  std::string stratum;
  std::size_t pairs = 0;
  std::size_t trials = 0;
  std::size_t errors = 0;
  double error_rate = 0.0;
  /// Positive pairs rejected by a one-sided protocol.
  std::size_t violations = 0;
  double mean_bits = 0.0;
  std::size_t predicted_bits = 0;
  std::string status = "ok";
};

struct Report {
  ExperimentConfig config;
  std::vector<ReportRow> rows;
  std::vector<io::TrialRecord> trials;

  std::string to_csv() const;
  std::string to_json() const;
  std::string render() const { return config.format == "json" ? to_json() : to_csv(); }
};

/// Distance strata are exact up to `cap` = k + 3 and pooled beyond it.
Report run_experiment(const ExperimentConfig& cfg);

struct LabelConfig {
  std::string family = "tree";
  std::size_t n = 64;
  ProtocolSpec protocol;
  /// Bank slack; default min(0.1, (1/2 - eps) / 4).
  std::optional<double> delta;
  std::uint64_t master_seed = 0;
  std::size_t retries = 16;
  std::filesystem::path out_dir;
};

struct LabelReport {
  std::string instance_id;
  std::size_t cost_bits = 0;
  std::size_t label_bits = 0;
  double log2_n = 0.0;
  std::size_t bank_size = 0;
  std::size_t attempts = 0;
  double worst_bad_fraction = 0.0;
  std::size_t pairs_checked = 0;
  std::size_t decode_errors = 0;
  bool round_trip_identical = false;
  std::filesystem::path labeling_path;

  io::Json to_json() const;
};

/// Seed bank, labeling, write + re-read, and full pairwise decoding check.
LabelReport label_pipeline(const LabelConfig& cfg);

struct PropertyCheck {
  std::string name;
  bool pass = false;
  std::string detail;
};

/// Structural checks of an instance; `all_props` adds the expensive ones.
std::vector<PropertyCheck> verify_instance(const Instance& inst, bool all_props);

}  // namespace smplab::lab
