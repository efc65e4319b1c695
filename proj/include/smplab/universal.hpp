#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "smplab/graph.hpp"
#include "smplab/protocol.hpp"

namespace smplab {

/*
 * Graph of a referee: one vertex per message, u ~ v iff the referee accepts
 * (messages[u], messages[v]). Self-loops are explicit.
 */
struct DecisionGraph {
  std::vector<BitString> messages;
  Graph graph;
  std::size_t cost_bits = 0;
  /// All 2^c messages rather than the ones that occur.
  bool all_messages = false;

  /// Index of a message, if present.
  std::optional<Vertex> find(const BitString& msg) const;
};

/// All 2^c messages; throws CapacityError when c > cap_bits.
DecisionGraph decision_graph(const Referee& referee, std::size_t cap_bits = 16);

/// Messages emitted by the encoders over the given seeds.
DecisionGraph decision_graph_occurring(const Protocol& p, std::span<const std::uint64_t> seeds);

/// ⌈log2 |G^≡|⌉: deterministic cost of adjacency on a single graph.
std::uint32_t deterministic_cost(const Graph& g);

struct EmbeddingCheck {
  bool pass = false;
  double worst_rate = 0.0;
  Edge worst_pair{0, 0};
  double threshold = 0.0;
  std::size_t trials = 0;
};

/// Random map from V(G) into a target given by ids; one call per seed.
using MapSampler = std::function<std::vector<std::uint64_t>(std::uint64_t seed)>;
using TargetAdjacency = std::function<bool(std::uint64_t, std::uint64_t)>;

/// Per-pair failure rate of G(u,v) = U(φ(u),φ(v)) over `trials` sampled maps,
/// pairs u <= v. Passes when the worst rate is at most eps + 3σ.
EmbeddingCheck check_prob_embedding(const Graph& g, const TargetAdjacency& target, const MapSampler& sampler,
                                    double eps, std::size_t trials, std::uint64_t master_seed);
EmbeddingCheck check_prob_embedding(const Graph& g, const Graph& u, const MapSampler& sampler, double eps,
                                    std::size_t trials, std::uint64_t master_seed);

struct UniversalGraph {
  Graph graph;
  /// ⌈log2 |U|⌉ (U is twin-free).
  std::uint32_t cost_bits = 0;
  /// embeddings[i]: family[i] ⊏ U.
  std::vector<VertexMap> embeddings;
};

struct UniversalSearch {
  std::size_t max_member_size = 5;
  std::size_t max_family = 8;
  /// Largest candidate U tried.
  std::size_t max_candidate_size = 6;
};

/// Smallest twin-free U with every member embedding into it, by exhaustive
/// search over graphs with loops in order of size. Throws CapacityError when
/// the caps are exceeded.
UniversalGraph min_universal_graph(std::span<const Graph> family, const UniversalSearch& search = {});

// Newman seed banks --------------------------------------------------------------------

/// Smallest m with m > (3 eps / delta²) ln(n²).
std::size_t newman_bank_size(std::size_t n, double eps, double delta);

struct BankCheck {
  bool ok = false;
  /// Largest fraction of bad seeds over all ordered pairs.
  double worst_fraction = 0.0;
  Edge worst_pair{0, 0};
};

struct SeedBank {
  std::vector<std::uint64_t> seeds;
  double eps = 0.0;
  double delta = 0.0;
  std::size_t attempts = 0;
  BankCheck check;
};

/// Fraction of seeds giving a wrong verdict, for every ordered pair.
BankCheck verify_seed_bank(const Protocol& p, std::span<const std::uint64_t> seeds, double bound);

/// Samples banks of newman_bank_size() seeds until one verifies with bad
/// fraction <= eps + delta on every pair. Throws VerificationError naming the
/// worst pair after `retries` failures.
SeedBank newman_seed_bank(const Protocol& p, double eps, double delta, std::mt19937_64& rng,
                          std::size_t retries = 16, std::optional<std::size_t> size = std::nullopt);

// Labeling schemes -----------------------------------------------------------------------

/*
 * Deterministic labels: label(v) is the concatenation of the protocol's
 * messages for v over a list of seeds. The decoder splits both labels into
 * per-seed chunks and outputs the strict majority of the referee's positive
 * verdicts.
 */
struct LabelingScheme {
  std::string decoder;
  RefereeParams params;
  std::size_t repetitions = 0;
  std::size_t label_bits = 0;
  std::vector<BitString> labels;

  std::size_t chunk_bits() const { return repetitions ? label_bits / repetitions : 0; }
};

/// Throws InputError on a length mismatch.
bool decode_labels(const LabelingScheme& s, const BitString& lx, const BitString& ly);
bool decode_labels(const Referee& referee, std::size_t repetitions, const BitString& lx, const BitString& ly);

/// Pairs (x, y) whose decoded answer differs from p.expected(x, y).
std::vector<Edge> labeling_errors(const Protocol& p, const LabelingScheme& s);

/// Bank mode: one chunk per bank seed. Requires a symmetric universal-model
/// protocol; throws ConstructionError when some pair decodes wrongly.
LabelingScheme derandomized_labeling(const Protocol& p, const SeedBank& bank);

/// Fixed-repetition mode: `repetitions` fresh seeds per attempt, retried up
/// to `retries` times until every pair decodes correctly.
LabelingScheme derandomized_labeling_fixed(const Protocol& p, std::size_t repetitions, std::mt19937_64& rng,
                                           std::size_t retries = 16);

/// One decision graph per bank seed: the weak referee with the seed fixed,
/// over all 2^c messages.
std::vector<DecisionGraph> weak_to_universal_family(const Protocol& p, std::span<const std::uint64_t> seeds,
                                                    std::size_t cap_bits = 16);

}  // namespace smplab
