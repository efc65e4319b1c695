#include "smplab/universal.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "smplab/error.hpp"

namespace smplab {

std::optional<Vertex> DecisionGraph::find(const BitString& msg) const {
  const auto it = std::lower_bound(messages.begin(), messages.end(), msg);
  if (it == messages.end() || !(*it == msg)) return std::nullopt;
  return static_cast<Vertex>(it - messages.begin());
}

namespace {

Graph referee_graph(const std::vector<BitString>& messages,
                    const std::function<bool(const BitString&, const BitString&)>& accepts) {
  GraphBuilder b(messages.size(), SelfLoops::Explicit);
  for (Vertex u = 0; u < messages.size(); ++u) {
    for (Vertex v = u; v < messages.size(); ++v) {
      if (accepts(messages[u], messages[v])) b.add_edge(u, v);
    }
  }
  return std::move(b).build();
}

std::vector<BitString> all_messages(std::size_t bits) {
  std::vector<BitString> out;
  out.reserve(std::size_t{1} << bits);
  for (std::uint64_t i = 0; i < (std::uint64_t{1} << bits); ++i) {
    out.push_back(BitString::from_uint(i, static_cast<unsigned>(bits)));
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

DecisionGraph decision_graph(const Referee& referee, std::size_t cap_bits) {
  const std::size_t c = referee.message_bits();
  if (c > cap_bits) {
    throw CapacityError("decision_graph: " + std::to_string(c) + "-bit messages exceed the cap of " +
                        std::to_string(cap_bits));
  }
  DecisionGraph dg;
  dg.cost_bits = c;
  dg.all_messages = true;
  dg.messages = all_messages(c);
  dg.graph = referee_graph(dg.messages, [&](const BitString& a, const BitString& b) {
    return referee.decide(a, b).positive();
  });
  return dg;
}

DecisionGraph decision_graph_occurring(const Protocol& p, std::span<const std::uint64_t> seeds) {
  const auto referee = p.referee();
  if (!referee) throw PreconditionError("decision_graph: weak protocols have no seedless referee");
  std::vector<BitString> messages;
  for (const auto seed : seeds) {
    SeededTape tape(seed);
    for (Vertex v = 0; v < p.size(); ++v) {
      messages.push_back(p.encode_a(tape, v));
      messages.push_back(p.encode_b(tape, v));
    }
  }
  std::sort(messages.begin(), messages.end());
  messages.erase(std::unique(messages.begin(), messages.end()), messages.end());
  DecisionGraph dg;
  dg.cost_bits = p.cost_bits();
  dg.messages = std::move(messages);
  dg.graph = referee_graph(dg.messages, [&](const BitString& a, const BitString& b) {
    return referee->decide(a, b).positive();
  });
  return dg;
}

std::uint32_t deterministic_cost(const Graph& g) { return bit_width_for(equiv_reduction(g).graph.size()); }

// Probabilistic embeddings -------------------------------------------------------------

EmbeddingCheck check_prob_embedding(const Graph& g, const TargetAdjacency& target, const MapSampler& sampler,
                                    double eps, std::size_t trials, std::uint64_t master_seed) {
  const std::size_t n = g.size();
  std::vector<std::uint32_t> failures(n * n, 0);
  for (std::size_t t = 0; t < trials; ++t) {
    const auto image = sampler(derive_seed(master_seed, t));
    if (image.size() != n) throw InputError("check_prob_embedding: sampler returned a partial map");
    for (Vertex u = 0; u < n; ++u) {
      for (Vertex v = u; v < n; ++v) {
        if (g.adjacent(u, v) != target(image[u], image[v])) ++failures[u * n + v];
      }
    }
  }
  EmbeddingCheck out;
  out.trials = trials;
  out.threshold = eps + 3.0 * std::sqrt(eps * (1.0 - eps) / static_cast<double>(std::max<std::size_t>(trials, 1)));
  for (Vertex u = 0; u < n; ++u) {
    for (Vertex v = u; v < n; ++v) {
      const double rate = trials ? static_cast<double>(failures[u * n + v]) / static_cast<double>(trials) : 0.0;
      if (rate > out.worst_rate) {
        out.worst_rate = rate;
        out.worst_pair = {u, v};
      }
    }
  }
  out.pass = out.worst_rate <= out.threshold;
  return out;
}

EmbeddingCheck check_prob_embedding(const Graph& g, const Graph& u, const MapSampler& sampler, double eps,
                                    std::size_t trials, std::uint64_t master_seed) {
  return check_prob_embedding(
      g,
      [&](std::uint64_t a, std::uint64_t b) {
        return u.adjacent(static_cast<Vertex>(a), static_cast<Vertex>(b));
      },
      sampler, eps, trials, master_seed);
}

// Minimal universal graphs ---------------------------------------------------------------

namespace {

bool twin_free(const Graph& g) {
  const std::size_t n = g.size();
  for (Vertex u = 0; u < n; ++u) {
    for (Vertex v = u + 1; v < n; ++v) {
      bool same = true;
      for (Vertex w = 0; w < n && same; ++w) same = g.adjacent(u, w) == g.adjacent(v, w);
      if (same) return false;
    }
  }
  return true;
}

Graph graph_from_mask(std::size_t s, std::uint64_t mask) {
  GraphBuilder b(s, SelfLoops::Explicit);
  unsigned bit = 0;
  for (Vertex u = 0; u < s; ++u) {
    for (Vertex v = u; v < s; ++v, ++bit) {
      if (mask >> bit & 1) b.add_edge(u, v);
    }
  }
  return std::move(b).build();
}

}  // namespace

UniversalGraph min_universal_graph(std::span<const Graph> family, const UniversalSearch& search) {
  if (family.empty()) throw InputError("min_universal_graph: empty family");
  if (family.size() > search.max_family) throw CapacityError("min_universal_graph: family too large");
  std::vector<Reduction> reduced;
  std::size_t start = 1;
  for (const auto& g : family) {
    if (g.size() > search.max_member_size) throw CapacityError("min_universal_graph: member too large");
    reduced.push_back(equiv_reduction(g));
    start = std::max(start, reduced.back().graph.size());
  }
  for (std::size_t s = start; s <= search.max_candidate_size; ++s) {
    const unsigned bits = static_cast<unsigned>(s * (s + 1) / 2);
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << bits); ++mask) {
      const auto u = graph_from_mask(s, mask);
      if (!twin_free(u)) continue;
      std::vector<VertexMap> maps;
      for (const auto& r : reduced) {
        // Twin-free graphs embed exactly as induced subgraphs.
        const auto phi = find_embedding(r.graph, u, {.cap = s, .injective = true});
        if (!phi) break;
        maps.push_back(compose(r.quotient, *phi));
      }
      if (maps.size() == reduced.size()) return {u, bit_width_for(s), std::move(maps)};
    }
  }
  throw CapacityError("min_universal_graph: no universal graph with at most " +
                      std::to_string(search.max_candidate_size) + " vertices");
}

// Seed banks -------------------------------------------------------------------------------

std::size_t newman_bank_size(std::size_t n, double eps, double delta) {
  if (n == 0) throw InputError("newman_bank_size: empty instance");
  if (!(eps > 0.0 && eps < 1.0) || !(delta > 0.0 && delta < 1.0)) {
    throw InputError("newman_bank_size: eps and delta must lie in (0, 1)");
  }
  const double bound = 3.0 * eps / (delta * delta) * std::log(static_cast<double>(n) * static_cast<double>(n));
  return static_cast<std::size_t>(std::floor(bound * (1.0 + 1e-12))) + 1;
}

BankCheck verify_seed_bank(const Protocol& p, std::span<const std::uint64_t> seeds, double bound) {
  const std::size_t n = p.size();
  std::vector<std::uint32_t> bad(n * n, 0);
  std::vector<BitString> ma(n), mb(n);
  for (const auto seed : seeds) {
    SeededTape tape(seed);
    for (Vertex v = 0; v < n; ++v) {
      ma[v] = p.encode_a(tape, v);
      mb[v] = p.encode_b(tape, v);
    }
    for (Vertex x = 0; x < n; ++x) {
      for (Vertex y = 0; y < n; ++y) {
        if (!p.correct(p.weak_decide(tape, ma[x], mb[y]), x, y)) ++bad[x * n + y];
      }
    }
  }
  BankCheck out;
  std::uint32_t worst = 0;
  for (Vertex x = 0; x < n; ++x) {
    for (Vertex y = 0; y < n; ++y) {
      if (bad[x * n + y] > worst) {
        worst = bad[x * n + y];
        out.worst_pair = {x, y};
      }
    }
  }
  out.worst_fraction = seeds.empty() ? 0.0 : static_cast<double>(worst) / static_cast<double>(seeds.size());
  out.ok = !seeds.empty() && out.worst_fraction <= bound + 1e-12;
  return out;
}

SeedBank newman_seed_bank(const Protocol& p, double eps, double delta, std::mt19937_64& rng, std::size_t retries,
                          std::optional<std::size_t> size) {
  const std::size_t m = size ? *size : newman_bank_size(p.size(), eps, delta);
  SeedBank bank;
  bank.eps = eps;
  bank.delta = delta;
  BankCheck worst;
  for (std::size_t attempt = 1; attempt <= retries; ++attempt) {
    bank.seeds.resize(m);
    for (auto& s : bank.seeds) s = rng();
    bank.attempts = attempt;
    bank.check = verify_seed_bank(p, bank.seeds, eps + delta);
    if (bank.check.ok) return bank;
    if (bank.check.worst_fraction >= worst.worst_fraction) worst = bank.check;
  }
  throw VerificationError("newman_seed_bank: no bank verified after " + std::to_string(retries) +
                          " attempts; worst pair (" + std::to_string(worst.worst_pair.first) + ", " +
                          std::to_string(worst.worst_pair.second) + ") has bad fraction " +
                          std::to_string(worst.worst_fraction));
}

// Labeling schemes ---------------------------------------------------------------------------

bool decode_labels(const Referee& referee, std::size_t repetitions, const BitString& lx, const BitString& ly) {
  const std::size_t c = referee.message_bits();
  if (repetitions == 0 || lx.size() != repetitions * c || ly.size() != repetitions * c) {
    throw InputError("decode_labels: label length does not match the scheme");
  }
  std::size_t positive = 0;
  for (std::size_t j = 0; j < repetitions; ++j) {
    if (referee.decide(lx.slice(j * c, c), ly.slice(j * c, c)).positive()) ++positive;
  }
  return 2 * positive > repetitions;
}

bool decode_labels(const LabelingScheme& s, const BitString& lx, const BitString& ly) {
  const auto referee = referee_from_params(s.decoder, s.params);
  if (referee->message_bits() * s.repetitions != s.label_bits) {
    throw InputError("decode_labels: scheme parameters do not match label_bits");
  }
  return decode_labels(*referee, s.repetitions, lx, ly);
}

std::vector<Edge> labeling_errors(const Protocol& p, const LabelingScheme& s) {
  const auto referee = referee_from_params(s.decoder, s.params);
  std::vector<Edge> errors;
  for (Vertex x = 0; x < s.labels.size(); ++x) {
    for (Vertex y = 0; y < s.labels.size(); ++y) {
      if (decode_labels(*referee, s.repetitions, s.labels[x], s.labels[y]) != p.expected(x, y)) {
        errors.emplace_back(x, y);
      }
    }
  }
  return errors;
}

namespace {

LabelingScheme build_labels(const Protocol& p, std::span<const std::uint64_t> seeds) {
  const auto referee = p.referee();
  if (!referee) throw PreconditionError("derandomized_labeling: needs a universal-model protocol");
  LabelingScheme s;
  s.decoder = referee->name();
  s.params = referee->params();
  s.repetitions = seeds.size();
  s.label_bits = seeds.size() * p.cost_bits();
  s.labels.assign(p.size(), BitString{});
  for (const auto seed : seeds) {
    SeededTape tape(seed);
    for (Vertex v = 0; v < p.size(); ++v) s.labels[v].append(p.encode_a(tape, v));
  }
  return s;
}

}  // namespace

LabelingScheme derandomized_labeling(const Protocol& p, const SeedBank& bank) {
  if (bank.seeds.empty()) throw InputError("derandomized_labeling: empty bank");
  auto s = build_labels(p, bank.seeds);
  const auto errors = labeling_errors(p, s);
  if (!errors.empty()) {
    throw ConstructionError("derandomized_labeling: " + std::to_string(errors.size()) +
                            " pairs decode wrongly, first (" + std::to_string(errors[0].first) + ", " +
                            std::to_string(errors[0].second) + ")");
  }
  return s;
}

LabelingScheme derandomized_labeling_fixed(const Protocol& p, std::size_t repetitions, std::mt19937_64& rng,
                                           std::size_t retries) {
  if (repetitions == 0) throw InputError("derandomized_labeling_fixed: repetitions must be positive");
  std::vector<std::uint64_t> seeds(repetitions);
  for (std::size_t attempt = 0; attempt < retries; ++attempt) {
    for (auto& s : seeds) s = rng();
    auto scheme = build_labels(p, seeds);
    if (labeling_errors(p, scheme).empty()) return scheme;
  }
  throw ConstructionError("derandomized_labeling_fixed: no correct labeling after " + std::to_string(retries) +
                          " attempts");
}

std::vector<DecisionGraph> weak_to_universal_family(const Protocol& p, std::span<const std::uint64_t> seeds,
                                                    std::size_t cap_bits) {
  const std::size_t c = p.cost_bits();
  if (c > cap_bits) throw CapacityError("weak_to_universal_family: message space above the cap");
  const auto messages = all_messages(c);
  std::vector<DecisionGraph> out;
  for (const auto seed : seeds) {
    DecisionGraph dg;
    dg.cost_bits = c;
    dg.all_messages = true;
    dg.messages = messages;
    dg.graph = referee_graph(messages, [&](const BitString& a, const BitString& b) {
      SeededTape tape(seed);
      return p.weak_decide(tape, a, b).positive();
    });
    out.push_back(std::move(dg));
  }
  return out;
}

}  // namespace smplab
