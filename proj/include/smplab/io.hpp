#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>

#include "json.hpp"
#include "smplab/gadgets.hpp"
#include "smplab/graph.hpp"
#include "smplab/lattice.hpp"
#include "smplab/planar.hpp"
#include "smplab/universal.hpp"

namespace smplab::io {

using Json = nlohmann::ordered_json;

/// {"n", "edges": [[u, v], ...], "self_loops": "all"|"none"|"explicit", "loops": [...]}.
Json graph_to_json(const Graph& g);
/// Throws InputError on malformed input, duplicate edges or bad loops.
Graph graph_from_json(const Json& j);

/// {"n", "covers": [[x, y], ...]}.
Json poset_to_json(const Poset& p);
Poset poset_from_json(const Json& j);

/// {"n", "rotation": [[...], ...], "outer_face": [...]}.
Json embedding_to_json(const PlanarEmbedding& emb);
PlanarEmbedding embedding_from_json(const Json& j);

/// {"decoder", "params", "repetitions", "label_bits", "labels": [hex, ...]}.
Json labeling_to_json(const LabelingScheme& s);
LabelingScheme labeling_from_json(const Json& j);

/// {"family", "source", "product", ["poset"], "injection", "unpadded_size", "quoted_bound"}.
Json gadget_to_json(const GadgetInstance& g);

/// Throws InputError when the file cannot be read or parsed.
Json read_json(const std::filesystem::path& path);
/// Two-space indentation and a trailing newline.
std::string dump(const Json& j);
void write_json(const std::filesystem::path& path, const Json& j);
void write_text(const std::filesystem::path& path, const std::string& text);

/// One protocol run, as a CSV row.
struct TrialRecord {
  std::string instance_id;
  std::string protocol;
  std::uint32_t k = 0;
  double eps = 0.0;
  Vertex x = 0;
  Vertex y = 0;
  std::uint32_t true_dist = 0;
  std::string verdict;
  std::size_t bits_a = 0;
  std::size_t bits_b = 0;
  std::uint64_t seed = 0;
};

std::string trial_csv_header();
std::string to_csv_row(const TrialRecord& r);
/// Shortest round-trip decimal rendering.
std::string format_double(double x);

}  // namespace smplab::io
