#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "smplab/error.hpp"
#include "smplab/io.hpp"
#include "smplab/lab.hpp"

namespace {

using namespace smplab;
namespace fs = std::filesystem;

constexpr int kExitInput = 1;
constexpr int kExitVerification = 2;
constexpr int kExitCapacity = 3;

void emit(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
  } else {
    io::write_text(path, text);
  }
}

struct GenArgs {
  std::string family;
  std::size_t n = 0;
  std::uint64_t seed = 0;
  std::string out;
};

int cmd_gen(const GenArgs& a) {
  emit(a.out, io::dump(lab::instance_to_json(lab::generate(a.family, a.n, a.seed))));
  return 0;
}

struct RunArgs {
  std::string config;
  std::string format;
  std::string out;
};

int cmd_run(const RunArgs& a) {
  auto cfg = lab::ExperimentConfig::from_json(io::read_json(a.config));
  if (!a.format.empty()) cfg.format = a.format;
  if (!a.out.empty()) cfg.output_path = a.out;
  cfg.validate();
  const auto report = lab::run_experiment(cfg);
  emit(cfg.output_path, report.render());
  if (!cfg.trial_log.empty()) {
    std::string log = io::trial_csv_header() + "\n";
    for (const auto& t : report.trials) log += io::to_csv_row(t) + "\n";
    io::write_text(cfg.trial_log, log);
  }
  return 0;
}

struct LabelArgs {
  lab::LabelConfig cfg;
  std::optional<double> delta;
};

int cmd_label(LabelArgs a) {
  a.cfg.delta = a.delta;
  const auto report = lab::label_pipeline(a.cfg);
  std::cout << io::dump(report.to_json());
  return report.decode_errors == 0 && report.round_trip_identical ? 0 : kExitVerification;
}

struct DecodeArgs {
  std::string scheme;
  std::string x;
  std::string y;
  bool vertices = false;
};

int cmd_decode(const DecodeArgs& a) {
  fs::path path(a.scheme);
  if (fs::is_directory(path)) path /= "labeling.json";
  const auto scheme = io::labeling_from_json(io::read_json(path));
  auto label = [&](const std::string& text) {
    if (!a.vertices) return BitString::from_hex(text, scheme.label_bits);
    std::size_t v = 0;
    try {
      v = std::stoul(text);
    } catch (const std::exception&) {
      throw InputError("decode: '" + text + "' is not a vertex id");
    }
    if (v >= scheme.labels.size()) throw InputError("decode: vertex " + text + " out of range");
    return scheme.labels[v];
  };
  std::cout << (decode_labels(scheme, label(a.x), label(a.y)) ? 1 : 0) << "\n";
  return 0;
}

struct VerifyArgs {
  std::string instance;
  bool all_props = false;
};

int cmd_verify(const VerifyArgs& a) {
  const auto inst = lab::instance_from_json(io::read_json(a.instance));
  bool ok = true;
  for (const auto& check : lab::verify_instance(inst, a.all_props)) {
    ok &= check.pass;
    std::cout << (check.pass ? "PASS " : "FAIL ") << check.name;
    if (!check.detail.empty()) std::cout << " (" << check.detail << ")";
    std::cout << "\n";
  }
  return ok ? 0 : kExitVerification;
}

struct OracleArgs {
  std::string instance;
  std::vector<std::string> query;
};

int cmd_oracle(const OracleArgs& a) {
  if (a.query.size() != 3 || a.query[0] != "dist") throw InputError("oracle: expected --query dist X Y");
  const auto inst = lab::instance_from_json(io::read_json(a.instance));
  Vertex x = 0, y = 0;
  try {
    x = static_cast<Vertex>(std::stoul(a.query[1]));
    y = static_cast<Vertex>(std::stoul(a.query[2]));
  } catch (const std::exception&) {
    throw InputError("oracle: vertex ids must be non-negative integers");
  }
  if (x >= inst.graph.size() || y >= inst.graph.size()) throw InputError("oracle: vertex out of range");
  const auto d = lab::DistanceOracle(inst)(x, y);
  std::cout << (d == kInfiniteDistance ? std::string("inf") : std::to_string(d)) << "\n";
  return 0;
}

struct GadgetArgs {
  std::string kind;
  std::size_t n = 0;
  std::uint64_t seed = 0;
  std::string source;
  std::string out;
};

int cmd_gadget(const GadgetArgs& a) {
  const auto kind = gadget_family_from_string(a.kind);
  if (kind == GadgetFamily::Interval) {
    const auto iv = interval_gt_instance(a.n);
    io::Json j;
    j["family"] = "interval";
    j["product"] = io::graph_to_json(iv.graph);
    j["intervals"] = iv.intervals;
    emit(a.out, io::dump(j));
    return 0;
  }
  if (kind == GadgetFamily::AllGraphs) {
    std::mt19937_64 rng(a.seed);
    emit(a.out, io::dump(io::graph_to_json(random_all_loops_graph(a.n, rng))));
    return 0;
  }
  GadgetInstance gi;
  if (!a.source.empty()) {
    const auto source = io::graph_from_json(io::read_json(a.source));
    gi = kind == GadgetFamily::Modular ? modular_gadget(source) : arboricity2_gadget(source);
  } else {
    gi = lab::generate("gadget:" + a.kind, a.n, a.seed).gadget.value();
    if (kind == GadgetFamily::Modular) gi = modular_gadget(gi.source);
  }
  emit(a.out, io::dump(io::gadget_to_json(gi)));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Universal SMP protocol lab"};
  app.require_subcommand(1);

  GenArgs gen;
  auto* gen_cmd = app.add_subcommand("gen", "Generate an instance");
  gen_cmd->add_option("--family", gen.family, "Instance family")->required();
  gen_cmd->add_option("--n", gen.n, "Size parameter")->required();
  gen_cmd->add_option("--seed", gen.seed, "Seed");
  gen_cmd->add_option("--out", gen.out, "Output path (default stdout)");

  RunArgs run;
  auto* run_cmd = app.add_subcommand("run", "Run an experiment");
  run_cmd->add_option("--config", run.config, "Experiment config JSON")->required();
  run_cmd->add_option("--format", run.format, "Report format")->check(CLI::IsMember({"csv", "json"}));
  run_cmd->add_option("--out", run.out, "Report path (overrides the config)");

  LabelArgs label;
  auto* label_cmd = app.add_subcommand("label", "Build and verify a derandomized labeling");
  label_cmd->add_option("--family", label.cfg.family, "Instance family")->required();
  label_cmd->add_option("--n", label.cfg.n, "Size parameter")->required();
  label_cmd->add_option("--k", label.cfg.protocol.k, "Distance threshold");
  label_cmd->add_option("--eps", label.cfg.protocol.eps, "Protocol error");
  label_cmd->add_option("--delta", label.delta, "Bank slack");
  label_cmd->add_option("--seed", label.cfg.master_seed, "Master seed");
  label_cmd->add_option("--retries", label.cfg.retries, "Bank retries");
  label_cmd->add_option("--out", label.cfg.out_dir, "Output directory")->required();

  DecodeArgs decode;
  auto* decode_cmd = app.add_subcommand("decode", "Decode two labels");
  decode_cmd->add_option("--scheme", decode.scheme, "Labeling directory or file")->required();
  decode_cmd->add_option("--x", decode.x, "First label (hex)")->required();
  decode_cmd->add_option("--y", decode.y, "Second label (hex)")->required();
  decode_cmd->add_flag("--vertices", decode.vertices, "Read --x and --y as vertex ids");

  VerifyArgs verify;
  auto* verify_cmd = app.add_subcommand("verify", "Check structural properties of an instance");
  verify_cmd->add_option("--instance", verify.instance, "Instance JSON")->required();
  verify_cmd->add_flag("--all-props", verify.all_props, "Include the expensive checks");

  OracleArgs oracle;
  auto* oracle_cmd = app.add_subcommand("oracle", "Answer a query from the brute-force oracle");
  oracle_cmd->add_option("--instance", oracle.instance, "Instance JSON")->required();
  oracle_cmd->add_option("--query", oracle.query, "dist X Y")->expected(3)->required();

  GadgetArgs gadget;
  auto* gadget_cmd = app.add_subcommand("gadget", "Build a lower-bound gadget");
  gadget_cmd->add_option("--kind", gadget.kind, "modular, arboricity2, interval or allgraphs")->required();
  gadget_cmd->add_option("--n", gadget.n, "Source size");
  gadget_cmd->add_option("--seed", gadget.seed, "Seed");
  gadget_cmd->add_option("--source", gadget.source, "Source graph JSON instead of a random one");
  gadget_cmd->add_option("--out", gadget.out, "Output path (default stdout)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*gen_cmd) return cmd_gen(gen);
    if (*run_cmd) return cmd_run(run);
    if (*label_cmd) return cmd_label(label);
    if (*decode_cmd) return cmd_decode(decode);
    if (*verify_cmd) return cmd_verify(verify);
    if (*oracle_cmd) return cmd_oracle(oracle);
    if (*gadget_cmd) return cmd_gadget(gadget);
  } catch (const CapacityError& e) {
    std::cerr << "capacity error: " << e.what() << "\n";
    return kExitCapacity;
  } catch (const VerificationError& e) {
    std::cerr << "verification failed: " << e.what() << "\n";
    return kExitVerification;
  } catch (const ConstructionError& e) {
    std::cerr << "construction failed: " << e.what() << "\n";
    return kExitVerification;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  }
  return 0;
}
