// social: command-line front end for local triangle-motif clustering.
//
//   social run GRAPH [--seeds FILE | --num-seeds N --rng-seed S] [options]
//   social count GRAPH
//   social profile A.jsonl --profile-against B.jsonl [--metric conductance|time|size]
//   social dump GRAPH --seed ID [--layers L] [--model-out F] [--dimacs-out F]
//
// Worker threads for `run` come from SOCIAL_WORKERS (default 1).

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "social/social.hpp"

namespace {

using namespace social;
using json = nlohmann::ordered_json;

// Column order shared by JSONL and CSV output.
const std::vector<std::string> kColumns{
    "type",          "seed",          "status",          "cluster_size",    "conductance_local",
    "conductance_local_ratio", "conductance_exact", "conductance_exact_ratio", "assumption_b",
    "best_repetition", "time_ball_s", "time_enum_s",     "time_model_s",    "time_flow_s",
    "time_total_s",  "cluster",       "seeds",           "clustered",       "no_motifs",
    "mean_conductance", "conductance_source", "geomean_time_s", "geomean_cluster_size",
};

class Failure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

Graph load_graph(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Failure("cannot open graph file " + path);
  try {
    return load_edge_list(in);
  } catch (const ParseError& e) {
    throw Failure(path + ": " + e.what());
  }
}

std::vector<NodeId> read_seed_file(const std::string& path, const Graph& g) {
  std::ifstream in(path);
  if (!in) throw Failure("cannot open seed file " + path);
  std::vector<NodeId> seeds;
  std::string line;
  while (std::getline(in, line)) {
    std::istringstream ss(line);
    std::string tok;
    if (!(ss >> tok) || tok[0] == '#') continue;
    std::uint64_t id = 0;
    try {
      std::size_t used = 0;
      id = std::stoull(tok, &used);
      if (used != tok.size()) throw std::invalid_argument(tok);
    } catch (const std::exception&) {
      throw Failure("seed file " + path + ": not a node id: " + tok);
    }
    const auto v = g.find_original(id);
    if (!v) throw Failure("seed " + std::to_string(id) + " is not a node of the graph");
    seeds.push_back(*v);
  }
  return seeds;
}

std::string ratio_text(const Ratio& r) { return std::to_string(r.num) + "/" + std::to_string(r.den); }

std::string csv_cell(const json& v) {
  if (v.is_null()) return "";
  if (v.is_string()) return v.get<std::string>();
  if (v.is_array()) {
    std::string out;
    for (const auto& x : v) out += (out.empty() ? "" : " ") + x.dump();
    return out;
  }
  return v.dump();
}

class RecordWriter {
 public:
  RecordWriter(std::ostream& out, bool csv) : out_(out), csv_(csv) {
    if (!csv_) return;
    for (std::size_t i = 0; i < kColumns.size(); ++i) out_ << (i ? "," : "") << kColumns[i];
    out_ << "\n";
  }

  void write(const json& record) {
    if (!csv_) {
      out_ << record.dump() << "\n";
      return;
    }
    for (std::size_t i = 0; i < kColumns.size(); ++i) {
      out_ << (i ? "," : "") << (record.contains(kColumns[i]) ? csv_cell(record[kColumns[i]]) : "");
    }
    out_ << "\n";
  }

 private:
  std::ostream& out_;
  bool csv_;
};

json seed_record(const Graph& g, NodeId seed, const ClusteringResult& r) {
  json rec;
  rec["type"] = "seed";
  rec["seed"] = g.original_id(seed);
  rec["status"] = std::string(to_string(r.status));
  rec["cluster_size"] = r.best_cluster.size();
  const bool have = r.status != ClusterStatus::no_motifs;
  rec["conductance_local"] = have ? json(r.local_conductance.to_double()) : json(nullptr);
  rec["conductance_local_ratio"] = have ? json(ratio_text(r.local_conductance)) : json(nullptr);
  rec["conductance_exact"] = r.exact_conductance ? json(r.exact_conductance->to_double()) : json(nullptr);
  rec["conductance_exact_ratio"] = r.exact_conductance ? json(ratio_text(*r.exact_conductance)) : json(nullptr);
  // null: not checked (local evaluation)
  json assumption = nullptr;
  for (const auto& rep : r.repetitions) {
    if (!rep.assumption_b) continue;
    assumption = (assumption.is_null() || assumption.get<bool>()) && *rep.assumption_b;
  }
  rec["assumption_b"] = assumption;
  rec["best_repetition"] = r.best_repetition ? json(*r.best_repetition) : json(nullptr);
  rec["time_ball_s"] = r.timings.ball_s;
  rec["time_enum_s"] = r.timings.enumeration_s;
  rec["time_model_s"] = r.timings.model_s;
  rec["time_flow_s"] = r.timings.flow_s;
  rec["time_total_s"] = r.timings.total_s;
  std::vector<std::uint64_t> cluster = r.best_cluster_original;
  std::sort(cluster.begin(), cluster.end());
  rec["cluster"] = cluster;
  return rec;
}

json summary_record(const std::vector<ClusteringResult>& results, bool exact) {
  std::vector<double> phis, times, sizes;
  std::size_t no_motifs = 0;
  for (const auto& r : results) {
    times.push_back(std::max(r.timings.total_s, 1e-9));
    if (r.status == ClusterStatus::no_motifs) {
      ++no_motifs;
      continue;
    }
    phis.push_back(exact && r.exact_conductance ? r.exact_conductance->to_double() : r.local_conductance.to_double());
    sizes.push_back(static_cast<double>(r.best_cluster.size()));
  }
  json rec;
  rec["type"] = "summary";
  rec["seeds"] = results.size();
  rec["clustered"] = results.size() - no_motifs;
  rec["no_motifs"] = no_motifs;
  rec["mean_conductance"] = phis.empty() ? json(nullptr) : json(arithmetic_mean(phis));
  rec["conductance_source"] = exact ? "exact" : "local (assumption unverified)";
  rec["geomean_time_s"] = times.empty() ? json(nullptr) : json(geometric_mean(times));
  rec["geomean_cluster_size"] = sizes.empty() ? json(nullptr) : json(geometric_mean(sizes));
  return rec;
}

std::size_t worker_count() {
  const char* env = std::getenv("SOCIAL_WORKERS");
  if (!env) return 1;
  try {
    const long n = std::stol(env);
    return n > 0 ? static_cast<std::size_t>(n) : 1;
  } catch (const std::exception&) {
    throw Failure(std::string("SOCIAL_WORKERS is not a number: ") + env);
  }
}

std::vector<ClusteringResult> cluster_all(const Graph& g, const std::vector<NodeId>& seeds,
                                          const ClusteringParams& params) {
  std::vector<ClusteringResult> results(seeds.size());
  std::atomic<std::size_t> next{0};
  const auto work = [&] {
    for (std::size_t i = next++; i < seeds.size(); i = next++) results[i] = local_cluster(g, seeds[i], params);
  };
  const std::size_t workers = std::min(worker_count(), std::max<std::size_t>(seeds.size(), 1));
  std::vector<std::jthread> pool;
  for (std::size_t w = 1; w < workers; ++w) pool.emplace_back(work);
  work();
  return results;
}

struct RunOptions {
  std::string graph;
  std::string seeds_file;
  std::size_t num_seeds = 50;
  std::uint64_t rng_seed = 1;
  std::size_t alpha = 3;
  std::vector<std::size_t> layers;
  std::string expansion = "clique";
  std::string eval = "exact";
  std::string format = "jsonl";
  std::string output;
  std::size_t min_ball = kDefaultMinBallSize;
};

int run(const RunOptions& opt) {
  ClusteringParams params;
  if (opt.layers.empty()) {
    params.layers.clear();
    for (std::size_t i = 1; i <= opt.alpha; ++i) params.layers.push_back(i);
  } else {
    if (opt.layers.size() != opt.alpha) throw Failure("--layers must list exactly --alpha values");
    params.layers = opt.layers;
  }
  params.kind = *parse_expansion(opt.expansion);
  params.min_ball = opt.min_ball;

  const Graph g = load_graph(opt.graph);
  const bool exact = opt.eval == "exact";
  if (exact) params.total_triangles = count_triangles_global(g);

  std::vector<NodeId> seeds;
  if (!opt.seeds_file.empty()) {
    seeds = read_seed_file(opt.seeds_file, g);
  } else {
    if (opt.num_seeds > g.node_count()) {
      throw Failure("--num-seeds " + std::to_string(opt.num_seeds) + " exceeds the node count " +
                    std::to_string(g.node_count()));
    }
    seeds = sample_seeds(g, opt.num_seeds, opt.rng_seed);
  }

  const auto results = cluster_all(g, seeds, params);

  std::ofstream file;
  if (!opt.output.empty()) {
    file.open(opt.output);
    if (!file) throw Failure("cannot write " + opt.output);
  }
  std::ostream& out = opt.output.empty() ? std::cout : file;
  RecordWriter writer(out, opt.format == "csv");
  for (std::size_t i = 0; i < seeds.size(); ++i) writer.write(seed_record(g, seeds[i], results[i]));
  writer.write(summary_record(results, exact));
  return 0;
}

int count(const std::string& path) {
  const Graph g = load_graph(path);
  std::cout << "nodes " << g.node_count() << "\nedges " << g.edge_count() << "\ntriangles "
            << count_triangles_global(g) << "\n";
  return 0;
}

// seed -> metric, for seeds that produced a cluster
std::map<std::uint64_t, double> read_metric(const std::string& path, const std::string& metric) {
  std::ifstream in(path);
  if (!in) throw Failure("cannot open " + path);
  std::map<std::uint64_t, double> out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    json rec;
    try {
      rec = json::parse(line);
    } catch (const json::parse_error& e) {
      throw Failure(path + ":" + std::to_string(lineno) + ": " + e.what());
    }
    if (rec.value("type", "") != "seed" || rec["status"] == "no-motifs") continue;
    const auto seed = rec["seed"].get<std::uint64_t>();
    if (metric == "time") {
      out[seed] = rec["time_total_s"].get<double>();
    } else if (metric == "size") {
      out[seed] = rec["cluster_size"].get<double>();
    } else {
      out[seed] = rec["conductance_exact"].is_null() ? rec["conductance_local"].get<double>()
                                                     : rec["conductance_exact"].get<double>();
    }
  }
  return out;
}

int profile(const std::string& first, const std::vector<std::string>& others, const std::string& metric,
            std::vector<double> taus) {
  std::vector<std::string> files{first};
  files.insert(files.end(), others.begin(), others.end());
  std::vector<std::map<std::uint64_t, double>> metrics;
  for (const auto& f : files) metrics.push_back(read_metric(f, metric));

  // instances every input has a value for
  std::vector<std::uint64_t> common;
  for (const auto& [seed, _] : metrics.front()) {
    if (std::all_of(metrics.begin(), metrics.end(), [&](const auto& m) { return m.contains(seed); })) {
      common.push_back(seed);
    }
  }
  std::vector<std::vector<double>> values(files.size());
  for (std::size_t a = 0; a < files.size(); ++a) {
    for (auto seed : common) values[a].push_back(metrics[a].at(seed));
  }
  if (taus.empty()) taus = {1.0, 1.05, 1.1, 1.25, 1.5, 2.0, 3.0, 5.0, 10.0, 100.0};
  const auto curves = performance_profile(values, taus);

  std::cout << "# " << metric << " profile over " << common.size() << " common instances\ntau";
  for (const auto& f : files) std::cout << "," << f;
  std::cout << "\n";
  for (std::size_t k = 0; k < taus.size(); ++k) {
    std::cout << taus[k];
    for (const auto& c : curves) std::cout << "," << c.fractions[k];
    std::cout << "\n";
  }
  return 0;
}

int dump(const std::string& path, std::uint64_t seed_id, std::size_t layers, const std::string& expansion,
         const std::string& model_out, const std::string& dimacs_out) {
  const Graph g = load_graph(path);
  const auto seed = g.find_original(seed_id);
  if (!seed) throw Failure("seed " + std::to_string(seed_id) + " is not a node of the graph");
  const Ball ball = bfs_ball(g, *seed, layers, false);
  const HypergraphModel h = build_model(ball, enumerate_triangles_touching(g, ball.nodes));

  const auto open = [](const std::string& f, std::ofstream& file) -> std::ostream& {
    if (f.empty() || f == "-") return std::cout;
    file.open(f);
    if (!file) throw Failure("cannot write " + f);
    return file;
  };
  std::ofstream model_file, dimacs_file;
  write_model(open(model_out, model_file), h, g);
  if (dimacs_out.empty()) return 0;

  std::vector<LocalId> c0;
  for (LocalId v = 0; v < h.local_count(); ++v) c0.push_back(v);
  if (h.weighted_volume(c0) == 0 || h.cut_net(c0) == 0) {
    throw Failure("ball has no motif volume or no cut motif; there is no flow network to write");
  }
  write_dimacs(open(dimacs_out, dimacs_file), build_flow_model(h, c0, *h.local_id(*seed), *parse_expansion(expansion)));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Local clustering around seed nodes by triangle-motif conductance"};
  app.require_subcommand(1);
  const std::vector<std::string> kinds{"clique", "star", "lawler"};

  RunOptions ro;
  auto* run_cmd = app.add_subcommand("run", "Cluster around seeds and emit one record per seed plus a summary");
  run_cmd->add_option("graph", ro.graph, "Edge-list file")->required();
  auto* seeds_opt = run_cmd->add_option("--seeds", ro.seeds_file, "File of original seed ids, one per line");
  run_cmd->add_option("--num-seeds", ro.num_seeds, "Number of seeds to sample")->excludes(seeds_opt);
  run_cmd->add_option("--rng-seed", ro.rng_seed, "Seed for sampling")->excludes(seeds_opt);
  run_cmd->add_option("--alpha", ro.alpha, "Number of repetitions")->check(CLI::PositiveNumber);
  run_cmd->add_option("--layers", ro.layers, "BFS depth per repetition (default 1..alpha)")->delimiter(',');
  run_cmd->add_option("--expansion", ro.expansion, "Hyperedge expansion")->check(CLI::IsMember(kinds));
  run_cmd->add_option("--eval", ro.eval, "Conductance evaluation")->check(CLI::IsMember({"exact", "local"}));
  run_cmd->add_option("--format", ro.format, "Output format")->check(CLI::IsMember({"jsonl", "csv"}));
  run_cmd->add_option("--output,-o", ro.output, "Output file (default stdout)");
  run_cmd->add_option("--min-ball", ro.min_ball, "Minimum ball size on the last repetition");

  std::string count_graph;
  auto* count_cmd = app.add_subcommand("count", "Print node, edge and triangle counts");
  count_cmd->add_option("graph", count_graph, "Edge-list file")->required();

  std::string profile_first, metric = "conductance";
  std::vector<std::string> profile_others;
  std::vector<double> taus;
  auto* profile_cmd = app.add_subcommand("profile", "Performance profile of run outputs on common seeds");
  profile_cmd->add_option("results", profile_first, "JSONL output of `run`")->required();
  profile_cmd->add_option("--profile-against", profile_others, "Other JSONL outputs")->required();
  profile_cmd->add_option("--metric", metric, "Compared value")->check(CLI::IsMember({"conductance", "time", "size"}));
  profile_cmd->add_option("--taus", taus, "Ratios to report")->delimiter(',');

  std::string dump_graph, dump_expansion = "clique", model_out = "-", dimacs_out;
  std::uint64_t dump_seed = 0;
  std::size_t dump_layers = 1;
  auto* dump_cmd = app.add_subcommand("dump", "Write the hypergraph model and flow network of one ball");
  dump_cmd->add_option("graph", dump_graph, "Edge-list file")->required();
  dump_cmd->add_option("--seed", dump_seed, "Original seed id")->required();
  dump_cmd->add_option("--layers", dump_layers, "BFS depth")->check(CLI::PositiveNumber);
  dump_cmd->add_option("--expansion", dump_expansion, "Hyperedge expansion")->check(CLI::IsMember(kinds));
  dump_cmd->add_option("--model-out", model_out, "Model file (- for stdout)");
  dump_cmd->add_option("--dimacs-out", dimacs_out, "DIMACS max-flow file for C0 = ball");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run_cmd) return run(ro);
    if (*count_cmd) return count(count_graph);
    if (*profile_cmd) return profile(profile_first, profile_others, metric, taus);
    if (*dump_cmd) return dump(dump_graph, dump_seed, dump_layers, dump_expansion, model_out, dimacs_out);
  } catch (const Failure& e) {
    std::cerr << "social: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "social: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
