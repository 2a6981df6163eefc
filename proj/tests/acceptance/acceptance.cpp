// Acceptance run: one PASS / FAIL / SKIP line per criterion.
//
//   acceptance [--only 1,2,9] [--data-dir DIR] [--strict]
//
// Criteria 7 and 8 need com-amazon.ungraph.txt and com-dblp.ungraph.txt
// (uncompressed SNAP edge lists) in the data directory; without them they are
// reported as SKIP. Exit status: 1 on a failure, otherwise 77 if any
// selected criterion was skipped, otherwise 0.

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "social/social.hpp"
#include "support/oracles.hpp"

namespace {

using namespace social;
using Clock = std::chrono::steady_clock;

enum class Verdict { pass, fail, skip };

struct Outcome {
  Verdict verdict = Verdict::pass;
  std::string detail;
  bool soft = false;
};

double since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::string fmt_seconds(double s) {
  std::ostringstream out;
  out << std::fixed << std::setprecision(2) << s << " s";
  return out.str();
}

// One full improvement loop on a fixed ball, as the driver runs it.
struct LoopRun {
  std::vector<std::vector<LocalId>> clusters;  // C0, C1, ... final
  std::vector<Ratio> conductances;
};

struct Instance {
  Graph g;
  NodeId seed = 0;
  HypergraphModel h;
  std::vector<LocalId> c0;
  LocalId local_seed = 0;
};

LoopRun run_loop(const Instance& in, ExpansionKind kind) {
  LoopRun run;
  std::vector<LocalId> c = in.c0;
  while (true) {
    run.clusters.push_back(c);
    run.conductances.push_back(in.h.local_conductance(c));
    auto next = improve_once(in.h, c, in.local_seed, kind);
    if (!next) break;
    c = std::move(*next);
  }
  return run;
}

// Random ball instance around a random seed of a pocketed graph. C0 is the
// ball minus nodes without motifs (seed kept). Returns false when the ball is
// unusable (no motif volume or nothing leaves it).
bool make_instance(std::mt19937_64& rng, Instance& out) {
  std::uniform_int_distribution<NodeId> pockets(6, 12), size(5, 8);
  std::uniform_real_distribution<double> p_in(0.45, 0.8);
  const NodeId k = pockets(rng), s = size(rng);
  out.g = testing::clustered_graph(k, s, p_in(rng), k * s / 2, rng);
  std::uniform_int_distribution<NodeId> pick(0, out.g.node_count() - 1);
  out.seed = pick(rng);
  std::uniform_int_distribution<std::size_t> layers(1, 2);
  const Ball ball = bfs_ball(out.g, out.seed, layers(rng), false);
  out.h = HypergraphModel::build(ball.nodes, enumerate_triangles_touching(out.g, ball.nodes));
  out.local_seed = *out.h.local_id(out.seed);
  out.c0.clear();
  for (LocalId v = 0; v < out.h.local_count(); ++v) {
    if (v == out.local_seed || out.h.weighted_degree(v) > 0) out.c0.push_back(v);
  }
  return out.h.weighted_volume(out.c0) > 0 && out.h.cut_net(out.c0) > 0;
}

// Traces gathered for the monotonicity check.
struct TraceSample {
  std::string origin;
  std::vector<std::size_t> sizes;
  std::vector<Ratio> conductances;
};

std::vector<TraceSample> g_traces_core;
std::vector<TraceSample> g_traces_quality;
bool g_quality_ran = false;

// --- 1 -------------------------------------------------------------------

Outcome criterion_max_flow() {
  const auto t0 = Clock::now();
  std::mt19937_64 rng(1001);
  int matched = 0;
  for (int i = 0; i < 200; ++i) {
    const FlowNetwork net = testing::random_network(rng, 10, 20);
    if (max_flow(net).value == testing::brute_force_min_cut(net)) ++matched;
  }
  const double t = since(t0);
  Outcome o;
  o.verdict = matched == 200 && t < 5.0 ? Verdict::pass : Verdict::fail;
  o.detail = std::to_string(matched) + "/200 networks match brute-force min cut in " + fmt_seconds(t) +
             " (limit 5 s)";
  return o;
}

// --- 2 -------------------------------------------------------------------

Outcome criterion_triangles() {
  const auto t0 = Clock::now();
  std::mt19937_64 rng(1002);
  std::uniform_int_distribution<NodeId> n_dist(3, 30);
  std::uniform_real_distribution<double> p_dist(0.2, 0.6);
  int matched = 0;
  for (int i = 0; i < 100; ++i) {
    const Graph g = testing::random_graph(n_dist(rng), p_dist(rng), rng);
    NodeSet all;
    for (NodeId v = 0; v < g.node_count(); ++v) all.insert(v);
    const MotifSet m = enumerate_triangles_touching(g, all);
    std::set<testing::Triangle> got;
    for (std::size_t j = 0; j < m.size(); ++j) {
      const auto occ = m.occurrence(j);
      got.insert({occ[0], occ[1], occ[2]});
    }
    if (got == testing::brute_force_triangles(g) && got.size() == m.size()) ++matched;
  }
  const double t = since(t0);
  Outcome o;
  o.verdict = matched == 100 && t < 5.0 ? Verdict::pass : Verdict::fail;
  o.detail = std::to_string(matched) + "/100 graphs match the triple scan in " + fmt_seconds(t) + " (limit 5 s)";
  return o;
}

// --- 3 -------------------------------------------------------------------

Outcome criterion_model_equivalence() {
  const auto t0 = Clock::now();
  std::mt19937_64 rng(1003);
  int checked = 0, matched = 0, attempts = 0;
  while (checked < 100 && attempts < 100000) {
    ++attempts;
    Instance in;
    make_instance(rng, in);
    const std::uint64_t total = count_triangles_global(in.g);
    NodeSet s;
    for (LocalId v = 0; v < in.h.local_count(); ++v) s.insert(in.h.graph_node(v));
    if (!check_assumption_b(in.g, s, total)) continue;
    std::bernoulli_distribution coin(0.5);
    NodeSet c;
    for (NodeId v : s) {
      if (coin(rng)) c.insert(v);
    }
    if (c.empty() || in.h.weighted_volume(c) == 0) continue;
    ++checked;
    if (in.h.local_conductance(c) == evaluate_exact(in.g, c, total).conductance) ++matched;
  }
  const double t = since(t0);
  Outcome o;
  o.verdict = checked == 100 && matched == 100 && t < 10.0 ? Verdict::pass : Verdict::fail;
  o.detail = std::to_string(matched) + "/" + std::to_string(checked) +
             " clusters agree exactly between model and graph in " + fmt_seconds(t) + " (limit 10 s)";
  return o;
}

// --- 4 and 6 share instances ---------------------------------------------

struct LoopInstances {
  std::vector<Instance> instances;
  std::vector<LoopRun> clique_runs;
};

const LoopInstances& loop_instances() {
  static const LoopInstances cache = [] {
    LoopInstances out;
    std::mt19937_64 rng(1004);
    while (out.instances.size() < 100) {
      Instance in;
      if (!make_instance(rng, in)) continue;
      LoopRun run = run_loop(in, ExpansionKind::clique);
      if (run.clusters.back().size() > 16) continue;
      out.instances.push_back(std::move(in));
      out.clique_runs.push_back(std::move(run));
    }
    return out;
  }();
  return cache;
}

Outcome criterion_local_optimality() {
  const auto t0 = Clock::now();
  const LoopInstances& li = loop_instances();
  int violations = 0;
  std::size_t improvements = 0, subsets = 0;
  for (std::size_t i = 0; i < li.instances.size(); ++i) {
    const Instance& in = li.instances[i];
    const LoopRun& run = li.clique_runs[i];
    // every returned C: seed in C, strict subset of C0, strictly smaller conductance
    for (std::size_t k = 1; k < run.clusters.size(); ++k) {
      const auto& prev = run.clusters[k - 1];
      const auto& cur = run.clusters[k];
      ++improvements;
      const bool has_seed = std::find(cur.begin(), cur.end(), in.local_seed) != cur.end();
      const bool subset = std::all_of(cur.begin(), cur.end(), [&](LocalId v) {
        return std::find(prev.begin(), prev.end(), v) != prev.end();
      });
      if (!has_seed || !subset || cur.size() >= prev.size() || !(run.conductances[k] < run.conductances[k - 1])) {
        ++violations;
      }
    }
    // no strict subset of the final cluster beats it
    const Ratio final_phi = run.conductances.back();
    testing::for_each_subset_with_seed(run.clusters.back(), in.local_seed,
                                       [&](const std::vector<LocalId>& c, bool full) {
                                         if (full || in.h.weighted_volume(c) == 0) return;
                                         ++subsets;
                                         if (in.h.local_conductance(c) < final_phi) ++violations;
                                       });
    TraceSample trace{"criterion 4 instance " + std::to_string(i), {}, run.conductances};
    for (const auto& c : run.clusters) trace.sizes.push_back(c.size());
    g_traces_core.push_back(std::move(trace));
  }
  const double t = since(t0);
  Outcome o;
  o.verdict = violations == 0 && li.instances.size() == 100 && improvements > 0 && t < 60.0 ? Verdict::pass
                                                                                             : Verdict::fail;
  o.detail = std::to_string(li.instances.size()) + " instances, " + std::to_string(improvements) +
             " improving steps, " + std::to_string(subsets) + " subsets enumerated, " +
             std::to_string(violations) + " violations in " + fmt_seconds(t) + " (limit 60 s)";
  return o;
}

Outcome criterion_expansion_agreement() {
  const LoopInstances& li = loop_instances();
  int decision_mismatch = 0, final_mismatch = 0;
  std::size_t decisions = 0;
  for (std::size_t i = 0; i < li.instances.size(); ++i) {
    const Instance& in = li.instances[i];
    const LoopRun& clique = li.clique_runs[i];
    for (const auto& c : clique.clusters) {
      const bool base = improve_once(in.h, c, in.local_seed, ExpansionKind::clique).has_value();
      for (auto kind : {ExpansionKind::star, ExpansionKind::lawler}) {
        ++decisions;
        if (improve_once(in.h, c, in.local_seed, kind).has_value() != base) ++decision_mismatch;
      }
    }
    for (auto kind : {ExpansionKind::star, ExpansionKind::lawler}) {
      if (run_loop(in, kind).conductances.back() != clique.conductances.back()) ++final_mismatch;
    }
  }
  Outcome o;
  o.verdict = decision_mismatch == 0 && final_mismatch == 0 ? Verdict::pass : Verdict::fail;
  o.detail = std::to_string(decisions) + " star/lawler decisions compared with clique, " +
             std::to_string(decision_mismatch) + " differ; " + std::to_string(final_mismatch) +
             " final conductance mismatches";
  return o;
}

// --- 5 -------------------------------------------------------------------

Outcome criterion_cut_accounting() {
  const auto t0 = Clock::now();
  std::mt19937_64 rng(1005);
  int models = 0, mismatches = 0;
  std::size_t cuts = 0, optimal_checks = 0;
  while (models < 60) {
    Instance in;
    if (!make_instance(rng, in)) continue;
    std::vector<LocalId> c0{in.local_seed};
    for (LocalId v : in.c0) {
      if (c0.size() < 8 && v != in.local_seed) c0.push_back(v);
    }
    if (in.h.weighted_volume(c0) == 0 || in.h.cut_net(c0) == 0) continue;
    ++models;
    const Weight cut0 = in.h.cut_net(c0);
    const Weight vol0 = in.h.weighted_volume(c0);
    for (auto kind : {ExpansionKind::clique, ExpansionKind::star, ExpansionKind::lawler}) {
      const FlowNetwork net = build_flow_model(in.h, c0, in.local_seed, kind);
      std::vector<FlowNode> aux;
      for (FlowNode v = 0; v < net.node_count; ++v) {
        const auto role = net.origins[v].role;
        if (role != FlowNodeRole::source && role != FlowNodeRole::sink && role != FlowNodeRole::cluster) {
          aux.push_back(v);
        }
      }
      testing::for_each_subset_with_seed(c0, in.local_seed, [&](const std::vector<LocalId>& c, bool) {
        std::vector<char> in_c(in.h.local_count(), 0);
        for (LocalId v : c) in_c[v] = 1;
        Weight vol_rest = 0;
        for (LocalId v : c0) {
          if (!in_c[v]) vol_rest += in.h.weighted_degree(v);
        }
        const Capacity expected = net.scale * static_cast<Capacity>(cut0 * vol_rest + in.h.cut_net(c) * vol0);
        auto side = testing::canonical_sink_side(net, in.h, in_c);
        ++cuts;
        if (testing::cut_weight(net, side) != expected) ++mismatches;
        // The placement rule is the cheapest one for this C.
        if (aux.size() <= 10) {
          ++optimal_checks;
          for (std::uint32_t mask = 0; mask < (1u << aux.size()); ++mask) {
            for (std::size_t j = 0; j < aux.size(); ++j) side[aux[j]] = (mask >> j) & 1;
            if (testing::cut_weight(net, side) < expected) {
              ++mismatches;
              break;
            }
          }
        }
      });
    }
  }
  const double t = since(t0);
  Outcome o;
  o.verdict = mismatches == 0 && t < 30.0 ? Verdict::pass : Verdict::fail;
  o.detail = std::to_string(models) + " models x 3 expansions, " + std::to_string(cuts) + " cuts (" +
             std::to_string(optimal_checks) + " also checked against all auxiliary placements), " +
             std::to_string(mismatches) + " mismatches in " + fmt_seconds(t) + " (limit 30 s)";
  return o;
}

// --- 7 and 8: real data --------------------------------------------------

struct Dataset {
  std::string name;
  std::uint64_t triangles;
  double max_mean_conductance;
};

const std::vector<Dataset> kDatasets{{"com-amazon", 667129, 0.15}, {"com-dblp", 2224385, 0.30}};

std::filesystem::path dataset_path(const std::filesystem::path& dir, const Dataset& d) {
  return dir / (d.name + ".ungraph.txt");
}

bool have_data(const std::filesystem::path& dir) {
  return std::all_of(kDatasets.begin(), kDatasets.end(),
                     [&](const Dataset& d) { return std::filesystem::exists(dataset_path(dir, d)); });
}

Graph load(const std::filesystem::path& p) {
  std::ifstream in(p);
  if (!in) throw std::runtime_error("cannot open " + p.string());
  return load_edge_list(in);
}

Outcome criterion_triangle_counts(const std::filesystem::path& dir) {
  Outcome o;
  if (!have_data(dir)) {
    o.verdict = Verdict::skip;
    o.detail = "SNAP files not found in " + dir.string();
    return o;
  }
  bool ok = true;
  for (const auto& d : kDatasets) {
    const auto t0 = Clock::now();
    const Graph g = load(dataset_path(dir, d));
    const std::uint64_t count = count_triangles_global(g);
    const double t = since(t0);
    ok = ok && count == d.triangles && t < 600.0;
    o.detail += d.name + " " + std::to_string(count) + " (expected " + std::to_string(d.triangles) + ", " +
                fmt_seconds(t) + ", limit 600 s); ";
  }
  o.verdict = ok ? Verdict::pass : Verdict::fail;
  return o;
}

Outcome criterion_clustering_quality(const std::filesystem::path& dir) {
  Outcome o;
  o.soft = true;
  if (!have_data(dir)) {
    o.verdict = Verdict::skip;
    o.detail = "SNAP files not found in " + dir.string();
    return o;
  }
  g_quality_ran = true;
  bool ok = true;
  std::ostringstream detail, distribution;
  for (const auto& d : kDatasets) {
    const Graph g = load(dataset_path(dir, d));
    ClusteringParams params;
    params.total_triangles = count_triangles_global(g);
    const auto seeds = sample_seeds(g, 50, 1);
    std::vector<double> phis, times;
    std::size_t no_motif = 0, assumption_violations = 0;
    distribution << "  " << d.name << " per seed (original id, status, |C|, conductance, time s):\n";
    for (NodeId seed : seeds) {
      const ClusteringResult r = local_cluster(g, seed, params);
      times.push_back(std::max(r.timings.total_s, 1e-9));
      for (std::size_t k = 0; k < r.repetitions.size(); ++k) {
        const auto& rep = r.repetitions[k];
        if (rep.assumption_b && !*rep.assumption_b) ++assumption_violations;
        TraceSample trace{d.name + " seed " + std::to_string(g.original_id(seed)) + " repetition " +
                              std::to_string(k),
                          {},
                          {}};
        for (const auto& step : rep.steps) {
          trace.sizes.push_back(step.cluster.size());
          trace.conductances.push_back(step.local_conductance);
        }
        g_traces_quality.push_back(std::move(trace));
      }
      double phi = 0;
      if (r.status == ClusterStatus::no_motifs) {
        ++no_motif;
      } else {
        phi = r.exact_conductance ? r.exact_conductance->to_double() : r.local_conductance.to_double();
        phis.push_back(phi);
      }
      distribution << "    " << g.original_id(seed) << " " << to_string(r.status) << " " << r.best_cluster.size()
                   << " " << phi << " " << r.timings.total_s << "\n";
    }
    const double mean_phi = arithmetic_mean(phis);
    const double gm_time = geometric_mean(times);
    const bool this_ok = mean_phi <= d.max_mean_conductance && gm_time <= 1.0;
    ok = ok && this_ok;
    detail << d.name << " mean conductance " << mean_phi << " (limit " << d.max_mean_conductance
           << "), geometric-mean time " << gm_time << " s (limit 1 s), " << no_motif << " no-motif seeds, "
           << assumption_violations << " balls violating the volume assumption; ";
  }
  o.verdict = ok ? Verdict::pass : Verdict::fail;
  o.detail = detail.str() + "\n" + distribution.str();
  return o;
}

// --- 9 -------------------------------------------------------------------

std::size_t count_trace_violations(const std::vector<TraceSample>& traces, std::string& first_bad) {
  std::size_t bad = 0;
  for (const auto& tr : traces) {
    for (std::size_t i = 1; i < tr.sizes.size(); ++i) {
      if (!(tr.sizes[i] < tr.sizes[i - 1]) || !(tr.conductances[i] < tr.conductances[i - 1])) {
        if (bad++ == 0) first_bad = tr.origin;
        break;
      }
    }
  }
  return bad;
}

Outcome criterion_monotone_traces(bool criterion4_selected) {
  if (!criterion4_selected) criterion_local_optimality();  // populates the traces
  std::string first_bad;
  std::size_t bad = count_trace_violations(g_traces_core, first_bad);
  std::size_t total = g_traces_core.size();
  std::string scope = "criterion 4 runs";
  if (g_quality_ran) {
    bad += count_trace_violations(g_traces_quality, first_bad);
    total += g_traces_quality.size();
    scope += " and criterion 8 runs";
  } else {
    scope += " (criterion 8 runs not available)";
  }
  Outcome o;
  o.verdict = bad == 0 && total > 0 ? Verdict::pass : Verdict::fail;
  o.detail = std::to_string(total) + " traces from " + scope + ", " + std::to_string(bad) + " not strictly decreasing" +
             (bad ? " (first: " + first_bad + ")" : "");
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Acceptance criteria for the local motif clustering library"};
  std::string only;
  std::string data_dir = SOCIAL_DEFAULT_DATA_DIR;
  bool strict = false;
  app.add_option("--only", only, "Comma-separated criterion numbers (default: all)");
  app.add_option("--data-dir", data_dir, "Directory holding the SNAP edge lists")->envname("SOCIAL_DATA_DIR");
  app.add_flag("--strict", strict, "Treat a soft-gate failure as a failure");
  CLI11_PARSE(app, argc, argv);

  std::set<int> selected;
  if (only.empty()) {
    for (int i = 1; i <= 9; ++i) selected.insert(i);
  } else {
    std::stringstream ss(only);
    std::string tok;
    while (std::getline(ss, tok, ',')) selected.insert(std::stoi(tok));
  }

  const std::vector<std::pair<int, std::string>> names{
      {1, "max-flow oracle equivalence"},
      {2, "triangle enumeration oracle"},
      {3, "model conductance equals graph conductance"},
      {4, "flow improvement local optimality"},
      {5, "cut accounting identity"},
      {6, "expansion agreement"},
      {7, "global triangle counts"},
      {8, "desk-scale clustering quality and time (soft gate)"},
      {9, "monotone cluster traces"},
  };

  int failed = 0, skipped = 0;
  for (const auto& [id, name] : names) {
    if (!selected.contains(id)) continue;
    Outcome o;
    try {
      switch (id) {
        case 1: o = criterion_max_flow(); break;
        case 2: o = criterion_triangles(); break;
        case 3: o = criterion_model_equivalence(); break;
        case 4: o = criterion_local_optimality(); break;
        case 5: o = criterion_cut_accounting(); break;
        case 6: o = criterion_expansion_agreement(); break;
        case 7: o = criterion_triangle_counts(data_dir); break;
        case 8: o = criterion_clustering_quality(data_dir); break;
        case 9: o = criterion_monotone_traces(selected.contains(4)); break;
      }
    } catch (const std::exception& e) {
      o.verdict = Verdict::fail;
      o.detail = std::string("exception: ") + e.what();
    }
    const char* tag = o.verdict == Verdict::pass ? "PASS" : o.verdict == Verdict::skip ? "SKIP" : "FAIL";
    std::cout << tag << " [" << id << "] " << name << ": " << o.detail << std::endl;
    if (o.verdict == Verdict::skip) {
      ++skipped;
      continue;
    }
    if (o.verdict == Verdict::fail && (!o.soft || strict)) ++failed;
  }
  if (failed > 0) return 1;
  return skipped > 0 ? 77 : 0;
}
