#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string_view>
#include <vector>

#include "social/ball.hpp"
#include "social/evaluator.hpp"
#include "social/flow_network.hpp"
#include "social/graph.hpp"
#include "social/hypergraph_model.hpp"
#include "social/max_flow.hpp"
#include "social/motif.hpp"
#include "social/types.hpp"

namespace social {

/// Outcome of one flow-based improvement attempt on C0.
struct ImproveStep {
  Capacity flow_value = 0;
  Capacity trivial_cut_weight = 0;
  std::optional<std::vector<LocalId>> improved;  // strict subset of C0 with the seed
};

inline ImproveStep improve_step(const HypergraphModel& h, std::span<const LocalId> c0, LocalId seed,
                                ExpansionKind kind) {
  ImproveStep step;
  if (h.weighted_volume(c0) == 0) throw UndefinedConductance("C0 has zero weighted volume");
  if (h.cut_net(c0) == 0) return step;  // already conductance 0

  const FlowNetwork net = build_flow_model(h, c0, seed, kind);
  const MaxFlowResult flow = max_flow(net);
  step.flow_value = flow.value;
  step.trivial_cut_weight = net.trivial_cut_weight;
  if (flow.value >= net.trivial_cut_weight) return step;

  const NodeSet sink_side = min_cut_sink_side(net, flow.state);
  std::vector<LocalId> c;
  for (std::size_t i = 0; i < c0.size(); ++i) {
    if (sink_side.contains(net.cluster_nodes[i])) c.push_back(c0[i]);
  }
  step.improved = std::move(c);
  return step;
}

/// A strict subset of C0 containing the seed with strictly smaller local
/// conductance, or nothing if C0 is optimal among its subsets.
inline std::optional<std::vector<LocalId>> improve_once(const HypergraphModel& h, std::span<const LocalId> c0,
                                                        LocalId seed, ExpansionKind kind) {
  return improve_step(h, c0, seed, kind).improved;
}

struct TraceStep {
  std::vector<NodeId> cluster;  // graph ids
  Ratio local_conductance;
  Capacity flow_value = 0;
};

struct RepetitionTrace {
  std::size_t layers = 0;
  std::size_t depth_used = 0;
  std::size_t ball_size = 0;
  bool whole_component = false;
  std::size_t motif_count = 0;
  std::optional<bool> assumption_b;  // set only when a global triangle count was supplied
  std::vector<TraceStep> steps;
};

enum class ClusterStatus { ok, whole_component_zero, no_motifs };

inline std::string_view to_string(ClusterStatus status) {
  switch (status) {
    case ClusterStatus::ok: return "ok";
    case ClusterStatus::whole_component_zero: return "whole-component-zero";
    case ClusterStatus::no_motifs: return "no-motifs";
  }
  return "unknown";
}

struct PhaseTimings {
  double ball_s = 0;
  double enumeration_s = 0;
  double model_s = 0;
  double flow_s = 0;
  double total_s = 0;
};

struct ClusteringResult {
  ClusterStatus status = ClusterStatus::no_motifs;
  std::vector<NodeId> best_cluster;  // graph ids
  std::vector<std::uint64_t> best_cluster_original;
  Ratio local_conductance;
  std::optional<Ratio> exact_conductance;
  std::optional<std::size_t> best_repetition;
  PhaseTimings timings;
  std::vector<RepetitionTrace> repetitions;
};

struct ClusteringParams {
  std::vector<std::size_t> layers{1, 2, 3};  // one entry per repetition
  ExpansionKind kind = ExpansionKind::clique;
  std::size_t min_ball = kDefaultMinBallSize;
  std::optional<std::uint64_t> total_triangles;
  bool prune_zero_degree = true;

  std::size_t alpha() const noexcept { return layers.size(); }
};

/// Runs the whole local clustering procedure for one seed: for every
/// repetition, grow a ball, enumerate its triangles, build the hypergraph
/// model and shrink C = S with flow-based improvements until none exists. The
/// best cluster across repetitions (earliest on ties) is returned.
inline ClusteringResult local_cluster(const Graph& g, NodeId seed, const ClusteringParams& params) {
  using Clock = std::chrono::steady_clock;
  const auto seconds = [](Clock::time_point a, Clock::time_point b) {
    return std::chrono::duration<double>(b - a).count();
  };
  if (seed >= g.node_count()) throw std::out_of_range("seed out of range");
  if (params.layers.empty()) throw std::invalid_argument("at least one repetition is required");

  ClusteringResult result;
  const auto start = Clock::now();
  const auto adopt = [&](std::vector<NodeId> cluster, Ratio conductance, std::size_t rep) {
    result.best_cluster = std::move(cluster);
    result.local_conductance = conductance;
    result.best_repetition = rep;
  };

  for (std::size_t rep = 0; rep < params.alpha(); ++rep) {
    const bool last = rep + 1 == params.alpha();
    auto t0 = Clock::now();
    const Ball ball = bfs_ball(g, seed, params.layers[rep], last, params.min_ball);
    auto t1 = Clock::now();
    const MotifSet motifs = enumerate_triangles_touching(g, ball.nodes);
    auto t2 = Clock::now();
    const HypergraphModel h = HypergraphModel::build(ball.nodes, motifs);
    auto t3 = Clock::now();
    result.timings.ball_s += seconds(t0, t1);
    result.timings.enumeration_s += seconds(t1, t2);
    result.timings.model_s += seconds(t2, t3);

    RepetitionTrace& trace = result.repetitions.emplace_back();
    trace.layers = params.layers[rep];
    trace.depth_used = ball.depth_used;
    trace.ball_size = ball.nodes.size();
    trace.whole_component = ball.whole_component;
    trace.motif_count = motifs.size();
    if (params.total_triangles) {
      trace.assumption_b = assumption_b_holds(h.total_weighted_volume(), *params.total_triangles);
    }
    if (motifs.empty()) continue;

    if (ball.whole_component) {
      std::vector<NodeId> all(ball.nodes.begin(), ball.nodes.end());
      trace.steps.push_back({all, Ratio{0, h.total_weighted_volume()}, 0});
      adopt(std::move(all), Ratio{0, h.total_weighted_volume()}, rep);
      result.status = ClusterStatus::whole_component_zero;
      break;
    }

    // Zero-degree nodes change neither cut nor volume.
    const LocalId local_seed = *h.local_id(seed);
    std::vector<LocalId> c;
    for (LocalId v = 0; v < h.local_count(); ++v) {
      if (!params.prune_zero_degree || v == local_seed || h.weighted_degree(v) > 0) c.push_back(v);
    }

    const auto to_graph = [&](std::span<const LocalId> local) {
      std::vector<NodeId> out;
      out.reserve(local.size());
      for (LocalId v : local) out.push_back(h.graph_node(v));
      return out;
    };

    auto tf = Clock::now();
    while (true) {
      const Ratio phi = h.local_conductance(c);
      ImproveStep step = improve_step(h, c, local_seed, params.kind);
      trace.steps.push_back({to_graph(c), phi, step.flow_value});
      if (!step.improved) break;
      c = std::move(*step.improved);
    }
    result.timings.flow_s += seconds(tf, Clock::now());

    const Ratio phi = trace.steps.back().local_conductance;
    if (!result.best_repetition || phi < result.local_conductance) {
      adopt(trace.steps.back().cluster, phi, rep);
      result.status = ClusterStatus::ok;
    }
  }

  result.timings.total_s = seconds(start, Clock::now());
  if (result.best_repetition) {
    result.best_cluster_original.reserve(result.best_cluster.size());
    for (NodeId v : result.best_cluster) result.best_cluster_original.push_back(g.original_id(v));
    if (params.total_triangles) {
      try {
        result.exact_conductance = evaluate_exact(g, NodeSet(result.best_cluster), *params.total_triangles).conductance;
      } catch (const UndefinedConductance&) {
        // cluster holds every motif of its side; leave unset
      }
    }
  } else {
    result.status = ClusterStatus::no_motifs;
  }
  return result;
}

}  // namespace social
