#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "ugrowth/labeled_graph.hpp"

namespace ugrowth::graph {

struct GraphBallOptions {
  std::size_t guard_elements = 2'000'000;
  unsigned threads = 1;
};

/// One equivalence class: its key, the first graph found for it, and the
/// split (applied to the parent's graph) that reached it.
struct GraphBallElement {
  std::string key;
  LabeledGraph graph;
  std::size_t parent = 0;
  Split split;
  int distance = 0;
};

struct GraphBall {
  std::vector<std::uint64_t> sizes;         // #B_0 .. #B_R
  std::vector<double> log_ratios;           // log(#B_r) / r, index 0 holds 0
  std::vector<double> bound_log_ratios;     // log(4^(5n-5+3r)) / r, index 0 holds 0
  std::vector<GraphBallElement> elements;   // breadth-first discovery order
  int rank = 0;

  /// The splits leading from the start to element i.
  std::vector<Split> path_to(std::size_t i) const;
};

/// Breadth-first search over every split, deduplicated by canonical_key.
/// Throws a resource error past the guard.
GraphBall enumerate_graph_ball(const LabeledGraph& start, int radius, const GraphBallOptions& options = {});

}  // namespace ugrowth::graph
