#include "ugrowth/graph_ball.hpp"

#include <algorithm>
#include <cmath>
#include <span>
#include <unordered_set>

#include "ugrowth/error.hpp"
#include "ugrowth/graph_key.hpp"
#include "ugrowth/parallel.hpp"

namespace ugrowth::graph {

namespace {

struct Candidate {
  std::string key;
  LabeledGraph graph;
  std::size_t parent = 0;
  Split split;
};

}  // namespace

std::vector<Split> GraphBall::path_to(std::size_t i) const {
  std::vector<Split> path;
  while (i != 0) {
    path.push_back(elements[i].split);
    i = elements[i].parent;
  }
  std::reverse(path.begin(), path.end());
  return path;
}

GraphBall enumerate_graph_ball(const LabeledGraph& start, int radius, const GraphBallOptions& options) {
  if (radius < 0) fail(ErrorCategory::invalid_argument, "radius must be >= 0");
  GraphBall ball;
  ball.rank = start.rank();
  std::unordered_set<std::string> seen;
  ball.elements.push_back({canonical_key(start), start, 0, {}, 0});
  seen.insert(ball.elements[0].key);
  ball.sizes.push_back(1);
  ball.log_ratios.push_back(0.0);
  ball.bound_log_ratios.push_back(0.0);

  std::vector<std::size_t> frontier{0};
  for (int r = 1; r <= radius; ++r) {
    auto expanded = ordered_map(std::span<const std::size_t>(frontier), options.threads, [&](std::size_t index) {
      std::vector<Candidate> out;
      const auto& base = ball.elements[index].graph;
      for (const auto& s : all_splits(base)) {
        auto next = apply_split(base, s);
        auto key = canonical_key(next);
        out.push_back({std::move(key), std::move(next), index, s});
      }
      return out;
    });
    std::vector<std::size_t> next;
    for (auto& batch : expanded) {
      for (auto& cand : batch) {
        if (!seen.insert(cand.key).second) continue;
        if (ball.elements.size() >= options.guard_elements) {
          fail(ErrorCategory::resource,
               "graph ball exceeded the guard of " + std::to_string(options.guard_elements) + " elements");
        }
        next.push_back(ball.elements.size());
        ball.elements.push_back({std::move(cand.key), std::move(cand.graph), cand.parent, cand.split, r});
      }
    }
    frontier = std::move(next);
    ball.sizes.push_back(ball.elements.size());
    ball.log_ratios.push_back(std::log(static_cast<double>(ball.elements.size())) / r);
    ball.bound_log_ratios.push_back(static_cast<double>(5 * ball.rank - 5 + 3 * r) * std::log(4.0) / r);
  }
  return ball;
}

}  // namespace ugrowth::graph
