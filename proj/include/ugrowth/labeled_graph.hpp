#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <span>
#include <tuple>
#include <vector>

#include <boost/container/small_vector.hpp>

#include "ugrowth/group.hpp"

namespace ugrowth::graph {

/// A half-edge: the edge it belongs to and which end (0 = init, 1 = term).
struct HalfEdge {
  int edge = -1;
  int end = 0;

  friend bool operator==(const HalfEdge&, const HalfEdge&) = default;
};

/// Where an edge end sits: vertex storage index and slot 0..2 (slot label 1..3).
struct Endpoint {
  int vertex = -1;
  int slot = 0;

  friend bool operator==(const Endpoint&, const Endpoint&) = default;
};

struct Vertex {
  std::int64_t label = 0;
  std::array<HalfEdge, 3> slots{};
};

struct Edge {
  std::int64_t label = 0;
  std::array<Endpoint, 2> ends{};  // ends[0] = init, ends[1] = term
  GroupElement g;

  bool is_loop() const { return ends[0].vertex == ends[1].vertex; }
};

using VertexList = boost::container::small_vector<Vertex, 12>;
using EdgeList = boost::container::small_vector<Edge, 16>;

enum class SplitKind : std::uint8_t { double_split, loop_split };

/// A split along the edge carrying `edge`. Double splits take configurations
/// 0..3, loop splits 0 (forward) or 1 (backward).
struct Split {
  std::int64_t edge = 0;
  SplitKind kind = SplitKind::double_split;
  int config = 0;

  friend bool operator==(const Split&, const Split&) = default;
};

/// A trivalent graph with oriented, group-labeled edges, integer labels on
/// vertices and edges, and labeled half-edge slots at every vertex.
///
/// Integer labels are never reused: each split takes fresh labels above the
/// largest ever issued.
class LabeledGraph {
 public:
  LabeledGraph() = default;
  /// Validates the records; throws on any inconsistency.
  LabeledGraph(CoefficientGroup group, std::span<const Vertex> vertices, std::span<const Edge> edges);

  /// Vertices labeled 1..vertex_count, edges 1..E in list order, slots filled
  /// in edge order (init end before term end).
  static LabeledGraph from_edges(const CoefficientGroup& group, int vertex_count,
                                 const std::vector<std::tuple<int, int, GroupElement>>& edges);

  const CoefficientGroup& group() const { return group_; }
  const VertexList& vertices() const { return vertices_; }
  const EdgeList& edges() const { return edges_; }
  const Vertex& vertex(int index) const { return vertices_[static_cast<std::size_t>(index)]; }
  const Edge& edge(int index) const { return edges_[static_cast<std::size_t>(index)]; }
  int rank() const { return static_cast<int>(edges_.size()) - static_cast<int>(vertices_.size()) + 1; }
  std::int64_t max_vertex_label() const { return max_vertex_label_; }
  std::int64_t max_edge_label() const { return max_edge_label_; }

  /// Storage index for a label, or -1.
  int vertex_index(std::int64_t label) const;
  int edge_index(std::int64_t label) const;
  /// Throws invalid_argument when absent.
  int require_edge(std::int64_t label) const;

  /// Replaces an edge's group label (same group required).
  void set_label(std::int64_t edge_label, GroupElement g);
  /// Reverses an edge and inverts its label.
  void reverse(std::int64_t edge_label);
  /// Renames integer labels through the given maps (unlisted labels kept).
  LabeledGraph relabeled(const std::map<std::int64_t, std::int64_t>& vertex_map,
                         const std::map<std::int64_t, std::int64_t>& edge_map) const;

  friend LabeledGraph double_split(const LabeledGraph&, std::int64_t, int);
  friend LabeledGraph loop_split(const LabeledGraph&, std::int64_t, int);

 private:
  void check() const;

  CoefficientGroup group_;
  VertexList vertices_;
  EdgeList edges_;
  std::int64_t max_vertex_label_ = 0;
  std::int64_t max_edge_label_ = 0;
};

/// Moves one non-e half-edge at init(e) to term(e) and one at term(e) to
/// init(e). config = 2*i + j where i (j) picks which of the two other slots at
/// init(e) (term(e)) moves, in slot order. The created vertices take the next
/// two vertex labels (init side first), the support the next edge label; their
/// slots are 1 = moved-in half-edge, 2 = the half-edge that stayed, 3 = support.
LabeledGraph double_split(const LabeledGraph& g, std::int64_t edge_label, int config);

/// Multiplies the label of the stem edge at a loop by the loop label
/// (config 0 forward, 1 backward). The vertex and the loop take fresh labels;
/// slots are kept.
LabeledGraph loop_split(const LabeledGraph& g, std::int64_t edge_label, int config);

/// Dispatches on the kind, checking it against the edge type.
LabeledGraph apply_split(const LabeledGraph& g, const Split& s);

/// Every split of g: four per non-loop edge, two per loop, by edge label.
std::vector<Split> all_splits(const LabeledGraph& g);

/// Picks, per edge, the orientation whose label serializes smaller than its
/// inverse; on a tie the end at the smaller (vertex label, slot) is the init.
LabeledGraph normalize_orientation(const LabeledGraph& g);

/// Same integer labels, slots, orientations and group labels.
bool identical(const LabeledGraph& a, const LabeledGraph& b);

/// Spanning tree by BFS from the smallest vertex label; for every non-tree
/// edge (ascending label) the label product around its fundamental cycle,
/// read from init to term along the edge and back through the tree.
std::vector<GroupElement> fundamental_cycle_products(const LabeledGraph& g);

/// The theta graph: two vertices joined by three edges with the given labels.
LabeledGraph theta_graph(const CoefficientGroup& group, const std::array<GroupElement, 3>& labels);
/// Two loops joined by a bar: edges loop(1), bar, loop(2).
LabeledGraph dumbbell_graph(const CoefficientGroup& group, const std::array<GroupElement, 3>& labels);

}  // namespace ugrowth::graph
