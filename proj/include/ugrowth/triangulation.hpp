#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "ugrowth/group.hpp"
#include "ugrowth/labeled_graph.hpp"

namespace ugrowth::tri {

/// Side s of a triangle runs from corner s to corner s+1, counterclockwise.
struct SideRef {
  int triangle = 0;
  int side = 0;

  friend bool operator==(const SideRef&, const SideRef&) = default;
};

/// Triangles glued in pairs of sides, each pair with opposite directions.
/// Primal vertices are numbered by their least corner 3*triangle + corner.
struct Gluing {
  int triangles = 0;
  std::vector<std::pair<SideRef, SideRef>> pairs;
  int genus = 0;
  int punctures = 0;
  int n = 0;                            // vertex count
  std::vector<int> puncture_vertices;   // empty: vertices 0 .. punctures-1
};

struct SurfaceData {
  int genus = 0;
  int punctures = 0;
  int n = 0;

  friend bool operator==(const SurfaceData&, const SurfaceData&) = default;
};

/// One traversal of a dual edge, by label.
struct Step {
  std::int64_t edge = 0;
  bool forward = true;

  friend bool operator==(const Step&, const Step&) = default;
};
using Walk = std::vector<Step>;

/// Dual graph of a triangulation with labels in pi_1 of the punctured
/// surface (a free group of rank 2g+p-1), the counterclockwise order of the
/// three slots at each vertex, and the closed walks whose label products
/// must stay conjugate to their starting values.
class RibbonTriangulation {
 public:
  const graph::LabeledGraph& dual() const { return dual_; }
  const SurfaceData& surface() const { return surface_; }
  /// Whether slots 0,1,2 at the vertex with this storage index run counterclockwise.
  bool counterclockwise(int vertex) const { return ccw_[static_cast<std::size_t>(vertex)] != 0; }
  const std::vector<Walk>& reference_walks() const { return walks_; }
  const std::vector<GroupElement>& reference_values() const { return values_; }
  /// Sorted conjugacy class keys of the face boundary products.
  const std::vector<std::vector<int>>& face_classes() const { return face_classes_; }

  /// Slot order at a vertex read counterclockwise.
  std::array<int, 3> ccw_slots(int vertex) const;

  /// Copy with one edge label replaced.
  RibbonTriangulation with_label(std::int64_t edge, GroupElement g) const;
  /// Copy with one edge reversed and its label inverted.
  RibbonTriangulation reversed(std::int64_t edge) const;

  friend RibbonTriangulation build_labeled_dual(const Gluing& gluing);
  friend RibbonTriangulation flip(const RibbonTriangulation& t, std::int64_t edge);

 private:
  graph::LabeledGraph dual_;
  SurfaceData surface_;
  std::vector<char> ccw_;
  std::vector<Walk> walks_;
  std::vector<GroupElement> values_;
  std::vector<std::vector<int>> face_classes_;
};

/// Dual vertex t+1 for triangle t with slot s on side s; dual edge i+1 for
/// pairs[i], oriented from its first side. A spanning tree of the dual minus
/// the edges crossing a forest that joins every non-puncture vertex to a
/// puncture, grown breadth-first from triangle 0 in edge-label order, carries
/// the identity; the other edges of that subgraph are the free generators in
/// label order, and the crossing edges are solved from the trivial boundary
/// loops around the non-puncture vertices.
///
/// Throws invalid_argument for closed surfaces, unglued or repeated sides, a
/// disconnected gluing, or surface data disagreeing with the Euler characteristic.
RibbonTriangulation build_labeled_dual(const Gluing& gluing);

/// Label product along a walk.
GroupElement walk_product(const graph::LabeledGraph& g, const Walk& walk);

/// Boundary walks of the ribbon faces; one per triangulation vertex.
std::vector<Walk> face_walks(const RibbonTriangulation& t);

/// Reference walks conjugate to their values and face products in the
/// starting classes.
bool is_well_labeled(const RibbonTriangulation& t);

/// Non-loop dual edges in label order.
std::vector<std::int64_t> flippable_edges(const RibbonTriangulation& t);

/// The double split dual to flipping the diagonal crossed by `edge`.
graph::Split flip_split(const RibbonTriangulation& t, std::int64_t edge);

/// Flips the diagonal crossed by `edge`; throws invalid_argument on a loop.
RibbonTriangulation flip(const RibbonTriangulation& t, std::int64_t edge);

/// Carries a closed walk of the graph before a double split to a homotopic
/// walk of the graph after it.
Walk map_walk(const graph::LabeledGraph& before, const graph::LabeledGraph& after, const graph::Split& split,
              const Walk& walk);

/// Invariant under ribbon isomorphism and conjugation: sorted conjugacy
/// classes of all closed non-backtracking walks of length at most 6.
std::string flip_invariant(const RibbonTriangulation& t);

/// True when some orientation-preserving ribbon isomorphism carries the
/// based cycles of one dual to simultaneously conjugate cycles of the other.
/// Throws invalid_argument on differing surface data.
bool triangulations_equal(const RibbonTriangulation& a, const RibbonTriangulation& b);

struct FlipBallOptions {
  std::size_t guard_elements = 200'000;
  int graph_radius = -1;  // radius for the comparison graph ball; -1 means the flip radius
  std::size_t graph_guard_elements = 2'000'000;
};

struct FlipBallElement {
  RibbonTriangulation triangulation;
  std::size_t parent = 0;
  std::int64_t edge = 0;   // flipped dual edge, in the parent's labels
  int distance = 0;
  std::string dual_key;    // canonical_key of the dual
};

struct FlipBall {
  std::vector<std::uint64_t> sizes;           // #B_0(T) .. #B_R(T)
  std::vector<double> log_ratios;
  std::vector<double> bound_log_ratios;       // log(4^(5m-5+3r)) / r with m the dual rank
  std::vector<std::uint64_t> distinct_dual_keys;  // per radius
  std::vector<std::uint64_t> graph_sizes;     // #B_r of the dual, r <= graph radius
  bool keys_contained = true;                 // dual keys found in the graph ball
  bool well_labeled = true;                   // every element passed is_well_labeled
  std::vector<FlipBallElement> elements;
  int rank = 0;
};

/// Breadth-first search over flips, deduplicated by triangulations_equal
/// within flip_invariant buckets. Throws a resource error past either guard.
FlipBall enumerate_flip_ball(const RibbonTriangulation& start, int radius, const FlipBallOptions& options = {});

}  // namespace ugrowth::tri
