#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace ugrowth::raag {

/// A simple graph whose edges mark commuting generator pairs.
class DefiningGraph {
 public:
  DefiningGraph() = default;
  /// Throws on self-loops, duplicate edges or out-of-range endpoints.
  DefiningGraph(int n, std::vector<std::pair<int, int>> edges, std::vector<std::string> names = {});

  int size() const { return n_; }
  const std::vector<std::pair<int, int>>& edges() const { return edges_; }
  const std::vector<std::string>& names() const { return names_; }
  bool adjacent(int u, int v) const { return adjacency_[static_cast<std::size_t>(u * n_ + v)] != 0; }
  /// Generators commute iff equal or joined by an edge.
  bool commutes(int u, int v) const { return u == v || adjacent(u, v); }

  static DefiningGraph empty(int n);
  static DefiningGraph complete(int n);
  static DefiningGraph path(int n);

 private:
  int n_ = 0;
  std::vector<std::pair<int, int>> edges_;  // normalized u < v, sorted
  std::vector<std::string> names_;
  std::vector<std::uint8_t> adjacency_;
};

/// The complement of a defining graph, with an ordered list of half-edges at
/// each vertex (half-edge k leads to neighbors(v)[k]).
class ComplementGraph {
 public:
  int size() const { return static_cast<int>(neighbors_.size()); }
  const std::vector<int>& neighbors(int v) const { return neighbors_[static_cast<std::size_t>(v)]; }
  int max_degree() const { return c0_; }
  bool adjacent(int u, int v) const;
  bool commutes(int u, int v) const { return u == v || !adjacent(u, v); }
  std::size_t edge_count() const;

 private:
  friend ComplementGraph build_complement(const DefiningGraph&, std::optional<std::uint64_t>);
  std::vector<std::vector<int>> neighbors_;
  int c0_ = 0;
};

/// Complement with half-edges sorted by neighbor index, or shuffled
/// deterministically when a seed is supplied.
ComplementGraph build_complement(const DefiningGraph& theta,
                                 std::optional<std::uint64_t> half_edge_seed = std::nullopt);

struct Letter {
  int vertex = 0;
  int sign = 1;  // +1 generator, -1 inverse

  Letter inverse() const { return {vertex, -sign}; }
  friend auto operator<=>(const Letter&, const Letter&) = default;
};

using Word = std::vector<Letter>;

/// Word text: whitespace-separated generator names, trailing apostrophe for inverses.
Word parse_word(std::string_view text, const DefiningGraph& theta);
std::string format_word(const Word& w, const DefiningGraph& theta);

/// Unique representative of the group element: cancels every pair s ... s^-1
/// separated only by letters commuting with s, then takes the
/// lexicographically least reordering by (vertex, sign) reachable through
/// commutations.
Word normal_form(const Word& w, const DefiningGraph& theta);

/// log(2 c0 + 2) + 1, natural logarithm.
double growth_bound(int c0);

/// Defining graph whose edges are all pairs absent from `non_commuting`.
DefiningGraph commutation_graph_from_generators(const std::vector<std::pair<int, int>>& non_commuting,
                                                int count);

/// Generators s_0..s_{n-1} in a chain where s_i fails to commute only with
/// s_{i-1} and s_{i+1}. A parameterized stand-in for curve-twist generators.
DefiningGraph chain_commutation_graph(int n);

struct BallOptions {
  std::size_t guard_elements = 10'000'000;
  unsigned threads = 1;
};

/// One ball element: its normal form and the BFS geodesic that reached it.
struct BallElement {
  Word normal_form;
  Word geodesic;
};

struct BallReport {
  std::vector<std::uint64_t> sizes;    // #B_0 .. #B_R
  std::vector<double> log_ratios;      // log(#B_r) / r, r >= 1 (index 0 holds 0)
  double bound = 0.0;                  // log(2 c0 + 2) + 1
  int c0 = 0;
};

struct Ball {
  BallReport report;
  std::vector<BallElement> elements;  // sorted by BFS discovery order
};

/// Exact ball sizes by breadth-first search over right multiplication by
/// generators and their inverses; throws a resource error past the guard.
Ball enumerate_ball(const DefiningGraph& theta, int radius, const BallOptions& options = {});

}  // namespace ugrowth::raag
