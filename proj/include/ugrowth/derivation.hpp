#pragma once

#include <cstddef>
#include <vector>

#include "ugrowth/labeled_graph.hpp"

namespace ugrowth::graph {

/// Splits applied in order to a starting graph. Each split names its support
/// by the edge label in the graph it is applied to.
struct Derivation {
  LabeledGraph start;
  std::vector<Split> splits;
};

/// The trajectory G_0 .. G_R; throws when a support is missing or of the wrong type.
std::vector<LabeledGraph> apply_derivation(const Derivation& d);

/// Whether s_k (1-based) is ready for G_i, 0 <= i < k: the preimage of its
/// support in G_i keeps both endpoints through s_{i+1} .. s_{k-1}.
bool is_split_ready(const Derivation& d, std::size_t i, std::size_t k);

/// Applies a then b and b then a (supports must be vertex-disjoint) and tests
/// the two results for equality once the labels each split created are matched up.
bool check_commute(const LabeledGraph& g, const Split& a, const Split& b);

/// Repeatedly promotes, among the remaining splits ready for the current
/// prefix graph, the one destroying the vertex of least label.
Derivation canonical_derivation(const Derivation& d);

/// phi[i-1] for vertex label i in 1..2n-2+2R and psi[j-1] for edge label j in
/// 1..3n-3+R.
struct EncodingPair {
  std::vector<int> phi;
  std::vector<int> psi;

  friend bool operator==(const EncodingPair&, const EncodingPair&) = default;
};

/// phi: slot label (1..3) of the destroying split's support at each destroyed
/// vertex, the smaller slot for a loop; psi: configuration of the split each
/// support edge carries. Throws on non-canonical input, r > R, or a start
/// graph not labeled 1..2n-2 and 1..3n-3.
EncodingPair encode_derivation(const Derivation& d, int radius);

/// Scans vertex labels upward for a match and applies the split psi names,
/// restarting after each; throws invalid_argument on a malformed pair.
Derivation decode_derivation(const EncodingPair& pair, const LabeledGraph& start, int radius);

}  // namespace ugrowth::graph
