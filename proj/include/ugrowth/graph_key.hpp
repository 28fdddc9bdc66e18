#pragma once

#include <string>
#include <vector>

#include "ugrowth/labeled_graph.hpp"

namespace ugrowth::graph {

/// Byte string equal for two graphs iff they are isomorphic as group-labeled
/// graphs, allowing any edge to be reversed with its label inverted. Integer
/// labels and slot labels are ignored.
///
/// Minimizes the adjacency rows over all connected vertex orderings, pruning
/// a branch as soon as its rows exceed the best found so far.
std::string canonical_key(const LabeledGraph& g);

/// All connected trivalent graphs of rank 2 or 3 up to isomorphism, every
/// edge labeled by the identity, ordered by key.
std::vector<LabeledGraph> trivalent_graphs(int rank, const CoefficientGroup& group);

}  // namespace ugrowth::graph
