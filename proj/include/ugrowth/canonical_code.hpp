#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "ugrowth/raag.hpp"

namespace ugrowth::code {

/// Dynamic vertex labels on the complement graph. Injective at all times.
struct VertexLabeling {
  std::vector<std::int64_t> labels;  // labels[v]
  std::int64_t max_label = 0;

  /// L_0(v) = v + 1.
  static VertexLabeling initial(int n);
  /// Any permutation of 1..n.
  static VertexLabeling from_permutation(std::vector<std::int64_t> labels);

  /// Vertex currently carrying `label`, or -1.
  int vertex_with(std::int64_t label) const;
  /// Gives the k-th neighbor of `vertex` the label max_label + k (1-based k).
  void relabel_neighbors(const raag::ComplementGraph& cbar, int vertex);
};

/// Signed label sequence; entries equal to sentinel() pad a short code.
struct Code {
  std::vector<std::int64_t> entries;
  int n = 0;
  int c0 = 0;
  int radius = 0;  // R, the padded length

  /// C_R = n + c0 * R.
  std::int64_t bound() const { return static_cast<std::int64_t>(n) + static_cast<std::int64_t>(c0) * radius; }
  std::int64_t sentinel() const { return bound() + 1; }

  friend bool operator==(const Code&, const Code&) = default;
};

/// Letter at position k may move to position i (0-based, i <= k): it
/// commutes with every letter in positions i..k.
bool is_ready(const raag::Word& w, std::size_t k, std::size_t i, const raag::ComplementGraph& cbar);
bool is_ready(const raag::Word& w, std::size_t k, std::size_t i, const raag::DefiningGraph& theta);

struct CanonicalResult {
  raag::Word word;
  Code code;
  VertexLabeling final_labeling;
};

/// Reorders w0 by repeatedly promoting, among letters ready for the next
/// position, the one of least current label; emits the signed labels and
/// relabels the chosen vertex's complement neighbors after each step. Among
/// equal labels (repeated vertex) the leftmost ready letter wins.
CanonicalResult canonical_representative(const raag::Word& w0, const raag::ComplementGraph& cbar,
                                         const VertexLabeling& l0);

/// Pads a code to `radius` entries with the sentinel for that radius.
Code pad(const Code& code, int radius);

/// Monotone absolute values in [1, C_R], followed only by sentinels.
bool verify_code(const Code& code);

/// Replays the labeling dynamics to recover the canonical word; throws
/// ErrorCategory::invalid_argument on a label no vertex carries.
raag::Word decode(const Code& code, const raag::ComplementGraph& cbar, const VertexLabeling& l0);

}  // namespace ugrowth::code
