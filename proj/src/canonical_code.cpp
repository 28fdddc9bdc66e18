#include "ugrowth/canonical_code.hpp"

#include <algorithm>
#include <cstdlib>

#include "ugrowth/error.hpp"

namespace ugrowth::code {

VertexLabeling VertexLabeling::initial(int n) {
  VertexLabeling l;
  l.labels.resize(static_cast<std::size_t>(n));
  for (int v = 0; v < n; ++v) l.labels[static_cast<std::size_t>(v)] = v + 1;
  l.max_label = n;
  return l;
}

VertexLabeling VertexLabeling::from_permutation(std::vector<std::int64_t> labels) {
  auto sorted = labels;
  std::sort(sorted.begin(), sorted.end());
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    if (sorted[i] != static_cast<std::int64_t>(i) + 1) {
      fail(ErrorCategory::invalid_argument, "initial labeling must be a permutation of 1..n");
    }
  }
  VertexLabeling l;
  l.max_label = static_cast<std::int64_t>(labels.size());
  l.labels = std::move(labels);
  return l;
}

int VertexLabeling::vertex_with(std::int64_t label) const {
  const auto it = std::find(labels.begin(), labels.end(), label);
  return it == labels.end() ? -1 : static_cast<int>(it - labels.begin());
}

void VertexLabeling::relabel_neighbors(const raag::ComplementGraph& cbar, int vertex) {
  const auto& nb = cbar.neighbors(vertex);
  const auto base = max_label;
  for (std::size_t k = 0; k < nb.size(); ++k) {
    labels[static_cast<std::size_t>(nb[k])] = base + static_cast<std::int64_t>(k) + 1;
  }
  max_label = base + static_cast<std::int64_t>(nb.size());
}

namespace {

template <class Commutes>
bool ready_at(const raag::Word& w, std::size_t k, std::size_t i, Commutes&& commutes) {
  if (i > k || k >= w.size()) fail(ErrorCategory::invalid_argument, "readiness positions out of range");
  for (std::size_t j = i; j < k; ++j) {
    if (!commutes(w[k].vertex, w[j].vertex)) return false;
  }
  return true;
}

}  // namespace

bool is_ready(const raag::Word& w, std::size_t k, std::size_t i, const raag::ComplementGraph& cbar) {
  return ready_at(w, k, i, [&](int a, int b) { return cbar.commutes(a, b); });
}

bool is_ready(const raag::Word& w, std::size_t k, std::size_t i, const raag::DefiningGraph& theta) {
  return ready_at(w, k, i, [&](int a, int b) { return theta.commutes(a, b); });
}

CanonicalResult canonical_representative(const raag::Word& w0, const raag::ComplementGraph& cbar,
                                         const VertexLabeling& l0) {
  if (static_cast<int>(l0.labels.size()) != cbar.size()) {
    fail(ErrorCategory::invalid_argument, "labeling size does not match the complement graph");
  }
  CanonicalResult result;
  result.final_labeling = l0;
  result.code.n = cbar.size();
  result.code.c0 = cbar.max_degree();
  result.code.radius = static_cast<int>(w0.size());
  auto& labeling = result.final_labeling;

  raag::Word remaining = w0;
  while (!remaining.empty()) {
    std::size_t best = 0;
    for (std::size_t k = 1; k < remaining.size(); ++k) {
      const auto label = labeling.labels[static_cast<std::size_t>(remaining[k].vertex)];
      if (label >= labeling.labels[static_cast<std::size_t>(remaining[best].vertex)]) continue;
      if (is_ready(remaining, k, 0, cbar)) best = k;
    }
    const auto chosen = remaining[best];
    remaining.erase(remaining.begin() + static_cast<std::ptrdiff_t>(best));
    result.word.push_back(chosen);
    result.code.entries.push_back(chosen.sign * labeling.labels[static_cast<std::size_t>(chosen.vertex)]);
    labeling.relabel_neighbors(cbar, chosen.vertex);
  }
  return result;
}

Code pad(const Code& code, int radius) {
  if (static_cast<int>(code.entries.size()) > radius) {
    fail(ErrorCategory::invalid_argument, "cannot pad a code beyond its target length");
  }
  Code out = code;
  out.radius = radius;
  out.entries.resize(static_cast<std::size_t>(radius), out.sentinel());
  return out;
}

bool verify_code(const Code& code) {
  if (static_cast<int>(code.entries.size()) != code.radius) return false;
  std::int64_t previous = 0;
  bool padding = false;
  for (const auto entry : code.entries) {
    if (entry == code.sentinel()) {
      padding = true;
      continue;
    }
    if (padding || entry == 0) return false;
    const auto magnitude = std::abs(entry);
    if (magnitude < previous || magnitude > code.bound()) return false;
    previous = magnitude;
  }
  return true;
}

raag::Word decode(const Code& code, const raag::ComplementGraph& cbar, const VertexLabeling& l0) {
  VertexLabeling labeling = l0;
  raag::Word word;
  bool padding = false;
  for (const auto entry : code.entries) {
    if (entry == code.sentinel()) {
      padding = true;
      continue;
    }
    if (padding) fail(ErrorCategory::invalid_argument, "malformed code: entry after sentinel padding");
    const int vertex = entry == 0 ? -1 : labeling.vertex_with(std::abs(entry));
    if (vertex < 0) {
      fail(ErrorCategory::invalid_argument,
           "malformed code: no vertex carries label " + std::to_string(std::abs(entry)));
    }
    word.push_back({vertex, entry > 0 ? 1 : -1});
    labeling.relabel_neighbors(cbar, vertex);
  }
  return word;
}

}  // namespace ugrowth::code
