#include "ugrowth/derivation.hpp"

#include <algorithm>
#include <limits>
#include <string>

#include "ugrowth/error.hpp"

namespace ugrowth::graph {

namespace {

std::pair<std::int64_t, std::int64_t> endpoint_labels(const LabeledGraph& g, std::int64_t edge_label) {
  const auto& e = g.edge(g.require_edge(edge_label));
  return {g.vertex(e.ends[0].vertex).label, g.vertex(e.ends[1].vertex).label};
}

bool touches(const std::pair<std::int64_t, std::int64_t>& a, const std::pair<std::int64_t, std::int64_t>& b) {
  return a.first == b.first || a.first == b.second || a.second == b.first || a.second == b.second;
}

// Support of a split, either an edge of the starting graph or the edge created
// by an earlier split (index into the original list).
struct SupportRef {
  int created_by = -1;
  std::int64_t label = 0;
};

void check_start_labels(const LabeledGraph& g) {
  const auto nv = static_cast<std::int64_t>(g.vertices().size());
  const auto ne = static_cast<std::int64_t>(g.edges().size());
  for (const auto& v : g.vertices()) {
    if (v.label > nv) fail(ErrorCategory::invalid_argument, "start graph vertices must be labeled 1..V");
  }
  for (const auto& e : g.edges()) {
    if (e.label > ne) fail(ErrorCategory::invalid_argument, "start graph edges must be labeled 1..E");
  }
  if (g.max_vertex_label() != nv || g.max_edge_label() != ne) {
    fail(ErrorCategory::invalid_argument, "start graph has issued labels beyond its vertex or edge count");
  }
}

}  // namespace

std::vector<LabeledGraph> apply_derivation(const Derivation& d) {
  std::vector<LabeledGraph> out{d.start};
  out.reserve(d.splits.size() + 1);
  for (const auto& s : d.splits) out.push_back(apply_split(out.back(), s));
  return out;
}

bool is_split_ready(const Derivation& d, std::size_t i, std::size_t k) {
  if (k < 1 || k > d.splits.size() || i >= k) fail(ErrorCategory::invalid_argument, "readiness indices out of range");
  const auto trajectory = apply_derivation(d);
  // pull the support of s_k back to G_i
  std::int64_t label = d.splits[k - 1].edge;
  for (std::size_t j = k - 1; j > i; --j) {
    const auto& after = trajectory[j];
    const auto& before = trajectory[j - 1];
    if (label > before.max_edge_label() && label == after.max_edge_label()) label = d.splits[j - 1].edge;
  }
  const auto& gi = trajectory[i];
  if (gi.edge_index(label) < 0) return false;
  const auto ends = endpoint_labels(gi, label);
  for (std::size_t j = i + 1; j < k; ++j) {
    if (label == d.splits[j - 1].edge) return false;
    if (touches(ends, endpoint_labels(trajectory[j - 1], d.splits[j - 1].edge))) return false;
  }
  return true;
}

bool check_commute(const LabeledGraph& g, const Split& a, const Split& b) {
  if (a.edge == b.edge || touches(endpoint_labels(g, a.edge), endpoint_labels(g, b.edge))) {
    fail(ErrorCategory::invalid_argument, "check_commute needs vertex-disjoint supports");
  }
  const auto ab = apply_split(apply_split(g, a), b);
  const auto ba = apply_split(apply_split(g, b), a);
  const auto m = g.max_vertex_label();
  const auto n = g.max_edge_label();
  const std::int64_t ka = a.kind == SplitKind::loop_split ? 1 : 2;
  const std::int64_t kb = b.kind == SplitKind::loop_split ? 1 : 2;
  std::map<std::int64_t, std::int64_t> vmap;
  for (std::int64_t x = 1; x <= kb; ++x) vmap[m + x] = m + ka + x;
  for (std::int64_t x = 1; x <= ka; ++x) vmap[m + kb + x] = m + x;
  const std::map<std::int64_t, std::int64_t> emap{{n + 1, n + 2}, {n + 2, n + 1}};
  return identical(ab, ba.relabeled(vmap, emap));
}

Derivation canonical_derivation(const Derivation& d) {
  const auto count = d.splits.size();
  std::vector<SupportRef> refs(count);
  std::vector<std::int64_t> created(count, 0);  // edge label each applied split created
  std::vector<int> remaining(count);
  for (std::size_t k = 0; k < count; ++k) remaining[k] = static_cast<int>(k);

  // Simulation of the remaining splits in their current order: graph after
  // each step and the endpoints of each support just before it is applied.
  std::vector<LabeledGraph> trail;
  std::vector<std::pair<std::int64_t, std::int64_t>> support_ends;
  LabeledGraph current = d.start;
  const auto simulate = [&]() {
    std::vector<std::int64_t> trial_created = created;
    trail.clear();
    support_ends.clear();
    const LabeledGraph* g = &current;
    for (int idx : remaining) {
      const auto& ref = refs[static_cast<std::size_t>(idx)];
      const auto label = ref.created_by < 0 ? ref.label : trial_created[static_cast<std::size_t>(ref.created_by)];
      support_ends.push_back(endpoint_labels(*g, label));
      const auto& s = d.splits[static_cast<std::size_t>(idx)];
      trail.push_back(apply_split(*g, {label, s.kind, s.config}));
      g = &trail.back();
      trial_created[static_cast<std::size_t>(idx)] = g->max_edge_label();
    }
  };

  {
    std::map<std::int64_t, int> creator;
    trail.reserve(count);
    const LabeledGraph* g = &current;
    for (std::size_t k = 0; k < count; ++k) {
      const auto label = d.splits[k].edge;
      if (const auto it = creator.find(label); it != creator.end()) {
        refs[k] = {it->second, 0};
      } else {
        refs[k] = {-1, label};
      }
      support_ends.push_back(endpoint_labels(*g, label));
      trail.push_back(apply_split(*g, d.splits[k]));
      g = &trail.back();
      creator[g->max_edge_label()] = static_cast<int>(k);
    }
  }

  Derivation out{d.start, {}};
  out.splits.reserve(count);
  bool fresh = true;
  while (!remaining.empty()) {
    if (!fresh) {
      simulate();
      fresh = true;
    }
    std::size_t pick = 0;
    auto best = std::numeric_limits<std::int64_t>::max();
    for (std::size_t q = 0; q < remaining.size(); ++q) {
      const auto& ref = refs[static_cast<std::size_t>(remaining[q])];
      if (ref.created_by >= 0 && created[static_cast<std::size_t>(ref.created_by)] == 0) continue;
      const auto label = ref.created_by < 0 ? ref.label : created[static_cast<std::size_t>(ref.created_by)];
      const auto ends = endpoint_labels(current, label);
      bool ready = true;
      for (std::size_t p = 0; p < q && ready; ++p) ready = !touches(ends, support_ends[p]);
      if (!ready) continue;
      const auto low = std::min(ends.first, ends.second);
      if (low < best) {
        best = low;
        pick = q;
      }
    }
    const int idx = remaining[pick];
    const auto& ref = refs[static_cast<std::size_t>(idx)];
    const auto label = ref.created_by < 0 ? ref.label : created[static_cast<std::size_t>(ref.created_by)];
    const auto& s = d.splits[static_cast<std::size_t>(idx)];
    const Split applied{label, s.kind, s.config};
    if (pick == 0) {
      // the simulation already took this step; the rest of it stays valid
      current = std::move(trail.front());
      trail.erase(trail.begin());
      support_ends.erase(support_ends.begin());
    } else {
      current = apply_split(current, applied);
      fresh = false;
    }
    created[static_cast<std::size_t>(idx)] = current.max_edge_label();
    out.splits.push_back(applied);
    remaining.erase(remaining.begin() + static_cast<std::ptrdiff_t>(pick));
  }
  return out;
}

EncodingPair encode_derivation(const Derivation& d, int radius) {
  if (radius < 0 || d.splits.size() > static_cast<std::size_t>(radius)) {
    fail(ErrorCategory::invalid_argument, "derivation is longer than the budget");
  }
  check_start_labels(d.start);
  if (!(canonical_derivation(d).splits == d.splits)) {
    fail(ErrorCategory::invalid_argument, "derivation is not canonical");
  }
  const int n = d.start.rank();
  EncodingPair pair;
  pair.phi.assign(static_cast<std::size_t>(2 * n - 2 + 2 * radius), 0);
  pair.psi.assign(static_cast<std::size_t>(3 * n - 3 + radius), 0);
  LabeledGraph g = d.start;
  for (const auto& s : d.splits) {
    const auto& e = g.edge(g.require_edge(s.edge));
    const auto& u = g.vertex(e.ends[0].vertex);
    const auto& w = g.vertex(e.ends[1].vertex);
    if (e.is_loop()) {
      pair.phi[static_cast<std::size_t>(u.label - 1)] = std::min(e.ends[0].slot, e.ends[1].slot) + 1;
    } else {
      pair.phi[static_cast<std::size_t>(u.label - 1)] = e.ends[0].slot + 1;
      pair.phi[static_cast<std::size_t>(w.label - 1)] = e.ends[1].slot + 1;
    }
    pair.psi[static_cast<std::size_t>(s.edge - 1)] = s.config;
    g = apply_split(g, s);
  }
  return pair;
}

Derivation decode_derivation(const EncodingPair& pair, const LabeledGraph& start, int radius) {
  check_start_labels(start);
  const int n = start.rank();
  if (radius < 0 || pair.phi.size() != static_cast<std::size_t>(2 * n - 2 + 2 * radius) ||
      pair.psi.size() != static_cast<std::size_t>(3 * n - 3 + radius)) {
    fail(ErrorCategory::invalid_argument, "encoding pair has the wrong domain sizes");
  }
  for (int x : pair.phi) {
    if (x < 0 || x > 3) fail(ErrorCategory::invalid_argument, "malformed pair: phi value outside 0..3");
  }
  for (int x : pair.psi) {
    if (x < 0 || x > 3) fail(ErrorCategory::invalid_argument, "malformed pair: psi value outside 0..3");
  }
  std::vector<char> phi_used(pair.phi.size(), 0);
  std::vector<char> psi_used(pair.psi.size(), 0);
  const auto phi_at = [&](std::int64_t label) {
    return label >= 1 && label <= static_cast<std::int64_t>(pair.phi.size()) ? pair.phi[static_cast<std::size_t>(label - 1)]
                                                                              : 0;
  };

  Derivation out{start, {}};
  LabeledGraph g = start;
  while (true) {
    std::vector<std::pair<std::int64_t, int>> order;
    for (int i = 0; i < static_cast<int>(g.vertices().size()); ++i) order.emplace_back(g.vertex(i).label, i);
    std::sort(order.begin(), order.end());
    bool matched = false;
    for (const auto& [label, vi] : order) {
      const int slot_label = phi_at(label);
      if (slot_label == 0) continue;
      const auto h = g.vertex(vi).slots[static_cast<std::size_t>(slot_label - 1)];
      const auto& e = g.edge(h.edge);
      if (!e.is_loop()) {
        const auto& far = e.ends[static_cast<std::size_t>(1 - h.end)];
        if (phi_at(g.vertex(far.vertex).label) != far.slot + 1) continue;
      }
      if (e.label > static_cast<std::int64_t>(pair.psi.size())) {
        fail(ErrorCategory::invalid_argument, "malformed pair: matched edge label outside the psi domain");
      }
      const int config = pair.psi[static_cast<std::size_t>(e.label - 1)];
      if (e.is_loop() && config > 1) fail(ErrorCategory::invalid_argument, "malformed pair: loop configuration above 1");
      if (out.splits.size() == static_cast<std::size_t>(radius)) {
        fail(ErrorCategory::invalid_argument, "malformed pair: more matches than the budget allows");
      }
      for (const auto& end : e.ends) phi_used[static_cast<std::size_t>(g.vertex(end.vertex).label - 1)] = 1;
      psi_used[static_cast<std::size_t>(e.label - 1)] = 1;
      const Split s{e.label, e.is_loop() ? SplitKind::loop_split : SplitKind::double_split, config};
      out.splits.push_back(s);
      g = apply_split(g, s);
      matched = true;
      break;
    }
    if (!matched) break;
  }
  for (std::size_t i = 0; i < pair.phi.size(); ++i) {
    if (pair.phi[i] != 0 && !phi_used[i]) {
      fail(ErrorCategory::invalid_argument, "malformed pair: phi(" + std::to_string(i + 1) + ") never matched");
    }
  }
  for (std::size_t j = 0; j < pair.psi.size(); ++j) {
    if (pair.psi[j] != 0 && !psi_used[j]) {
      fail(ErrorCategory::invalid_argument, "malformed pair: psi(" + std::to_string(j + 1) + ") never used");
    }
  }
  return out;
}

}  // namespace ugrowth::graph
