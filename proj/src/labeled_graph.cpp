#include "ugrowth/labeled_graph.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <string>

#include "ugrowth/error.hpp"

namespace ugrowth::graph {

namespace {

std::array<int, 2> other_slots(int slot) {
  std::array<int, 2> out{};
  int k = 0;
  for (int s = 0; s < 3; ++s) {
    if (s != slot) out[static_cast<std::size_t>(k++)] = s;
  }
  return out;
}

}  // namespace

LabeledGraph::LabeledGraph(CoefficientGroup group, std::span<const Vertex> vertices, std::span<const Edge> edges)
    : group_(group), vertices_(vertices.begin(), vertices.end()), edges_(edges.begin(), edges.end()) {
  for (const auto& v : vertices_) max_vertex_label_ = std::max(max_vertex_label_, v.label);
  for (const auto& e : edges_) max_edge_label_ = std::max(max_edge_label_, e.label);
  check();
}

LabeledGraph LabeledGraph::from_edges(const CoefficientGroup& group, int vertex_count,
                                      const std::vector<std::tuple<int, int, GroupElement>>& edges) {
  std::vector<Vertex> vs(static_cast<std::size_t>(std::max(vertex_count, 0)));
  std::vector<int> used(vs.size(), 0);
  for (std::size_t i = 0; i < vs.size(); ++i) vs[i].label = static_cast<std::int64_t>(i) + 1;
  std::vector<Edge> es;
  for (const auto& [from, to, g] : edges) {
    Edge e;
    e.label = static_cast<std::int64_t>(es.size()) + 1;
    e.g = g;
    const std::array<int, 2> ends{from, to};
    for (int end = 0; end < 2; ++end) {
      const int v = ends[static_cast<std::size_t>(end)];
      if (v < 0 || v >= vertex_count) fail(ErrorCategory::invalid_argument, "edge endpoint out of range");
      auto& count = used[static_cast<std::size_t>(v)];
      if (count == 3) fail(ErrorCategory::invalid_argument, "vertex has more than three half-edges");
      vs[static_cast<std::size_t>(v)].slots[static_cast<std::size_t>(count)] = {static_cast<int>(es.size()), end};
      e.ends[static_cast<std::size_t>(end)] = {v, count};
      ++count;
    }
    es.push_back(e);
  }
  return LabeledGraph(group, vs, es);
}

void LabeledGraph::check() const {
  if (vertices_.empty()) fail(ErrorCategory::invalid_argument, "graph has no vertices");
  std::set<std::int64_t> vlabels;
  std::set<std::int64_t> elabels;
  for (const auto& v : vertices_) {
    if (v.label < 1 || !vlabels.insert(v.label).second) {
      fail(ErrorCategory::invalid_argument, "vertex labels must be distinct positive integers");
    }
  }
  for (const auto& e : edges_) {
    if (e.label < 1 || !elabels.insert(e.label).second) {
      fail(ErrorCategory::invalid_argument, "edge labels must be distinct positive integers");
    }
    if (!(e.g.group() == group_)) fail(ErrorCategory::invalid_argument, "edge label lies in the wrong group");
  }
  const auto nv = static_cast<int>(vertices_.size());
  const auto ne = static_cast<int>(edges_.size());
  for (int vi = 0; vi < nv; ++vi) {
    for (int s = 0; s < 3; ++s) {
      const auto h = vertices_[static_cast<std::size_t>(vi)].slots[static_cast<std::size_t>(s)];
      if (h.edge < 0 || h.edge >= ne || (h.end != 0 && h.end != 1)) {
        fail(ErrorCategory::invalid_argument, "vertex " + std::to_string(vertices_[static_cast<std::size_t>(vi)].label) +
                                                  " is not trivalent");
      }
      const auto& at = edges_[static_cast<std::size_t>(h.edge)].ends[static_cast<std::size_t>(h.end)];
      if (at.vertex != vi || at.slot != s) fail(ErrorCategory::invalid_argument, "half-edge records disagree");
    }
  }
  for (int ei = 0; ei < ne; ++ei) {
    for (int end = 0; end < 2; ++end) {
      const auto& p = edges_[static_cast<std::size_t>(ei)].ends[static_cast<std::size_t>(end)];
      if (p.vertex < 0 || p.vertex >= nv || p.slot < 0 || p.slot > 2) {
        fail(ErrorCategory::invalid_argument, "edge endpoint out of range");
      }
      const auto h = vertices_[static_cast<std::size_t>(p.vertex)].slots[static_cast<std::size_t>(p.slot)];
      if (h.edge != ei || h.end != end) fail(ErrorCategory::invalid_argument, "half-edge records disagree");
    }
  }
  std::vector<char> seen(static_cast<std::size_t>(nv), 0);
  std::deque<int> queue{0};
  seen[0] = 1;
  int reached = 1;
  while (!queue.empty()) {
    const int v = queue.front();
    queue.pop_front();
    for (const auto& h : vertices_[static_cast<std::size_t>(v)].slots) {
      const int w = edges_[static_cast<std::size_t>(h.edge)].ends[static_cast<std::size_t>(1 - h.end)].vertex;
      if (!seen[static_cast<std::size_t>(w)]) {
        seen[static_cast<std::size_t>(w)] = 1;
        ++reached;
        queue.push_back(w);
      }
    }
  }
  if (reached != nv) fail(ErrorCategory::invalid_argument, "graph is disconnected");
}

int LabeledGraph::vertex_index(std::int64_t label) const {
  for (std::size_t i = 0; i < vertices_.size(); ++i) {
    if (vertices_[i].label == label) return static_cast<int>(i);
  }
  return -1;
}

int LabeledGraph::edge_index(std::int64_t label) const {
  for (std::size_t i = 0; i < edges_.size(); ++i) {
    if (edges_[i].label == label) return static_cast<int>(i);
  }
  return -1;
}

int LabeledGraph::require_edge(std::int64_t label) const {
  const int i = edge_index(label);
  if (i < 0) fail(ErrorCategory::invalid_argument, "no edge carries label " + std::to_string(label));
  return i;
}

void LabeledGraph::set_label(std::int64_t edge_label, GroupElement g) {
  if (!(g.group() == group_)) fail(ErrorCategory::invalid_argument, "edge label lies in the wrong group");
  edges_[static_cast<std::size_t>(require_edge(edge_label))].g = std::move(g);
}

void LabeledGraph::reverse(std::int64_t edge_label) {
  const int ei = require_edge(edge_label);
  auto& e = edges_[static_cast<std::size_t>(ei)];
  std::swap(e.ends[0], e.ends[1]);
  e.g = invert(e.g);
  for (int end = 0; end < 2; ++end) {
    const auto& p = e.ends[static_cast<std::size_t>(end)];
    vertices_[static_cast<std::size_t>(p.vertex)].slots[static_cast<std::size_t>(p.slot)] = {ei, end};
  }
}

LabeledGraph LabeledGraph::relabeled(const std::map<std::int64_t, std::int64_t>& vertex_map,
                                     const std::map<std::int64_t, std::int64_t>& edge_map) const {
  LabeledGraph out = *this;
  for (auto& v : out.vertices_) {
    if (const auto it = vertex_map.find(v.label); it != vertex_map.end()) v.label = it->second;
    out.max_vertex_label_ = std::max(out.max_vertex_label_, v.label);
  }
  for (auto& e : out.edges_) {
    if (const auto it = edge_map.find(e.label); it != edge_map.end()) e.label = it->second;
    out.max_edge_label_ = std::max(out.max_edge_label_, e.label);
  }
  out.check();
  return out;
}

LabeledGraph double_split(const LabeledGraph& source, std::int64_t edge_label, int config) {
  LabeledGraph g = source;
  const int ei = g.require_edge(edge_label);
  if (g.edges_[static_cast<std::size_t>(ei)].is_loop()) {
    fail(ErrorCategory::invalid_argument, "double split needs a non-loop support");
  }
  if (config < 0 || config > 3) fail(ErrorCategory::invalid_argument, "double split configuration must lie in 0..3");
  auto& vs = g.vertices_;
  auto& es = g.edges_;
  const Endpoint init = es[static_cast<std::size_t>(ei)].ends[0];
  const Endpoint term = es[static_cast<std::size_t>(ei)].ends[1];
  const auto at_init = other_slots(init.slot);
  const auto at_term = other_slots(term.slot);
  const auto& u = vs[static_cast<std::size_t>(init.vertex)];
  const auto& w = vs[static_cast<std::size_t>(term.vertex)];
  const HalfEdge ha = u.slots[static_cast<std::size_t>(at_init[static_cast<std::size_t>(config / 2)])];
  const HalfEdge hu = u.slots[static_cast<std::size_t>(at_init[static_cast<std::size_t>(1 - config / 2)])];
  const HalfEdge hb = w.slots[static_cast<std::size_t>(at_term[static_cast<std::size_t>(config % 2)])];
  const HalfEdge hw = w.slots[static_cast<std::size_t>(at_term[static_cast<std::size_t>(1 - config % 2)])];

  const GroupElement ge = es[static_cast<std::size_t>(ei)].g;
  const GroupElement ge_bar = invert(ge);
  auto& a = es[static_cast<std::size_t>(ha.edge)];
  a.g = ha.end == 1 ? multiply(a.g, ge) : multiply(ge_bar, a.g);
  auto& b = es[static_cast<std::size_t>(hb.edge)];
  b.g = hb.end == 0 ? multiply(ge, b.g) : multiply(b.g, ge_bar);

  const int ui = init.vertex;
  const int wi = term.vertex;
  vs[static_cast<std::size_t>(ui)].slots = {hb, hu, HalfEdge{ei, 0}};
  vs[static_cast<std::size_t>(wi)].slots = {ha, hw, HalfEdge{ei, 1}};
  for (int vi : {ui, wi}) {
    for (int s = 0; s < 3; ++s) {
      const auto h = vs[static_cast<std::size_t>(vi)].slots[static_cast<std::size_t>(s)];
      es[static_cast<std::size_t>(h.edge)].ends[static_cast<std::size_t>(h.end)] = {vi, s};
    }
  }
  vs[static_cast<std::size_t>(ui)].label = ++g.max_vertex_label_;
  vs[static_cast<std::size_t>(wi)].label = ++g.max_vertex_label_;
  es[static_cast<std::size_t>(ei)].label = ++g.max_edge_label_;
  return g;
}

LabeledGraph loop_split(const LabeledGraph& source, std::int64_t edge_label, int config) {
  LabeledGraph g = source;
  const int ei = g.require_edge(edge_label);
  auto& e = g.edges_[static_cast<std::size_t>(ei)];
  if (!e.is_loop()) fail(ErrorCategory::invalid_argument, "loop split needs a loop support");
  if (config < 0 || config > 1) fail(ErrorCategory::invalid_argument, "loop split configuration must be 0 or 1");
  const int vi = e.ends[0].vertex;
  const int stem_slot = 3 - e.ends[0].slot - e.ends[1].slot;
  const HalfEdge ha = g.vertices_[static_cast<std::size_t>(vi)].slots[static_cast<std::size_t>(stem_slot)];
  auto& a = g.edges_[static_cast<std::size_t>(ha.edge)];
  const GroupElement& ge = e.g;
  if (config == 0) {
    a.g = ha.end == 1 ? multiply(a.g, ge) : multiply(invert(ge), a.g);
  } else {
    a.g = ha.end == 1 ? multiply(a.g, invert(ge)) : multiply(ge, a.g);
  }
  g.vertices_[static_cast<std::size_t>(vi)].label = ++g.max_vertex_label_;
  e.label = ++g.max_edge_label_;
  return g;
}

LabeledGraph apply_split(const LabeledGraph& g, const Split& s) {
  const bool loop = g.edge(g.require_edge(s.edge)).is_loop();
  if (loop != (s.kind == SplitKind::loop_split)) {
    fail(ErrorCategory::invalid_argument, "split kind does not match the type of edge " + std::to_string(s.edge));
  }
  return loop ? loop_split(g, s.edge, s.config) : double_split(g, s.edge, s.config);
}

std::vector<Split> all_splits(const LabeledGraph& g) {
  std::vector<Split> out;
  std::vector<const Edge*> sorted;
  for (const auto& e : g.edges()) sorted.push_back(&e);
  std::sort(sorted.begin(), sorted.end(), [](const Edge* a, const Edge* b) { return a->label < b->label; });
  for (const Edge* e : sorted) {
    if (e->is_loop()) {
      for (int c = 0; c < 2; ++c) out.push_back({e->label, SplitKind::loop_split, c});
    } else {
      for (int c = 0; c < 4; ++c) out.push_back({e->label, SplitKind::double_split, c});
    }
  }
  return out;
}

LabeledGraph normalize_orientation(const LabeledGraph& g) {
  LabeledGraph out = g;
  for (const auto& e : g.edges()) {
    const auto order = compare(e.g, invert(e.g));
    bool flip = order > 0;
    if (order == 0) {
      const auto key = [&](const Endpoint& p) { return std::pair{g.vertex(p.vertex).label, p.slot}; };
      flip = key(e.ends[1]) < key(e.ends[0]);
    }
    if (flip) out.reverse(e.label);
  }
  return out;
}

bool identical(const LabeledGraph& a, const LabeledGraph& b) {
  if (!(a.group() == b.group()) || a.vertices().size() != b.vertices().size() ||
      a.edges().size() != b.edges().size()) {
    return false;
  }
  for (const auto& e : a.edges()) {
    const int j = b.edge_index(e.label);
    if (j < 0 || !(b.edge(j).g == e.g)) return false;
    const auto& f = b.edge(j);
    for (int end = 0; end < 2; ++end) {
      const auto& p = e.ends[static_cast<std::size_t>(end)];
      const auto& q = f.ends[static_cast<std::size_t>(end)];
      if (p.slot != q.slot || a.vertex(p.vertex).label != b.vertex(q.vertex).label) return false;
    }
  }
  for (const auto& v : a.vertices()) {
    if (b.vertex_index(v.label) < 0) return false;
  }
  return true;
}

std::vector<GroupElement> fundamental_cycle_products(const LabeledGraph& g) {
  const auto nv = g.vertices().size();
  int root = 0;
  for (std::size_t i = 1; i < nv; ++i) {
    if (g.vertices()[i].label < g.vertex(root).label) root = static_cast<int>(i);
  }
  // path[v]: label product along the tree from the root to v
  std::vector<GroupElement> path(nv);
  std::vector<char> seen(nv, 0);
  std::vector<char> tree(g.edges().size(), 0);
  path[static_cast<std::size_t>(root)] = GroupElement::identity(g.group());
  seen[static_cast<std::size_t>(root)] = 1;
  std::deque<int> queue{root};
  while (!queue.empty()) {
    const int v = queue.front();
    queue.pop_front();
    std::vector<HalfEdge> hs(g.vertex(v).slots.begin(), g.vertex(v).slots.end());
    std::sort(hs.begin(), hs.end(), [&](const HalfEdge& x, const HalfEdge& y) {
      return std::pair{g.edge(x.edge).label, x.end} < std::pair{g.edge(y.edge).label, y.end};
    });
    for (const auto& h : hs) {
      const auto& e = g.edge(h.edge);
      const int w = e.ends[static_cast<std::size_t>(1 - h.end)].vertex;
      if (seen[static_cast<std::size_t>(w)]) continue;
      seen[static_cast<std::size_t>(w)] = 1;
      tree[static_cast<std::size_t>(h.edge)] = 1;
      const auto step = h.end == 0 ? e.g : invert(e.g);
      path[static_cast<std::size_t>(w)] = multiply(path[static_cast<std::size_t>(v)], step);
      queue.push_back(w);
    }
  }
  std::vector<std::pair<std::int64_t, GroupElement>> cycles;
  for (std::size_t i = 0; i < g.edges().size(); ++i) {
    if (tree[i]) continue;
    const auto& e = g.edges()[i];
    const auto& from = path[static_cast<std::size_t>(e.ends[0].vertex)];
    const auto& to = path[static_cast<std::size_t>(e.ends[1].vertex)];
    cycles.emplace_back(e.label, multiply(multiply(from, e.g), invert(to)));
  }
  std::sort(cycles.begin(), cycles.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
  std::vector<GroupElement> out;
  for (auto& c : cycles) out.push_back(std::move(c.second));
  return out;
}

LabeledGraph theta_graph(const CoefficientGroup& group, const std::array<GroupElement, 3>& labels) {
  return LabeledGraph::from_edges(group, 2, {{0, 1, labels[0]}, {0, 1, labels[1]}, {0, 1, labels[2]}});
}

LabeledGraph dumbbell_graph(const CoefficientGroup& group, const std::array<GroupElement, 3>& labels) {
  return LabeledGraph::from_edges(group, 2, {{0, 0, labels[0]}, {0, 1, labels[1]}, {1, 1, labels[2]}});
}

}  // namespace ugrowth::graph
