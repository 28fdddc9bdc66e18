#include "ugrowth/triangulation.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <map>
#include <numeric>
#include <unordered_map>

#include "ugrowth/error.hpp"
#include "ugrowth/graph_ball.hpp"
#include "ugrowth/graph_key.hpp"

namespace ugrowth::tri {

using graph::Edge;
using graph::HalfEdge;
using graph::LabeledGraph;
using graph::Vertex;

namespace {

std::vector<int> class_key(const GroupElement& g) {
  if (g.group().kind == GroupKind::free) return free_group::conjugacy_class_key(g.letters());
  return g.serialize();
}

GroupElement step_value(const LabeledGraph& g, int edge_index, bool forward) {
  const auto& e = g.edge(edge_index);
  return forward ? e.g : invert(e.g);
}

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(static_cast<std::size_t>(n)) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) {
    while (parent[static_cast<std::size_t>(x)] != x) {
      parent[static_cast<std::size_t>(x)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
      x = parent[static_cast<std::size_t>(x)];
    }
    return x;
  }
  void join(int a, int b) { parent[static_cast<std::size_t>(find(a))] = find(b); }
};

// Breadth-first spanning tree from `root`; parent_step[v] is the edge index
// and direction used to reach v, and order lists vertices as reached.
struct Tree {
  std::vector<int> order;
  std::vector<std::pair<int, bool>> parent_step;
  std::vector<char> in_tree;  // per edge index
};

Tree spanning_tree(const LabeledGraph& g, int root, const std::vector<char>& excluded) {
  const auto nv = g.vertices().size();
  Tree t;
  t.parent_step.assign(nv, {-1, true});
  t.in_tree.assign(g.edges().size(), 0);
  std::vector<char> seen(nv, 0);
  seen[static_cast<std::size_t>(root)] = 1;
  std::deque<int> queue{root};
  while (!queue.empty()) {
    const int v = queue.front();
    queue.pop_front();
    t.order.push_back(v);
    std::array<HalfEdge, 3> hs = g.vertex(v).slots;
    std::sort(hs.begin(), hs.end(), [&](const HalfEdge& x, const HalfEdge& y) {
      return std::pair{g.edge(x.edge).label, x.end} < std::pair{g.edge(y.edge).label, y.end};
    });
    for (const auto& h : hs) {
      if (!excluded.empty() && excluded[static_cast<std::size_t>(h.edge)]) continue;
      const int w = g.edge(h.edge).ends[static_cast<std::size_t>(1 - h.end)].vertex;
      if (seen[static_cast<std::size_t>(w)]) continue;
      seen[static_cast<std::size_t>(w)] = 1;
      t.in_tree[static_cast<std::size_t>(h.edge)] = 1;
      t.parent_step[static_cast<std::size_t>(w)] = {h.edge, h.end == 0};
      queue.push_back(w);
    }
  }
  return t;
}

// Tree path from the root to v as steps.
Walk tree_path(const LabeledGraph& g, const Tree& t, int v) {
  Walk back;
  while (t.parent_step[static_cast<std::size_t>(v)].first >= 0) {
    const auto [ei, forward] = t.parent_step[static_cast<std::size_t>(v)];
    back.push_back({g.edge(ei).label, forward});
    const auto& e = g.edge(ei);
    v = e.ends[forward ? 0 : 1].vertex;
  }
  std::reverse(back.begin(), back.end());
  return back;
}

Walk inverse_walk(const Walk& w) {
  Walk out;
  for (auto it = w.rbegin(); it != w.rend(); ++it) out.push_back({it->edge, !it->forward});
  return out;
}

std::vector<std::vector<int>> face_class_list(const RibbonTriangulation& t) {
  std::vector<std::vector<int>> out;
  for (const auto& w : face_walks(t)) out.push_back(class_key(walk_product(t.dual(), w)));
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

std::array<int, 3> RibbonTriangulation::ccw_slots(int vertex) const {
  return counterclockwise(vertex) ? std::array<int, 3>{0, 1, 2} : std::array<int, 3>{0, 2, 1};
}

RibbonTriangulation RibbonTriangulation::with_label(std::int64_t edge, GroupElement g) const {
  RibbonTriangulation out = *this;
  out.dual_.set_label(edge, std::move(g));
  return out;
}

RibbonTriangulation RibbonTriangulation::reversed(std::int64_t edge) const {
  RibbonTriangulation out = *this;
  out.dual_.reverse(edge);
  for (auto& w : out.walks_) {
    for (auto& s : w) {
      if (s.edge == edge) s.forward = !s.forward;
    }
  }
  return out;
}

GroupElement walk_product(const LabeledGraph& g, const Walk& walk) {
  auto out = GroupElement::identity(g.group());
  for (const auto& s : walk) out = multiply(out, step_value(g, g.require_edge(s.edge), s.forward));
  return out;
}

RibbonTriangulation build_labeled_dual(const Gluing& gluing) {
  const int nt = gluing.triangles;
  if (nt < 1) fail(ErrorCategory::invalid_argument, "triangulation needs at least one triangle");
  if (gluing.punctures < 1) fail(ErrorCategory::invalid_argument, "closed surfaces are not supported");
  std::vector<int> partner(static_cast<std::size_t>(3 * nt), -1);
  for (const auto& [a, b] : gluing.pairs) {
    for (const auto& s : {a, b}) {
      if (s.triangle < 0 || s.triangle >= nt || s.side < 0 || s.side > 2) {
        fail(ErrorCategory::invalid_argument, "gluing names a side outside the triangles");
      }
    }
    const int x = 3 * a.triangle + a.side;
    const int y = 3 * b.triangle + b.side;
    if (x == y) fail(ErrorCategory::invalid_argument, "a side cannot be glued to itself");
    if (partner[static_cast<std::size_t>(x)] >= 0 || partner[static_cast<std::size_t>(y)] >= 0) {
      fail(ErrorCategory::invalid_argument, "a side is glued twice");
    }
    partner[static_cast<std::size_t>(x)] = y;
    partner[static_cast<std::size_t>(y)] = x;
  }
  if (std::find(partner.begin(), partner.end(), -1) != partner.end()) {
    fail(ErrorCategory::invalid_argument, "every side must be glued (surfaces with boundary are not supported)");
  }

  // corner 3t+k sits between sides k-1 and k of triangle t
  UnionFind corners(3 * nt);
  for (int x = 0; x < 3 * nt; ++x) {
    const int y = partner[static_cast<std::size_t>(x)];
    const int t = x / 3, s = x % 3, u = y / 3, r = y % 3;
    corners.join(3 * t + s, 3 * u + (r + 1) % 3);
    corners.join(3 * t + (s + 1) % 3, 3 * u + r);
  }
  std::map<int, int> vertex_of_root;
  std::vector<int> vertex_of(static_cast<std::size_t>(3 * nt));
  for (int c = 0; c < 3 * nt; ++c) {
    const auto [it, added] = vertex_of_root.emplace(corners.find(c), static_cast<int>(vertex_of_root.size()));
    vertex_of[static_cast<std::size_t>(c)] = it->second;
  }
  const int n = static_cast<int>(vertex_of_root.size());

  // around a vertex, corner (t,k) leads through side k to corner (u, r+1)
  const auto next_corner = [&](int c) {
    const int y = partner[static_cast<std::size_t>(c)];
    return 3 * (y / 3) + (y % 3 + 1) % 3;
  };

  const int ne = static_cast<int>(gluing.pairs.size());
  const int chi = n - ne + nt;
  if (chi > 2 || chi % 2 != 0) fail(ErrorCategory::invalid_argument, "gluing has an impossible Euler characteristic");
  const int genus = (2 - chi) / 2;
  if (genus != gluing.genus || n != gluing.n) {
    fail(ErrorCategory::invalid_argument, "gluing gives genus " + std::to_string(genus) + " with " + std::to_string(n) +
                                              " vertices, not the stated surface data");
  }
  if (gluing.punctures > n) fail(ErrorCategory::invalid_argument, "more punctures than vertices");

  std::vector<char> puncture(static_cast<std::size_t>(n), 0);
  if (gluing.puncture_vertices.empty()) {
    for (int v = 0; v < gluing.punctures; ++v) puncture[static_cast<std::size_t>(v)] = 1;
  } else {
    if (static_cast<int>(gluing.puncture_vertices.size()) != gluing.punctures) {
      fail(ErrorCategory::invalid_argument, "puncture vertex list does not match the puncture count");
    }
    for (int v : gluing.puncture_vertices) {
      if (v < 0 || v >= n || puncture[static_cast<std::size_t>(v)]) {
        fail(ErrorCategory::invalid_argument, "puncture vertices must be distinct vertex indices");
      }
      puncture[static_cast<std::size_t>(v)] = 1;
    }
  }

  // dual graph, identity labels for now
  const int rank_g = 2 * genus + gluing.punctures - 1;
  const auto group = CoefficientGroup::free(rank_g);
  std::vector<Vertex> vs(static_cast<std::size_t>(nt));
  std::vector<Edge> es(static_cast<std::size_t>(ne));
  for (int t = 0; t < nt; ++t) vs[static_cast<std::size_t>(t)].label = t + 1;
  for (int i = 0; i < ne; ++i) {
    const auto& [a, b] = gluing.pairs[static_cast<std::size_t>(i)];
    auto& e = es[static_cast<std::size_t>(i)];
    e.label = i + 1;
    e.g = GroupElement::identity(group);
    e.ends[0] = {a.triangle, a.side};
    e.ends[1] = {b.triangle, b.side};
    vs[static_cast<std::size_t>(a.triangle)].slots[static_cast<std::size_t>(a.side)] = {i, 0};
    vs[static_cast<std::size_t>(b.triangle)].slots[static_cast<std::size_t>(b.side)] = {i, 1};
  }
  std::vector<int> edge_of_side(static_cast<std::size_t>(3 * nt));
  for (int i = 0; i < ne; ++i) {
    const auto& [a, b] = gluing.pairs[static_cast<std::size_t>(i)];
    edge_of_side[static_cast<std::size_t>(3 * a.triangle + a.side)] = i;
    edge_of_side[static_cast<std::size_t>(3 * b.triangle + b.side)] = i;
  }

  // forest of primal edges joining each non-puncture vertex to a puncture
  std::vector<char> crossing(static_cast<std::size_t>(ne), 0);
  std::vector<int> forest_parent(static_cast<std::size_t>(n), -1);  // primal edge to the parent
  std::vector<int> forest_order;
  {
    std::vector<std::array<int, 2>> ends(static_cast<std::size_t>(ne));
    for (int i = 0; i < ne; ++i) {
      const auto& a = gluing.pairs[static_cast<std::size_t>(i)].first;
      ends[static_cast<std::size_t>(i)] = {vertex_of[static_cast<std::size_t>(3 * a.triangle + a.side)],
                                           vertex_of[static_cast<std::size_t>(3 * a.triangle + (a.side + 1) % 3)]};
    }
    std::vector<char> reached(puncture);
    std::deque<int> queue;
    for (int v = 0; v < n; ++v) {
      if (puncture[static_cast<std::size_t>(v)]) queue.push_back(v);
    }
    while (!queue.empty()) {
      const int x = queue.front();
      queue.pop_front();
      forest_order.push_back(x);
      for (int i = 0; i < ne; ++i) {
        const auto [p, q] = ends[static_cast<std::size_t>(i)];
        if (p != x && q != x) continue;
        const int y = p == x ? q : p;
        if (reached[static_cast<std::size_t>(y)]) continue;
        reached[static_cast<std::size_t>(y)] = 1;
        crossing[static_cast<std::size_t>(i)] = 1;
        forest_parent[static_cast<std::size_t>(y)] = i;
        queue.push_back(y);
      }
    }
  }

  LabeledGraph skeleton(group, vs, es);
  const Tree k0 = spanning_tree(skeleton, 0, crossing);
  if (k0.order.size() != vs.size()) fail(ErrorCategory::invariant, "dual minus the crossing edges is disconnected");
  int generators = 0;
  for (int i = 0; i < ne; ++i) {
    if (crossing[static_cast<std::size_t>(i)] || k0.in_tree[static_cast<std::size_t>(i)]) continue;
    es[static_cast<std::size_t>(i)].g = GroupElement::generator(group, ++generators);
  }
  if (generators != rank_g) {
    fail(ErrorCategory::invariant, "free basis has " + std::to_string(generators) + " generators, expected " +
                                       std::to_string(rank_g));
  }

  // solve crossing labels from the boundary loops of non-puncture vertices, leaves first
  std::vector<int> first_corner(static_cast<std::size_t>(n), -1);
  for (int c = 3 * nt - 1; c >= 0; --c) first_corner[static_cast<std::size_t>(vertex_of[static_cast<std::size_t>(c)])] = c;
  for (auto it = forest_order.rbegin(); it != forest_order.rend(); ++it) {
    const int v = *it;
    if (puncture[static_cast<std::size_t>(v)]) continue;
    const int f = forest_parent[static_cast<std::size_t>(v)];
    std::vector<std::pair<int, bool>> loop;
    const int start = first_corner[static_cast<std::size_t>(v)];
    int c = start;
    do {
      const int i = edge_of_side[static_cast<std::size_t>(c)];
      const auto& a = gluing.pairs[static_cast<std::size_t>(i)].first;
      loop.emplace_back(i, 3 * a.triangle + a.side == c);
      c = next_corner(c);
    } while (c != start);
    const auto pos = std::find_if(loop.begin(), loop.end(), [&](const auto& s) { return s.first == f; });
    if (pos == loop.end() || std::count_if(loop.begin(), loop.end(), [&](const auto& s) { return s.first == f; }) != 1) {
      fail(ErrorCategory::invariant, "forest edge does not cross the boundary loop once");
    }
    std::rotate(loop.begin(), pos, loop.end());
    auto rest = GroupElement::identity(group);
    for (std::size_t k = 1; k < loop.size(); ++k) {
      const auto& e = es[static_cast<std::size_t>(loop[k].first)];
      rest = multiply(rest, loop[k].second ? e.g : invert(e.g));
    }
    es[static_cast<std::size_t>(f)].g = loop.front().second ? invert(rest) : rest;
  }

  RibbonTriangulation out;
  out.dual_ = LabeledGraph(group, vs, es);
  out.surface_ = {genus, gluing.punctures, n};
  out.ccw_.assign(static_cast<std::size_t>(nt), 1);
  const Tree full = spanning_tree(out.dual_, 0, {});
  for (int i = 0; i < ne; ++i) {
    if (full.in_tree[static_cast<std::size_t>(i)]) continue;
    const auto& e = out.dual_.edge(i);
    Walk w = tree_path(out.dual_, full, e.ends[0].vertex);
    w.push_back({e.label, true});
    const Walk back = inverse_walk(tree_path(out.dual_, full, e.ends[1].vertex));
    w.insert(w.end(), back.begin(), back.end());
    out.values_.push_back(walk_product(out.dual_, w));
    out.walks_.push_back(std::move(w));
  }
  out.face_classes_ = face_class_list(out);
  if (static_cast<int>(out.face_classes_.size()) != n) fail(ErrorCategory::invariant, "ribbon face count differs from n");
  return out;
}

std::vector<Walk> face_walks(const RibbonTriangulation& t) {
  const auto& g = t.dual();
  const auto nv = g.vertices().size();
  std::vector<std::array<char, 3>> seen(nv, {0, 0, 0});
  std::vector<Walk> out;
  for (int v0 = 0; v0 < static_cast<int>(nv); ++v0) {
    for (int k0 = 0; k0 < 3; ++k0) {
      if (seen[static_cast<std::size_t>(v0)][static_cast<std::size_t>(k0)]) continue;
      Walk w;
      int v = v0, k = k0;
      while (!seen[static_cast<std::size_t>(v)][static_cast<std::size_t>(k)]) {
        seen[static_cast<std::size_t>(v)][static_cast<std::size_t>(k)] = 1;
        const auto h = g.vertex(v).slots[static_cast<std::size_t>(k)];
        const auto& e = g.edge(h.edge);
        w.push_back({e.label, h.end == 0});
        const auto far = e.ends[static_cast<std::size_t>(1 - h.end)];
        const auto order = t.ccw_slots(far.vertex);
        const auto p = static_cast<std::size_t>(std::find(order.begin(), order.end(), far.slot) - order.begin());
        v = far.vertex;
        k = order[(p + 1) % 3];
      }
      out.push_back(std::move(w));
    }
  }
  return out;
}

bool is_well_labeled(const RibbonTriangulation& t) {
  for (std::size_t i = 0; i < t.reference_walks().size(); ++i) {
    if (!conjugate_equal(walk_product(t.dual(), t.reference_walks()[i]), t.reference_values()[i])) return false;
  }
  return face_class_list(t) == t.face_classes();
}

std::vector<std::int64_t> flippable_edges(const RibbonTriangulation& t) {
  std::vector<std::int64_t> out;
  for (const auto& e : t.dual().edges()) {
    if (!e.is_loop()) out.push_back(e.label);
  }
  std::sort(out.begin(), out.end());
  return out;
}

graph::Split flip_split(const RibbonTriangulation& t, std::int64_t edge) {
  const auto& g = t.dual();
  const auto& e = g.edge(g.require_edge(edge));
  if (e.is_loop()) fail(ErrorCategory::invalid_argument, "edge " + std::to_string(edge) + " is a loop and cannot be flipped");
  // At each end, the half-edge two steps counterclockwise after the support moves across.
  std::array<int, 2> pick{};
  for (int end = 0; end < 2; ++end) {
    const auto p = e.ends[static_cast<std::size_t>(end)];
    const auto order = t.ccw_slots(p.vertex);
    const auto at = static_cast<std::size_t>(std::find(order.begin(), order.end(), p.slot) - order.begin());
    const int moving = order[(at + 2) % 3];
    const int other = order[(at + 1) % 3];
    pick[static_cast<std::size_t>(end)] = moving < other ? 0 : 1;
  }
  return {edge, graph::SplitKind::double_split, 2 * pick[0] + pick[1]};
}

Walk map_walk(const LabeledGraph& before, const LabeledGraph& after, const graph::Split& split, const Walk& walk) {
  const int ei = before.require_edge(split.edge);
  const int ui = before.edge(ei).ends[0].vertex;
  const int wi = before.edge(ei).ends[1].vertex;
  const auto created = after.edge(ei).label;
  std::vector<std::pair<int, bool>> rest;
  for (const auto& s : walk) {
    const int i = before.require_edge(s.edge);
    if (i != ei) rest.emplace_back(i, s.forward);
  }
  Walk out;
  for (std::size_t k = 0; k < rest.size(); ++k) {
    const auto [i, forward] = rest[k];
    const auto [j, next_forward] = rest[(k + 1) % rest.size()];
    out.push_back({after.edge(i).label, forward});
    const int head = after.edge(i).ends[forward ? 1 : 0].vertex;
    const int tail = after.edge(j).ends[next_forward ? 0 : 1].vertex;
    if (head == tail) continue;
    if (head == ui && tail == wi) {
      out.push_back({created, true});
    } else if (head == wi && tail == ui) {
      out.push_back({created, false});
    } else {
      fail(ErrorCategory::invariant, "walk does not close up after the split");
    }
  }
  return out;
}

RibbonTriangulation flip(const RibbonTriangulation& t, std::int64_t edge) {
  const auto s = flip_split(t, edge);
  RibbonTriangulation out;
  out.dual_ = graph::apply_split(t.dual(), s);
  out.surface_ = t.surface_;
  out.ccw_ = t.ccw_;
  const int ei = t.dual().require_edge(edge);
  for (const auto& p : t.dual().edge(ei).ends) out.ccw_[static_cast<std::size_t>(p.vertex)] = 1;
  out.values_ = t.values_;
  out.face_classes_ = t.face_classes_;
  out.walks_.reserve(t.walks_.size());
  for (const auto& w : t.walks_) out.walks_.push_back(map_walk(t.dual(), out.dual_, s, w));
  return out;
}

std::string flip_invariant(const RibbonTriangulation& t) {
  constexpr int max_length = 6;
  const auto& g = t.dual();
  std::vector<std::pair<int, std::vector<int>>> found;
  struct Frame {
    int vertex;
    HalfEdge arrived;
    GroupElement product;
    int length;
  };
  for (int v0 = 0; v0 < static_cast<int>(g.vertices().size()); ++v0) {
    std::vector<Frame> stack{{v0, {-1, 0}, GroupElement::identity(g.group()), 0}};
    while (!stack.empty()) {
      const Frame f = stack.back();
      stack.pop_back();
      if (f.length > 0 && f.vertex == v0) found.emplace_back(f.length, class_key(f.product));
      if (f.length == max_length) continue;
      for (const auto& h : g.vertex(f.vertex).slots) {
        if (h == f.arrived) continue;
        const auto& e = g.edge(h.edge);
        const auto far = e.ends[static_cast<std::size_t>(1 - h.end)];
        stack.push_back({far.vertex, {h.edge, 1 - h.end}, multiply(f.product, h.end == 0 ? e.g : invert(e.g)),
                         f.length + 1});
      }
    }
  }
  std::sort(found.begin(), found.end());
  std::string out;
  for (const auto& [length, key] : found) {
    out += std::to_string(length) + ':';
    for (int x : key) out += std::to_string(x) + ',';
    out += ';';
  }
  return out;
}

bool triangulations_equal(const RibbonTriangulation& a, const RibbonTriangulation& b) {
  if (!(a.surface() == b.surface())) fail(ErrorCategory::invalid_argument, "triangulations of different surfaces");
  const auto& ga = a.dual();
  const auto& gb = b.dual();
  const auto nv = ga.vertices().size();
  const auto ne = ga.edges().size();
  if (nv != gb.vertices().size() || ne != gb.edges().size() || !(ga.group() == gb.group())) return false;

  const Tree tree = spanning_tree(ga, 0, {});
  std::vector<GroupElement> path_a(nv);
  path_a[0] = GroupElement::identity(ga.group());
  for (std::size_t k = 1; k < tree.order.size(); ++k) {
    const int w = tree.order[k];
    const auto [ei, forward] = tree.parent_step[static_cast<std::size_t>(w)];
    const int v = ga.edge(ei).ends[forward ? 0 : 1].vertex;
    path_a[static_cast<std::size_t>(w)] = multiply(path_a[static_cast<std::size_t>(v)], step_value(ga, ei, forward));
  }
  std::vector<int> cotree;
  std::vector<GroupElement> cycles_a;
  for (std::size_t i = 0; i < ne; ++i) {
    if (tree.in_tree[i]) continue;
    const auto& e = ga.edge(static_cast<int>(i));
    cotree.push_back(static_cast<int>(i));
    cycles_a.push_back(multiply(multiply(path_a[static_cast<std::size_t>(e.ends[0].vertex)], e.g),
                                invert(path_a[static_cast<std::size_t>(e.ends[1].vertex)])));
  }

  const auto position = [](const RibbonTriangulation& t, int v, int slot) {
    const auto order = t.ccw_slots(v);
    return static_cast<int>(std::find(order.begin(), order.end(), slot) - order.begin());
  };

  std::vector<int> vmap(nv), vback(nv), shift(nv), emap(ne);
  std::vector<char> reversed(ne);
  for (int y0 = 0; y0 < static_cast<int>(nv); ++y0) {
    for (int d0 = 0; d0 < 3; ++d0) {
      std::fill(vmap.begin(), vmap.end(), -1);
      std::fill(vback.begin(), vback.end(), -1);
      std::fill(emap.begin(), emap.end(), -1);
      vmap[0] = y0;
      vback[static_cast<std::size_t>(y0)] = 0;
      shift[0] = d0;
      std::vector<int> stack{0};
      bool ok = true;
      while (ok && !stack.empty()) {
        const int x = stack.back();
        stack.pop_back();
        const int y = vmap[static_cast<std::size_t>(x)];
        for (int sa = 0; sa < 3 && ok; ++sa) {
          const auto order_b = b.ccw_slots(y);
          const int sb = order_b[static_cast<std::size_t>((position(a, x, sa) + shift[static_cast<std::size_t>(x)]) % 3)];
          const auto ha = ga.vertex(x).slots[static_cast<std::size_t>(sa)];
          const auto hb = gb.vertex(y).slots[static_cast<std::size_t>(sb)];
          const bool rev = ha.end != hb.end;
          auto& m = emap[static_cast<std::size_t>(ha.edge)];
          if (m >= 0 && (m != hb.edge || reversed[static_cast<std::size_t>(ha.edge)] != rev)) {
            ok = false;
            break;
          }
          m = hb.edge;
          reversed[static_cast<std::size_t>(ha.edge)] = rev;
          const auto fa = ga.edge(ha.edge).ends[static_cast<std::size_t>(1 - ha.end)];
          const auto fb = gb.edge(hb.edge).ends[static_cast<std::size_t>(1 - hb.end)];
          const int want = (position(b, fb.vertex, fb.slot) - position(a, fa.vertex, fa.slot) + 3) % 3;
          auto& mv = vmap[static_cast<std::size_t>(fa.vertex)];
          if (mv < 0) {
            if (vback[static_cast<std::size_t>(fb.vertex)] >= 0) {
              ok = false;
              break;
            }
            mv = fb.vertex;
            vback[static_cast<std::size_t>(fb.vertex)] = fa.vertex;
            shift[static_cast<std::size_t>(fa.vertex)] = want;
            stack.push_back(fa.vertex);
          } else if (mv != fb.vertex || shift[static_cast<std::size_t>(fa.vertex)] != want) {
            ok = false;
          }
        }
      }
      if (!ok) continue;

      // image of an a-edge read in its own direction
      const auto image = [&](int ei) {
        const auto& g = gb.edge(emap[static_cast<std::size_t>(ei)]).g;
        return reversed[static_cast<std::size_t>(ei)] ? invert(g) : g;
      };
      std::vector<GroupElement> path_b(nv);
      path_b[0] = GroupElement::identity(gb.group());
      for (std::size_t k = 1; k < tree.order.size(); ++k) {
        const int w = tree.order[k];
        const auto [ei, forward] = tree.parent_step[static_cast<std::size_t>(w)];
        const int v = ga.edge(ei).ends[forward ? 0 : 1].vertex;
        const auto step = forward ? image(ei) : invert(image(ei));
        path_b[static_cast<std::size_t>(w)] = multiply(path_b[static_cast<std::size_t>(v)], step);
      }
      std::vector<GroupElement> cycles_b;
      for (int ei : cotree) {
        const auto& e = ga.edge(ei);
        cycles_b.push_back(multiply(multiply(path_b[static_cast<std::size_t>(e.ends[0].vertex)], image(ei)),
                                    invert(path_b[static_cast<std::size_t>(e.ends[1].vertex)])));
      }
      if (free_group::simultaneously_conjugate(cycles_a, cycles_b)) return true;
    }
  }
  return false;
}

FlipBall enumerate_flip_ball(const RibbonTriangulation& start, int radius, const FlipBallOptions& options) {
  if (radius < 0) fail(ErrorCategory::invalid_argument, "radius must be >= 0");
  FlipBall ball;
  ball.rank = start.dual().rank();
  std::unordered_map<std::string, std::vector<std::size_t>> buckets;
  ball.elements.push_back({start, 0, 0, 0, graph::canonical_key(start.dual())});
  buckets[flip_invariant(start)].push_back(0);
  ball.well_labeled = is_well_labeled(start);
  std::size_t frontier_begin = 0;
  for (int r = 1; r <= radius; ++r) {
    const std::size_t frontier_end = ball.elements.size();
    for (std::size_t i = frontier_begin; i < frontier_end; ++i) {
      for (const auto edge : flippable_edges(ball.elements[i].triangulation)) {
        auto next = flip(ball.elements[i].triangulation, edge);
        auto& bucket = buckets[flip_invariant(next)];
        const bool known = std::any_of(bucket.begin(), bucket.end(), [&](std::size_t j) {
          return triangulations_equal(ball.elements[j].triangulation, next);
        });
        if (known) continue;
        if (ball.elements.size() >= options.guard_elements) {
          fail(ErrorCategory::resource, "flip ball exceeds the guard of " + std::to_string(options.guard_elements) +
                                            " elements");
        }
        ball.well_labeled = ball.well_labeled && is_well_labeled(next);
        bucket.push_back(ball.elements.size());
        auto key = graph::canonical_key(next.dual());
        ball.elements.push_back({std::move(next), i, edge, r, std::move(key)});
      }
    }
    frontier_begin = frontier_end;
  }

  ball.sizes.assign(static_cast<std::size_t>(radius) + 1, 0);
  for (const auto& e : ball.elements) ++ball.sizes[static_cast<std::size_t>(e.distance)];
  std::partial_sum(ball.sizes.begin(), ball.sizes.end(), ball.sizes.begin());
  ball.distinct_dual_keys.assign(static_cast<std::size_t>(radius) + 1, 0);
  {
    std::map<std::string, int> first_seen;
    for (const auto& e : ball.elements) first_seen.emplace(e.dual_key, e.distance);
    for (const auto& [key, d] : first_seen) ++ball.distinct_dual_keys[static_cast<std::size_t>(d)];
    std::partial_sum(ball.distinct_dual_keys.begin(), ball.distinct_dual_keys.end(), ball.distinct_dual_keys.begin());
  }
  ball.log_ratios.assign(static_cast<std::size_t>(radius) + 1, 0.0);
  ball.bound_log_ratios.assign(static_cast<std::size_t>(radius) + 1, 0.0);
  for (int r = 1; r <= radius; ++r) {
    ball.log_ratios[static_cast<std::size_t>(r)] = std::log(static_cast<double>(ball.sizes[static_cast<std::size_t>(r)])) / r;
    ball.bound_log_ratios[static_cast<std::size_t>(r)] = (5.0 * ball.rank - 5.0 + 3.0 * r) * std::log(4.0) / r;
  }

  const int graph_radius = options.graph_radius < 0 ? radius : std::min(options.graph_radius, radius);
  graph::GraphBallOptions graph_options;
  graph_options.guard_elements = options.graph_guard_elements;
  const auto graph_ball = graph::enumerate_graph_ball(start.dual(), graph_radius, graph_options);
  ball.graph_sizes = graph_ball.sizes;
  std::unordered_map<std::string, int> graph_distance;
  for (const auto& e : graph_ball.elements) graph_distance.emplace(e.key, e.distance);
  for (const auto& e : ball.elements) {
    if (e.distance > graph_radius) continue;
    const auto it = graph_distance.find(e.dual_key);
    if (it == graph_distance.end() || it->second > e.distance) ball.keys_contained = false;
  }
  return ball;
}

}  // namespace ugrowth::tri
