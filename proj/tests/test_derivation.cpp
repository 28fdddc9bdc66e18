#include <doctest.h>

#include <map>
#include <random>
#include <set>

#include "graph_oracles.hpp"
#include "ugrowth/derivation.hpp"
#include "ugrowth/error.hpp"
#include "ugrowth/graph_ball.hpp"
#include "ugrowth/graph_key.hpp"

using namespace ugrowth;
using namespace ugrowth::graph;

namespace {

const auto kTrivial = CoefficientGroup::trivial();
const auto kZ3 = CoefficientGroup::cyclic(3);

// Vertices 0..3: e' = 0->1, a = 1->2, e = 2->3, plus 1-2, 0-3, 0-3.
// With e' = edge 1 and e = edge 3, term(e') = init(a) and term(a) = init(e).
LabeledGraph ladder(const CoefficientGroup& group, const std::vector<GroupElement>& labels) {
  return LabeledGraph::from_edges(group, 4, {{0, 1, labels[0]}, {1, 2, labels[1]}, {2, 3, labels[2]},
                                             {1, 2, labels[3]}, {0, 3, labels[4]}, {0, 3, labels[5]}});
}

std::vector<Split> random_derivation(std::mt19937_64& rng, LabeledGraph g, int length) {
  std::vector<Split> out;
  for (int i = 0; i < length; ++i) {
    const auto options = all_splits(g);
    const auto s = options[rng() % options.size()];
    out.push_back(s);
    g = apply_split(g, s);
  }
  return out;
}

bool vertex_disjoint(const LabeledGraph& g, std::int64_t a, std::int64_t b) {
  const auto& ea = g.edge(g.require_edge(a));
  const auto& eb = g.edge(g.require_edge(b));
  for (const auto& p : ea.ends)
    for (const auto& q : eb.ends)
      if (p.vertex == q.vertex) return false;
  return true;
}

}  // namespace

TEST_CASE("apply_derivation and label budget") {
  const auto id = GroupElement::identity(kTrivial);
  const auto dumbbell = dumbbell_graph(kTrivial, {id, id, id});
  CHECK(apply_derivation({dumbbell, {}}).size() == 1);
  const auto one = apply_derivation({dumbbell, {{2, SplitKind::double_split, 1}}});
  REQUIRE(one.size() == 2);
  CHECK(one[1].max_vertex_label() <= 2 + 2);
  CHECK(one[1].max_edge_label() <= 3 + 1);

  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 300; ++trial) {
    const int rank = 2 + static_cast<int>(rng() % 2);
    const auto start = oracle::random_graph(rng, rank, kZ3);
    const int length = static_cast<int>(rng() % 7);
    const auto traj = apply_derivation({start, random_derivation(rng, start, length)});
    CHECK(traj.back().max_vertex_label() <= 2 * rank - 2 + 2 * length);
    CHECK(traj.back().max_edge_label() <= 3 * rank - 3 + length);
  }
  CHECK_THROWS_AS(apply_derivation({dumbbell, {{1, SplitKind::double_split, 0}}}), Error);
  CHECK_THROWS_AS(apply_derivation({dumbbell, {{7, SplitKind::loop_split, 0}}}), Error);
}

TEST_CASE("readiness") {
  const auto id = GroupElement::identity(kTrivial);
  const auto theta = theta_graph(kTrivial, {id, id, id});
  const Derivation shared{theta, {{1, SplitKind::double_split, 0}, {2, SplitKind::double_split, 0}}};
  CHECK(is_split_ready(shared, 1, 2));
  CHECK_FALSE(is_split_ready(shared, 0, 2));

  const auto lad = ladder(kTrivial, std::vector<GroupElement>(6, id));
  const Derivation apart{lad, {{1, SplitKind::double_split, 2}, {3, SplitKind::double_split, 1}}};
  CHECK(is_split_ready(apart, 0, 2));
  // a split on the edge created by the first one is never ready before it
  const Derivation chained{lad, {{1, SplitKind::double_split, 2}, {7, SplitKind::double_split, 1}}};
  CHECK(is_split_ready(chained, 1, 2));
  CHECK_FALSE(is_split_ready(chained, 0, 2));
  CHECK_THROWS_AS(is_split_ready(apart, 2, 2), Error);
  CHECK_THROWS_AS(is_split_ready(apart, 0, 3), Error);
}

TEST_CASE("split pairs commute across the shared edge") {
  const auto f6 = CoefficientGroup::free(6);
  std::vector<GroupElement> labels;
  for (int i = 1; i <= 6; ++i) labels.push_back(GroupElement::generator(f6, i));
  const auto g = ladder(f6, labels);
  for (int ca = 0; ca < 4; ++ca) {
    for (int cb = 0; cb < 4; ++cb) {
      CHECK(check_commute(g, {1, SplitKind::double_split, ca}, {3, SplitKind::double_split, cb}));
    }
  }
  CHECK_THROWS_AS(check_commute(g, {1, SplitKind::double_split, 0}, {2, SplitKind::double_split, 0}), Error);
}

TEST_CASE("ready pairs commute on every rank-2 graph with Z/3 labels") {
  int pairs = 0;
  for (const auto& shape : trivalent_graphs(2, kZ3)) {
    for (int code = 0; code < 27; ++code) {
      auto g = shape;
      int c = code;
      for (const auto& e : shape.edges()) {
        g.set_label(e.label, GroupElement::residue(kZ3, c % 3));
        c /= 3;
      }
      const auto splits = all_splits(g);
      for (const auto& a : splits) {
        for (const auto& b : splits) {
          if (a.edge == b.edge || !vertex_disjoint(g, a.edge, b.edge)) continue;
          ++pairs;
          CHECK(check_commute(g, a, b));
        }
      }
    }
  }
  // only the dumbbell has vertex-disjoint edges (its two loops)
  CHECK(pairs == 27 * 2 * 2 * 2);
}

TEST_CASE("ready pairs commute on random rank-3 graphs") {
  std::mt19937_64 rng(21);
  const std::vector<CoefficientGroup> groups{kZ3, CoefficientGroup::free(3)};
  for (int trial = 0; trial < 400; ++trial) {
    const auto g = oracle::random_graph(rng, 3, groups[static_cast<std::size_t>(trial % 2)]);
    const auto splits = all_splits(g);
    for (const auto& a : splits) {
      for (const auto& b : splits) {
        if (a.edge == b.edge || !vertex_disjoint(g, a.edge, b.edge)) continue;
        REQUIRE(check_commute(g, a, b));
      }
    }
  }
}

TEST_CASE("canonical derivation") {
  const auto id = GroupElement::identity(kTrivial);
  const auto lad = ladder(kTrivial, std::vector<GroupElement>(6, id));
  // e destroys vertices 3 and 4, e' destroys 1 and 2: e' must come first
  const Derivation late_first{lad, {{3, SplitKind::double_split, 1}, {1, SplitKind::double_split, 2}}};
  const auto canon = canonical_derivation(late_first);
  REQUIRE(canon.splits.size() == 2);
  CHECK(canon.splits[0] == Split{1, SplitKind::double_split, 2});
  CHECK(canon.splits[1] == Split{3, SplitKind::double_split, 1});
  CHECK(canonical_derivation(canon).splits == canon.splits);
  CHECK(canonical_key(apply_derivation(canon).back()) == canonical_key(apply_derivation(late_first).back()));
  CHECK(canonical_derivation({lad, {}}).splits.empty());

  std::mt19937_64 rng(31);
  const std::vector<CoefficientGroup> groups{kTrivial, kZ3, CoefficientGroup::free(2)};
  for (int trial = 0; trial < 3000; ++trial) {
    const auto& group = groups[static_cast<std::size_t>(trial % 3)];
    const auto start = oracle::random_graph(rng, 2 + static_cast<int>(rng() % 2), group);
    const Derivation d{start, random_derivation(rng, start, static_cast<int>(rng() % 7))};
    const auto c = canonical_derivation(d);
    REQUIRE(c.splits.size() == d.splits.size());
    REQUIRE(canonical_derivation(c).splits == c.splits);
    REQUIRE(canonical_key(apply_derivation(c).back()) == canonical_key(apply_derivation(d).back()));
  }
}

TEST_CASE("encoding examples") {
  const auto id = GroupElement::identity(kTrivial);
  const auto dumbbell = dumbbell_graph(kTrivial, {id, id, id});
  const auto empty = encode_derivation({dumbbell, {}}, 2);
  CHECK(empty.phi == std::vector<int>(2 + 4, 0));
  CHECK(empty.psi == std::vector<int>(3 + 2, 0));
  CHECK(decode_derivation(empty, dumbbell, 2).splits.empty());

  // the bar is edge 2 from vertex 1 (slot 3) to vertex 2 (slot 1)
  const Derivation bar{dumbbell, {{2, SplitKind::double_split, 3}}};
  const auto pair = encode_derivation(bar, 1);
  CHECK(pair.phi == std::vector<int>{3, 1, 0, 0});
  CHECK(pair.psi == std::vector<int>{0, 3, 0, 0});
  CHECK(decode_derivation(pair, dumbbell, 1).splits == bar.splits);

  // a loop split marks its vertex with the smaller slot of the loop
  const Derivation loop{dumbbell, {{3, SplitKind::loop_split, 1}}};
  const auto loop_pair = encode_derivation(loop, 1);
  CHECK(loop_pair.phi == std::vector<int>{0, 2, 0, 0});
  CHECK(loop_pair.psi == std::vector<int>{0, 0, 1, 0});
  CHECK(decode_derivation(loop_pair, dumbbell, 1).splits == loop.splits);

  CHECK_THROWS_AS(encode_derivation(bar, 0), Error);
  const auto lad = ladder(kTrivial, std::vector<GroupElement>(6, id));
  CHECK_THROWS_AS(
      encode_derivation({lad, {{3, SplitKind::double_split, 1}, {1, SplitKind::double_split, 2}}}, 2), Error);
}

TEST_CASE("malformed pairs") {
  const auto id = GroupElement::identity(kTrivial);
  const auto theta = theta_graph(kTrivial, {id, id, id});
  // phi(1) points at edge 2 but vertex 2 does not point back
  EncodingPair lonely{{2, 0, 0, 0}, {0, 0, 0, 0}};
  CHECK_THROWS_AS(decode_derivation(lonely, theta, 1), Error);
  EncodingPair stray_psi{{0, 0, 0, 0}, {0, 0, 0, 2}};
  CHECK_THROWS_AS(decode_derivation(stray_psi, theta, 1), Error);
  EncodingPair wrong_size{{0, 0}, {0, 0, 0}};
  CHECK_THROWS_AS(decode_derivation(wrong_size, theta, 1), Error);
  EncodingPair out_of_range{{4, 0, 0, 0}, {0, 0, 0, 0}};
  CHECK_THROWS_AS(decode_derivation(out_of_range, theta, 1), Error);
  const auto dumbbell = dumbbell_graph(kTrivial, {id, id, id});
  EncodingPair bad_loop{{1, 0, 0, 0}, {2, 0, 0, 0}};
  CHECK_THROWS_AS(decode_derivation(bad_loop, dumbbell, 1), Error);
}

TEST_CASE("codec roundtrip on random canonical derivations") {
  std::mt19937_64 rng(41);
  const std::vector<CoefficientGroup> groups{kTrivial, kZ3, CoefficientGroup::free(2)};
  for (int trial = 0; trial < 3000; ++trial) {
    const auto& group = groups[static_cast<std::size_t>(trial % 3)];
    const auto start = oracle::random_graph(rng, 2 + static_cast<int>(rng() % 2), group);
    const int length = static_cast<int>(rng() % 7);
    const auto c = canonical_derivation({start, random_derivation(rng, start, length)});
    const int budget = length + static_cast<int>(rng() % 2);
    const auto pair = encode_derivation(c, budget);
    REQUIRE(decode_derivation(pair, start, budget).splits == c.splits);
  }
}

TEST_CASE("pairs determine graphs and cover the ball") {
  const auto dumbbell = dumbbell_graph(kZ3, {GroupElement::residue(kZ3, 1), GroupElement::residue(kZ3, 0),
                                             GroupElement::residue(kZ3, 2)});
  const int radius = 3;
  std::map<std::vector<int>, std::string> pair_to_key;
  std::set<std::string> keys;
  std::vector<Split> stack;
  auto walk = [&](auto&& self, const LabeledGraph& g) -> void {
    const auto c = canonical_derivation({dumbbell, stack});
    const auto pair = encode_derivation(c, radius);
    auto flat = pair.phi;
    flat.push_back(-1);
    flat.insert(flat.end(), pair.psi.begin(), pair.psi.end());
    const auto key = canonical_key(g);
    const auto [it, fresh] = pair_to_key.emplace(flat, key);
    REQUIRE(it->second == key);
    keys.insert(key);
    if (stack.size() == static_cast<std::size_t>(radius)) return;
    for (const auto& s : all_splits(g)) {
      stack.push_back(s);
      self(self, apply_split(g, s));
      stack.pop_back();
    }
  };
  walk(walk, dumbbell);
  const auto ball = enumerate_graph_ball(dumbbell, radius);
  CHECK(keys.size() == ball.sizes.back());
  for (const auto& e : ball.elements) CHECK(keys.count(e.key) == 1);
  CHECK(pair_to_key.size() >= keys.size());
}
