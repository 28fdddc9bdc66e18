#include <doctest.h>

#include <cmath>
#include <set>

#include "graph_oracles.hpp"
#include "ugrowth/counting.hpp"
#include "ugrowth/derivation.hpp"
#include "ugrowth/error.hpp"
#include "ugrowth/graph_ball.hpp"
#include "ugrowth/graph_key.hpp"

using namespace ugrowth;
using namespace ugrowth::graph;

namespace {

const auto kTrivial = CoefficientGroup::trivial();
const auto kZ3 = CoefficientGroup::cyclic(3);

// Breadth-first search deduplicated by the brute-force form.
std::vector<std::uint64_t> oracle_sizes(const LabeledGraph& start, int radius) {
  std::set<std::vector<oracle::Triple>> seen{oracle::form(start)};
  std::vector<LabeledGraph> frontier{start};
  std::vector<std::uint64_t> sizes{1};
  for (int r = 1; r <= radius; ++r) {
    std::vector<LabeledGraph> next;
    for (const auto& g : frontier) {
      for (const auto& s : all_splits(g)) {
        auto h = apply_split(g, s);
        if (seen.insert(oracle::form(h)).second) next.push_back(std::move(h));
      }
    }
    frontier = std::move(next);
    sizes.push_back(seen.size());
  }
  return sizes;
}

}  // namespace

TEST_CASE("radius zero and the trivial dumbbell") {
  const auto id = GroupElement::identity(kTrivial);
  const auto dumbbell = dumbbell_graph(kTrivial, {id, id, id});
  CHECK(enumerate_graph_ball(dumbbell, 0).sizes == std::vector<std::uint64_t>{1});
  const auto one = enumerate_graph_ball(dumbbell, 1);
  CHECK(one.sizes == oracle_sizes(dumbbell, 1));
  // loop splits are no-ops on trivial labels; the bar's four splits give the
  // dumbbell back (configs 0 and 3) or the theta graph (1 and 2)
  CHECK(one.sizes == std::vector<std::uint64_t>{1, 2});
  CHECK_THROWS_AS(enumerate_graph_ball(dumbbell, -1), Error);
}

TEST_CASE("ball sizes agree with the brute-force search") {
  for (int rank = 2; rank <= 3; ++rank) {
    for (const auto& shape : trivalent_graphs(rank, kZ3)) {
      auto g = shape;
      std::int64_t r = 0;
      for (const auto& e : shape.edges()) g.set_label(e.label, GroupElement::residue(kZ3, r++ % 3));
      const int radius = rank == 2 ? 4 : 2;
      CHECK(enumerate_graph_ball(g, radius).sizes == oracle_sizes(g, radius));
    }
  }
}

TEST_CASE("ball sizes stay under the pair count") {
  const auto f2 = CoefficientGroup::free(2);
  const auto theta = theta_graph(f2, {GroupElement::identity(f2), GroupElement::generator(f2, 1),
                                      GroupElement::generator(f2, 2)});
  const auto ball = enumerate_graph_ball(theta, 3);
  for (std::size_t r = 0; r < ball.sizes.size(); ++r) {
    CHECK(counting::BigInt(ball.sizes[r]) <= counting::graph_code_count(2, static_cast<long long>(r)));
    if (r > 0) {
      CHECK(ball.sizes[r] >= ball.sizes[r - 1]);
      CHECK(ball.bound_log_ratios[r] == doctest::Approx((5.0 + 3.0 * static_cast<double>(r)) * std::log(4.0) / static_cast<double>(r)));
    }
  }
  for (std::size_t i = 0; i < ball.elements.size(); ++i) {
    const auto path = ball.path_to(i);
    CHECK(static_cast<int>(path.size()) == ball.elements[i].distance);
    CHECK(canonical_key(apply_derivation({theta, path}).back()) == ball.elements[i].key);
  }
}

TEST_CASE("threads do not change the result") {
  const auto g = trivalent_graphs(3, kZ3).front();
  GraphBallOptions many;
  many.threads = 3;
  const auto a = enumerate_graph_ball(g, 3);
  const auto b = enumerate_graph_ball(g, 3, many);
  CHECK(a.sizes == b.sizes);
  REQUIRE(a.elements.size() == b.elements.size());
  for (std::size_t i = 0; i < a.elements.size(); ++i) CHECK(a.elements[i].key == b.elements[i].key);
  GraphBallOptions tight;
  tight.guard_elements = 3;
  CHECK_THROWS_AS(enumerate_graph_ball(g, 3, tight), Error);
}
