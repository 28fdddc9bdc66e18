#include <doctest.h>

#include <cmath>
#include <map>
#include <random>
#include <set>

#include "ugrowth/error.hpp"
#include "ugrowth/raag.hpp"

using namespace ugrowth;
using namespace ugrowth::raag;

namespace {

// Brute force over all words of length <= r in the free group: count the
// distinct freely reduced forms.
std::vector<std::uint64_t> free_ball_oracle(int n, int radius) {
  std::vector<std::uint64_t> sizes;
  std::set<std::vector<int>> seen;
  std::vector<std::vector<int>> layer{{}};
  seen.insert(std::vector<int>{});
  sizes.push_back(1);
  for (int r = 1; r <= radius; ++r) {
    std::vector<std::vector<int>> next;
    for (const auto& word : layer) {
      for (int g = 1; g <= n; ++g) {
        for (int s : {g, -g}) {
          auto extended = word;
          extended.push_back(s);
          std::vector<int> reduced;
          for (int x : extended) {
            if (!reduced.empty() && reduced.back() == -x) reduced.pop_back();
            else reduced.push_back(x);
          }
          next.push_back(extended);
          seen.insert(reduced);
        }
      }
    }
    layer = std::move(next);
    sizes.push_back(seen.size());
  }
  return sizes;
}

Word random_word(std::mt19937_64& rng, int n, int max_len) {
  Word w(rng() % static_cast<unsigned>(max_len + 1));
  for (auto& x : w) x = {static_cast<int>(rng() % static_cast<unsigned>(n)), rng() & 1 ? 1 : -1};
  return w;
}

DefiningGraph random_graph(std::mt19937_64& rng, int n) {
  std::vector<std::pair<int, int>> edges;
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v)
      if (rng() % 2) edges.emplace_back(u, v);
  return DefiningGraph(n, edges);
}

}  // namespace

TEST_CASE("defining graph validation") {
  CHECK_THROWS_AS(DefiningGraph(2, {{0, 0}}), Error);
  CHECK_THROWS_AS(DefiningGraph(2, {{0, 1}, {1, 0}}), Error);
  CHECK_THROWS_AS(DefiningGraph(2, {{0, 2}}), Error);
}

TEST_CASE("build_complement") {
  CHECK(build_complement(DefiningGraph::complete(3)).edge_count() == 0);
  CHECK(build_complement(DefiningGraph::complete(3)).max_degree() == 0);
  const auto cbar = build_complement(DefiningGraph(3, {{0, 2}}));
  CHECK(cbar.edge_count() == 2);
  CHECK(cbar.adjacent(0, 1));
  CHECK(cbar.adjacent(1, 2));
  CHECK_FALSE(cbar.adjacent(0, 2));
  CHECK(cbar.max_degree() == 2);
  CHECK(cbar.neighbors(1) == std::vector<int>{0, 2});
  CHECK(build_complement(DefiningGraph::empty(5)).max_degree() == 4);

  const auto shuffled = build_complement(DefiningGraph::empty(6), 42);
  for (int v = 0; v < 6; ++v) {
    auto nb = shuffled.neighbors(v);
    std::sort(nb.begin(), nb.end());
    CHECK(nb == build_complement(DefiningGraph::empty(6)).neighbors(v));
  }
}

TEST_CASE("growth_bound") {
  CHECK(growth_bound(3) == doctest::Approx(std::log(8.0) + 1).epsilon(1e-15));
  CHECK(growth_bound(7) == doctest::Approx(std::log(16.0) + 1).epsilon(1e-15));
  CHECK(growth_bound(0) == doctest::Approx(std::log(2.0) + 1).epsilon(1e-15));
  CHECK(growth_bound(3) == doctest::Approx(3.0794415416798357));
}

TEST_CASE("normal_form examples") {
  const auto free2 = DefiningGraph::empty(2);
  CHECK(normal_form({{0, 1}, {0, -1}}, free2).empty());
  const auto ab = DefiningGraph(2, {{0, 1}});
  CHECK(normal_form({{1, 1}, {0, 1}, {1, -1}}, ab) == Word{{0, 1}});
  const auto abc = DefiningGraph(3, {{0, 1}});
  CHECK(normal_form({{2, 1}, {0, 1}}, abc) == Word{{2, 1}, {0, 1}});
  CHECK(normal_form({{1, 1}, {0, 1}}, abc) == Word{{0, 1}, {1, 1}});
}

TEST_CASE("normal_form is constant on relation orbits") {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 10000; ++trial) {
    const int n = 1 + static_cast<int>(rng() % 6);
    const auto theta = random_graph(rng, n);
    const auto w = random_word(rng, n, 16);
    const auto nf = normal_form(w, theta);
    REQUIRE(normal_form(nf, theta) == nf);
    auto moved = w;
    for (int step = 0; step < 12; ++step) {
      const auto choice = rng() % 3;
      if (choice == 0 && moved.size() >= 2) {
        const auto i = rng() % (moved.size() - 1);
        if (theta.commutes(moved[i].vertex, moved[i + 1].vertex)) std::swap(moved[i], moved[i + 1]);
      } else if (choice == 1) {
        const auto i = rng() % (moved.size() + 1);
        const Letter x{static_cast<int>(rng() % static_cast<unsigned>(n)), rng() & 1 ? 1 : -1};
        moved.insert(moved.begin() + static_cast<std::ptrdiff_t>(i), {x, x.inverse()});
      } else if (moved.size() >= 2) {
        const auto i = rng() % (moved.size() - 1);
        if (moved[i] == moved[i + 1].inverse()) {
          moved.erase(moved.begin() + static_cast<std::ptrdiff_t>(i), moved.begin() + static_cast<std::ptrdiff_t>(i) + 2);
        }
      }
    }
    REQUIRE(normal_form(moved, theta) == nf);
  }
}

TEST_CASE("enumerate_ball against oracles") {
  const auto f2 = enumerate_ball(DefiningGraph::empty(2), 2);
  CHECK(f2.report.sizes == std::vector<std::uint64_t>{1, 5, 17});
  CHECK(enumerate_ball(DefiningGraph::empty(2), 5).report.sizes == free_ball_oracle(2, 5));
  CHECK(enumerate_ball(DefiningGraph::empty(3), 3).report.sizes == free_ball_oracle(3, 3));

  const auto z2 = enumerate_ball(DefiningGraph(2, {{0, 1}}), 2);
  CHECK(z2.report.sizes == std::vector<std::uint64_t>{1, 5, 13});
  const auto z2_far = enumerate_ball(DefiningGraph(2, {{0, 1}}), 8);
  for (int r = 0; r <= 8; ++r) {
    std::uint64_t lattice = 0;
    for (int x = -r; x <= r; ++x)
      for (int y = -r; y <= r; ++y)
        if (std::abs(x) + std::abs(y) <= r) ++lattice;
    CHECK(z2_far.report.sizes[static_cast<std::size_t>(r)] == lattice);
  }
  CHECK(enumerate_ball(DefiningGraph::path(3), 0).report.sizes == std::vector<std::uint64_t>{1});
}

TEST_CASE("free group closed form and growth toward log(2n-1)") {
  for (int n = 2; n <= 4; ++n) {
    const int radius = n == 2 ? 7 : 4;
    const auto ball = enumerate_ball(DefiningGraph::empty(n), radius);
    for (int r = 0; r <= radius; ++r) {
      const auto q = static_cast<std::uint64_t>(2 * n - 1);
      std::uint64_t pow = 1;
      for (int i = 0; i < r; ++i) pow *= q;
      const auto closed = 1 + static_cast<std::uint64_t>(2 * n) * (pow - 1) / static_cast<std::uint64_t>(2 * n - 2);
      CHECK(ball.report.sizes[static_cast<std::size_t>(r)] == closed);
    }
  }
  // log ratios approach log 3 from above for F_2
  const auto f2 = enumerate_ball(DefiningGraph::empty(2), 7);
  for (std::size_t r = 2; r < f2.report.log_ratios.size(); ++r) {
    CHECK(f2.report.log_ratios[r] < f2.report.log_ratios[r - 1]);
    CHECK(f2.report.log_ratios[r] > std::log(3.0));
  }
}

TEST_CASE("ball sizes are monotone and grow by a factor of at most 2n + 1") {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 2 + static_cast<int>(rng() % 3);
    const auto theta = random_graph(rng, n);
    const auto ball = enumerate_ball(theta, 4);
    for (std::size_t r = 1; r < ball.report.sizes.size(); ++r) {
      CHECK(ball.report.sizes[r - 1] <= ball.report.sizes[r]);
      CHECK(ball.report.sizes[r] <= ball.report.sizes[r - 1] * static_cast<std::uint64_t>(2 * n + 1));
    }
    for (const auto& e : ball.elements) {
      CHECK(normal_form(e.geodesic, theta) == e.normal_form);
      CHECK(e.normal_form.size() == e.geodesic.size());
    }
  }
}

TEST_CASE("ball guard and determinism across threads") {
  BallOptions tight;
  tight.guard_elements = 10;
  CHECK_THROWS_AS(enumerate_ball(DefiningGraph::empty(2), 3, tight), Error);
  BallOptions parallel;
  parallel.threads = 4;
  const auto a = enumerate_ball(DefiningGraph::path(4), 4);
  const auto b = enumerate_ball(DefiningGraph::path(4), 4, parallel);
  CHECK(a.report.sizes == b.report.sizes);
  REQUIRE(a.elements.size() == b.elements.size());
  for (std::size_t i = 0; i < a.elements.size(); ++i) CHECK(a.elements[i].geodesic == b.elements[i].geodesic);
}

TEST_CASE("commutation graphs from generator patterns") {
  CHECK(commutation_graph_from_generators({{0, 1}}, 2).edges().empty());
  CHECK(commutation_graph_from_generators({}, 3).edges().size() == 3);
  const auto chain = chain_commutation_graph(6);
  const auto cbar = build_complement(chain);
  CHECK(cbar.max_degree() == 2);
  CHECK(cbar.edge_count() == 5);
  for (int v = 0; v + 1 < 6; ++v) CHECK(cbar.adjacent(v, v + 1));
}

TEST_CASE("word text round trip") {
  const auto theta = DefiningGraph(3, {{0, 2}}, {"a", "b", "c"});
  const auto w = parse_word("a b' c", theta);
  CHECK(w == Word{{0, 1}, {1, -1}, {2, 1}});
  CHECK(format_word(w, theta) == "a b' c");
  CHECK(parse_word("  ", theta).empty());
  CHECK_THROWS_AS(parse_word("a d", theta), Error);
}
