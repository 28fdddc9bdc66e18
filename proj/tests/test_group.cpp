#include <doctest.h>

#include <random>

#include "ugrowth/error.hpp"
#include "ugrowth/group.hpp"

using namespace ugrowth;

namespace {

const auto F3 = CoefficientGroup::free(3);

GroupElement w(std::initializer_list<int> letters) { return GroupElement::word(F3, std::vector<int>(letters)); }

GroupElement random_element(const CoefficientGroup& g, std::mt19937_64& rng) {
  switch (g.kind) {
    case GroupKind::trivial: return GroupElement::identity(g);
    case GroupKind::cyclic: return GroupElement::residue(g, static_cast<std::int64_t>(rng() % 1000));
    case GroupKind::free: {
      std::vector<int> letters(rng() % 8);
      for (int& x : letters) {
        x = static_cast<int>(rng() % static_cast<unsigned>(g.parameter)) + 1;
        if (rng() & 1) x = -x;
      }
      return GroupElement::word(g, letters);
    }
  }
  return {};
}

// Conjugacy oracle independent of the library: compare all rotations of
// the cyclically reduced cores by brute force.
bool conjugate_by_rotation(std::vector<int> a, std::vector<int> b) {
  auto core = [](std::vector<int> x) {
    while (x.size() >= 2 && x.front() == -x.back()) {
      x.erase(x.begin());
      x.pop_back();
    }
    return x;
  };
  a = core(a);
  b = core(b);
  if (a.size() != b.size()) return false;
  if (a.empty()) return true;
  for (std::size_t s = 0; s < a.size(); ++s) {
    std::rotate(a.begin(), a.begin() + 1, a.end());
    if (a == b) return true;
  }
  return false;
}

}  // namespace

TEST_CASE("multiply cancels and reduces") {
  CHECK(multiply(w({1}), w({-1})).is_identity());
  CHECK(multiply(w({1, 2}), w({-2, 3})) == w({1, 3}));
  const auto z5 = CoefficientGroup::cyclic(5);
  CHECK(multiply(GroupElement::residue(z5, 3), GroupElement::residue(z5, 4)).residue_value() == 2);
}

TEST_CASE("invert") {
  CHECK(invert(GroupElement::identity(F3)).is_identity());
  CHECK(invert(w({1, 2})) == w({-2, -1}));
  const auto z5 = CoefficientGroup::cyclic(5);
  CHECK(invert(GroupElement::residue(z5, 2)).residue_value() == 3);
}

TEST_CASE("equal and conjugate_equal") {
  CHECK(equal(w({1, 2}), GroupElement::word(F3, std::vector<int>{1, -1, 1, 2})));
  CHECK_FALSE(equal(w({1}), w({2})));
  const auto triv = CoefficientGroup::trivial();
  CHECK(equal(GroupElement::identity(triv), GroupElement::generator(triv, 1)));
  CHECK(conjugate_equal(w({1, 2}), w({2, 1})));
  CHECK_FALSE(conjugate_equal(w({1}), w({-1})));
  CHECK(conjugate_equal(GroupElement::identity(triv), GroupElement::identity(triv)));
  CHECK(conjugate_equal(w({3, 1, 2, -3}), w({2, 1})));
}

TEST_CASE("mismatched groups are rejected") {
  const auto z5 = CoefficientGroup::cyclic(5);
  CHECK_THROWS_AS(multiply(w({1}), GroupElement::residue(z5, 1)), Error);
  CHECK_THROWS_AS(equal(w({1}), GroupElement::word(CoefficientGroup::free(2), std::vector<int>{1})), Error);
  CHECK_THROWS_AS(GroupElement::word(F3, std::vector<int>{4}), Error);
}

TEST_CASE("descriptor parsing") {
  CHECK(CoefficientGroup::parse("trivial") == CoefficientGroup::trivial());
  CHECK(CoefficientGroup::parse("free:2") == CoefficientGroup::free(2));
  CHECK(CoefficientGroup::parse("cyclic:3") == CoefficientGroup::cyclic(3));
  CHECK_THROWS_AS(CoefficientGroup::parse("cyclic:0"), Error);
  CHECK_THROWS_AS(CoefficientGroup::parse("abelian:2"), Error);
  CHECK_THROWS_AS(CoefficientGroup::parse("free:x"), Error);
}

TEST_CASE("group laws on random triples") {
  std::mt19937_64 rng(7);
  for (const auto& g : {CoefficientGroup::trivial(), CoefficientGroup::cyclic(7), CoefficientGroup::free(2)}) {
    for (int trial = 0; trial < 10000; ++trial) {
      const auto a = random_element(g, rng);
      const auto b = random_element(g, rng);
      const auto c = random_element(g, rng);
      REQUIRE(multiply(multiply(a, b), c) == multiply(a, multiply(b, c)));
      REQUIRE(multiply(a, GroupElement::identity(g)) == a);
      REQUIRE(multiply(invert(a), a).is_identity());
      REQUIRE(multiply(a, invert(a)).is_identity());
    }
  }
}

TEST_CASE("free reduction is confluent") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 2000; ++trial) {
    std::vector<int> letters(rng() % 14);
    for (int& x : letters) x = (rng() & 1 ? 1 : -1) * static_cast<int>(rng() % 2 + 1);
    const auto direct = free_group::reduce(letters);
    // Cancel a random adjacent inverse pair first, then reduce the rest.
    auto shuffled = letters;
    for (int step = 0; step < 6; ++step) {
      std::vector<std::size_t> spots;
      for (std::size_t i = 0; i + 1 < shuffled.size(); ++i)
        if (shuffled[i] == -shuffled[i + 1]) spots.push_back(i);
      if (spots.empty()) break;
      const auto at = spots[rng() % spots.size()];
      shuffled.erase(shuffled.begin() + static_cast<std::ptrdiff_t>(at), shuffled.begin() + static_cast<std::ptrdiff_t>(at) + 2);
    }
    REQUIRE(free_group::reduce(shuffled) == direct);
  }
}

TEST_CASE("conjugacy is an equivalence implied by equality and matches the rotation oracle") {
  std::mt19937_64 rng(3);
  const auto F2 = CoefficientGroup::free(2);
  std::vector<GroupElement> sample;
  for (int i = 0; i < 120; ++i) sample.push_back(random_element(F2, rng));
  // add explicit conjugates so the relation is non-trivial
  for (int i = 0; i < 40; ++i) {
    const auto g = random_element(F2, rng);
    sample.push_back(multiply(multiply(g, sample[static_cast<std::size_t>(i)]), invert(g)));
  }
  for (const auto& a : sample) {
    CHECK(conjugate_equal(a, a));
    for (const auto& b : sample) {
      const bool ab = conjugate_equal(a, b);
      REQUIRE(ab == conjugate_equal(b, a));
      REQUIRE(ab == conjugate_by_rotation({a.letters().begin(), a.letters().end()},
                                          {b.letters().begin(), b.letters().end()}));
      if (a == b) REQUIRE(ab);
      if (ab) {
        const auto g = free_group::conjugator(a, b);
        REQUIRE(g.has_value());
        REQUIRE(multiply(multiply(*g, a), invert(*g)) == b);
      }
    }
  }
}

TEST_CASE("primitive roots and simultaneous conjugacy") {
  const auto F2 = CoefficientGroup::free(2);
  const auto x = GroupElement::generator(F2, 1);
  const auto y = GroupElement::generator(F2, 2);
  const auto xy = multiply(x, y);
  CHECK(free_group::primitive_root(power(xy, 3)) == xy);
  const auto conj = multiply(y, multiply(power(x, 2), invert(y)));
  CHECK(free_group::primitive_root(conj) == multiply(y, multiply(x, invert(y))));

  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 500; ++trial) {
    std::vector<GroupElement> xs;
    for (int i = 0; i < 3; ++i) xs.push_back(random_element(F2, rng));
    const auto g = random_element(F2, rng);
    std::vector<GroupElement> ys;
    for (const auto& e : xs) ys.push_back(multiply(multiply(g, e), invert(g)));
    REQUIRE(free_group::simultaneously_conjugate(xs, ys));
  }
  const std::vector<GroupElement> xs{x, y};
  const std::vector<GroupElement> ys{x, multiply(x, multiply(y, invert(x)))};
  CHECK(free_group::simultaneously_conjugate(xs, ys));
  // each entry is conjugate on its own, but no single conjugator works
  const std::vector<GroupElement> bad{multiply(y, multiply(x, invert(y))), multiply(x, multiply(y, invert(x)))};
  CHECK_FALSE(free_group::simultaneously_conjugate(xs, bad));
  // Conjugator must be a power of x times something: x^5 conjugation of y.
  const std::vector<GroupElement> far{x, multiply(power(x, 5), multiply(y, power(x, -5)))};
  CHECK(free_group::simultaneously_conjugate(xs, far));
}
