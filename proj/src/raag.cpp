#include "ugrowth/raag.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <sstream>
#include <unordered_set>

#include "ugrowth/error.hpp"
#include "ugrowth/parallel.hpp"

namespace ugrowth::raag {

DefiningGraph::DefiningGraph(int n, std::vector<std::pair<int, int>> edges, std::vector<std::string> names)
    : n_(n), names_(std::move(names)) {
  if (n < 0) fail(ErrorCategory::invalid_argument, "vertex count must be >= 0");
  if (names_.empty()) {
    for (int v = 0; v < n; ++v) {
      names_.push_back(n <= 26 ? std::string(1, static_cast<char>('a' + v)) : "s" + std::to_string(v));
    }
  }
  if (static_cast<int>(names_.size()) != n) {
    fail(ErrorCategory::invalid_argument, "names must list one entry per vertex");
  }
  adjacency_.assign(static_cast<std::size_t>(n) * static_cast<std::size_t>(n), 0);
  for (auto [u, v] : edges) {
    if (u < 0 || v < 0 || u >= n || v >= n) {
      fail(ErrorCategory::invalid_argument, "edge endpoint out of range");
    }
    if (u == v) fail(ErrorCategory::invalid_argument, "defining graph must not have self-loops");
    if (u > v) std::swap(u, v);
    auto& cell = adjacency_[static_cast<std::size_t>(u * n + v)];
    if (cell) fail(ErrorCategory::invalid_argument, "defining graph must not have duplicate edges");
    cell = 1;
    adjacency_[static_cast<std::size_t>(v * n + u)] = 1;
    edges_.emplace_back(u, v);
  }
  std::sort(edges_.begin(), edges_.end());
}

DefiningGraph DefiningGraph::empty(int n) { return DefiningGraph(n, {}); }

DefiningGraph DefiningGraph::complete(int n) {
  std::vector<std::pair<int, int>> edges;
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v) edges.emplace_back(u, v);
  return DefiningGraph(n, std::move(edges));
}

DefiningGraph DefiningGraph::path(int n) {
  std::vector<std::pair<int, int>> edges;
  for (int v = 0; v + 1 < n; ++v) edges.emplace_back(v, v + 1);
  return DefiningGraph(n, std::move(edges));
}

bool ComplementGraph::adjacent(int u, int v) const {
  const auto& nb = neighbors(u);
  return std::find(nb.begin(), nb.end(), v) != nb.end();
}

std::size_t ComplementGraph::edge_count() const {
  std::size_t degree_sum = 0;
  for (const auto& nb : neighbors_) degree_sum += nb.size();
  return degree_sum / 2;
}

ComplementGraph build_complement(const DefiningGraph& theta, std::optional<std::uint64_t> half_edge_seed) {
  ComplementGraph cbar;
  const int n = theta.size();
  cbar.neighbors_.resize(static_cast<std::size_t>(n));
  std::mt19937_64 rng(half_edge_seed.value_or(0));
  for (int v = 0; v < n; ++v) {
    auto& nb = cbar.neighbors_[static_cast<std::size_t>(v)];
    for (int u = 0; u < n; ++u) {
      if (u != v && !theta.adjacent(u, v)) nb.push_back(u);
    }
    if (half_edge_seed) std::shuffle(nb.begin(), nb.end(), rng);
    cbar.c0_ = std::max(cbar.c0_, static_cast<int>(nb.size()));
  }
  return cbar;
}

Word parse_word(std::string_view text, const DefiningGraph& theta) {
  Word w;
  std::istringstream in{std::string(text)};
  std::string token;
  while (in >> token) {
    int sign = 1;
    if (token.size() > 1 && token.back() == '\'') {
      sign = -1;
      token.pop_back();
    }
    const auto& names = theta.names();
    const auto it = std::find(names.begin(), names.end(), token);
    if (it == names.end()) fail(ErrorCategory::parse, "unknown generator '" + token + "'");
    w.push_back({static_cast<int>(it - names.begin()), sign});
  }
  return w;
}

std::string format_word(const Word& w, const DefiningGraph& theta) {
  std::string out;
  for (const auto& letter : w) {
    if (!out.empty()) out += ' ';
    out += theta.names()[static_cast<std::size_t>(letter.vertex)];
    if (letter.sign < 0) out += '\'';
  }
  return out;
}

Word normal_form(const Word& w, const DefiningGraph& theta) {
  Word reduced;
  reduced.reserve(w.size());
  for (const auto& x : w) {
    if (x.vertex < 0 || x.vertex >= theta.size()) {
      fail(ErrorCategory::invalid_argument, "letter outside the defining graph");
    }
    bool cancelled = false;
    for (auto j = reduced.size(); j-- > 0;) {
      if (reduced[j].vertex == x.vertex) {
        if (reduced[j].sign == -x.sign) {
          reduced.erase(reduced.begin() + static_cast<std::ptrdiff_t>(j));
          cancelled = true;
        }
        break;
      }
      if (!theta.commutes(reduced[j].vertex, x.vertex)) break;
    }
    if (!cancelled) reduced.push_back(x);
  }

  // Greedy least letter among those that commute past everything before them.
  Word out;
  out.reserve(reduced.size());
  while (!reduced.empty()) {
    std::size_t best = 0;
    for (std::size_t k = 1; k < reduced.size(); ++k) {
      if (!(reduced[k] < reduced[best])) continue;
      bool ready = true;
      for (std::size_t j = 0; j < k && ready; ++j) ready = theta.commutes(reduced[j].vertex, reduced[k].vertex);
      if (ready) best = k;
    }
    out.push_back(reduced[best]);
    reduced.erase(reduced.begin() + static_cast<std::ptrdiff_t>(best));
  }
  return out;
}

double growth_bound(int c0) {
  if (c0 < 0) fail(ErrorCategory::invalid_argument, "c0 must be >= 0");
  return std::log(2.0 * c0 + 2.0) + 1.0;
}

DefiningGraph commutation_graph_from_generators(const std::vector<std::pair<int, int>>& non_commuting,
                                                int count) {
  std::vector<std::uint8_t> blocked(static_cast<std::size_t>(count) * static_cast<std::size_t>(count), 0);
  for (auto [u, v] : non_commuting) {
    if (u < 0 || v < 0 || u >= count || v >= count) {
      fail(ErrorCategory::invalid_argument, "generator index out of range");
    }
    blocked[static_cast<std::size_t>(u * count + v)] = 1;
    blocked[static_cast<std::size_t>(v * count + u)] = 1;
  }
  std::vector<std::pair<int, int>> edges;
  for (int u = 0; u < count; ++u)
    for (int v = u + 1; v < count; ++v)
      if (!blocked[static_cast<std::size_t>(u * count + v)]) edges.emplace_back(u, v);
  return DefiningGraph(count, std::move(edges));
}

DefiningGraph chain_commutation_graph(int n) {
  std::vector<std::pair<int, int>> non_commuting;
  for (int v = 0; v + 1 < n; ++v) non_commuting.emplace_back(v, v + 1);
  return commutation_graph_from_generators(non_commuting, n);
}

namespace {

std::string word_key(const Word& w) {
  std::string key;
  key.reserve(w.size() * 3);
  for (const auto& x : w) {
    const auto code = static_cast<std::uint32_t>(x.vertex) * 2u + (x.sign > 0 ? 1u : 0u);
    key.push_back(static_cast<char>(code & 0xff));
    key.push_back(static_cast<char>((code >> 8) & 0xff));
    key.push_back(static_cast<char>((code >> 16) & 0xff));
  }
  return key;
}

struct Candidate {
  Word normal_form;
  std::size_t parent = 0;
  Letter letter;
};

}  // namespace

Ball enumerate_ball(const DefiningGraph& theta, int radius, const BallOptions& options) {
  if (radius < 0) fail(ErrorCategory::invalid_argument, "radius must be >= 0");
  Ball ball;
  const int c0 = build_complement(theta).max_degree();
  ball.report.c0 = c0;
  ball.report.bound = growth_bound(c0);

  std::unordered_set<std::string> seen;
  ball.elements.push_back({});
  seen.insert(word_key({}));
  ball.report.sizes.push_back(1);
  ball.report.log_ratios.push_back(0.0);

  std::vector<std::size_t> frontier{0};
  for (int r = 1; r <= radius; ++r) {
    auto expanded = ordered_map(std::span<const std::size_t>(frontier), options.threads, [&](std::size_t index) {
      std::vector<Candidate> out;
      const auto& base = ball.elements[index].normal_form;
      for (int v = 0; v < theta.size(); ++v) {
        for (int sign : {1, -1}) {
          Word w = base;
          w.push_back({v, sign});
          out.push_back({normal_form(w, theta), index, {v, sign}});
        }
      }
      return out;
    });
    std::vector<std::size_t> next;
    for (auto& batch : expanded) {
      for (auto& cand : batch) {
        if (!seen.insert(word_key(cand.normal_form)).second) continue;
        if (ball.elements.size() >= options.guard_elements) {
          fail(ErrorCategory::resource,
               "ball enumeration exceeded the guard of " + std::to_string(options.guard_elements) + " elements");
        }
        Word geodesic = ball.elements[cand.parent].geodesic;
        geodesic.push_back(cand.letter);
        next.push_back(ball.elements.size());
        ball.elements.push_back({std::move(cand.normal_form), std::move(geodesic)});
      }
    }
    frontier = std::move(next);
    ball.report.sizes.push_back(ball.elements.size());
    ball.report.log_ratios.push_back(std::log(static_cast<double>(ball.elements.size())) / r);
  }
  return ball;
}

}  // namespace ugrowth::raag
