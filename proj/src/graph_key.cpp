#include "ugrowth/graph_key.hpp"

#include <algorithm>
#include <array>
#include <compare>
#include <map>
#include <numeric>

#include "ugrowth/error.hpp"

namespace ugrowth::graph {

namespace {

// Edge label codes are replaced by their rank in the sorted list of all codes
// occurring in the graph; the list itself goes into the key.
struct KeySearch {
  int nv = 0;
  // cell (a, b) holds the sorted code ranks of edges a -> b read in that direction
  std::vector<int> cell_codes;
  std::vector<int> cell_count;
  std::vector<int> nbr;
  std::vector<int> nbr_count;
  std::vector<int> order;
  std::vector<char> placed;
  std::vector<int> current;
  std::vector<int> current_start;
  std::vector<int> best;
  std::vector<int> best_start;
  int match_len = -1;  // leading rows of current equal to best; -1 while no best exists
  int version = 0;

  std::size_t at(int a, int b) const { return static_cast<std::size_t>(a * nv + b); }

  void append_cell(int a, int b) {
    const auto c = at(a, b);
    const int k = cell_count[c];
    current.push_back(k);
    for (int i = 0; i < k; ++i) current.push_back(cell_codes[c * 3 + static_cast<std::size_t>(i)]);
  }

  void append_row(int v) {
    append_cell(v, v);
    for (int u : order) append_cell(u, v);
  }

  int compare_with_best(std::size_t depth, std::size_t from) const {
    const auto b0 = best.begin() + best_start[depth];
    const auto b1 = best.begin() + best_start[depth + 1];
    const auto c = std::lexicographical_compare_three_way(current.begin() + static_cast<std::ptrdiff_t>(from), current.end(),
                                                          b0, b1);
    return c < 0 ? -1 : (c > 0 ? 1 : 0);
  }

  void extend() {
    const auto depth = order.size();
    if (depth == static_cast<std::size_t>(nv)) {
      if (match_len < nv) {
        best = current;
        best_start = current_start;
        match_len = nv;
        ++version;
      }
      return;
    }
    for (int v = 0; v < nv; ++v) {
      if (placed[static_cast<std::size_t>(v)]) continue;
      if (depth > 0) {
        bool touches = false;
        for (int k = 0; k < nbr_count[static_cast<std::size_t>(v)]; ++k) {
          touches = touches || placed[static_cast<std::size_t>(nbr[static_cast<std::size_t>(v) * 3 + static_cast<std::size_t>(k)])];
        }
        if (!touches) continue;
      }
      const auto from = current.size();
      append_row(v);
      const int saved = match_len;
      const int seen = version;
      if (match_len >= static_cast<int>(depth)) {
        const int c = compare_with_best(depth, from);
        if (c > 0) {
          current.resize(from);
          continue;
        }
        match_len = c == 0 ? static_cast<int>(depth) + 1 : static_cast<int>(depth);
      }
      placed[static_cast<std::size_t>(v)] = 1;
      order.push_back(v);
      current_start.push_back(static_cast<int>(current.size()));
      extend();
      current_start.pop_back();
      order.pop_back();
      placed[static_cast<std::size_t>(v)] = 0;
      current.resize(from);
      // a new best was copied from below, so it shares this prefix
      match_len = version != seen ? static_cast<int>(depth) : saved;
    }
  }
};

bool shortlex_less(const std::vector<int>& x, const std::vector<int>& y) {
  return x.size() != y.size() ? x.size() < y.size() : x < y;
}

void put_int(std::string& key, int x) {
  const auto u = static_cast<std::uint32_t>(x);
  for (int shift = 0; shift < 32; shift += 8) key.push_back(static_cast<char>((u >> shift) & 0xff));
}

}  // namespace

std::string canonical_key(const LabeledGraph& g) {
  KeySearch search;
  search.nv = static_cast<int>(g.vertices().size());
  const auto nv = static_cast<std::size_t>(search.nv);

  std::vector<std::vector<int>> dictionary;
  std::vector<std::array<std::vector<int>, 2>> codes;
  codes.reserve(g.edges().size());
  for (const auto& e : g.edges()) {
    auto forward = e.g.serialize();
    auto backward = invert(e.g).serialize();
    if (e.is_loop() && shortlex_less(backward, forward)) forward = backward;
    dictionary.push_back(forward);
    if (!e.is_loop()) dictionary.push_back(backward);
    codes.push_back({std::move(forward), std::move(backward)});
  }
  std::sort(dictionary.begin(), dictionary.end());
  dictionary.erase(std::unique(dictionary.begin(), dictionary.end()), dictionary.end());
  const auto rank_of = [&](const std::vector<int>& c) {
    return static_cast<int>(std::lower_bound(dictionary.begin(), dictionary.end(), c) - dictionary.begin());
  };

  search.cell_codes.assign(nv * nv * 3, 0);
  search.cell_count.assign(nv * nv, 0);
  search.nbr.assign(nv * 3, -1);
  search.nbr_count.assign(nv, 0);
  const auto add = [&](int a, int b, int code) {
    const auto c = search.at(a, b);
    search.cell_codes[c * 3 + static_cast<std::size_t>(search.cell_count[c]++)] = code;
  };
  for (std::size_t i = 0; i < g.edges().size(); ++i) {
    const auto& e = g.edges()[i];
    const int a = e.ends[0].vertex;
    const int b = e.ends[1].vertex;
    if (a == b) {
      add(a, a, rank_of(codes[i][0]));
    } else {
      add(a, b, rank_of(codes[i][0]));
      add(b, a, rank_of(codes[i][1]));
      search.nbr[static_cast<std::size_t>(a) * 3 + static_cast<std::size_t>(search.nbr_count[static_cast<std::size_t>(a)]++)] = b;
      search.nbr[static_cast<std::size_t>(b) * 3 + static_cast<std::size_t>(search.nbr_count[static_cast<std::size_t>(b)]++)] = a;
    }
  }
  for (std::size_t c = 0; c < nv * nv; ++c) {
    std::sort(search.cell_codes.begin() + static_cast<std::ptrdiff_t>(c * 3),
              search.cell_codes.begin() + static_cast<std::ptrdiff_t>(c * 3) + search.cell_count[c]);
  }
  search.placed.assign(nv, 0);
  search.order.reserve(nv);
  search.current.reserve(nv * (nv + 4));
  search.current_start.reserve(nv + 1);
  search.current_start.push_back(0);
  search.extend();
  if (search.best_start.size() != nv + 1) fail(ErrorCategory::invalid_argument, "canonical_key needs a connected graph");

  std::string key = g.group().to_string();
  key.push_back('|');
  for (const auto& c : dictionary) {
    put_int(key, static_cast<int>(c.size()));
    for (int x : c) put_int(key, x);
  }
  key.push_back('|');
  for (std::size_t r = 0; r < nv; ++r) {
    for (int i = search.best_start[r]; i < search.best_start[r + 1]; ++i) put_int(key, search.best[static_cast<std::size_t>(i)]);
    key.push_back('/');
  }
  return key;
}

std::vector<LabeledGraph> trivalent_graphs(int rank, const CoefficientGroup& group) {
  if (rank < 2 || rank > 3) fail(ErrorCategory::invalid_argument, "trivalent graph enumeration supports rank 2 and 3");
  const int nv = 2 * rank - 2;
  const int halves = 3 * nv;
  std::map<std::string, LabeledGraph> found;
  std::vector<int> partner(static_cast<std::size_t>(halves), -1);
  const auto id = GroupElement::identity(group);

  auto emit = [&]() {
    std::vector<std::tuple<int, int, GroupElement>> edges;
    for (int h = 0; h < halves; ++h) {
      const int o = partner[static_cast<std::size_t>(h)];
      if (h < o) edges.emplace_back(h / 3, o / 3, id);
    }
    try {
      auto g = LabeledGraph::from_edges(group, nv, edges);
      found.emplace(canonical_key(g), std::move(g));
    } catch (const Error&) {
      // disconnected pairing
    }
  };
  auto pair_up = [&](auto&& self) -> void {
    int first = 0;
    while (first < halves && partner[static_cast<std::size_t>(first)] >= 0) ++first;
    if (first == halves) {
      emit();
      return;
    }
    for (int h = first + 1; h < halves; ++h) {
      if (partner[static_cast<std::size_t>(h)] >= 0) continue;
      partner[static_cast<std::size_t>(first)] = h;
      partner[static_cast<std::size_t>(h)] = first;
      self(self);
      partner[static_cast<std::size_t>(first)] = -1;
      partner[static_cast<std::size_t>(h)] = -1;
    }
  };
  pair_up(pair_up);

  std::vector<LabeledGraph> out;
  for (auto& [key, g] : found) out.push_back(std::move(g));
  return out;
}

}  // namespace ugrowth::graph
