#include "ugrowth/io.hpp"

#include <fstream>
#include <map>
#include <sstream>

#include "ugrowth/error.hpp"

namespace ugrowth::io {

namespace {

[[noreturn]] void bad(const std::string& what) { fail(ErrorCategory::parse, what); }

const Json& field(const Json& j, const char* key) {
  if (!j.is_object()) bad("expected a JSON object");
  const auto it = j.find(key);
  if (it == j.end()) bad(std::string("missing field '") + key + "'");
  return *it;
}

std::int64_t as_int(const Json& j, const char* what) {
  if (!j.is_number_integer()) bad(std::string(what) + " must be an integer");
  return j.get<std::int64_t>();
}

int as_small_int(const Json& j, const char* what) {
  const auto v = as_int(j, what);
  if (v < -(1 << 30) || v > (1 << 30)) bad(std::string(what) + " out of range");
  return static_cast<int>(v);
}

const Json& as_array(const Json& j, const char* what, std::size_t size = 0) {
  if (!j.is_array()) bad(std::string(what) + " must be an array");
  if (size && j.size() != size) bad(std::string(what) + " must have " + std::to_string(size) + " entries");
  return j;
}

// Parse errors from nlohmann keep their message but take our category.
template <class Fn>
auto guarded(Fn&& fn) {
  try {
    return fn();
  } catch (const nlohmann::json::exception& e) {
    bad(e.what());
  }
}

}  // namespace

Json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) bad("cannot read " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_json(buf.str());
}

Json parse_json(const std::string& text) {
  return guarded([&] { return Json::parse(text); });
}

raag::DefiningGraph defining_graph_from_json(const Json& j) {
  const int n = as_small_int(field(j, "n"), "n");
  std::vector<std::pair<int, int>> edges;
  for (const auto& e : as_array(field(j, "edges"), "edges")) {
    as_array(e, "edge", 2);
    edges.emplace_back(as_small_int(e[0], "edge endpoint"), as_small_int(e[1], "edge endpoint"));
  }
  std::vector<std::string> names;
  if (j.contains("names")) {
    for (const auto& name : as_array(j["names"], "names")) {
      if (!name.is_string()) bad("names must be strings");
      names.push_back(name.get<std::string>());
    }
  }
  return raag::DefiningGraph(n, std::move(edges), std::move(names));
}

Json to_json(const raag::DefiningGraph& g) {
  Json j;
  j["n"] = g.size();
  j["names"] = g.names();
  Json edges = Json::array();
  for (const auto& [u, v] : g.edges()) edges.push_back({u, v});
  j["edges"] = edges;
  return j;
}

code::Code code_from_json(const Json& j) {
  code::Code c;
  c.n = as_small_int(field(j, "n"), "n");
  c.c0 = as_small_int(field(j, "c0"), "c0");
  c.radius = as_small_int(field(j, "R"), "R");
  for (const auto& x : as_array(field(j, "code"), "code")) c.entries.push_back(as_int(x, "code entry"));
  return c;
}

Json to_json(const code::Code& c) {
  Json j;
  j["n"] = c.n;
  j["c0"] = c.c0;
  j["R"] = c.radius;
  j["code"] = c.entries;
  return j;
}

GroupElement element_from_json(const CoefficientGroup& group, const Json& j) {
  switch (group.kind) {
    case GroupKind::trivial:
      if ((j.is_array() && j.empty()) || (j.is_number_integer() && j.get<std::int64_t>() == 0)) {
        return GroupElement::identity(group);
      }
      bad("trivial group label must be [] or 0");
    case GroupKind::cyclic:
      return GroupElement::residue(group, as_int(j, "cyclic label"));
    case GroupKind::free: {
      std::vector<int> letters;
      for (const auto& x : as_array(j, "free group label")) letters.push_back(as_small_int(x, "generator"));
      return GroupElement::word(group, letters);
    }
  }
  bad("unknown group");
}

Json to_json(const GroupElement& g) {
  switch (g.group().kind) {
    case GroupKind::trivial: return Json::array();
    case GroupKind::cyclic: return g.residue_value();
    case GroupKind::free: return std::vector<int>(g.letters().begin(), g.letters().end());
  }
  return nullptr;
}

graph::LabeledGraph labeled_graph_from_json(const Json& j) {
  CoefficientGroup group;
  if (j.contains("group")) {
    if (!j["group"].is_string()) bad("group must be a string");
    group = CoefficientGroup::parse(j["group"].get<std::string>());
  }
  const auto& jv = as_array(field(j, "vertices"), "vertices");
  const auto& je = as_array(field(j, "edges"), "edges");

  std::map<std::int64_t, int> vertex_at;
  std::map<std::int64_t, int> edge_at;
  std::vector<graph::Vertex> vs(jv.size());
  std::vector<graph::Edge> es(je.size());
  for (std::size_t i = 0; i < jv.size(); ++i) {
    vs[i].label = as_int(field(jv[i], "label"), "vertex label");
    if (!vertex_at.emplace(vs[i].label, static_cast<int>(i)).second) bad("duplicate vertex label");
  }
  for (std::size_t i = 0; i < je.size(); ++i) {
    es[i].label = as_int(field(je[i], "label"), "edge label");
    if (!edge_at.emplace(es[i].label, static_cast<int>(i)).second) bad("duplicate edge label");
  }
  auto slot_of = [](const Json& x) {
    const int s = as_small_int(x, "slot");
    if (s < 1 || s > 3) bad("slots run from 1 to 3");
    return s - 1;
  };
  for (std::size_t i = 0; i < jv.size(); ++i) {
    const auto& slots = as_array(field(jv[i], "slots"), "slots", 3);
    for (std::size_t s = 0; s < 3; ++s) {
      const auto& ref = as_array(slots[s], "slot entry", 2);
      const auto it = edge_at.find(as_int(ref[0], "edge label"));
      if (it == edge_at.end()) bad("slot names an unknown edge");
      const int end = as_small_int(ref[1], "edge end");
      if (end != 0 && end != 1) bad("edge end must be 0 or 1");
      vs[i].slots[s] = {it->second, end};
    }
  }
  for (std::size_t i = 0; i < je.size(); ++i) {
    const char* keys[2] = {"from", "to"};
    for (std::size_t end = 0; end < 2; ++end) {
      const auto& ref = as_array(field(je[i], keys[end]), keys[end], 2);
      const auto it = vertex_at.find(as_int(ref[0], "vertex label"));
      if (it == vertex_at.end()) bad("edge names an unknown vertex");
      es[i].ends[end] = {it->second, slot_of(ref[1])};
    }
    es[i].g = je[i].contains("g") ? element_from_json(group, je[i]["g"]) : GroupElement::identity(group);
  }
  graph::LabeledGraph g(group, vs, es);
  if (j.contains("rank") && as_int(j["rank"], "rank") != g.rank()) {
    fail(ErrorCategory::invalid_argument, "rank field disagrees with the graph");
  }
  return g;
}

Json to_json(const graph::LabeledGraph& g) {
  Json j;
  j["group"] = g.group().to_string();
  j["rank"] = g.rank();
  Json vertices = Json::array();
  for (const auto& v : g.vertices()) {
    Json slots = Json::array();
    for (const auto& h : v.slots) slots.push_back({g.edge(h.edge).label, h.end});
    vertices.push_back({{"label", v.label}, {"slots", slots}});
  }
  Json edges = Json::array();
  for (const auto& e : g.edges()) {
    Json je;
    je["label"] = e.label;
    je["from"] = {g.vertex(e.ends[0].vertex).label, e.ends[0].slot + 1};
    je["to"] = {g.vertex(e.ends[1].vertex).label, e.ends[1].slot + 1};
    je["g"] = to_json(e.g);
    edges.push_back(je);
  }
  j["vertices"] = vertices;
  j["edges"] = edges;
  return j;
}

std::vector<graph::Split> splits_from_json(const Json& j) {
  std::vector<graph::Split> out;
  for (const auto& s : as_array(j, "derivation")) {
    graph::Split split;
    split.edge = as_int(field(s, "edge"), "edge");
    const auto& kind = field(s, "kind");
    if (kind == "double") {
      split.kind = graph::SplitKind::double_split;
    } else if (kind == "loop") {
      split.kind = graph::SplitKind::loop_split;
    } else {
      bad("split kind must be \"double\" or \"loop\"");
    }
    split.config = as_small_int(field(s, "config"), "config");
    const int limit = split.kind == graph::SplitKind::double_split ? 4 : 2;
    if (split.config < 0 || split.config >= limit) bad("split configuration out of range");
    out.push_back(split);
  }
  return out;
}

Json to_json(const std::vector<graph::Split>& splits) {
  Json out = Json::array();
  for (const auto& s : splits) {
    out.push_back({{"edge", s.edge},
                   {"kind", s.kind == graph::SplitKind::double_split ? "double" : "loop"},
                   {"config", s.config}});
  }
  return out;
}

tri::Gluing gluing_from_json(const Json& j) {
  tri::Gluing g;
  g.triangles = as_small_int(field(j, "triangles"), "triangles");
  g.genus = as_small_int(field(j, "genus"), "genus");
  g.punctures = as_small_int(field(j, "punctures"), "punctures");
  g.n = as_small_int(field(j, "n"), "n");
  auto side = [](const Json& x) {
    as_array(x, "side reference", 2);
    return tri::SideRef{as_small_int(x[0], "triangle"), as_small_int(x[1], "side")};
  };
  for (const auto& pair : as_array(field(j, "gluing"), "gluing")) {
    as_array(pair, "gluing pair", 2);
    g.pairs.emplace_back(side(pair[0]), side(pair[1]));
  }
  if (j.contains("puncture_vertices")) {
    for (const auto& v : as_array(j["puncture_vertices"], "puncture_vertices")) {
      g.puncture_vertices.push_back(as_small_int(v, "puncture vertex"));
    }
  }
  return g;
}

Json to_json(const tri::Gluing& g) {
  Json j;
  j["triangles"] = g.triangles;
  Json pairs = Json::array();
  for (const auto& [a, b] : g.pairs) pairs.push_back({{a.triangle, a.side}, {b.triangle, b.side}});
  j["gluing"] = pairs;
  j["genus"] = g.genus;
  j["punctures"] = g.punctures;
  j["n"] = g.n;
  if (!g.puncture_vertices.empty()) j["puncture_vertices"] = g.puncture_vertices;
  return j;
}

Json to_json(const tri::RibbonTriangulation& t) {
  Json j = to_json(t.dual());
  j["surface"] = {{"genus", t.surface().genus}, {"punctures", t.surface().punctures}, {"n", t.surface().n}};
  auto& vertices = j["vertices"];
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    const auto order = t.ccw_slots(static_cast<int>(i));
    vertices[i]["ccw"] = {order[0] + 1, order[1] + 1, order[2] + 1};
  }
  return j;
}

}  // namespace ugrowth::io
