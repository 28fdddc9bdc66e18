#pragma once

#include <filesystem>
#include <string>

#include <json.hpp>

#include "ugrowth/canonical_code.hpp"
#include "ugrowth/derivation.hpp"
#include "ugrowth/group.hpp"
#include "ugrowth/labeled_graph.hpp"
#include "ugrowth/raag.hpp"
#include "ugrowth/triangulation.hpp"

/// JSON formats. Every parser throws ErrorCategory::parse on malformed or
/// mistyped input; structural checks of the parsed object (trivalence,
/// gluing consistency) keep their own categories.
namespace ugrowth::io {

using Json = nlohmann::ordered_json;

/// Reads and parses a JSON file.
Json read_json_file(const std::filesystem::path& path);
Json parse_json(const std::string& text);

/// {"n": int, "names": [string], "edges": [[i, j]]}; names are optional.
raag::DefiningGraph defining_graph_from_json(const Json& j);
Json to_json(const raag::DefiningGraph& g);

/// {"n": .., "c0": .., "R": .., "code": [int]}
code::Code code_from_json(const Json& j);
Json to_json(const code::Code& c);

/// Free group: array of signed generator indices. Cyclic: the residue.
/// Trivial: an empty array or 0.
GroupElement element_from_json(const CoefficientGroup& group, const Json& j);
Json to_json(const GroupElement& g);

/// {"group": "free:2", "rank": n,
///  "vertices": [{"label": int, "slots": [[edge label, end] x3]}],
///  "edges": [{"label": int, "from": [vertex label, slot], "to": [..], "g": ..}]}
/// Slots are 1..3 and ends 0 (init) or 1 (term). "group" defaults to
/// trivial; "rank" is checked when present. Storage order follows the lists.
graph::LabeledGraph labeled_graph_from_json(const Json& j);
Json to_json(const graph::LabeledGraph& g);

/// Ordered list of {"edge": int, "kind": "double"|"loop", "config": int}.
std::vector<graph::Split> splits_from_json(const Json& j);
Json to_json(const std::vector<graph::Split>& splits);

/// {"triangles": t, "gluing": [[[tri, side], [tri, side]], ..], "genus": g,
///  "punctures": p, "n": n, "puncture_vertices": [..] (optional)}
tri::Gluing gluing_from_json(const Json& j);
Json to_json(const tri::Gluing& g);

/// The dual as a labeled graph with "surface" and, per vertex, "ccw": the
/// slot labels in counterclockwise order.
Json to_json(const tri::RibbonTriangulation& t);

}  // namespace ugrowth::io
