#include "cli.hpp"

#include <chrono>
#include <cmath>
#include <map>
#include <optional>
#include <random>
#include <set>

#include <CLI11.hpp>

#include "ugrowth/canonical_code.hpp"
#include "ugrowth/counting.hpp"
#include "ugrowth/derivation.hpp"
#include "ugrowth/error.hpp"
#include "ugrowth/graph_ball.hpp"
#include "ugrowth/graph_key.hpp"
#include "ugrowth/io.hpp"
#include "ugrowth/parallel.hpp"
#include "ugrowth/raag.hpp"
#include "ugrowth/triangulation.hpp"

namespace ugrowth::cli {

namespace {

using io::Json;
using Clock = std::chrono::steady_clock;

struct Config {
  std::string input;
  int radius = 0;
  std::string group;
  std::size_t guard_elements = 0;  // 0: the module default
  std::string format = "json";
  std::optional<std::uint64_t> seed;
  unsigned threads = 1;
  std::string word;
  std::string derivation;
  std::size_t samples = 100;
  int graph_radius = -1;
  int c0 = 3;
  std::optional<int> n;
  bool timings = false;
};

struct Report {
  std::string command;
  Json parameters = Json::object();
  std::vector<std::string> columns;
  std::vector<Json> rows;
  Json summary = Json::object();
  std::vector<std::pair<std::string, bool>> checks;
  Json timings = Json::object();

  void check(const std::string& name, bool ok) { checks.emplace_back(name, ok); }
  bool passed() const {
    for (const auto& [name, ok] : checks) {
      if (!ok) return false;
    }
    return true;
  }
};

// Wall-clock milliseconds, recorded only under --timings.
class Stopwatch {
 public:
  Stopwatch(Report& report, bool enabled) : report_(report), enabled_(enabled) {}
  void lap(const std::string& name) {
    if (!enabled_) return;
    const auto now = Clock::now();
    report_.timings[name] = std::chrono::duration<double, std::milli>(now - last_).count();
    last_ = now;
  }

 private:
  Report& report_;
  bool enabled_;
  Clock::time_point last_ = Clock::now();
};

double log_ratio(std::uint64_t size, int r) { return r == 0 ? 0.0 : std::log(static_cast<double>(size)) / r; }

std::string big(const counting::BigInt& x) { return x.str(); }

Json common_parameters(const Config& c) {
  Json p;
  p["input"] = c.input;
  p["radius"] = c.radius;
  return p;
}

Report raag_ball(const Config& c) {
  Report report;
  report.command = "raag ball";
  Stopwatch watch(report, c.timings);
  const auto theta = io::defining_graph_from_json(io::read_json_file(c.input));
  const auto cbar = raag::build_complement(theta, c.seed);
  const int n = theta.size();
  const int c0 = cbar.max_degree();
  raag::BallOptions options;
  if (c.guard_elements) options.guard_elements = c.guard_elements;
  options.threads = c.threads;
  const auto ball = raag::enumerate_ball(theta, c.radius, options);
  watch.lap("ball");

  // Every element gets its code; distinct elements must get distinct codes.
  const auto l0 = code::VertexLabeling::initial(n);
  struct Outcome {
    std::vector<std::int64_t> entries;
    bool valid = false;
  };
  const auto outcomes = ordered_map(std::span<const raag::BallElement>(ball.elements), c.threads,
                                    [&](const raag::BallElement& e) {
                                      const auto result = code::canonical_representative(e.geodesic, cbar, l0);
                                      const auto padded = code::pad(result.code, c.radius);
                                      const bool valid = code::verify_code(padded) &&
                                                         code::decode(padded, cbar, l0) == result.word &&
                                                         raag::normal_form(result.word, theta) == e.normal_form;
                                      return Outcome{padded.entries, valid};
                                    });
  std::set<std::vector<std::int64_t>> codes;
  bool valid = true;
  for (const auto& o : outcomes) {
    valid = valid && o.valid;
    codes.insert(o.entries);
  }
  watch.lap("codes");

  report.parameters = common_parameters(c);
  report.parameters["seed"] = c.seed ? Json(*c.seed) : Json(nullptr);
  report.columns = {"radius", "size", "log_ratio", "bound", "code_count", "code_count_log_ratio"};
  bool within = true;
  for (int r = 0; r <= c.radius; ++r) {
    const auto size = ball.report.sizes[static_cast<std::size_t>(r)];
    const auto count = counting::count_codes(n, c0, r);
    within = within && counting::BigInt(size) <= count;
    report.rows.push_back(Json::array({r, size, log_ratio(size, r), ball.report.bound, big(count),
                                       r == 0 ? 0.0 : counting::log_big(count) / r}));
  }
  report.summary["n"] = n;
  report.summary["c0"] = c0;
  report.summary["bound"] = ball.report.bound;
  report.summary["elements"] = ball.elements.size();
  report.summary["distinct_codes"] = codes.size();
  report.check("codes_valid", valid);
  report.check("codes_distinct", codes.size() == ball.elements.size());
  report.check("ball_within_code_count", within);
  return report;
}

Report raag_code(const Config& c) {
  Report report;
  report.command = "raag code";
  Stopwatch watch(report, c.timings);
  const auto theta = io::defining_graph_from_json(io::read_json_file(c.input));
  const auto cbar = raag::build_complement(theta, c.seed);
  const auto w = raag::parse_word(c.word, theta);
  const auto l0 = code::VertexLabeling::initial(theta.size());
  const auto result = code::canonical_representative(w, cbar, l0);
  const int radius = std::max(c.radius, static_cast<int>(w.size()));
  const auto padded = code::pad(result.code, radius);
  watch.lap("code");

  auto sorted_letters = [](raag::Word x) {
    std::sort(x.begin(), x.end());
    return x;
  };
  report.parameters = common_parameters(c);
  report.parameters["word"] = c.word;
  report.parameters["seed"] = c.seed ? Json(*c.seed) : Json(nullptr);
  report.columns = {"position", "letter", "label"};
  for (std::size_t i = 0; i < result.word.size(); ++i) {
    report.rows.push_back(
        Json::array({i + 1, raag::format_word({result.word[i]}, theta), result.code.entries[i]}));
  }
  report.summary["canonical_word"] = raag::format_word(result.word, theta);
  report.summary["code"] = io::to_json(result.code);
  report.summary["padded_code"] = io::to_json(padded);
  report.check("reordering", sorted_letters(result.word) == sorted_letters(w));
  report.check("same_element", raag::normal_form(result.word, theta) == raag::normal_form(w, theta));
  report.check("code_valid", code::verify_code(padded));
  report.check("roundtrip", code::decode(padded, cbar, l0) == result.word);
  return report;
}

graph::LabeledGraph read_graph(const Config& c) {
  auto j = io::read_json_file(c.input);
  if (!c.group.empty()) {
    const auto wanted = CoefficientGroup::parse(c.group);
    if (!j.is_object()) fail(ErrorCategory::parse, "expected a JSON object");
    if (j.contains("group") && j["group"].is_string() &&
        !(CoefficientGroup::parse(j["group"].get<std::string>()) == wanted)) {
      fail(ErrorCategory::invalid_argument, "--group disagrees with the group named in the input");
    }
    j["group"] = wanted.to_string();
  }
  return io::labeled_graph_from_json(j);
}

Report graph_ball(const Config& c) {
  Report report;
  report.command = "graph ball";
  Stopwatch watch(report, c.timings);
  const auto start = read_graph(c);
  graph::GraphBallOptions options;
  if (c.guard_elements) options.guard_elements = c.guard_elements;
  options.threads = c.threads;
  const auto ball = graph::enumerate_graph_ball(start, c.radius, options);
  watch.lap("ball");

  report.parameters = common_parameters(c);
  report.parameters["group"] = start.group().to_string();
  report.columns = {"radius", "size", "log_ratio", "bound", "bound_log_ratio", "reference"};
  const double reference = 3.0 * std::log(4.0);
  bool within = true;
  for (int r = 0; r <= c.radius; ++r) {
    const auto size = ball.sizes[static_cast<std::size_t>(r)];
    const auto bound = counting::graph_code_count(ball.rank, r);
    within = within && counting::BigInt(size) <= bound;
    report.rows.push_back(Json::array({r, size, ball.log_ratios[static_cast<std::size_t>(r)], big(bound),
                                       ball.bound_log_ratios[static_cast<std::size_t>(r)], reference}));
  }
  report.summary["rank"] = ball.rank;
  report.summary["elements"] = ball.elements.size();
  report.check("ball_within_bound", within);
  return report;
}

// Splits chosen uniformly among all splits of the current graph.
std::vector<graph::Split> random_derivation(std::mt19937_64& rng, graph::LabeledGraph g, int length) {
  std::vector<graph::Split> out;
  for (int i = 0; i < length; ++i) {
    const auto options = graph::all_splits(g);
    const auto s = options[rng() % options.size()];
    out.push_back(s);
    g = graph::apply_split(g, s);
  }
  return out;
}

Report graph_codec(const Config& c) {
  Report report;
  report.command = "graph codec-roundtrip";
  Stopwatch watch(report, c.timings);
  const auto start = read_graph(c);
  std::vector<graph::Derivation> derivations;
  if (!c.derivation.empty()) {
    derivations.push_back({start, io::splits_from_json(io::read_json_file(c.derivation))});
    if (derivations.back().splits.size() > static_cast<std::size_t>(c.radius)) {
      fail(ErrorCategory::invalid_argument, "derivation is longer than --radius");
    }
  } else {
    std::mt19937_64 rng(c.seed.value_or(0));
    for (std::size_t i = 0; i < c.samples; ++i) {
      const int length = static_cast<int>(rng() % static_cast<std::uint64_t>(c.radius + 1));
      derivations.push_back({start, random_derivation(rng, start, length)});
    }
  }
  watch.lap("sample");

  struct Outcome {
    bool same_class = false;
    bool idempotent = false;
    bool roundtrip = false;
  };
  const auto outcomes = ordered_map(std::span<const graph::Derivation>(derivations), c.threads,
                                    [&](const graph::Derivation& d) {
                                      const auto canon = graph::canonical_derivation(d);
                                      Outcome o;
                                      o.same_class = graph::canonical_key(graph::apply_derivation(canon).back()) ==
                                                     graph::canonical_key(graph::apply_derivation(d).back());
                                      o.idempotent = graph::canonical_derivation(canon).splits == canon.splits;
                                      const auto pair = graph::encode_derivation(canon, c.radius);
                                      o.roundtrip = graph::decode_derivation(pair, start, c.radius).splits ==
                                                    canon.splits;
                                      return o;
                                    });
  watch.lap("codec");

  report.parameters = common_parameters(c);
  report.parameters["group"] = start.group().to_string();
  report.parameters["derivation"] = c.derivation;
  report.parameters["samples"] = c.derivation.empty() ? c.samples : 1;
  report.parameters["seed"] = c.seed ? Json(*c.seed) : Json(nullptr);
  report.columns = {"length", "derivations", "same_class", "idempotent", "roundtrip"};
  std::map<std::size_t, std::array<std::uint64_t, 4>> by_length;
  for (std::size_t i = 0; i < derivations.size(); ++i) {
    auto& row = by_length[derivations[i].splits.size()];
    row[0] += 1;
    row[1] += outcomes[i].same_class ? 1 : 0;
    row[2] += outcomes[i].idempotent ? 1 : 0;
    row[3] += outcomes[i].roundtrip ? 1 : 0;
  }
  bool same = true, idempotent = true, roundtrip = true;
  for (const auto& [length, row] : by_length) {
    report.rows.push_back(Json::array({length, row[0], row[1], row[2], row[3]}));
    same = same && row[1] == row[0];
    idempotent = idempotent && row[2] == row[0];
    roundtrip = roundtrip && row[3] == row[0];
  }
  if (!c.derivation.empty()) {
    const auto canon = graph::canonical_derivation(derivations.front());
    const auto pair = graph::encode_derivation(canon, c.radius);
    report.summary["canonical"] = io::to_json(canon.splits);
    report.summary["phi"] = pair.phi;
    report.summary["psi"] = pair.psi;
  }
  report.summary["derivations"] = derivations.size();
  report.check("canonical_preserves_class", same);
  report.check("canonical_idempotent", idempotent);
  report.check("decode_encode_identity", roundtrip);
  return report;
}

Report tri_ball(const Config& c) {
  Report report;
  report.command = "tri ball";
  Stopwatch watch(report, c.timings);
  const auto start = tri::build_labeled_dual(io::gluing_from_json(io::read_json_file(c.input)));
  tri::FlipBallOptions options;
  if (c.guard_elements) options.guard_elements = c.guard_elements;
  options.graph_radius = c.graph_radius;
  const auto ball = tri::enumerate_flip_ball(start, c.radius, options);
  watch.lap("ball");

  report.parameters = common_parameters(c);
  report.parameters["graph_radius"] = c.graph_radius < 0 ? c.radius : c.graph_radius;
  report.columns = {"radius",    "size",  "distinct_dual_keys", "graph_size", "log_ratio",
                    "bound",     "bound_log_ratio", "reference"};
  const double reference = 3.0 * std::log(4.0);
  bool below = true;
  for (int r = 0; r <= c.radius; ++r) {
    const auto i = static_cast<std::size_t>(r);
    const auto size = ball.sizes[i];
    Json graph_size = nullptr;
    if (i < ball.graph_sizes.size()) {
      graph_size = ball.graph_sizes[i];
      below = below && size <= ball.graph_sizes[i];
    }
    report.rows.push_back(Json::array({r, size, ball.distinct_dual_keys[i], graph_size, ball.log_ratios[i],
                                       big(counting::graph_code_count(ball.rank, r)), ball.bound_log_ratios[i],
                                       reference}));
  }
  report.summary["rank"] = ball.rank;
  report.summary["surface"] = {{"genus", start.surface().genus},
                               {"punctures", start.surface().punctures},
                               {"n", start.surface().n}};
  report.summary["start"] = io::to_json(start);
  report.summary["dual_keys_injective"] = ball.distinct_dual_keys == ball.sizes;
  report.check("well_labeled", ball.well_labeled);
  report.check("dual_keys_in_graph_ball", ball.keys_contained);
  report.check("flip_ball_within_graph_ball", below);
  return report;
}

Report bounds(const Config& c) {
  Report report;
  report.command = "bounds";
  Stopwatch watch(report, c.timings);
  if (c.c0 < 0) fail(ErrorCategory::invalid_argument, "--c0 must be >= 0");
  report.parameters["c0"] = c.c0;
  report.parameters["n"] = c.n ? Json(*c.n) : Json(nullptr);
  report.parameters["radius"] = c.radius;
  const double growth = raag::growth_bound(c.c0);
  const double limit = counting::wr_limit(c.c0);
  const double expanded = counting::wr_limit_expanded(c.c0);
  report.summary["growth_bound"] = growth;
  report.summary["wr_limit"] = limit;
  report.summary["wr_limit_expanded"] = expanded;
  report.summary["entropy_residual"] = std::abs(limit - expanded);
  report.check("entropy_identity", std::abs(limit - expanded) < 1e-12);
  report.check("limit_below_growth_bound", limit <= growth);

  report.columns = {"radius", "code_count", "wr_bound", "wr_bound_log_ratio", "wr_limit"};
  if (c.n) {
    if (*c.n < 0) fail(ErrorCategory::invalid_argument, "--n must be >= 0");
    bool within = true;
    for (int r = 0; r <= c.radius; ++r) {
      const auto count = counting::count_codes(*c.n, c.c0, r);
      const auto bound = counting::wr_bound(*c.n, c.c0, r);
      within = within && count <= bound.value;
      report.rows.push_back(Json::array({r, big(count), big(bound.value), bound.log_per_step, limit}));
    }
    report.check("code_count_within_wr_bound", within);
  }
  watch.lap("bounds");
  return report;
}

std::string csv_cell(const Json& j) {
  if (j.is_string()) return j.get<std::string>();
  if (j.is_null()) return "";
  return j.dump();
}

void emit(const Report& report, const Config& c, std::ostream& out) {
  if (c.format == "csv") {
    out << "# " << report.command << "; natural log\n";
    for (std::size_t i = 0; i < report.columns.size(); ++i) out << (i ? "," : "") << report.columns[i];
    out << '\n';
    for (const auto& row : report.rows) {
      for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << csv_cell(row[i]);
      out << '\n';
    }
    for (const auto& [key, value] : report.summary.items()) {
      if (value.is_primitive()) out << "# " << key << " = " << csv_cell(value) << '\n';
    }
    for (const auto& [name, ok] : report.checks) out << "# check " << name << ' ' << (ok ? "pass" : "fail") << '\n';
    for (const auto& [key, value] : report.timings.items()) out << "# time_ms " << key << ' ' << value.dump() << '\n';
    return;
  }
  Json j;
  j["command"] = report.command;
  j["log"] = "natural";
  j["parameters"] = report.parameters;
  j["columns"] = report.columns;
  j["rows"] = report.rows;
  j["summary"] = report.summary;
  Json checks = Json::object();
  for (const auto& [name, ok] : report.checks) checks[name] = ok;
  j["checks"] = checks;
  j["passed"] = report.passed();
  if (c.timings) j["timings_ms"] = report.timings;
  out << j.dump(2) << '\n';
}

void emit_error(std::ostream& err, std::string_view category, const std::string& message) {
  Json j;
  j["error"] = {{"category", category}, {"message", message}};
  err << j.dump() << '\n';
}

int exit_code(ErrorCategory category) {
  switch (category) {
    case ErrorCategory::parse:
    case ErrorCategory::invalid_argument: return kParseError;
    case ErrorCategory::resource: return kGuardError;
    case ErrorCategory::invariant: return kInvariantError;
  }
  return kInvariantError;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Config config;
  CLI::App app{"Growth-rate experiments: RAAG balls and codes, labeled graph splits, triangulation flips."};
  app.require_subcommand(1);

  auto add_format = [&](CLI::App* cmd) {
    cmd->add_option("--format", config.format, "Report format")->check(CLI::IsMember({"json", "csv"}));
    cmd->add_flag("--timings", config.timings, "Add wall-clock timings (breaks byte-identical output)");
  };
  auto add_input = [&](CLI::App* cmd) {
    cmd->add_option("--input", config.input, "Input JSON file")->required();
    cmd->add_option("--radius", config.radius, "Radius R")->check(CLI::NonNegativeNumber);
  };
  auto add_guard = [&](CLI::App* cmd) {
    cmd->add_option("--guard-elements", config.guard_elements, "Abort past this many elements")
        ->check(CLI::PositiveNumber);
  };
  auto add_seed = [&](CLI::App* cmd) { cmd->add_option("--seed", config.seed, "Random seed"); };
  auto add_threads = [&](CLI::App* cmd) {
    cmd->add_option("--threads", config.threads, "Worker threads")->check(CLI::PositiveNumber);
  };

  auto* raag_cmd = app.add_subcommand("raag", "Right-angled Artin groups")->require_subcommand(1);
  auto* raag_ball_cmd = raag_cmd->add_subcommand("ball", "Ball sizes and code injectivity");
  add_input(raag_ball_cmd);
  add_guard(raag_ball_cmd);
  add_seed(raag_ball_cmd);
  add_threads(raag_ball_cmd);
  add_format(raag_ball_cmd);
  auto* raag_code_cmd = raag_cmd->add_subcommand("code", "Canonical representative and code of a word");
  add_input(raag_code_cmd);
  raag_code_cmd->add_option("--word", config.word, "Word, e.g. \"a b' c\"")->required();
  add_seed(raag_code_cmd);
  add_format(raag_code_cmd);

  auto* graph_cmd = app.add_subcommand("graph", "Labeled trivalent graphs")->require_subcommand(1);
  auto* graph_ball_cmd = graph_cmd->add_subcommand("ball", "Split ball sizes against 4^(5n-5+3r)");
  add_input(graph_ball_cmd);
  graph_ball_cmd->add_option("--group", config.group, "trivial | free:m | cyclic:k");
  add_guard(graph_ball_cmd);
  add_threads(graph_ball_cmd);
  add_format(graph_ball_cmd);
  auto* codec_cmd = graph_cmd->add_subcommand("codec-roundtrip", "Canonical derivations through encode/decode");
  add_input(codec_cmd);
  codec_cmd->add_option("--group", config.group, "trivial | free:m | cyclic:k");
  codec_cmd->add_option("--derivation", config.derivation, "Derivation JSON; random samples when absent");
  codec_cmd->add_option("--samples", config.samples, "Number of random derivations");
  add_seed(codec_cmd);
  add_threads(codec_cmd);
  add_format(codec_cmd);

  auto* tri_cmd = app.add_subcommand("tri", "Triangulations of punctured surfaces")->require_subcommand(1);
  auto* tri_ball_cmd = tri_cmd->add_subcommand("ball", "Flip ball sizes against the dual graph ball");
  add_input(tri_ball_cmd);
  tri_ball_cmd->add_option("--graph-radius", config.graph_radius, "Radius of the dual graph ball (default R)");
  add_guard(tri_ball_cmd);
  add_format(tri_ball_cmd);

  auto* bounds_cmd = app.add_subcommand("bounds", "Growth bound and code count tables");
  bounds_cmd->add_option("--c0", config.c0, "Maximum complement degree");
  bounds_cmd->add_option("--n", config.n, "Generator count for the code count table");
  bounds_cmd->add_option("--radius", config.radius, "Largest radius in the table")->check(CLI::NonNegativeNumber);
  add_format(bounds_cmd);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    emit_error(err, "parse", e.what());
    return kParseError;
  }

  try {
    Report report;
    if (raag_ball_cmd->parsed()) {
      report = raag_ball(config);
    } else if (raag_code_cmd->parsed()) {
      report = raag_code(config);
    } else if (graph_ball_cmd->parsed()) {
      report = graph_ball(config);
    } else if (codec_cmd->parsed()) {
      report = graph_codec(config);
    } else if (tri_ball_cmd->parsed()) {
      report = tri_ball(config);
    } else {
      report = bounds(config);
    }
    emit(report, config, out);
    if (!report.passed()) {
      emit_error(err, "invariant", "report checks failed");
      return kInvariantError;
    }
    return kOk;
  } catch (const Error& e) {
    emit_error(err, to_string(e.category()), e.what());
    return exit_code(e.category());
  } catch (const std::exception& e) {
    emit_error(err, "invariant", e.what());
    return kInvariantError;
  }
}

}  // namespace ugrowth::cli
