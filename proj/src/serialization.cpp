#include "mucont/serialization.hpp"

#include <set>
#include <string>

#include "mucont/error.hpp"

namespace mucont {

namespace {

const Json& field(const Json& j, const char* key, const std::string& path) {
  if (!j.is_object()) throw FormatError(path + ": expected an object");
  const auto it = j.find(key);
  if (it == j.end()) throw FormatError(path + "." + key + ": missing");
  return *it;
}

std::string index_path(const std::string& path, std::size_t i) { return path + "[" + std::to_string(i) + "]"; }

const Json& array_at(const Json& j, const std::string& path) {
  if (!j.is_array()) throw FormatError(path + ": expected an array");
  return j;
}

std::string string_at(const Json& j, const std::string& path) {
  if (!j.is_string()) throw FormatError(path + ": expected a string");
  return j.get<std::string>();
}

std::uint64_t unsigned_at(const Json& j, const std::string& path) {
  if (!j.is_number_integer() || j.get<std::int64_t>() < 0) throw FormatError(path + ": expected a nonnegative integer");
  return j.get<std::uint64_t>();
}

PointIndex point_at(const Json& j, const FiniteMetricSpace& space, const std::string& path) {
  if (j.is_number_unsigned()) {
    const auto i = j.get<std::uint64_t>();
    if (i >= space.size()) throw FormatError(path + ": point index " + std::to_string(i) + " out of range");
    return static_cast<PointIndex>(i);
  }
  const auto label = string_at(j, path);
  std::optional<std::size_t> found;
  try {
    found = space.find(label);
  } catch (const Error&) {
    found.reset();
  }
  if (!found) throw FormatError(path + ": unknown point '" + label + "'");
  return static_cast<PointIndex>(*found);
}

template <typename Rethrow>
auto guarded(const std::string& path, Rethrow&& body) {
  try {
    return body();
  } catch (const Error& e) {
    throw FormatError(path + ": " + e.what());
  }
}

}  // namespace

Json dyadic_to_json(const Dyadic& value) { return value.to_string(); }

Dyadic dyadic_from_json(const Json& j, const std::string& path) {
  if (j.is_number_integer()) return Dyadic(j.get<std::int64_t>());
  const auto text = string_at(j, path);
  return guarded(path, [&] { return Dyadic::parse(text); });
}

Json modulus_to_json(const Modulus& m) {
  Json values = Json::array();
  for (const auto& v : m.values()) values.push_back(dyadic_to_json(v));
  return Json{{"depth", m.depth()}, {"values", std::move(values)}};
}

Modulus modulus_from_json(const Json& j) {
  const std::string path = "modulus";
  const auto depth = unsigned_at(field(j, "depth", path), path + ".depth");
  const auto& values = array_at(field(j, "values", path), path + ".values");
  if (values.size() != depth + 1) {
    throw FormatError(path + ".values: expected " + std::to_string(depth + 1) + " entries, found " +
                      std::to_string(values.size()));
  }
  std::vector<Dyadic> table;
  for (std::size_t i = 0; i < values.size(); ++i) table.push_back(dyadic_from_json(values[i], index_path(path + ".values", i)));
  return guarded(path + ".values", [&] { return Modulus(std::move(table)); });
}

Json space_to_json(const FiniteMetricSpace& space) {
  switch (space.kind()) {
    case FiniteMetricSpace::Kind::cantor: {
      Json words = Json::array();
      for (const auto& w : space.cantor_domain()->members()) words.push_back(w.to_string());
      return Json{{"words", std::move(words)}};
    }
    case FiniteMetricSpace::Kind::line: {
      Json points = Json::array();
      for (const auto& p : space.points()) points.push_back(dyadic_to_json(p));
      return Json{{"points", std::move(points)}};
    }
    case FiniteMetricSpace::Kind::table:
      break;
  }
  Json dist = Json::array();
  Json labels = Json::array();
  for (std::size_t i = 0; i < space.size(); ++i) {
    Json row = Json::array();
    for (std::size_t k = 0; k < space.size(); ++k) row.push_back(dyadic_to_json(space.dist(i, k)));
    dist.push_back(std::move(row));
    labels.push_back(space.label(i));
  }
  return Json{{"dist", std::move(dist)}, {"ultrametric", space.ultrametric()}, {"labels", std::move(labels)}};
}

FiniteMetricSpace space_from_json(const Json& j, const std::string& path) {
  if (!j.is_object()) throw FormatError(path + ": expected an object");
  if (j.contains("words")) {
    const auto& words = array_at(j["words"], path + ".words");
    std::vector<Word> members;
    for (std::size_t i = 0; i < words.size(); ++i) {
      const auto p = index_path(path + ".words", i);
      const auto text = string_at(words[i], p);
      members.push_back(guarded(p, [&] { return Word::parse(text); }));
    }
    return guarded(path + ".words", [&] { return FiniteMetricSpace::cantor(CantorDomain(std::move(members))); });
  }
  if (j.contains("points")) {
    const auto& points = array_at(j["points"], path + ".points");
    std::vector<Dyadic> values;
    for (std::size_t i = 0; i < points.size(); ++i) values.push_back(dyadic_from_json(points[i], index_path(path + ".points", i)));
    return guarded(path + ".points", [&] { return FiniteMetricSpace::line(std::move(values)); });
  }
  const auto& rows = array_at(field(j, "dist", path), path + ".dist");
  std::vector<std::vector<Dyadic>> dist;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto rp = index_path(path + ".dist", i);
    const auto& row = array_at(rows[i], rp);
    dist.emplace_back();
    for (std::size_t k = 0; k < row.size(); ++k) dist.back().push_back(dyadic_from_json(row[k], index_path(rp, k)));
  }
  bool ultrametric = false;
  if (j.contains("ultrametric")) {
    if (!j["ultrametric"].is_boolean()) throw FormatError(path + ".ultrametric: expected a boolean");
    ultrametric = j["ultrametric"].get<bool>();
  }
  std::vector<std::string> labels;
  if (j.contains("labels")) {
    const auto& ls = array_at(j["labels"], path + ".labels");
    for (std::size_t i = 0; i < ls.size(); ++i) labels.push_back(string_at(ls[i], index_path(path + ".labels", i)));
  }
  return guarded(path + ".dist",
                 [&] { return FiniteMetricSpace::from_table(std::move(dist), ultrametric, std::move(labels)); });
}

Json multifunction_to_json(const Multifunction& f) {
  Json out = Json::object();
  if (const auto* d = f.domain()->cantor_domain()) out["precision"] = d->precision();
  out["domain"] = space_to_json(*f.domain());
  out["codomain"] = space_to_json(*f.codomain());
  Json graph = Json::array();
  for (const auto& [x, y] : f.pairs()) graph.push_back(Json::array({f.domain()->label(x), f.codomain()->label(y)}));
  out["graph"] = std::move(graph);
  return out;
}

Multifunction graph_from_json(const Json& j, const SpacePtr& domain, const SpacePtr& codomain,
                              const std::string& path) {
  const auto& graph = array_at(j, path);
  std::vector<std::pair<PointIndex, PointIndex>> pairs;
  for (std::size_t i = 0; i < graph.size(); ++i) {
    const auto p = index_path(path, i);
    if (!graph[i].is_array() || graph[i].size() != 2) throw FormatError(p + ": expected a pair");
    pairs.emplace_back(point_at(graph[i][0], *domain, p + "[0]"), point_at(graph[i][1], *codomain, p + "[1]"));
  }
  return guarded(path, [&] { return Multifunction::from_pairs(domain, codomain, pairs); });
}

Multifunction multifunction_from_json(const Json& j) {
  const std::string path = "multifunction";
  auto codomain = make_space(space_from_json(field(j, "codomain", path), path + ".codomain"));
  const auto& graph = array_at(field(j, "graph", path), path + ".graph");
  SpacePtr domain;
  if (j.contains("domain")) {
    domain = make_space(space_from_json(j["domain"], path + ".domain"));
  } else {
    const auto precision = unsigned_at(field(j, "precision", path), path + ".precision");
    std::set<Word> words;
    for (std::size_t i = 0; i < graph.size(); ++i) {
      const auto p = index_path(path + ".graph", i) + "[0]";
      if (!graph[i].is_array() || graph[i].empty()) throw FormatError(index_path(path + ".graph", i) + ": expected a pair");
      const auto text = string_at(graph[i][0], p);
      const auto w = guarded(p, [&] { return Word::parse(text); });
      if (w.size() != precision) {
        throw FormatError(p + ": word length " + std::to_string(w.size()) + " differs from precision " +
                          std::to_string(precision));
      }
      words.insert(w);
    }
    if (words.empty()) throw FormatError(path + ".graph: empty");
    domain = make_space(FiniteMetricSpace::cantor(CantorDomain({words.begin(), words.end()})));
  }
  return graph_from_json(graph, domain, codomain, path + ".graph");
}

Json adversary_to_json(const AdversaryMove& move, const Multifunction& f) {
  Json answers = Json::array();
  for (auto y : move.answers) answers.push_back(f.codomain()->label(y));
  Json next = Json::array();
  for (const auto& n : move.next) next.push_back(adversary_to_json(n, f));
  return Json{{"x", f.domain()->label(move.x)}, {"answers", std::move(answers)}, {"next", std::move(next)}};
}

Json oracle_result_to_json(const OracleResult& r, const Multifunction& f) {
  Json out{{"continuous", r.continuous}, {"nodes_visited", r.nodes_visited}};
  if (r.refutation) {
    Json chain = Json::array();
    const auto steps = r.refutation->principal_chain();
    for (std::size_t i = 0; i < steps.size(); ++i) {
      chain.push_back(i % 2 == 0 ? f.domain()->label(steps[i]) : f.codomain()->label(steps[i]));
    }
    out["chain"] = std::move(chain);
    out["refutation"] = adversary_to_json(*r.refutation, f);
  }
  return out;
}

Json relation_to_json(const RelationSet& r, const Multifunction& f) {
  Json pairs = Json::array();
  for (const auto& [x, y] : r.pairs()) pairs.push_back(Json::array({f.domain()->label(x), f.codomain()->label(y)}));
  return pairs;
}

Json selection_trace_to_json(const SelectionTrace& t, const Multifunction& f) {
  const auto& net = t.net;
  auto node_label = [&](std::uint32_t i) { return net.members[i].to_string(); };
  Json levels = Json::array();
  for (const auto& level : net.levels) {
    Json words = Json::array();
    for (auto i : level) words.push_back(node_label(i));
    levels.push_back(std::move(words));
  }
  Json predecessor = Json::array();
  Json nodes = Json::array();
  for (std::uint32_t i = 0; i < net.members.size(); ++i) {
    if (net.predecessor[i]) predecessor.push_back(Json::array({node_label(i), node_label(*net.predecessor[i])}));
    nodes.push_back(Json{{"word", node_label(i)},
                         {"entry_level", net.entry_level[i]},
                         {"depth", net.ancestry_depth[i]},
                         {"choice", f.codomain()->label(t.skolem.choice[i])}});
  }
  Json out{{"bound_kind", t.bound_kind == BoundKind::mu ? "mu" : "two_C_mu"}};
  if (t.constant) out["constant"] = dyadic_to_json(*t.constant);
  out["certified_modulus"] = modulus_to_json(t.certified_modulus);
  out["fixpoint_iterations"] = t.fixpoint_iterations;
  out["levels"] = std::move(levels);
  out["predecessor"] = std::move(predecessor);
  out["nodes"] = std::move(nodes);
  Json check{{"ok", t.check.ok}};
  if (t.check.tightest) {
    check["tightest"] = Json::array({f.domain()->label(t.check.tightest->first), f.domain()->label(t.check.tightest->second)});
    check["slack"] = dyadic_to_json(t.check.slack);
  }
  out["check"] = std::move(check);
  return out;
}

Json certificate_to_json(const GeometricCertificate& c) {
  Json out{{"constant", dyadic_to_json(c.constant)},
           {"depth", c.depth},
           {"verdict", c.certified() ? "geometric-up-to-depth" : "refuted"}};
  if (c.witness_scale) out["witness_scale"] = *c.witness_scale;
  out["tail_sum"] = dyadic_to_json(c.tail_sum);
  return out;
}

Json instance_to_json(const RepresentationInstance& inst) {
  return Json{{"representation", inst.name},
              {"precision", inst.precision},
              {"forward", multifunction_to_json(inst.forward)}};
}

RepresentationInstance instance_from_json(const Json& j, const std::string& path) {
  const auto name = string_at(field(j, "representation", path), path + ".representation");
  const auto precision = unsigned_at(field(j, "precision", path), path + ".precision");
  if (precision > kMaxPrecision) throw FormatError(path + ".precision: too large");
  return guarded(path, [&] { return make_instance(name, static_cast<std::uint32_t>(precision)); });
}

RealizerProblem problem_from_json(const Json& j) {
  const std::string path = "problem";
  auto xi = instance_from_json(field(j, "xi", path), path + ".xi");
  auto upsilon = instance_from_json(field(j, "upsilon", path), path + ".upsilon");

  const auto& g_json = field(j, "g", path);
  std::optional<Multifunction> g;
  if (g_json.is_string()) {
    const auto kind = g_json.get<std::string>();
    std::vector<std::pair<PointIndex, PointIndex>> pairs;
    if (kind != "identity" && kind != "negation") throw FormatError(path + ".g: unknown builtin '" + kind + "'");
    for (PointIndex x = 0; x < xi.values->size(); ++x) {
      const auto v = xi.values->points()[x];
      const auto y = upsilon.values->find_point(kind == "identity" ? v : -v);
      if (!y) throw FormatError(path + ".g: value " + v.to_string() + " has no image on the target grid");
      pairs.emplace_back(x, static_cast<PointIndex>(*y));
    }
    g = Multifunction::from_pairs(xi.values, upsilon.values, pairs);
  } else {
    g = graph_from_json(field(g_json, "graph", path + ".g"), xi.values, upsilon.values, path + ".g.graph");
  }

  auto kappa = Modulus::identity(kInstanceModulusDepth);
  if (j.contains("kappa")) kappa = guarded(path + ".kappa", [&] { return modulus_from_json(j["kappa"]); });

  std::optional<Multifunction> candidate;
  if (j.contains("candidate")) {
    const auto& c = j["candidate"];
    if (c.is_string()) {
      if (c.get<std::string>() != "identity" || !same_space(xi.words, upsilon.words)) {
        throw FormatError(path + ".candidate: only 'identity' between equal code spaces is built in");
      }
      candidate = Multifunction(xi.words, upsilon.words,
                                [&] {
                                  std::vector<std::vector<PointIndex>> v(xi.words->size());
                                  for (PointIndex i = 0; i < v.size(); ++i) v[i] = {i};
                                  return v;
                                }());
    } else {
      candidate = graph_from_json(field(c, "graph", path + ".candidate"), xi.words, upsilon.words,
                                  path + ".candidate.graph");
    }
  }
  std::optional<Modulus> candidate_modulus;
  if (j.contains("candidate_modulus")) {
    candidate_modulus = guarded(path + ".candidate_modulus", [&] { return modulus_from_json(j["candidate_modulus"]); });
  }
  return RealizerProblem{std::move(xi),        std::move(upsilon),  std::move(*g),
                         std::move(kappa),     std::move(candidate), std::move(candidate_modulus)};
}

}  // namespace mucont
