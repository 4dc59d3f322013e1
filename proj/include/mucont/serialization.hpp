#pragma once

#include <nlohmann/json.hpp>

#include "mucont/chain_oracle.hpp"
#include "mucont/fixpoint.hpp"
#include "mucont/metric_space.hpp"
#include "mucont/modulus.hpp"
#include "mucont/multifunction.hpp"
#include "mucont/realizer.hpp"
#include "mucont/representations.hpp"
#include "mucont/selection.hpp"

namespace mucont {

using Json = nlohmann::ordered_json;

// Parsing functions throw FormatError with the path of the offending field.

/// Dyadics are written as "m/2^e"; integers are accepted on input.
Json dyadic_to_json(const Dyadic& value);
Dyadic dyadic_from_json(const Json& j, const std::string& path);

/// { "depth": D, "values": ["m/2^e", ...] }
Json modulus_to_json(const Modulus& m);
Modulus modulus_from_json(const Json& j);

/// One of
///   { "dist": [[...]], "ultrametric": bool, "labels": [...] }
///   { "words": ["0101", ...] }          Cantor words, ultrametric
///   { "points": ["1/2", ...] }          dyadic points under min(1, |a - b|)
Json space_to_json(const FiniteMetricSpace& space);
FiniteMetricSpace space_from_json(const Json& j, const std::string& path);

/// { "precision": P, "codomain": {...}, "graph": [["0101", 2], ...] }
/// with an optional "domain" space; without it the domain is the set of
/// words occurring in the graph. Graph entries name points by label, or by
/// index on the codomain side.
Json multifunction_to_json(const Multifunction& f);
Multifunction multifunction_from_json(const Json& j);

/// Graph over given carriers: [[label, label], ...].
Multifunction graph_from_json(const Json& j, const SpacePtr& domain, const SpacePtr& codomain,
                              const std::string& path);

Json adversary_to_json(const AdversaryMove& move, const Multifunction& f);
Json oracle_result_to_json(const OracleResult& r, const Multifunction& f);
Json relation_to_json(const RelationSet& r, const Multifunction& f);
Json selection_trace_to_json(const SelectionTrace& t, const Multifunction& f);
Json certificate_to_json(const GeometricCertificate& c);

/// { "representation": name, "precision": p, "forward": multifunction }
Json instance_to_json(const RepresentationInstance& inst);
/// Reads the header and regenerates the instance.
RepresentationInstance instance_from_json(const Json& j, const std::string& path);

/// {
///   "xi": {"representation", "precision"}, "upsilon": {...},
///   "g": "identity" | "negation" | {"graph": [["1/2", "-1/2"], ...]},
///   "kappa": modulus (default: identity),
///   "candidate": "identity" | {"graph": [["0101", "0110"], ...]} (optional),
///   "candidate_modulus": modulus (optional)
/// }
RealizerProblem problem_from_json(const Json& j);

}  // namespace mucont
