#pragma once

#include <map>
#include <string>

#include <json.hpp>

#include "proofkit/ands.hpp"
#include "proofkit/aphs.hpp"
#include "proofkit/ars.hpp"

namespace proofkit {

using Json = nlohmann::ordered_json;

Json load_json(const std::string& path);  // throws ParseError / Error

// --- systems ----------------------------------------------------------------
// {"signature": ["a/0", ...],
//  "axioms": [{"name": ..., "formula": ...}, ...],
//  "rules": [{"name": ..., "kind": "explicit"|"scheme", ...}, ...],
//  "universe": [term, ...]  (optional explicit formula universe)}
Aphs system_from_json(const Json& j);
Json system_to_json(const Aphs& s);
Aphs load_aphs(const std::string& path);  // parses and validates

// Natural-deduction systems reuse the layout; instances additionally carry
// "pmassm" (list of lists, one per premise) and "dmassm"; scheme rules list
// "groups" with per-premise "present" patterns and an optional "context".
Ands ands_from_json(const Json& j);
Json ands_to_json(const Ands& n);
Ands load_ands(const std::string& path);

NamedRule rule_from_json(const Json& j);
NamedRule load_rule(const std::string& path);
AndsRule ands_rule_from_json(const Json& j);
AndsRule load_ands_rule(const std::string& path);

// --- derivations ------------------------------------------------------------
// {"kind": "assume", "formula": t} | {"kind": "axiom", "name": n, "formula": t}
// | {"kind": "rule", "rule": n, "instance": id, "children": [...]}
Derivation derivation_from_json(const Json& j, const Aphs& s);
Json derivation_to_json(const Derivation& d);
Derivation load_derivation(const std::string& path, const Aphs& s);

// Mimicry file: {"<instance id>": <derivation>, ...}
std::map<std::string, Derivation> mimicry_from_json(const Json& j, const Aphs& s);
std::map<std::string, Derivation> load_mimicry(const std::string& path, const Aphs& s);

// --- abstract rewriting systems ----------------------------------------------
// {"objects": [...], "steps": [{"id", "src", "tgt"(, "label")}]}
Ars ars_from_json(const Json& j);
Json ars_to_json(const Ars& a);
Ars load_ars(const std::string& path);

Signature signature_from_json(const Json& j);
Signature load_signature(const std::string& path);

// Indented prooftree rendering with rule names.
std::string render_derivation(const Derivation& d);

}  // namespace proofkit
