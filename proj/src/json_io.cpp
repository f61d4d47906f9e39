#include "proofkit/json_io.hpp"

#include <fstream>
#include <sstream>

namespace proofkit {

Json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open '" + path + "'");
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError("'" + path + "': " + e.what());
  }
}

namespace {

Symbol symbol_from_string(const std::string& text) {
  auto slash = text.rfind('/');
  if (slash == std::string::npos || slash == 0 || slash + 1 >= text.size())
    throw ParseError("signature entry '" + text + "' is not of the form name/arity");
  Symbol sym;
  sym.name = text.substr(0, slash);
  try {
    sym.arity = std::stoul(text.substr(slash + 1));
  } catch (const std::exception&) {
    throw ParseError("signature entry '" + text + "' has a malformed arity");
  }
  return sym;
}

std::string require_string(const Json& j, const char* field, const std::string& where) {
  if (!j.contains(field) || !j[field].is_string())
    throw ParseError(where + ": missing string field '" + field + "'");
  return j[field].get<std::string>();
}

MarkedSet marked_set_from_json(const Json& j, const std::string& where) {
  MarkedSet out;
  for (const Json& entry : j)
    out.insert({parse_term(require_string(entry, "formula", where)),
                require_string(entry, "marker", where)});
  return out;
}

Json marked_set_to_json(const MarkedSet& set) {
  Json out = Json::array();
  for (const MarkedAssumption& a : set)
    out.push_back({{"formula", to_string(a.formula)}, {"marker", a.marker}});
  return out;
}

}  // namespace

Aphs system_from_json(const Json& j) {
  Aphs s;
  std::vector<Symbol> symbols;
  if (!j.contains("signature") || !j["signature"].is_array())
    throw ParseError("system: missing 'signature' array");
  for (const Json& entry : j["signature"])
    symbols.push_back(symbol_from_string(entry.get<std::string>()));
  s.signature = Signature(symbols);

  for (const Json& aj : j.value("axioms", Json::array())) {
    std::string name = require_string(aj, "name", "axiom");
    s.axioms.push_back(NamedAxiom{parse_scheme(require_string(aj, "formula", "axiom")), name});
  }
  for (const Json& rj : j.value("rules", Json::array())) s.rules.push_back(rule_from_json(rj));
  for (const Json& uj : j.value("universe", Json::array()))
    s.universe_hint.push_back(parse_term(uj.get<std::string>()));
  return s;
}

NamedRule rule_from_json(const Json& j) {
  std::string name = j.value("name", std::string("R"));
  std::string kind = require_string(j, "kind", "rule '" + name + "'");
  if (kind == "explicit") {
    std::vector<Instance> instances;
    for (const Json& ij : j.value("instances", Json::array())) {
      Instance inst{require_string(ij, "id", "rule '" + name + "'"), {},
                    parse_term(require_string(ij, "concl", "rule '" + name + "'"))};
      for (const Json& pj : ij.value("prem", Json::array()))
        inst.prem.push_back(parse_term(pj.get<std::string>()));
      instances.push_back(std::move(inst));
    }
    return NamedRule{UnnamedRule::explicit_list(std::move(instances)), name};
  }
  if (kind == "scheme") {
    std::vector<Scheme> prem;
    for (const Json& pj : j.value("prem", Json::array()))
      prem.push_back(parse_scheme(pj.get<std::string>()));
    Scheme concl = parse_scheme(require_string(j, "concl", "rule '" + name + "'"));
    return NamedRule{UnnamedRule::scheme(std::move(prem), std::move(concl)), name};
  }
  throw ParseError("rule '" + name + "': unknown kind '" + kind + "'");
}

Json system_to_json(const Aphs& s) {
  Json j;
  Json signature = Json::array();
  for (const Symbol& sym : s.signature.symbols())
    signature.push_back(sym.name + "/" + std::to_string(sym.arity));
  j["signature"] = signature;
  Json axioms = Json::array();
  for (const NamedAxiom& ax : s.axioms)
    axioms.push_back({{"name", ax.name}, {"formula", to_string(ax.formula)}});
  j["axioms"] = axioms;
  Json rules = Json::array();
  for (const NamedRule& r : s.rules) {
    Json rj;
    rj["name"] = r.name;
    if (const auto* ex = r.rule.as_explicit()) {
      rj["kind"] = "explicit";
      Json instances = Json::array();
      for (const Instance& inst : ex->instances) {
        Json ij;
        ij["id"] = inst.id;
        Json prem = Json::array();
        for (const Term& p : inst.prem) prem.push_back(to_string(p));
        ij["prem"] = prem;
        ij["concl"] = to_string(inst.concl);
        instances.push_back(std::move(ij));
      }
      rj["instances"] = instances;
    } else if (const auto* sc = r.rule.as_scheme()) {
      rj["kind"] = "scheme";
      Json prem = Json::array();
      for (const Scheme& p : sc->prem) prem.push_back(to_string(p));
      rj["prem"] = prem;
      rj["concl"] = to_string(sc->concl);
    } else {
      throw Error("rule '" + r.name + "' has a predicate backing and no file form");
    }
    rules.push_back(std::move(rj));
  }
  j["rules"] = rules;
  if (!s.universe_hint.empty()) {
    Json universe = Json::array();
    for (const Term& t : s.universe_hint) universe.push_back(to_string(t));
    j["universe"] = universe;
  }
  return j;
}

Aphs load_aphs(const std::string& path) {
  Aphs s = system_from_json(load_json(path));
  auto problems = validate_system(s);
  if (!problems.empty()) {
    std::ostringstream os;
    os << "'" << path << "' is not a valid system:";
    for (const Diagnostic& d : problems) os << "\n  " << d.message;
    throw ValidationError(os.str());
  }
  return s;
}

AndsRule ands_rule_from_json(const Json& j) {
  AndsRule r;
  r.name = j.value("name", std::string("R"));
  std::string kind = require_string(j, "kind", "rule '" + r.name + "'");
  if (kind == "explicit") {
    for (const Json& ij : j.value("instances", Json::array())) {
      AndsInstance inst;
      inst.id = require_string(ij, "id", "rule '" + r.name + "'");
      for (const Json& pj : ij.value("prem", Json::array()))
        inst.prem.push_back(parse_term(pj.get<std::string>()));
      inst.concl = parse_term(require_string(ij, "concl", "rule '" + r.name + "'"));
      for (const Json& sj : ij.value("pmassm", Json::array()))
        inst.pmassm.push_back(marked_set_from_json(sj, "rule '" + r.name + "'"));
      if (inst.pmassm.empty()) inst.pmassm.resize(inst.prem.size());
      inst.dmassm = marked_set_from_json(ij.value("dmassm", Json::array()),
                                         "rule '" + r.name + "'");
      r.instances.push_back(std::move(inst));
    }
    return r;
  }
  if (kind == "scheme") {
    Json groups = j.contains("groups") ? j["groups"] : Json::array({j});
    for (const Json& gj : groups) {
      AndsSchemeGroup g;
      for (const Json& pj : gj.value("prem", Json::array())) {
        AndsPremiseSpec spec;
        if (pj.is_string()) {
          spec.formula = parse_scheme(pj.get<std::string>());
        } else {
          spec.formula = parse_scheme(require_string(pj, "formula", "rule '" + r.name + "'"));
          for (const Json& mj : pj.value("present", Json::array()))
            spec.present.emplace_back(
                parse_scheme(require_string(mj, "formula", "rule '" + r.name + "'")),
                require_string(mj, "marker", "rule '" + r.name + "'"));
          if (pj.contains("context") && pj["context"].is_string())
            spec.context = pj["context"].get<std::string>();
        }
        g.premises.push_back(std::move(spec));
      }
      g.concl = parse_scheme(require_string(gj, "concl", "rule '" + r.name + "'"));
      for (const Json& mj : gj.value("discharged", Json::array()))
        g.discharged.emplace_back(
            parse_scheme(require_string(mj, "formula", "rule '" + r.name + "'")),
            require_string(mj, "marker", "rule '" + r.name + "'"));
      r.groups.push_back(std::move(g));
    }
    return r;
  }
  throw ParseError("rule '" + r.name + "': unknown kind '" + kind + "'");
}

Ands ands_from_json(const Json& j) {
  Ands n;
  std::vector<Symbol> symbols;
  if (!j.contains("signature") || !j["signature"].is_array())
    throw ParseError("system: missing 'signature' array");
  for (const Json& entry : j["signature"])
    symbols.push_back(symbol_from_string(entry.get<std::string>()));
  n.signature = Signature(symbols);
  for (const Json& aj : j.value("axioms", Json::array()))
    n.axioms.push_back(NamedAxiom{parse_scheme(require_string(aj, "formula", "axiom")),
                                  require_string(aj, "name", "axiom")});
  for (const Json& rj : j.value("rules", Json::array()))
    n.rules.push_back(ands_rule_from_json(rj));
  return n;
}

Json ands_to_json(const Ands& n) {
  Json j;
  Json signature = Json::array();
  for (const Symbol& sym : n.signature.symbols())
    signature.push_back(sym.name + "/" + std::to_string(sym.arity));
  j["signature"] = signature;
  Json axioms = Json::array();
  for (const NamedAxiom& ax : n.axioms)
    axioms.push_back({{"name", ax.name}, {"formula", to_string(ax.formula)}});
  j["axioms"] = axioms;
  Json rules = Json::array();
  for (const AndsRule& r : n.rules) {
    Json rj;
    rj["name"] = r.name;
    if (!r.instances.empty()) {
      rj["kind"] = "explicit";
      Json instances = Json::array();
      for (const AndsInstance& inst : r.instances) {
        Json ij;
        ij["id"] = inst.id;
        Json prem = Json::array();
        for (const Term& p : inst.prem) prem.push_back(to_string(p));
        ij["prem"] = prem;
        ij["concl"] = to_string(inst.concl);
        Json pm = Json::array();
        for (const MarkedSet& set : inst.pmassm) pm.push_back(marked_set_to_json(set));
        ij["pmassm"] = pm;
        ij["dmassm"] = marked_set_to_json(inst.dmassm);
        instances.push_back(std::move(ij));
      }
      rj["instances"] = instances;
    } else {
      rj["kind"] = "scheme";
      Json groups = Json::array();
      for (const AndsSchemeGroup& g : r.groups) {
        Json gj;
        Json prem = Json::array();
        for (const AndsPremiseSpec& spec : g.premises) {
          Json pj;
          pj["formula"] = to_string(spec.formula);
          Json present = Json::array();
          for (const auto& [scheme, marker] : spec.present)
            present.push_back({{"formula", to_string(scheme)}, {"marker", marker}});
          pj["present"] = present;
          if (spec.context) pj["context"] = *spec.context;
          prem.push_back(std::move(pj));
        }
        gj["prem"] = prem;
        gj["concl"] = to_string(g.concl);
        Json discharged = Json::array();
        for (const auto& [scheme, marker] : g.discharged)
          discharged.push_back({{"formula", to_string(scheme)}, {"marker", marker}});
        gj["discharged"] = discharged;
        groups.push_back(std::move(gj));
      }
      rj["groups"] = groups;
    }
    rules.push_back(std::move(rj));
  }
  j["rules"] = rules;
  return j;
}

Ands load_ands(const std::string& path) {
  Ands n = ands_from_json(load_json(path));
  auto problems = validate_ands(n);
  if (!problems.empty()) {
    std::ostringstream os;
    os << "'" << path << "' is not a valid system:";
    for (const Diagnostic& d : problems) os << "\n  " << d.message;
    throw ValidationError(os.str());
  }
  return n;
}

NamedRule load_rule(const std::string& path) { return rule_from_json(load_json(path)); }

AndsRule load_ands_rule(const std::string& path) {
  return ands_rule_from_json(load_json(path));
}

Derivation derivation_from_json(const Json& j, const Aphs& s) {
  std::string kind = require_string(j, "kind", "derivation node");
  if (kind == "assume")
    return Derivation::assume(parse_term(require_string(j, "formula", "assume node")));
  if (kind == "axiom")
    return Derivation::axiom(require_string(j, "name", "axiom node"),
                             parse_term(require_string(j, "formula", "axiom node")));
  if (kind == "rule") {
    std::string rule_name = require_string(j, "rule", "rule node");
    std::string instance_id = require_string(j, "instance", "rule node");
    const NamedRule* rule = s.find_rule(rule_name);
    if (rule == nullptr) throw ValidationError("derivation cites unknown rule '" + rule_name + "'");
    auto inst = rule->rule.find_instance(instance_id);
    if (!inst)
      throw ValidationError("derivation cites unknown instance '" + instance_id +
                            "' of rule '" + rule_name + "'");
    std::vector<Derivation> children;
    for (const Json& cj : j.value("children", Json::array()))
      children.push_back(derivation_from_json(cj, s));
    return Derivation::rule(rule_name, std::move(*inst), std::move(children));
  }
  throw ParseError("derivation node: unknown kind '" + kind + "'");
}

Json derivation_to_json(const Derivation& d) {
  Json j;
  switch (d.kind()) {
    case Derivation::Kind::Assumption:
      j["kind"] = "assume";
      j["formula"] = to_string(d.formula());
      break;
    case Derivation::Kind::Axiom:
      j["kind"] = "axiom";
      j["name"] = d.name();
      j["formula"] = to_string(d.formula());
      break;
    case Derivation::Kind::Rule: {
      j["kind"] = "rule";
      j["rule"] = d.name();
      j["instance"] = d.instance().id;
      Json children = Json::array();
      for (const Derivation& c : d.children()) children.push_back(derivation_to_json(c));
      j["children"] = children;
      break;
    }
  }
  return j;
}

Derivation load_derivation(const std::string& path, const Aphs& s) {
  return derivation_from_json(load_json(path), s);
}

std::map<std::string, Derivation> mimicry_from_json(const Json& j, const Aphs& s) {
  std::map<std::string, Derivation> out;
  for (auto it = j.begin(); it != j.end(); ++it)
    out.emplace(it.key(), derivation_from_json(it.value(), s));
  return out;
}

std::map<std::string, Derivation> load_mimicry(const std::string& path, const Aphs& s) {
  return mimicry_from_json(load_json(path), s);
}

Ars ars_from_json(const Json& j) {
  Ars a;
  for (const Json& oj : j.value("objects", Json::array()))
    a.objects.push_back(oj.get<std::string>());
  for (const Json& sj : j.value("steps", Json::array())) {
    ArsStep step;
    step.id = require_string(sj, "id", "step");
    step.src = require_string(sj, "src", "step");
    step.tgt = require_string(sj, "tgt", "step");
    step.label = sj.value("label", std::string());
    a.steps.push_back(std::move(step));
  }
  return a;
}

Json ars_to_json(const Ars& a) {
  Json j;
  j["objects"] = a.objects;
  Json steps = Json::array();
  for (const ArsStep& step : a.steps) {
    Json sj;
    sj["id"] = step.id;
    sj["src"] = step.src;
    sj["tgt"] = step.tgt;
    if (!step.label.empty()) sj["label"] = step.label;
    steps.push_back(std::move(sj));
  }
  j["steps"] = steps;
  return j;
}

Ars load_ars(const std::string& path) {
  Ars a = ars_from_json(load_json(path));
  auto problems = validate_ars(a);
  if (!problems.empty()) {
    std::ostringstream os;
    os << "'" << path << "' is not a valid rewriting system:";
    for (const std::string& p : problems) os << "\n  " << p;
    throw ValidationError(os.str());
  }
  return a;
}

Signature signature_from_json(const Json& j) {
  const Json& entries = j.is_array() ? j : j.at("signature");
  std::vector<Symbol> symbols;
  for (const Json& entry : entries)
    symbols.push_back(symbol_from_string(entry.get<std::string>()));
  return Signature(symbols);
}

Signature load_signature(const std::string& path) {
  return signature_from_json(load_json(path));
}

namespace {

void render_node(std::ostream& os, const Derivation& d, std::size_t indent) {
  os << std::string(indent * 2, ' ') << to_string(d.formula());
  switch (d.kind()) {
    case Derivation::Kind::Assumption:
      os << "   [assumption]";
      break;
    case Derivation::Kind::Axiom:
      os << "   [axiom " << d.name() << "]";
      break;
    case Derivation::Kind::Rule:
      os << "   [" << d.name() << " " << d.instance().id << "]";
      break;
  }
  os << '\n';
  for (const Derivation& c : d.children()) render_node(os, c, indent + 1);
}

}  // namespace

std::string render_derivation(const Derivation& d) {
  std::ostringstream os;
  render_node(os, d, 0);
  return os.str();
}

}  // namespace proofkit
