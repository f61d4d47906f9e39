#include "proofkit/aphs.hpp"

#include <algorithm>
#include <sstream>

namespace proofkit {

bool same_shape(const Instance& a, const Instance& b) {
  return a.prem == b.prem && a.concl == b.concl;
}

std::string instance_shape_string(const std::vector<Term>& prem, const Term& concl) {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < prem.size(); ++i) {
    if (i > 0) os << ',';
    os << to_string(prem[i]);
  }
  os << ")/" << to_string(concl);
  return os.str();
}

namespace {

// Odometer over assignments var -> universe term, last variable fastest.
class AssignmentCursor {
 public:
  AssignmentCursor(std::vector<std::string> vars, const std::vector<Term>& universe)
      : vars_(std::move(vars)), universe_(universe), idx_(vars_.size(), 0) {
    done_ = universe_.empty() && !vars_.empty();
  }

  bool done() const { return done_; }

  void fill(Substitution& subst) const {
    for (std::size_t i = 0; i < vars_.size(); ++i)
      subst.insert_or_assign(vars_[i], universe_[idx_[i]]);
  }

  void advance() {
    std::size_t pos = idx_.size();
    while (pos > 0 && ++idx_[pos - 1] == universe_.size()) {
      idx_[pos - 1] = 0;
      --pos;
    }
    if (pos == 0) done_ = true;
  }

 private:
  std::vector<std::string> vars_;
  const std::vector<Term>& universe_;
  std::vector<std::size_t> idx_;
  bool done_ = false;
};

std::optional<std::pair<std::vector<Term>, Term>> parse_instance_shape(const std::string& id) {
  if (id.empty() || id.front() != '(') return std::nullopt;
  int depth = 0;
  std::size_t close = std::string::npos;
  std::vector<std::size_t> commas;
  for (std::size_t i = 0; i < id.size(); ++i) {
    char c = id[i];
    if (c == '(') ++depth;
    if (c == ')') {
      --depth;
      if (depth == 0) {
        close = i;
        break;
      }
    }
    if (c == ',' && depth == 1) commas.push_back(i);
  }
  if (close == std::string::npos || close + 1 >= id.size() || id[close + 1] != '/')
    return std::nullopt;
  try {
    std::vector<Term> prem;
    std::size_t start = 1;
    if (close > 1) {
      for (std::size_t comma : commas) {
        prem.push_back(parse_term(std::string_view(id).substr(start, comma - start)));
        start = comma + 1;
      }
      prem.push_back(parse_term(std::string_view(id).substr(start, close - start)));
    }
    Term concl = parse_term(std::string_view(id).substr(close + 2));
    return std::make_pair(std::move(prem), std::move(concl));
  } catch (const ParseError&) {
    return std::nullopt;
  }
}

}  // namespace

UnnamedRule UnnamedRule::explicit_list(std::vector<Instance> instances) {
  UnnamedRule r;
  r.backing_ = ExplicitList{std::move(instances)};
  return r;
}

UnnamedRule UnnamedRule::scheme(std::vector<Scheme> prem, Scheme concl) {
  UnnamedRule r;
  r.backing_ = SchemeBacked{std::move(prem), std::move(concl)};
  return r;
}

UnnamedRule UnnamedRule::predicate(
    std::size_t arity, std::function<bool(const std::vector<Term>&, const Term&)> member) {
  UnnamedRule r;
  r.backing_ = PredicateBacked{arity, std::move(member)};
  return r;
}

bool UnnamedRule::is_explicit() const {
  return std::holds_alternative<ExplicitList>(backing_);
}

const UnnamedRule::ExplicitList* UnnamedRule::as_explicit() const {
  return std::get_if<ExplicitList>(&backing_);
}

const UnnamedRule::SchemeBacked* UnnamedRule::as_scheme() const {
  return std::get_if<SchemeBacked>(&backing_);
}

const UnnamedRule::PredicateBacked* UnnamedRule::as_predicate() const {
  return std::get_if<PredicateBacked>(&backing_);
}

std::vector<Instance> UnnamedRule::enumerate(const std::vector<Term>& universe) const {
  std::vector<Instance> out;
  if (const auto* ex = as_explicit()) {
    out = ex->instances;
  } else if (const auto* sc = as_scheme()) {
    std::set<std::string> vars;
    for (const Scheme& p : sc->prem) vars.merge(p.metavars());
    vars.merge(sc->concl.metavars());
    AssignmentCursor cursor({vars.begin(), vars.end()}, universe);
    while (!cursor.done()) {
      Substitution subst;
      cursor.fill(subst);
      Instance inst{to_string(subst), {}, apply_substitution(sc->concl, subst)};
      inst.prem.reserve(sc->prem.size());
      for (const Scheme& p : sc->prem) inst.prem.push_back(apply_substitution(p, subst));
      out.push_back(std::move(inst));
      cursor.advance();
    }
  } else if (const auto* pr = as_predicate()) {
    std::vector<std::string> slots(pr->arity + 1);
    for (std::size_t i = 0; i < slots.size(); ++i) slots[i] = std::to_string(i);
    AssignmentCursor cursor(slots, universe);
    while (!cursor.done()) {
      Substitution subst;
      cursor.fill(subst);
      std::vector<Term> prem;
      prem.reserve(pr->arity);
      for (std::size_t i = 0; i < pr->arity; ++i) prem.push_back(subst.at(std::to_string(i)));
      Term concl = subst.at(std::to_string(pr->arity));
      if (pr->member(prem, concl))
        out.push_back(Instance{instance_shape_string(prem, concl), prem, concl});
      cursor.advance();
    }
  }
  return out;
}

std::vector<Instance> UnnamedRule::concluding(const Term& goal,
                                              const std::vector<Term>& universe) const {
  std::vector<Instance> out;
  if (const auto* ex = as_explicit()) {
    for (const Instance& inst : ex->instances)
      if (inst.concl == goal) out.push_back(inst);
  } else if (const auto* sc = as_scheme()) {
    Substitution base;
    if (!match_into(sc->concl, goal, base)) return out;
    std::set<std::string> free;
    for (const Scheme& p : sc->prem)
      for (const std::string& v : p.metavars())
        if (!base.count(v)) free.insert(v);
    AssignmentCursor cursor({free.begin(), free.end()}, universe);
    while (!cursor.done()) {
      Substitution subst = base;
      cursor.fill(subst);
      Instance inst{to_string(subst), {}, goal};
      inst.prem.reserve(sc->prem.size());
      for (const Scheme& p : sc->prem) inst.prem.push_back(apply_substitution(p, subst));
      out.push_back(std::move(inst));
      cursor.advance();
    }
  } else if (const auto* pr = as_predicate()) {
    std::vector<std::string> slots(pr->arity);
    for (std::size_t i = 0; i < slots.size(); ++i) slots[i] = std::to_string(i);
    AssignmentCursor cursor(slots, universe);
    while (!cursor.done()) {
      Substitution subst;
      cursor.fill(subst);
      std::vector<Term> prem;
      prem.reserve(pr->arity);
      for (std::size_t i = 0; i < pr->arity; ++i) prem.push_back(subst.at(std::to_string(i)));
      if (pr->member(prem, goal))
        out.push_back(Instance{instance_shape_string(prem, goal), prem, goal});
      cursor.advance();
    }
  }
  return out;
}

std::optional<Instance> UnnamedRule::find_instance(const std::string& id) const {
  if (const auto* ex = as_explicit()) {
    for (const Instance& inst : ex->instances)
      if (inst.id == id) return inst;
    return std::nullopt;
  }
  if (const auto* sc = as_scheme()) {
    Substitution subst;
    try {
      subst = parse_substitution(id);
    } catch (const ParseError&) {
      return std::nullopt;
    }
    std::set<std::string> vars;
    for (const Scheme& p : sc->prem) vars.merge(p.metavars());
    vars.merge(sc->concl.metavars());
    if (vars.size() != subst.size()) return std::nullopt;
    for (const std::string& v : vars)
      if (!subst.count(v)) return std::nullopt;
    Instance inst{id, {}, apply_substitution(sc->concl, subst)};
    for (const Scheme& p : sc->prem) inst.prem.push_back(apply_substitution(p, subst));
    return inst;
  }
  if (const auto* pr = as_predicate()) {
    auto shape = parse_instance_shape(id);
    if (!shape || shape->first.size() != pr->arity) return std::nullopt;
    if (!pr->member(shape->first, shape->second)) return std::nullopt;
    if (instance_shape_string(shape->first, shape->second) != id) return std::nullopt;
    return Instance{id, shape->first, shape->second};
  }
  return std::nullopt;
}

bool UnnamedRule::member(const Instance& inst) const {
  auto found = find_instance(inst.id);
  return found && same_shape(*found, inst);
}

const NamedRule* Aphs::find_rule(const std::string& name) const {
  for (const NamedRule& r : rules)
    if (r.name == name) return &r;
  return nullptr;
}

std::set<std::string> Aphs::axiom_names() const {
  std::set<std::string> out;
  for (const NamedAxiom& ax : axioms) out.insert(ax.name);
  return out;
}

std::set<std::string> Aphs::rule_names() const {
  std::set<std::string> out;
  for (const NamedRule& r : rules) out.insert(r.name);
  return out;
}

std::vector<Diagnostic> validate_system(const Aphs& s) {
  std::vector<Diagnostic> out;
  if (s.signature.symbols().empty())
    out.push_back({"formula", "signature is empty, so there are no formulas"});
  auto axiom_names = s.axiom_names();
  std::set<std::string> rule_names;
  for (const NamedRule& r : s.rules) {
    if (!rule_names.insert(r.name).second)
      out.push_back({"naming-ii", "naming constraint (ii): rule name '" + r.name +
                                      "' is used by more than one rule"});
    if (axiom_names.count(r.name))
      out.push_back({"naming-i", "naming constraint (i): name '" + r.name +
                                     "' is shared by an axiom and a rule"});
  }
  for (const NamedAxiom& ax : s.axioms)
    if (!well_formed(s.signature, ax.formula))
      out.push_back({"formula", "axiom '" + ax.name + "' formula " + to_string(ax.formula) +
                                    " is not well-formed over the signature"});
  for (const NamedRule& r : s.rules) {
    if (const auto* ex = r.rule.as_explicit()) {
      std::set<std::string> ids;
      for (const Instance& inst : ex->instances) {
        if (!ids.insert(inst.id).second)
          out.push_back({"instance-id", "rule '" + r.name + "' has duplicate instance id '" +
                                            inst.id + "'"});
        for (const Term& p : inst.prem)
          if (!well_formed(s.signature, p))
            out.push_back({"formula", "rule '" + r.name + "' instance '" + inst.id +
                                          "' premise " + to_string(p) + " is not well-formed"});
        if (!well_formed(s.signature, inst.concl))
          out.push_back({"formula", "rule '" + r.name + "' instance '" + inst.id +
                                        "' conclusion " + to_string(inst.concl) +
                                        " is not well-formed"});
      }
    } else if (const auto* sc = r.rule.as_scheme()) {
      for (const Scheme& p : sc->prem)
        if (!well_formed(s.signature, p))
          out.push_back({"formula", "rule '" + r.name + "' premise scheme " + to_string(p) +
                                        " is not well-formed"});
      if (!well_formed(s.signature, sc->concl))
        out.push_back({"formula", "rule '" + r.name + "' conclusion scheme " +
                                      to_string(sc->concl) + " is not well-formed"});
    }
  }
  return out;
}

void validate_budget(const Budget& b) {
  if (b.max_depth == 0 || b.max_universe_size == 0 || b.max_nodes_expanded == 0)
    throw ValidationError("budget fields must be positive");
}

std::vector<Term> universe_for(const Aphs& s, const Budget& b) {
  if (!s.universe_hint.empty()) return s.universe_hint;
  return enumerate_terms(s.signature, b.max_universe_size);
}

Derivation Derivation::axiom(std::string axiom_name, Term formula) {
  Derivation d;
  d.kind_ = Kind::Axiom;
  d.name_ = std::move(axiom_name);
  d.leaf_formula_ = std::move(formula);
  return d;
}

Derivation Derivation::assume(Term formula) {
  Derivation d;
  d.kind_ = Kind::Assumption;
  d.leaf_formula_ = std::move(formula);
  return d;
}

Derivation Derivation::rule(std::string rule_name, Instance instance,
                            std::vector<Derivation> children) {
  Derivation d;
  d.kind_ = Kind::Rule;
  d.name_ = std::move(rule_name);
  d.instance_ = std::make_shared<const Instance>(std::move(instance));
  d.children_ = std::move(children);
  return d;
}

const Term& Derivation::formula() const {
  if (kind_ == Kind::Rule) return instance_->concl;
  return *leaf_formula_;
}

bool operator==(const Derivation& a, const Derivation& b) {
  if (a.kind_ != b.kind_ || a.name_ != b.name_) return false;
  if (a.kind_ == Derivation::Kind::Rule) {
    if (!(*a.instance_ == *b.instance_)) return false;
  } else if (*a.leaf_formula_ != *b.leaf_formula_) {
    return false;
  }
  return a.children_ == b.children_;
}

TermSet assumptions(const Derivation& d) {
  TermSet out;
  if (d.kind() == Derivation::Kind::Assumption) {
    out.insert(d.formula());
    return out;
  }
  for (const Derivation& c : d.children())
    for (const Term& t : assumptions(c)) out.insert(t);
  return out;
}

const Term& conclusion(const Derivation& d) { return d.formula(); }

std::string path_string(const NodePath& path) {
  std::string out = "[";
  for (std::size_t i = 0; i < path.size(); ++i) {
    if (i > 0) out += ',';
    out += std::to_string(path[i]);
  }
  return out + "]";
}

namespace {

void check_node(const Aphs& s, const Derivation& d, NodePath& path,
                std::vector<Defect>& defects) {
  auto report = [&](std::string message) {
    defects.push_back({path, std::move(message) + " at path " + path_string(path)});
  };
  switch (d.kind()) {
    case Derivation::Kind::Assumption:
      if (!well_formed(s.signature, d.formula()))
        report("assumption formula " + to_string(d.formula()) + " is not well-formed");
      break;
    case Derivation::Kind::Axiom: {
      if (!well_formed(s.signature, d.formula()))
        report("axiom formula " + to_string(d.formula()) + " is not well-formed");
      bool found = false;
      for (const NamedAxiom& ax : s.axioms)
        if (ax.name == d.name() && match_scheme(ax.formula, d.formula())) {
          found = true;
          break;
        }
      if (!found)
        report("no axiom named '" + d.name() + "' matches formula " + to_string(d.formula()));
      break;
    }
    case Derivation::Kind::Rule: {
      const Instance& inst = d.instance();
      const NamedRule* rule = s.find_rule(d.name());
      if (rule == nullptr) {
        report("no rule named '" + d.name() + "'");
      } else if (!rule->rule.member(inst)) {
        report("instance '" + inst.id + "' does not belong to rule '" + d.name() + "'");
      }
      if (d.children().size() != inst.arity()) {
        report("arity mismatch: instance has " + std::to_string(inst.arity()) +
               " premises but node has " + std::to_string(d.children().size()) +
               " subderivations");
      } else {
        for (std::size_t i = 0; i < d.children().size(); ++i)
          if (d.children()[i].formula() != inst.prem[i])
            report("premise " + std::to_string(i + 1) + " expects " + to_string(inst.prem[i]) +
                   " but subderivation concludes " + to_string(d.children()[i].formula()));
      }
      if (!well_formed(s.signature, inst.concl))
        report("conclusion " + to_string(inst.concl) + " is not well-formed");
      for (const Term& p : inst.prem)
        if (!well_formed(s.signature, p))
          report("premise " + to_string(p) + " is not well-formed");
      break;
    }
  }
  for (std::size_t i = 0; i < d.children().size(); ++i) {
    path.push_back(i);
    check_node(s, d.children()[i], path, defects);
    path.pop_back();
  }
}

}  // namespace

CheckResult check_derivation(const Aphs& s, const Derivation& d) {
  CheckResult result;
  NodePath path;
  check_node(s, d, path, result.defects);
  return result;
}

std::size_t count_rule_nodes(const Derivation& d, const std::string& rule_name) {
  std::size_t n = (d.kind() == Derivation::Kind::Rule && d.name() == rule_name) ? 1 : 0;
  for (const Derivation& c : d.children()) n += count_rule_nodes(c, rule_name);
  return n;
}

Derivation graft_assumptions(const Derivation& d,
                             const std::map<Term, Derivation, TermLess>& plugs) {
  if (d.kind() == Derivation::Kind::Assumption) {
    auto it = plugs.find(d.formula());
    if (it != plugs.end()) return it->second;
    return d;
  }
  if (d.kind() == Derivation::Kind::Axiom) return d;
  std::vector<Derivation> kids;
  kids.reserve(d.children().size());
  for (const Derivation& c : d.children()) kids.push_back(graft_assumptions(c, plugs));
  return Derivation::rule(d.name(), d.instance(), std::move(kids));
}

Derivation replace_subtree(const Derivation& d, const NodePath& path,
                           const Derivation& replacement) {
  if (path.empty()) return replacement;
  std::vector<Derivation> kids = d.children();
  NodePath rest(path.begin() + 1, path.end());
  kids.at(path.front()) = replace_subtree(kids.at(path.front()), rest, replacement);
  return Derivation::rule(d.name(), d.instance(), std::move(kids));
}

Aphs extend_with_rule(const Aphs& s, const NamedRule& r) {
  if (s.axiom_names().count(r.name) || s.rule_names().count(r.name))
    throw NameClash("name '" + r.name + "' already names an axiom or rule");
  Aphs out = s;
  out.rules.push_back(r);
  return out;
}

std::string fresh_name(const Aphs& s, const std::string& base) {
  auto axioms = s.axiom_names();
  auto rules = s.rule_names();
  std::string candidate = base;
  std::size_t tick = 1;
  while (axioms.count(candidate) || rules.count(candidate))
    candidate = base + "_" + std::to_string(++tick);
  return candidate;
}

Aphs extend_with_axiom(const Aphs& s, const NamedAxiom& ax) {
  if (s.rule_names().count(ax.name))
    throw NameClash("name '" + ax.name + "' already names a rule");
  Aphs out = s;
  out.axioms.push_back(ax);
  return out;
}

RestrictedSystem restrict_to_universe(const Aphs& s, const std::vector<Term>& universe) {
  TermSet in_universe(universe.begin(), universe.end());
  RestrictedSystem out;
  out.lossless = true;
  out.system.signature = s.signature;
  out.system.universe_hint = universe;
  for (const NamedAxiom& ax : s.axioms) {
    if (auto ground = ax.formula.as_term()) {
      out.system.axioms.push_back(ax);
      continue;
    }
    out.lossless = false;
    auto vars = ax.formula.metavars();
    AssignmentCursor cursor({vars.begin(), vars.end()}, universe);
    while (!cursor.done()) {
      Substitution subst;
      cursor.fill(subst);
      Term formula = apply_substitution(ax.formula, subst);
      if (in_universe.count(formula))
        out.system.axioms.push_back(NamedAxiom{Scheme(formula), ax.name});
      cursor.advance();
    }
  }
  for (const NamedRule& r : s.rules) {
    if (r.rule.is_explicit()) {
      out.system.rules.push_back(r);
      continue;
    }
    out.lossless = false;
    std::vector<Instance> kept;
    for (Instance& inst : r.rule.enumerate(universe)) {
      bool inside = in_universe.count(inst.concl) > 0;
      for (const Term& p : inst.prem) inside = inside && in_universe.count(p) > 0;
      if (inside) kept.push_back(std::move(inst));
    }
    out.system.rules.push_back(NamedRule{UnnamedRule::explicit_list(std::move(kept)), r.name});
  }
  return out;
}

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::Yes: return "yes";
    case Verdict::No: return "no";
    case Verdict::Unknown: return "unknown";
  }
  return "unknown";
}

}  // namespace proofkit
