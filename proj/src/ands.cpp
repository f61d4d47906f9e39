#include "proofkit/ands.hpp"

#include <algorithm>
#include <sstream>

namespace proofkit {

namespace {

constexpr const char* kSeq = "seq";
constexpr const char* kCons = "scons";
constexpr const char* kNil = "snil";
constexpr const char* kMark = "mk";

}  // namespace

const AndsRule* Ands::find_rule(const std::string& name) const {
  for (const AndsRule& r : rules)
    if (r.name == name) return &r;
  return nullptr;
}

std::vector<Diagnostic> validate_ands(const Ands& n) {
  std::vector<Diagnostic> out;
  std::set<std::string> axiom_names;
  for (const NamedAxiom& ax : n.axioms) {
    axiom_names.insert(ax.name);
    if (!well_formed(n.signature, ax.formula))
      out.push_back({"formula", "axiom '" + ax.name + "' formula " + to_string(ax.formula) +
                                    " is not well-formed over the signature"});
  }
  std::set<std::string> rule_names;
  for (const AndsRule& r : n.rules) {
    if (!rule_names.insert(r.name).second)
      out.push_back({"naming-ii", "naming constraint (ii): rule name '" + r.name +
                                      "' is used by more than one rule"});
    if (axiom_names.count(r.name))
      out.push_back({"naming-i", "naming constraint (i): name '" + r.name +
                                     "' is shared by an axiom and a rule"});
    std::set<std::string> ids;
    for (const AndsInstance& inst : r.instances) {
      if (!ids.insert(inst.id).second)
        out.push_back({"instance-id", "rule '" + r.name + "' has duplicate instance id '" +
                                          inst.id + "'"});
      if (inst.pmassm.size() != inst.prem.size())
        out.push_back({"pmassm", "rule '" + r.name + "' instance '" + inst.id +
                                     "' needs one present-assumption set per premise"});
      MarkedSet present;
      for (const MarkedSet& per_premise : inst.pmassm)
        present.insert(per_premise.begin(), per_premise.end());
      for (const MarkedAssumption& d : inst.dmassm)
        if (!present.count(d))
          out.push_back({"dmassm", "rule '" + r.name + "' instance '" + inst.id +
                                       "' discharges (" + to_string(d.formula) + "," + d.marker +
                                       ") which is not present at any premise"});
      for (const Term& p : inst.prem)
        if (!well_formed(n.signature, p))
          out.push_back({"formula", "rule '" + r.name + "' instance '" + inst.id +
                                        "' premise " + to_string(p) + " is not well-formed"});
      if (!well_formed(n.signature, inst.concl))
        out.push_back({"formula", "rule '" + r.name + "' instance '" + inst.id +
                                      "' conclusion is not well-formed"});
    }
    for (std::size_t gi = 0; gi < r.groups.size(); ++gi) {
      const AndsSchemeGroup& g = r.groups[gi];
      for (const auto& [scheme, marker] : g.discharged) {
        bool found = false;
        for (const AndsPremiseSpec& p : g.premises)
          for (const auto& [ps, pm] : p.present)
            if (ps == scheme && pm == marker) found = true;
        if (!found)
          out.push_back({"dmassm", "rule '" + r.name + "' group " + std::to_string(gi) +
                                       " discharges (" + to_string(scheme) + "," + marker +
                                       ") which no premise requires present"});
      }
    }
  }
  return out;
}

Term sequent_to_term(const Sequent& s) {
  Term antecedent(kNil);
  // Build the list back-to-front so it reads in canonical order.
  std::vector<MarkedAssumption> sorted(s.antecedent.begin(), s.antecedent.end());
  for (auto it = sorted.rbegin(); it != sorted.rend(); ++it)
    antecedent = Term(kCons, {Term(kMark, {Term(it->marker), it->formula}), antecedent});
  return Term(kSeq, {antecedent, s.succedent});
}

std::optional<Sequent> term_to_sequent(const Term& t) {
  if (t.head() != kSeq || t.children().size() != 2) return std::nullopt;
  Sequent s{{}, t.children()[1]};
  const Term* list = &t.children()[0];
  while (list->head() != kNil) {
    if (list->head() != kCons || list->children().size() != 2) return std::nullopt;
    const Term& entry = list->children()[0];
    if (entry.head() != kMark || entry.children().size() != 2 ||
        !entry.children()[0].children().empty())
      return std::nullopt;
    s.antecedent.insert({entry.children()[1], entry.children()[0].head()});
    list = &list->children()[1];
  }
  return s;
}

std::string sequent_string(const Sequent& s) {
  std::ostringstream os;
  os << '{';
  bool first = true;
  for (const MarkedAssumption& a : s.antecedent) {
    if (!first) os << ',';
    first = false;
    os << '(' << to_string(a.formula) << ',' << a.marker << ')';
  }
  os << "} => " << to_string(s.succedent);
  return os.str();
}

std::vector<std::string> marker_pool(const EncodeOptions& opt) {
  std::vector<std::string> out;
  for (std::size_t i = 1; i <= opt.marker_count; ++i) out.push_back("m" + std::to_string(i));
  return out;
}

Instance encode_instance(const AndsInstance& inst) {
  Instance out{inst.id, {}, Term("x")};
  MarkedSet conclusion_antecedent;
  out.prem.reserve(inst.prem.size());
  for (std::size_t i = 0; i < inst.prem.size(); ++i) {
    const MarkedSet& present = inst.pmassm.at(i);
    out.prem.push_back(sequent_to_term(Sequent{present, inst.prem[i]}));
    conclusion_antecedent.insert(present.begin(), present.end());
  }
  for (const MarkedAssumption& d : inst.dmassm) conclusion_antecedent.erase(d);
  out.concl = sequent_to_term(Sequent{std::move(conclusion_antecedent), inst.concl});
  return out;
}

namespace {

const std::vector<Term>& antecedent_terms(const EncodeOptions& opt) {
  return opt.antecedent_terms.empty() ? opt.term_universe : opt.antecedent_terms;
}

// All antecedent sets with at most max_antecedent marked assumptions, empty
// set first, then by size, pairs enumerated in (term, marker) order.
std::vector<MarkedSet> antecedent_space(const EncodeOptions& opt) {
  std::vector<MarkedAssumption> pairs;
  for (const Term& t : antecedent_terms(opt))
    for (const std::string& m : marker_pool(opt)) pairs.push_back({t, m});
  std::vector<MarkedSet> out{{}};
  std::vector<std::vector<std::size_t>> previous{{}};
  for (std::size_t size = 1; size <= opt.max_antecedent; ++size) {
    std::vector<std::vector<std::size_t>> current;
    for (const std::vector<std::size_t>& combo : previous) {
      std::size_t start = combo.empty() ? 0 : combo.back() + 1;
      for (std::size_t i = start; i < pairs.size(); ++i) {
        std::vector<std::size_t> next = combo;
        next.push_back(i);
        MarkedSet set;
        for (std::size_t idx : next) set.insert(pairs[idx]);
        out.push_back(std::move(set));
        current.push_back(std::move(next));
      }
    }
    previous = std::move(current);
  }
  return out;
}

std::string marked_set_string(const MarkedSet& set) {
  std::string out = "{";
  bool first = true;
  for (const MarkedAssumption& a : set) {
    if (!first) out += ',';
    first = false;
    out += "(" + to_string(a.formula) + "," + a.marker + ")";
  }
  return out + "}";
}

struct InstanceContentLess {
  bool operator()(const AndsInstance& a, const AndsInstance& b) const {
    auto key = [](const AndsInstance& i) {
      std::string k = instance_shape_string(i.prem, i.concl) + "#";
      for (const MarkedSet& s : i.pmassm) k += marked_set_string(s);
      return k + "#" + marked_set_string(i.dmassm);
    };
    return key(a) < key(b);
  }
};

}  // namespace

std::vector<AndsInstance> enumerate_ands_rule(const AndsRule& r, const EncodeOptions& opt) {
  std::vector<AndsInstance> out = r.instances;
  std::set<AndsInstance, InstanceContentLess> seen;
  std::vector<MarkedSet> contexts = antecedent_space(opt);
  std::vector<std::string> pool = marker_pool(opt);

  for (std::size_t gi = 0; gi < r.groups.size(); ++gi) {
    const AndsSchemeGroup& g = r.groups[gi];
    std::set<std::string> term_vars = g.concl.metavars();
    std::set<std::string> marker_vars;
    std::set<std::string> context_vars;
    for (const AndsPremiseSpec& p : g.premises) {
      term_vars.merge(p.formula.metavars());
      for (const auto& [scheme, marker] : p.present) {
        term_vars.merge(scheme.metavars());
        marker_vars.insert(marker);
      }
      if (p.context) context_vars.insert(*p.context);
    }
    for (const auto& [scheme, marker] : g.discharged) {
      term_vars.merge(scheme.metavars());
      marker_vars.insert(marker);
    }

    std::vector<std::string> tv(term_vars.begin(), term_vars.end());
    std::vector<std::string> mv(marker_vars.begin(), marker_vars.end());
    std::vector<std::string> cv(context_vars.begin(), context_vars.end());
    if ((opt.term_universe.empty() && !tv.empty()) || (pool.empty() && !mv.empty())) continue;

    std::vector<std::size_t> ti(tv.size(), 0), mi(mv.size(), 0), ci(cv.size(), 0);
    auto advance = [](std::vector<std::size_t>& idx, std::size_t limit) {
      std::size_t pos = idx.size();
      while (pos > 0 && ++idx[pos - 1] == limit) idx[--pos] = 0;
      return pos > 0;
    };

    bool more = true;
    while (more) {
      Substitution subst;
      for (std::size_t i = 0; i < tv.size(); ++i)
        subst.emplace(tv[i], opt.term_universe[ti[i]]);
      std::map<std::string, std::string> markers;
      for (std::size_t i = 0; i < mv.size(); ++i) markers.emplace(mv[i], pool[mi[i]]);
      std::map<std::string, const MarkedSet*> ctx;
      for (std::size_t i = 0; i < cv.size(); ++i) ctx.emplace(cv[i], &contexts[ci[i]]);

      AndsInstance inst;
      inst.concl = apply_substitution(g.concl, subst);
      for (const AndsPremiseSpec& p : g.premises) {
        inst.prem.push_back(apply_substitution(p.formula, subst));
        MarkedSet present;
        for (const auto& [scheme, marker] : p.present)
          present.insert({apply_substitution(scheme, subst), markers.at(marker)});
        if (p.context) {
          const MarkedSet& extra = *ctx.at(*p.context);
          present.insert(extra.begin(), extra.end());
        }
        inst.pmassm.push_back(std::move(present));
      }
      for (const auto& [scheme, marker] : g.discharged)
        inst.dmassm.insert({apply_substitution(scheme, subst), markers.at(marker)});

      std::ostringstream id;
      id << 'g' << gi << to_string(subst);
      id << '{';
      bool first = true;
      for (const auto& [var, marker] : markers) {
        if (!first) id << ',';
        first = false;
        id << var << ":=" << marker;
      }
      id << "}{";
      first = true;
      for (const auto& [var, set] : ctx) {
        if (!first) id << ',';
        first = false;
        id << var << ":=" << marked_set_string(*set);
      }
      id << '}';
      inst.id = id.str();

      if (seen.insert(inst).second) out.push_back(std::move(inst));

      // Odometer across the three assignment blocks, contexts fastest.
      if (!advance(ci, contexts.size()))
        if (!advance(mi, pool.size()))
          if (!advance(ti, opt.term_universe.size())) more = false;
    }
  }
  return out;
}

namespace {

std::set<std::string> literal_markers(const Ands& n) {
  std::set<std::string> out;
  for (const AndsRule& r : n.rules)
    for (const AndsInstance& inst : r.instances) {
      for (const MarkedSet& per_premise : inst.pmassm)
        for (const MarkedAssumption& a : per_premise) out.insert(a.marker);
      for (const MarkedAssumption& a : inst.dmassm) out.insert(a.marker);
    }
  return out;
}

}  // namespace

EncodedSystem encode_system(const Ands& n, const EncodeOptions& opt) {
  auto problems = validate_ands(n);
  if (!problems.empty())
    throw ValidationError("cannot encode an invalid system: " + problems.front().message);

  std::vector<std::string> pool = marker_pool(opt);
  std::set<std::string> literals = literal_markers(n);
  for (const std::string& m : pool)
    if (literals.count(m))
      throw ValidationError("marker pool entry '" + m + "' already occurs in a rule; pick a "
                            "larger pool offset or rename the rule markers");

  std::vector<Symbol> symbols = n.signature.symbols();
  for (const char* reserved : {kSeq, kCons, kNil, kMark})
    if (n.signature.contains(reserved))
      throw ValidationError(std::string("signature symbol '") + reserved +
                            "' collides with the sequent vocabulary");
  symbols.push_back({kSeq, 2});
  symbols.push_back({kCons, 2});
  symbols.push_back({kNil, 0});
  symbols.push_back({kMark, 2});
  for (const std::string& m : pool) {
    if (n.signature.contains(m))
      throw ValidationError("marker '" + m + "' collides with a signature symbol");
    symbols.push_back({m, 0});
  }
  for (const std::string& m : literals) {
    if (n.signature.contains(m))
      throw ValidationError("marker '" + m + "' collides with a signature symbol");
    symbols.push_back({m, 0});
  }

  EncodedSystem out;
  out.system.signature = Signature(symbols);

  // Succedent-major sequent universe over the bounded antecedent space.
  TermSet universe_set;
  for (const Term& a : opt.term_universe)
    for (const MarkedSet& gamma : antecedent_space(opt)) {
      Term t = sequent_to_term(Sequent{gamma, a});
      if (universe_set.insert(t).second) out.sequent_universe.push_back(std::move(t));
    }

  TermSet term_universe_set(opt.term_universe.begin(), opt.term_universe.end());
  for (const NamedAxiom& ax : n.axioms) {
    if (auto ground = ax.formula.as_term()) {
      Term encoded = sequent_to_term(Sequent{{}, *ground});
      if (universe_set.insert(encoded).second) out.sequent_universe.push_back(encoded);
      out.system.axioms.push_back(NamedAxiom{Scheme(encoded), ax.name});
      continue;
    }
    auto vars = ax.formula.metavars();
    std::vector<std::string> vs(vars.begin(), vars.end());
    std::vector<std::size_t> idx(vs.size(), 0);
    bool more = !opt.term_universe.empty();
    while (more) {
      Substitution subst;
      for (std::size_t i = 0; i < vs.size(); ++i) subst.emplace(vs[i], opt.term_universe[idx[i]]);
      Term formula = apply_substitution(ax.formula, subst);
      if (term_universe_set.count(formula))
        out.system.axioms.push_back(
            NamedAxiom{Scheme(sequent_to_term(Sequent{{}, formula})), ax.name});
      std::size_t pos = idx.size();
      while (pos > 0 && ++idx[pos - 1] == opt.term_universe.size()) idx[--pos] = 0;
      if (pos == 0) more = false;
    }
  }

  // Assumption introduction: {(A,m)} => A for every antecedent formula and
  // pool marker, all under one name.
  Aphs probe;
  probe.axioms = out.system.axioms;
  out.assumption_axiom_name = fresh_name(probe, "assume");
  for (const Term& a : antecedent_terms(opt))
    for (const std::string& m : pool) {
      Term encoded = sequent_to_term(Sequent{{{a, m}}, a});
      if (universe_set.insert(encoded).second) out.sequent_universe.push_back(encoded);
      out.system.axioms.push_back(NamedAxiom{Scheme(encoded), out.assumption_axiom_name});
    }

  for (const AndsRule& r : n.rules) {
    std::vector<Instance> encoded;
    for (const AndsInstance& inst : enumerate_ands_rule(r, opt)) {
      Instance image = encode_instance(inst);
      bool inside = universe_set.count(image.concl) > 0;
      for (const Term& p : image.prem) inside = inside && universe_set.count(p) > 0;
      if (inside) encoded.push_back(std::move(image));
    }
    out.system.rules.push_back(NamedRule{UnnamedRule::explicit_list(std::move(encoded)), r.name});
  }

  out.system.universe_hint = out.sequent_universe;
  return out;
}

namespace {

UnnamedRule encoded_rule_image(const AndsRule& r, const EncodeOptions& opt,
                               const EncodedSystem& encoded) {
  TermSet universe_set(encoded.sequent_universe.begin(), encoded.sequent_universe.end());
  std::vector<Instance> images;
  for (const AndsInstance& inst : enumerate_ands_rule(r, opt)) {
    Instance image = encode_instance(inst);
    bool inside = universe_set.count(image.concl) > 0;
    for (const Term& p : image.prem) inside = inside && universe_set.count(p) > 0;
    if (inside) images.push_back(std::move(image));
  }
  return UnnamedRule::explicit_list(std::move(images));
}

}  // namespace

RuleStatus check_nd_derivable(const Ands& n, const AndsRule& r, const EncodeOptions& opt,
                              const Budget& b) {
  EncodedSystem encoded = encode_system(n, opt);
  return check_derivable(encoded.system, encoded_rule_image(r, opt, encoded), b);
}

RuleStatus check_nd_admissible(const Ands& n, const AndsRule& r, const EncodeOptions& opt,
                               const Budget& b) {
  EncodedSystem encoded = encode_system(n, opt);
  return check_admissible(encoded.system, encoded_rule_image(r, opt, encoded), b);
}

}  // namespace proofkit
