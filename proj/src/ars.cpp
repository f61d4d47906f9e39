#include "proofkit/ars.hpp"

#include <algorithm>
#include <map>
#include <queue>

namespace proofkit {

bool Ars::has_object(const std::string& id) const {
  return std::find(objects.begin(), objects.end(), id) != objects.end();
}

std::vector<std::string> validate_ars(const Ars& ars) {
  std::vector<std::string> problems;
  std::set<std::string> seen(ars.objects.begin(), ars.objects.end());
  if (seen.size() != ars.objects.size()) problems.push_back("duplicate object identifier");
  std::set<std::string> ids;
  for (const ArsStep& step : ars.steps) {
    if (!ids.insert(step.id).second)
      problems.push_back("duplicate step id '" + step.id + "'");
    if (!seen.count(step.src))
      problems.push_back("step '" + step.id + "' has undeclared source '" + step.src + "'");
    if (!seen.count(step.tgt))
      problems.push_back("step '" + step.id + "' has undeclared target '" + step.tgt + "'");
  }
  return problems;
}

std::set<ObjectPair> induced_relation(const Ars& ars) {
  std::set<ObjectPair> rel;
  for (const ArsStep& step : ars.steps) rel.emplace(step.src, step.tgt);
  return rel;
}

std::vector<ArsStep> steps_between(const Ars& ars, const std::string& a,
                                   const std::string& b) {
  if (!ars.has_object(a)) throw UnknownObject("no object '" + a + "'");
  if (!ars.has_object(b)) throw UnknownObject("no object '" + b + "'");
  std::vector<ArsStep> out;
  for (const ArsStep& step : ars.steps)
    if (step.src == a && step.tgt == b) out.push_back(step);
  return out;
}

namespace {

std::string position_string(const std::vector<std::size_t>& pos) {
  if (pos.empty()) return "ε";
  std::string out;
  for (std::size_t i = 0; i < pos.size(); ++i) {
    if (i > 0) out += '.';
    out += std::to_string(pos[i]);
  }
  return out;
}

Term replace_at(const Term& t, const std::vector<std::size_t>& pos, std::size_t depth,
                const Term& replacement) {
  if (depth == pos.size()) return replacement;
  std::vector<Term> kids = t.children();
  std::size_t child = pos[depth] - 1;  // positions are 1-based
  kids[child] = replace_at(kids[child], pos, depth + 1, replacement);
  return Term(t.head(), std::move(kids));
}

void scan_redexes(const Term& root, const Term& sub, std::vector<std::size_t>& pos,
                  const Scheme& lhs, const Scheme& rhs, std::size_t universe_bound,
                  Ars& out) {
  if (auto subst = match_scheme(lhs, sub)) {
    Term target = replace_at(root, pos, 0, apply_substitution(rhs, *subst));
    if (target.size() <= universe_bound) {
      ArsStep step;
      step.id = to_string(root) + "@" + position_string(pos);
      step.src = to_string(root);
      step.tgt = to_string(target);
      out.steps.push_back(std::move(step));
    }
  }
  for (std::size_t i = 0; i < sub.children().size(); ++i) {
    pos.push_back(i + 1);
    scan_redexes(root, sub.children()[i], pos, lhs, rhs, universe_bound, out);
    pos.pop_back();
  }
}

}  // namespace

Ars trs_step_expansion(const Signature& sig, const Scheme& lhs, const Scheme& rhs,
                       std::size_t universe_bound) {
  auto lhs_vars = lhs.metavars();
  for (const std::string& v : rhs.metavars())
    if (!lhs_vars.count(v))
      throw IllFormedRule("right-hand side introduces fresh meta-variable ?" + v);
  Ars out;
  for (const Term& t : enumerate_terms(sig, universe_bound)) {
    out.objects.push_back(to_string(t));
    std::vector<std::size_t> pos;
    scan_redexes(t, t, pos, lhs, rhs, universe_bound, out);
  }
  return out;
}

std::set<std::string> reachable(const Ars& ars, const std::string& a,
                                std::size_t max_steps) {
  if (!ars.has_object(a)) throw UnknownObject("no object '" + a + "'");
  std::map<std::string, std::vector<std::string>> succ;
  for (const ArsStep& step : ars.steps) succ[step.src].push_back(step.tgt);
  std::set<std::string> seen{a};
  std::vector<std::string> frontier{a};
  for (std::size_t round = 0; round < max_steps && !frontier.empty(); ++round) {
    std::vector<std::string> next;
    for (const std::string& obj : frontier)
      for (const std::string& tgt : succ[obj])
        if (seen.insert(tgt).second) next.push_back(tgt);
    frontier = std::move(next);
  }
  return seen;
}

}  // namespace proofkit
