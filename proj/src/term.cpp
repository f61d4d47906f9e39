#include "proofkit/term.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <sstream>

namespace proofkit {

Signature::Signature(std::vector<Symbol> symbols) : symbols_(std::move(symbols)) {
  std::sort(symbols_.begin(), symbols_.end(),
            [](const Symbol& a, const Symbol& b) { return a.name < b.name; });
  bool has_constant = false;
  for (std::size_t i = 0; i < symbols_.size(); ++i) {
    if (symbols_[i].name.empty()) throw ValidationError("signature: empty symbol name");
    if (i > 0 && symbols_[i].name == symbols_[i - 1].name)
      throw ValidationError("signature: duplicate symbol name '" + symbols_[i].name + "'");
    if (symbols_[i].arity == 0) has_constant = true;
  }
  if (!has_constant)
    throw ValidationError("signature: needs at least one symbol of arity 0");
}

const Symbol* Signature::find(std::string_view name) const {
  auto it = std::lower_bound(symbols_.begin(), symbols_.end(), name,
                             [](const Symbol& s, std::string_view n) { return s.name < n; });
  if (it != symbols_.end() && it->name == name) return &*it;
  return nullptr;
}

Term::Term(std::string head, std::vector<Term> children)
    : head_(std::move(head)), children_(std::move(children)) {
  for (const Term& c : children_) size_ += c.size_;
}

bool operator==(const Term& a, const Term& b) {
  return a.size_ == b.size_ && a.head_ == b.head_ && a.children_ == b.children_;
}

int term_compare(const Term& a, const Term& b) {
  if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
  if (int c = a.head().compare(b.head()); c != 0) return c < 0 ? -1 : 1;
  for (std::size_t i = 0; i < a.children().size() && i < b.children().size(); ++i)
    if (int c = term_compare(a.children()[i], b.children()[i]); c != 0) return c;
  if (a.children().size() != b.children().size())
    return a.children().size() < b.children().size() ? -1 : 1;
  return 0;
}

bool term_less(const Term& a, const Term& b) { return term_compare(a, b) < 0; }

Scheme::Scheme(const Term& t) : head_(t.head()) {
  children_.reserve(t.children().size());
  for (const Term& c : t.children()) children_.emplace_back(Scheme(c));
}

Scheme Scheme::var(std::string name) {
  Scheme s;
  s.head_ = std::move(name);
  s.is_var_ = true;
  return s;
}

Scheme Scheme::app(std::string head, std::vector<Scheme> children) {
  Scheme s;
  s.head_ = std::move(head);
  s.children_ = std::move(children);
  return s;
}

bool Scheme::is_ground() const {
  if (is_var_) return false;
  return std::all_of(children_.begin(), children_.end(),
                     [](const Scheme& c) { return c.is_ground(); });
}

std::set<std::string> Scheme::metavars() const {
  std::set<std::string> out;
  if (is_var_) {
    out.insert(head_);
    return out;
  }
  for (const Scheme& c : children_) out.merge(c.metavars());
  return out;
}

std::optional<Term> Scheme::as_term() const {
  if (is_var_) return std::nullopt;
  std::vector<Term> kids;
  kids.reserve(children_.size());
  for (const Scheme& c : children_) {
    auto t = c.as_term();
    if (!t) return std::nullopt;
    kids.push_back(std::move(*t));
  }
  return Term(head_, std::move(kids));
}

bool operator==(const Scheme& a, const Scheme& b) {
  return a.is_var_ == b.is_var_ && a.head_ == b.head_ && a.children_ == b.children_;
}

Term apply_substitution(const Scheme& s, const Substitution& subst) {
  if (s.is_var()) {
    auto it = subst.find(s.head());
    if (it == subst.end())
      throw UnboundMetaVar("substitution has no binding for ?" + s.head());
    return it->second;
  }
  std::vector<Term> kids;
  kids.reserve(s.children().size());
  for (const Scheme& c : s.children()) kids.push_back(apply_substitution(c, subst));
  return Term(s.head(), std::move(kids));
}

bool match_into(const Scheme& s, const Term& t, Substitution& acc) {
  if (s.is_var()) {
    auto [it, inserted] = acc.emplace(s.head(), t);
    return inserted || it->second == t;
  }
  if (s.head() != t.head() || s.children().size() != t.children().size()) return false;
  for (std::size_t i = 0; i < s.children().size(); ++i)
    if (!match_into(s.children()[i], t.children()[i], acc)) return false;
  return true;
}

std::optional<Substitution> match_scheme(const Scheme& s, const Term& t) {
  Substitution acc;
  if (!match_into(s, t, acc)) return std::nullopt;
  return acc;
}

namespace {

// Compositions of `total` into `parts` positive summands, lexicographic.
void for_each_composition(std::size_t total, std::size_t parts,
                          std::vector<std::size_t>& buf,
                          const std::function<void(const std::vector<std::size_t>&)>& fn) {
  if (parts == 0) {
    if (total == 0) fn(buf);
    return;
  }
  if (total < parts) return;
  for (std::size_t first = 1; first + (parts - 1) <= total; ++first) {
    buf.push_back(first);
    for_each_composition(total - first, parts - 1, buf, fn);
    buf.pop_back();
  }
}

}  // namespace

std::vector<Term> enumerate_terms(const Signature& sig, std::size_t max_size) {
  std::vector<std::vector<Term>> by_size(max_size + 1);
  std::vector<Term> out;
  for (std::size_t size = 1; size <= max_size; ++size) {
    for (const Symbol& sym : sig.symbols()) {
      if (sym.arity == 0) {
        if (size == 1) by_size[size].emplace_back(Term(sym.name));
        continue;
      }
      if (size < sym.arity + 1) continue;
      std::vector<std::size_t> buf;
      for_each_composition(size - 1, sym.arity, buf, [&](const std::vector<std::size_t>& parts) {
        for (std::size_t p : parts)
          if (by_size[p].empty()) return;
        // Cartesian product over child size classes, rightmost varying fastest.
        std::vector<std::size_t> idx(parts.size(), 0);
        while (true) {
          std::vector<Term> kids;
          kids.reserve(parts.size());
          for (std::size_t i = 0; i < parts.size(); ++i)
            kids.push_back(by_size[parts[i]][idx[i]]);
          by_size[size].emplace_back(Term(sym.name, std::move(kids)));
          std::size_t pos = parts.size();
          while (pos > 0 && ++idx[pos - 1] == by_size[parts[pos - 1]].size()) {
            idx[pos - 1] = 0;
            --pos;
          }
          if (pos == 0) return;
        }
      });
    }
    std::sort(by_size[size].begin(), by_size[size].end(), term_less);
    out.insert(out.end(), by_size[size].begin(), by_size[size].end());
  }
  return out;
}

std::size_t term_size(const Term& t) { return t.size(); }

bool well_formed(const Signature& sig, const Term& t) {
  const Symbol* sym = sig.find(t.head());
  if (sym == nullptr || sym->arity != t.children().size()) return false;
  return std::all_of(t.children().begin(), t.children().end(),
                     [&](const Term& c) { return well_formed(sig, c); });
}

bool well_formed(const Signature& sig, const Scheme& s) {
  if (s.is_var()) return true;
  const Symbol* sym = sig.find(s.head());
  if (sym == nullptr || sym->arity != s.children().size()) return false;
  return std::all_of(s.children().begin(), s.children().end(),
                     [&](const Scheme& c) { return well_formed(sig, c); });
}

namespace {

struct Parser {
  std::string_view text;
  std::size_t pos = 0;

  void skip_ws() {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  }

  [[noreturn]] void fail(const std::string& what) {
    throw ParseError(what + " at offset " + std::to_string(pos) + " in '" +
                     std::string(text) + "'");
  }

  bool ident_char(char c) const {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'';
  }

  std::string identifier() {
    skip_ws();
    std::size_t start = pos;
    while (pos < text.size() && ident_char(text[pos])) ++pos;
    if (pos == start) fail("expected identifier");
    return std::string(text.substr(start, pos - start));
  }

  Scheme node() {
    skip_ws();
    if (pos < text.size() && text[pos] == '?') {
      ++pos;
      return Scheme::var(identifier());
    }
    std::string head = identifier();
    std::vector<Scheme> kids;
    skip_ws();
    if (pos < text.size() && text[pos] == '(') {
      ++pos;
      while (true) {
        kids.push_back(node());
        skip_ws();
        if (pos >= text.size()) fail("unterminated argument list");
        if (text[pos] == ',') {
          ++pos;
          continue;
        }
        if (text[pos] == ')') {
          ++pos;
          break;
        }
        fail("expected ',' or ')'");
      }
    }
    return Scheme::app(std::move(head), std::move(kids));
  }

  Scheme parse() {
    Scheme s = node();
    skip_ws();
    if (pos != text.size()) fail("trailing input");
    return s;
  }
};

void print_scheme(std::ostringstream& os, const Scheme& s) {
  if (s.is_var()) {
    os << '?' << s.head();
    return;
  }
  os << s.head();
  if (!s.children().empty()) {
    os << '(';
    for (std::size_t i = 0; i < s.children().size(); ++i) {
      if (i > 0) os << ',';
      print_scheme(os, s.children()[i]);
    }
    os << ')';
  }
}

}  // namespace

Scheme parse_scheme(std::string_view text) { return Parser{text}.parse(); }

Term parse_term(std::string_view text) {
  auto t = parse_scheme(text).as_term();
  if (!t) throw ParseError("meta-variables not allowed in '" + std::string(text) + "'");
  return *t;
}

std::string to_string(const Scheme& s) {
  std::ostringstream os;
  print_scheme(os, s);
  return os.str();
}

std::string to_string(const Term& t) { return to_string(Scheme(t)); }

std::string to_string(const Substitution& subst) {
  std::ostringstream os;
  os << '{';
  bool first = true;
  for (const auto& [var, term] : subst) {
    if (!first) os << ',';
    first = false;
    os << var << ":=" << to_string(term);
  }
  os << '}';
  return os.str();
}

Substitution parse_substitution(std::string_view text) {
  Substitution out;
  std::size_t pos = 0;
  auto expect = [&](char c) {
    if (pos >= text.size() || text[pos] != c)
      throw ParseError("malformed substitution '" + std::string(text) + "'");
    ++pos;
  };
  expect('{');
  if (pos < text.size() && text[pos] == '}') return out;
  while (true) {
    std::size_t assign = text.find(":=", pos);
    if (assign == std::string_view::npos)
      throw ParseError("malformed substitution '" + std::string(text) + "'");
    std::string var(text.substr(pos, assign - pos));
    pos = assign + 2;
    // Term extends to the next top-level ',' or the closing '}'.
    int depth = 0;
    std::size_t start = pos;
    while (pos < text.size()) {
      char c = text[pos];
      if (c == '(') ++depth;
      if (c == ')') --depth;
      if (depth == 0 && (c == ',' || c == '}')) break;
      ++pos;
    }
    if (pos >= text.size())
      throw ParseError("malformed substitution '" + std::string(text) + "'");
    out.emplace(std::move(var), parse_term(text.substr(start, pos - start)));
    if (text[pos] == '}') return out;
    ++pos;  // consume ','
  }
}

}  // namespace proofkit
