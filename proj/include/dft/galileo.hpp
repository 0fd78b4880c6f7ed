#pragma once

#include <cctype>
#include <cstdio>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "dft/algebra.hpp"
#include "dft/conditions.hpp"
#include "dft/term.hpp"

namespace dft {

struct BasicEvent {
  std::string name;
  double rate = 0.0;       // failures per time unit while active
  double dormancy = 1.0;   // attenuation of the rate while a dormant spare
};

struct GateNode {
  std::string name;
  GateKind kind = GateKind::And;
  int vote_k = 0;
  // Children in declaration order. fdep: trigger first, then dependents;
  // spare gates: primary first, then spares.
  std::vector<std::string> children;
};

struct Violation {
  std::string code;
  std::string message;
};

// Parsed fault-tree model: one top level, gates and basic events by name.
struct DftModel {
  std::string toplevel;
  std::map<std::string, GateNode> gates;
  std::map<std::string, BasicEvent> events;
  std::vector<std::string> declaration_order;

  bool is_gate(const std::string& n) const { return gates.count(n) > 0; }
  bool is_event(const std::string& n) const { return events.count(n) > 0; }
  bool defined(const std::string& n) const { return is_gate(n) || is_event(n); }

  // Spare events of wsp/csp gates get split dormant/active state variables.
  std::set<std::string> state_split_spares() const {
    std::set<std::string> out;
    for (const auto& [_, g] : gates)
      if (g.kind == GateKind::Wsp || g.kind == GateKind::Csp)
        for (std::size_t i = 1; i < g.children.size(); ++i) out.insert(g.children[i]);
    return out;
  }

  std::vector<const GateNode*> spare_gates_claiming(const std::string& spare) const {
    std::vector<const GateNode*> out;
    for (const auto& name : declaration_order) {
      auto it = gates.find(name);
      if (it == gates.end()) continue;
      const GateNode& g = it->second;
      if (g.kind != GateKind::Wsp && g.kind != GateKind::Csp && g.kind != GateKind::Hsp) continue;
      for (std::size_t i = 1; i < g.children.size(); ++i)
        if (g.children[i] == spare) {
          out.push_back(&g);
          break;
        }
    }
    return out;
  }
};

namespace galileo {

namespace detail {

struct Token {
  enum class Kind { Name, Word, Number, Equals, Semicolon, End };
  Kind kind;
  std::string text;
  double number = 0.0;
  int line = 0;
  int col = 0;
};

class Lexer {
 public:
  explicit Lexer(const std::string& text) : text_(text) {}

  Token next() {
    skip_space();
    Token t;
    t.line = line_;
    t.col = col_;
    if (pos_ >= text_.size()) {
      t.kind = Token::Kind::End;
      return t;
    }
    char c = text_[pos_];
    if (c == ';') {
      advance();
      t.kind = Token::Kind::Semicolon;
      return t;
    }
    if (c == '=') {
      advance();
      t.kind = Token::Kind::Equals;
      return t;
    }
    if (c == '"') {
      advance();
      std::string name;
      while (pos_ < text_.size() && text_[pos_] != '"' && text_[pos_] != '\n') {
        name += text_[pos_];
        advance();
      }
      if (pos_ >= text_.size() || text_[pos_] != '"')
        throw SyntaxError(t.line, t.col, "closing quote");
      advance();
      if (name.empty()) throw SyntaxError(t.line, t.col, "non-empty quoted name");
      t.kind = Token::Kind::Name;
      t.text = std::move(name);
      return t;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '-' || c == '+' || c == '.') {
      std::string num;
      while (pos_ < text_.size() && !std::isspace(static_cast<unsigned char>(text_[pos_])) &&
             text_[pos_] != ';' && text_[pos_] != '=') {
        num += text_[pos_];
        advance();
      }
      // A leading digit can still be a gate word like 3of5.
      if (num.find("of") != std::string::npos) {
        t.kind = Token::Kind::Word;
        t.text = std::move(num);
        return t;
      }
      char* end = nullptr;
      double v = std::strtod(num.c_str(), &end);
      if (end != num.c_str() + num.size()) throw SyntaxError(t.line, t.col, "number");
      t.kind = Token::Kind::Number;
      t.number = v;
      t.text = std::move(num);
      return t;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::string word;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
        word += text_[pos_];
        advance();
      }
      t.kind = Token::Kind::Word;
      t.text = std::move(word);
      return t;
    }
    throw SyntaxError(line_, col_, "token");
  }

 private:
  void advance() {
    if (text_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  void skip_space() {
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (c == '/' && pos_ + 1 < text_.size() && text_[pos_ + 1] == '/') {
        while (pos_ < text_.size() && text_[pos_] != '\n') advance();
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else {
        return;
      }
    }
  }

  const std::string& text_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
};

inline std::optional<std::pair<int, int>> parse_vote_word(const std::string& w) {
  auto pos = w.find("of");
  if (pos == std::string::npos || pos == 0 || pos + 2 >= w.size()) return std::nullopt;
  for (std::size_t i = 0; i < w.size(); ++i)
    if (i < pos || i >= pos + 2)
      if (!std::isdigit(static_cast<unsigned char>(w[i]))) return std::nullopt;
  return std::make_pair(std::stoi(w.substr(0, pos)), std::stoi(w.substr(pos + 2)));
}

}  // namespace detail

// Parses the textual dialect: `toplevel "name";`, gate lines
// `"name" <kind> "child"...;` with kinds and/or/pand/fdep/wsp/csp/hsp/<k>of<n>,
// and leaf lines `"name" lambda=<float> [dorm=<float>];`. Comments run from
// `//` to end of line.
inline DftModel parse(const std::string& text) {
  detail::Lexer lex(text);
  DftModel model;
  using K = detail::Token::Kind;

  detail::Token t = lex.next();
  while (t.kind != K::End) {
    if (t.kind == K::Word && t.text == "toplevel") {
      detail::Token name = lex.next();
      if (name.kind != K::Name) throw SyntaxError(name.line, name.col, "quoted name");
      if (!model.toplevel.empty())
        throw DuplicateDefinition("toplevel declared twice (second at line " +
                                  std::to_string(name.line) + ")");
      model.toplevel = name.text;
      detail::Token semi = lex.next();
      if (semi.kind != K::Semicolon) throw SyntaxError(semi.line, semi.col, "';'");
      t = lex.next();
      continue;
    }
    if (t.kind != K::Name) throw SyntaxError(t.line, t.col, "'toplevel' or quoted node name");
    std::string node = t.text;
    if (model.defined(node))
      throw DuplicateDefinition("'" + node + "' defined twice (second at line " +
                                std::to_string(t.line) + ")");

    detail::Token head = lex.next();
    if (head.kind == K::Word && head.text == "lambda") {
      BasicEvent ev;
      ev.name = node;
      detail::Token eq = lex.next();
      if (eq.kind != K::Equals) throw SyntaxError(eq.line, eq.col, "'='");
      detail::Token num = lex.next();
      if (num.kind != K::Number) throw SyntaxError(num.line, num.col, "number");
      ev.rate = num.number;
      detail::Token nxt = lex.next();
      if (nxt.kind == K::Word && nxt.text == "dorm") {
        detail::Token eq2 = lex.next();
        if (eq2.kind != K::Equals) throw SyntaxError(eq2.line, eq2.col, "'='");
        detail::Token num2 = lex.next();
        if (num2.kind != K::Number) throw SyntaxError(num2.line, num2.col, "number");
        ev.dormancy = num2.number;
        nxt = lex.next();
      }
      if (nxt.kind != K::Semicolon) throw SyntaxError(nxt.line, nxt.col, "';'");
      model.events[node] = ev;
      model.declaration_order.push_back(node);
      t = lex.next();
      continue;
    }
    if (head.kind != K::Word) throw SyntaxError(head.line, head.col, "gate kind or 'lambda'");

    GateNode g;
    g.name = node;
    if (head.text == "and") g.kind = GateKind::And;
    else if (head.text == "or") g.kind = GateKind::Or;
    else if (head.text == "pand") g.kind = GateKind::Pand;
    else if (head.text == "fdep") g.kind = GateKind::Fdep;
    else if (head.text == "wsp") g.kind = GateKind::Wsp;
    else if (head.text == "csp") g.kind = GateKind::Csp;
    else if (head.text == "hsp") g.kind = GateKind::Hsp;
    else if (auto kv = detail::parse_vote_word(head.text)) {
      g.kind = GateKind::Vote;
      g.vote_k = kv->first;
    } else {
      throw SyntaxError(head.line, head.col, "gate kind (and/or/pand/fdep/wsp/csp/hsp/<k>of<n>)");
    }

    detail::Token child = lex.next();
    while (child.kind == K::Name) {
      g.children.push_back(child.text);
      child = lex.next();
    }
    if (child.kind != K::Semicolon) throw SyntaxError(child.line, child.col, "child name or ';'");
    model.gates[node] = g;
    model.declaration_order.push_back(node);
    t = lex.next();
  }
  if (model.toplevel.empty()) throw SyntaxError(1, 1, "a 'toplevel' declaration");
  return model;
}

// Canonical re-emission of a model; parse(serialize(m)) == m.
inline std::string serialize(const DftModel& model) {
  std::ostringstream out;
  auto num = [](double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return std::string(buf);
  };
  out << "toplevel \"" << model.toplevel << "\";\n";
  for (const auto& name : model.declaration_order) {
    if (auto it = model.gates.find(name); it != model.gates.end()) {
      const GateNode& g = it->second;
      out << '"' << name << "\" ";
      if (g.kind == GateKind::Vote)
        out << g.vote_k << "of" << g.children.size();
      else
        out << gate_kind_name(g.kind);
      for (const auto& c : g.children) out << " \"" << c << '"';
      out << ";\n";
    } else {
      const BasicEvent& e = model.events.at(name);
      out << '"' << name << "\" lambda=" << num(e.rate) << " dorm=" << num(e.dormancy) << ";\n";
    }
  }
  return out.str();
}

namespace detail {

// Expansion edges: gate -> children, dependent event -> its triggers. The
// structure function substitutes triggers into dependent occurrences, so a
// dependency loop is as fatal as a gate loop.
inline std::map<std::string, std::vector<std::string>> expansion_edges(const DftModel& m) {
  std::map<std::string, std::vector<std::string>> adj;
  for (const auto& [name, g] : m.gates) {
    adj[name] = g.children;
    if (g.kind == GateKind::Fdep)
      for (std::size_t i = 1; i < g.children.size(); ++i)
        adj[g.children[i]].push_back(g.children[0]);
  }
  return adj;
}

inline bool find_cycle(const DftModel& m,
                       const std::map<std::string, std::vector<std::string>>& adj,
                       const std::string& node, std::map<std::string, int>& mark,
                       std::vector<std::string>& path, std::vector<std::string>& cycle) {
  mark[node] = 1;
  path.push_back(node);
  auto it = adj.find(node);
  if (it != adj.end()) {
    for (const auto& c : it->second) {
      if (!m.defined(c)) continue;
      int state = mark.count(c) ? mark[c] : 0;
      if (state == 1) {
        auto start = std::find(path.begin(), path.end(), c);
        cycle.assign(start, path.end());
        cycle.push_back(c);
        return true;
      }
      if (state == 0 && find_cycle(m, adj, c, mark, path, cycle)) return true;
    }
  }
  mark[node] = 2;
  path.pop_back();
  return false;
}

}  // namespace detail

// Structural and semantic checks; returns an empty list for a valid model.
inline std::vector<Violation> validate(const DftModel& model) {
  std::vector<Violation> v;
  auto add = [&](std::string code, std::string message) {
    v.push_back({std::move(code), std::move(message)});
  };

  if (!model.defined(model.toplevel))
    add("UnknownReference", "toplevel '" + model.toplevel + "' is not defined");
  if (model.is_gate(model.toplevel) && model.gates.at(model.toplevel).kind == GateKind::Fdep)
    add("FdepAsTop", "toplevel may not be a functional dependency declaration");

  for (const auto& [name, e] : model.events) {
    if (!(e.rate > 0.0)) add("NonPositiveRate", "event '" + name + "' has lambda " +
                                                    std::to_string(e.rate));
    if (e.dormancy < 0.0 || e.dormancy > 1.0)
      add("DormancyOutOfRange", "event '" + name + "' has dorm " + std::to_string(e.dormancy));
  }

  std::set<std::string> fdep_gates;
  for (const auto& [name, g] : model.gates)
    if (g.kind == GateKind::Fdep) fdep_gates.insert(name);

  for (const auto& [name, g] : model.gates) {
    for (const auto& c : g.children) {
      if (!model.defined(c))
        add("UnknownReference", "gate '" + name + "' references undefined '" + c + "'");
      else if (fdep_gates.count(c))
        add("FdepReferenced", "gate '" + name + "' uses functional dependency '" + c +
                                   "' as an input; dependencies act on their targets directly");
    }
    switch (g.kind) {
      case GateKind::And:
      case GateKind::Or:
        if (g.children.empty()) add("ArityMismatch", "gate '" + name + "' needs inputs");
        break;
      case GateKind::Pand:
        if (g.children.size() < 2)
          add("ArityMismatch", "pand '" + name + "' needs at least 2 inputs");
        break;
      case GateKind::Fdep:
        if (g.children.size() < 2)
          add("ArityMismatch", "fdep '" + name + "' needs a trigger and at least one dependent");
        for (std::size_t i = 1; i < g.children.size(); ++i)
          if (!model.is_event(g.children[i]) && model.defined(g.children[i]))
            add("FdepDependentNotEvent", "fdep '" + name + "' dependent '" + g.children[i] +
                                             "' must be a basic event");
        break;
      case GateKind::Wsp:
      case GateKind::Csp:
      case GateKind::Hsp:
        if (g.children.size() < 2)
          add("ArityMismatch", "spare gate '" + name + "' needs a primary and at least one spare");
        for (std::size_t i = 1; i < g.children.size(); ++i) {
          const auto& s = g.children[i];
          if (!model.is_event(s) && model.defined(s))
            add("SpareNotEvent", "spare '" + s + "' of gate '" + name + "' must be a basic event");
          else if (model.is_event(s)) {
            double dorm = model.events.at(s).dormancy;
            if (g.kind == GateKind::Csp && dorm != 0.0)
              add("InconsistentDormancy",
                  "cold spare '" + s + "' of '" + name + "' must declare dorm=0");
            if (g.kind == GateKind::Hsp && dorm != 1.0)
              add("InconsistentDormancy",
                  "hot spare '" + s + "' of '" + name + "' must declare dorm=1");
          }
        }
        break;
      case GateKind::Vote:
        if (g.vote_k < 1 || g.vote_k > static_cast<int>(g.children.size()))
          add("BadVoteThreshold", "gate '" + name + "' threshold " + std::to_string(g.vote_k) +
                                      " outside 1.." + std::to_string(g.children.size()));
        break;
      default: break;
    }
  }

  // Spare usage: a state-split spare may be claimed by at most two gates, must
  // not be referenced outside spare positions, and sharing is only supported
  // for single-spare gates.
  for (const auto& spare : model.state_split_spares()) {
    auto claimants = model.spare_gates_claiming(spare);
    if (claimants.size() > 2)
      add("UnsupportedSharing", "spare '" + spare + "' is shared by " +
                                    std::to_string(claimants.size()) + " gates; at most 2 supported");
    if (claimants.size() == 2)
      for (const GateNode* g : claimants) {
        if (g->children.size() != 2)
          add("UnsupportedSharing", "shared spare '" + spare + "' requires single-spare gates ('" +
                                        g->name + "' lists several spares)");
        if (g->kind == GateKind::Hsp)
          add("UnsupportedSharing",
              "shared spare '" + spare + "' may not mix hot and warm/cold claimants");
      }
    for (const auto& [gname, g] : model.gates) {
      if (g.kind == GateKind::Fdep) {
        if (g.children[0] == spare)
          add("SpareMisuse", "spare '" + spare + "' may not trigger dependencies");
        continue;  // spare as a dependent is fine
      }
      bool is_spare_gate =
          g.kind == GateKind::Wsp || g.kind == GateKind::Csp || g.kind == GateKind::Hsp;
      for (std::size_t i = 0; i < g.children.size(); ++i)
        if (g.children[i] == spare && !(is_spare_gate && i > 0))
          add("SpareMisuse", "spare '" + spare + "' referenced by '" + gname +
                                 "' outside a spare position");
    }
    if (spare == model.toplevel)
      add("SpareMisuse", "spare '" + spare + "' may not be the toplevel");
  }

  // Cycle detection across gate references and dependency substitution.
  auto adj = detail::expansion_edges(model);
  std::map<std::string, int> mark;
  for (const auto& [name, _] : adj) {
    if (mark.count(name)) continue;
    std::vector<std::string> path, cycle;
    if (detail::find_cycle(model, adj, name, mark, path, cycle)) {
      std::string s;
      for (const auto& n : cycle) s += (s.empty() ? "" : " -> ") + n;
      add("CycleDetected", s);
      break;
    }
  }
  return v;
}

struct StructureFunction {
  Term term;
  std::vector<SideCondition> conditions;
};

namespace detail {

class Converter {
 public:
  explicit Converter(const DftModel& model) : model_(model) {
    for (const auto& [name, g] : model.gates)
      if (g.kind == GateKind::Fdep)
        for (std::size_t i = 1; i < g.children.size(); ++i)
          triggers_of_[g.children[i]].push_back(g.children[0]);
    split_ = model.state_split_spares();
  }

  StructureFunction run() {
    StructureFunction out;
    out.term = term_of(model_.toplevel);

    std::set<std::string> vars = free_variables(out.term);
    for (const auto& spare : split_) {
      if (!vars.count(spare + "_a") && !vars.count(spare + "_d")) continue;
      out.conditions.push_back(SideCondition::never_events(spare + "_a", spare + "_d"));
      if (model_.events.at(spare).dormancy == 0.0)
        out.conditions.push_back(SideCondition::cold_spare(spare + "_d"));
    }
    out.conditions.push_back(
        SideCondition::all_distinct(std::vector<std::string>(vars.begin(), vars.end())));
    return out;
  }

 private:
  // Occurrence of a basic-event state variable, lifted over its triggers.
  Term event_var(const std::string& event, const std::string& var_name) {
    Term t = mk_var(var_name);
    auto it = triggers_of_.find(event);
    if (it == triggers_of_.end()) return t;
    for (const auto& trig : it->second) t = mk_or(t, term_of(trig));
    return t;
  }

  Term term_of(const std::string& name) {
    auto memo = memo_.find(name);
    if (memo != memo_.end()) return memo->second;
    Term t = build(name);
    memo_.emplace(name, t);
    return t;
  }

  Term build(const std::string& name) {
    if (model_.is_event(name)) {
      if (split_.count(name))
        throw Error("internal: state-split spare '" + name + "' requested as a plain event");
      return event_var(name, name);
    }
    const GateNode& g = model_.gates.at(name);
    switch (g.kind) {
      case GateKind::And:
      case GateKind::Or: {
        std::vector<Term> kids;
        for (const auto& c : g.children) kids.push_back(term_of(c));
        return g.kind == GateKind::And ? fold_and(kids) : fold_or(kids);
      }
      case GateKind::Vote: {
        std::vector<Term> kids;
        for (const auto& c : g.children) kids.push_back(term_of(c));
        return desugar_gate(GateKind::Vote, kids, g.vote_k);
      }
      case GateKind::Pand: {
        // Left fold realizes the left-to-right failure order convention.
        Term acc = term_of(g.children[0]);
        for (std::size_t i = 1; i < g.children.size(); ++i)
          acc = desugar_gate(GateKind::Pand, std::vector<Term>{acc, term_of(g.children[i])});
        return acc;
      }
      case GateKind::Hsp: {
        // Hot spares keep a single failure variable.
        std::vector<Term> kids;
        for (const auto& c : g.children) kids.push_back(term_of(c));
        return fold_and(kids);
      }
      case GateKind::Wsp:
      case GateKind::Csp: return spare_term(g);
      case GateKind::Fdep:
        throw Error("internal: dependency gate '" + name + "' requested as a term");
      default: throw Error("internal: unhandled gate kind");
    }
  }

  Term spare_alias(const std::string& spare, bool active) {
    return event_var(spare, spare + (active ? "_a" : "_d"));
  }

  Term spare_term(const GateNode& g) {
    Term primary = term_of(g.children[0]);
    std::vector<std::string> spares(g.children.begin() + 1, g.children.end());

    if (spares.size() == 1) {
      auto claimants = model_.spare_gates_claiming(spares[0]);
      if (claimants.size() == 2) {
        const GateNode* other = claimants[0]->name == g.name ? claimants[1] : claimants[0];
        Term other_primary = term_of(other->children[0]);
        return desugar_gate(GateKind::SharedSpare,
                            std::vector<Term>{primary, other_primary, spare_alias(spares[0], true),
                                              spare_alias(spares[0], false)});
      }
    }
    return spare_chain(primary, spares, 0);
  }

  // Nested expansion for a spare cascade: each level is a warm-spare gate whose
  // active/dormant inputs are the remaining cascade entered in the matching
  // state of the next spare.
  Term spare_chain(const Term& head, const std::vector<std::string>& spares, std::size_t i) {
    Term active = spare_alias(spares[i], true);
    Term dormant = spare_alias(spares[i], false);
    if (i + 1 < spares.size()) {
      active = spare_chain(active, spares, i + 1);
      dormant = spare_chain(dormant, spares, i + 1);
    }
    return desugar_gate(GateKind::Wsp, std::vector<Term>{head, active, dormant});
  }

  const DftModel& model_;
  std::map<std::string, std::vector<std::string>> triggers_of_;
  std::set<std::string> split_;
  std::map<std::string, Term> memo_;
};

}  // namespace detail

// Converts a validated model into its structure function plus the side
// conditions under which reductions of it are certified: spare state variables
// exclude each other, cold dormant states never fail, and distinct events
// never fail at the same finite instant.
inline StructureFunction to_structure_function(const DftModel& model) {
  return detail::Converter(model).run();
}

}  // namespace galileo
}  // namespace dft
