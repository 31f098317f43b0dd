#include "ghn/pddl_parser.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include "ghn/errors.hpp"

namespace ghn {

namespace {

// ---------------------------------------------------------------------------
// S-expression layer
// ---------------------------------------------------------------------------

struct Sexp {
  bool is_atom = false;
  std::string text;  // when is_atom
  std::vector<Sexp> items;
  int line = 0, col = 0;

  bool is_list() const { return !is_atom; }
  const std::string& head() const {
    static const std::string empty;
    if (is_atom) return text;
    if (items.empty() || !items[0].is_atom) return empty;
    return items[0].text;
  }
};

class Lexer {
 public:
  explicit Lexer(std::string_view text) : text_(text) {}

  struct Token {
    enum Kind { LParen, RParen, Symbol, End } kind;
    std::string text;
    int line, col;
  };

  Token next() {
    skip_ws();
    Token t{Token::End, "", line_, col_};
    if (pos_ >= text_.size()) return t;
    char c = text_[pos_];
    if (c == '(') {
      t.kind = Token::LParen;
      advance();
      return t;
    }
    if (c == ')') {
      t.kind = Token::RParen;
      advance();
      return t;
    }
    t.kind = Token::Symbol;
    while (pos_ < text_.size()) {
      c = text_[pos_];
      if (c == '(' || c == ')' || c == ';' || std::isspace(uint8_t(c))) break;
      t.text += c;
      advance();
    }
    return t;
  }

 private:
  void skip_ws() {
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (c == ';') {
        while (pos_ < text_.size() && text_[pos_] != '\n') advance();
      } else if (std::isspace(uint8_t(c))) {
        advance();
      } else {
        break;
      }
    }
  }
  void advance() {
    if (text_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  std::string_view text_;
  size_t pos_ = 0;
  int line_ = 1, col_ = 1;
};

Sexp parse_sexp(Lexer& lex, const Lexer::Token& first) {
  Sexp s;
  s.line = first.line;
  s.col = first.col;
  if (first.kind == Lexer::Token::Symbol) {
    s.is_atom = true;
    s.text = first.text;
    return s;
  }
  if (first.kind != Lexer::Token::LParen)
    throw ParseError("expected '(' or symbol", first.line, first.col);
  for (;;) {
    Lexer::Token t = lex.next();
    if (t.kind == Lexer::Token::RParen) return s;
    if (t.kind == Lexer::Token::End)
      throw ParseError("unbalanced '(': reached end of input", s.line, s.col);
    s.items.push_back(parse_sexp(lex, t));
  }
}

Sexp parse_root(std::string_view text) {
  Lexer lex(text);
  Lexer::Token t = lex.next();
  if (t.kind == Lexer::Token::End)
    throw ParseError("empty input", t.line, t.col);
  Sexp root = parse_sexp(lex, t);
  Lexer::Token rest = lex.next();
  if (rest.kind != Lexer::Token::End)
    throw ParseError("trailing content after top-level form", rest.line,
                     rest.col);
  return root;
}

// Splits "a b - t c d - u e" into (name, type-name) pairs; items without a
// trailing "- type" get the given default.
std::vector<std::pair<Sexp, std::string>> typed_list(
    const std::vector<Sexp>& items, size_t begin, const std::string& def) {
  std::vector<std::pair<Sexp, std::string>> out;
  std::vector<Sexp> pending;
  for (size_t i = begin; i < items.size(); ++i) {
    const Sexp& it = items[i];
    if (it.is_atom && it.text == "-") {
      if (i + 1 >= items.size() || !items[i + 1].is_atom)
        throw ParseError("expected type name after '-'", it.line, it.col);
      if (pending.empty())
        throw ParseError("dangling '-' in typed list", it.line, it.col);
      for (auto& p : pending) out.emplace_back(std::move(p), items[i + 1].text);
      pending.clear();
      ++i;
      continue;
    }
    pending.push_back(it);
  }
  for (auto& p : pending) out.emplace_back(std::move(p), def);
  return out;
}

void expect_atom(const Sexp& s, const char* what) {
  if (!s.is_atom)
    throw ParseError(std::string("expected ") + what, s.line, s.col);
}

// ---------------------------------------------------------------------------
// Domain reader
// ---------------------------------------------------------------------------

class DomainReader {
 public:
  DomainModel read(const Sexp& root) {
    if (root.head() != "define")
      throw ParseError("expected (define ...)", root.line, root.col);
    if (root.items.size() < 2 || root.items[1].head() != "domain" ||
        root.items[1].items.size() != 2 || !root.items[1].items[1].is_atom)
      throw ParseError("expected (domain <name>)", root.line, root.col);
    d_.name = root.items[1].items[1].text;
    d_.types.push_back({"object", -1});

    const Sexp* types_sec = nullptr;
    const Sexp* consts_sec = nullptr;
    const Sexp* preds_sec = nullptr;
    std::vector<const Sexp*> action_secs;
    for (size_t i = 2; i < root.items.size(); ++i) {
      const Sexp& sec = root.items[i];
      const std::string& h = sec.head();
      if (h == ":requirements") {
        read_requirements(sec);
      } else if (h == ":types") {
        types_sec = &sec;
      } else if (h == ":constants") {
        consts_sec = &sec;
      } else if (h == ":predicates") {
        preds_sec = &sec;
      } else if (h == ":action") {
        action_secs.push_back(&sec);
      } else if (h == ":functions" || h == ":derived" || h == ":axiom" ||
                 h == ":constraints") {
        throw UnsupportedFeature("section " + h + " is outside the subset");
      } else {
        throw ParseError("unknown domain section '" + h + "'", sec.line,
                         sec.col);
      }
    }
    if (types_sec) read_types(*types_sec);
    if (preds_sec) read_predicates(*preds_sec);
    compile_types();
    if (consts_sec) read_constants(*consts_sec);
    for (const Sexp* a : action_secs) read_action(*a);
    return std::move(d_);
  }

 private:
  void read_requirements(const Sexp& sec) {
    for (size_t i = 1; i < sec.items.size(); ++i) {
      expect_atom(sec.items[i], "requirement tag");
      const std::string& r = sec.items[i].text;
      if (r != ":strips" && r != ":typing")
        throw UnsupportedFeature("requirement " + r + " is outside the subset");
      d_.requirements.push_back(r);
    }
  }

  TypeId intern_type(const std::string& name, const Sexp& at) {
    if (name == "object") return 0;
    for (size_t i = 0; i < d_.types.size(); ++i)
      if (d_.types[i].name == name) return TypeId(i);
    if (name[0] == '?' || name[0] == ':')
      throw ParseError("invalid type name '" + name + "'", at.line, at.col);
    d_.types.push_back({name, 0});
    return TypeId(d_.types.size() - 1);
  }

  void read_types(const Sexp& sec) {
    auto pairs = typed_list(sec.items, 1, "object");
    for (auto& [item, parent_name] : pairs) {
      expect_atom(item, "type name");
      TypeId t = intern_type(item.text, item);
      TypeId parent = intern_type(parent_name, item);
      if (t == 0) {
        if (parent != 0)
          throw ParseError("'object' cannot have a supertype", item.line,
                           item.col);
        continue;
      }
      if (declared_.count(t) && d_.types[t].parent != parent)
        throw ParseError("type '" + item.text + "' declared twice with "
                         "different supertypes", item.line, item.col);
      d_.types[t].parent = parent;
      declared_.insert(t);
    }
    // Cycle check.
    for (size_t i = 1; i < d_.types.size(); ++i) {
      TypeId t = TypeId(i);
      size_t steps = 0;
      while (t > 0) {
        t = d_.types[t].parent;
        if (++steps > d_.types.size())
          throw ParseError("cycle in type hierarchy involving '" +
                           d_.types[i].name + "'");
      }
    }
  }

  void read_predicates(const Sexp& sec) {
    for (size_t i = 1; i < sec.items.size(); ++i) {
      const Sexp& p = sec.items[i];
      if (!p.is_list() || p.items.empty() || !p.items[0].is_atom)
        throw ParseError("malformed predicate declaration", p.line, p.col);
      const std::string& name = p.items[0].text;
      if (d_.find_predicate(name))
        throw ParseError("predicate '" + name + "' declared twice", p.line,
                         p.col);
      auto params = typed_list(p.items, 1, "object");
      if (params.size() < 1 || params.size() > 2)
        throw ArityError("predicate '" + name + "' has arity " +
                         std::to_string(params.size()) +
                         "; supported arities are 1 and 2");
      PredicateDef def;
      def.name = name;
      def.arity = int(params.size());
      def.param_types = {0, 0};
      def.kind = PredKind::Domain;
      for (size_t k = 0; k < params.size(); ++k) {
        expect_atom(params[k].first, "parameter variable");
        if (params[k].first.text[0] != '?')
          throw ParseError("predicate parameter must be a ?variable",
                           params[k].first.line, params[k].first.col);
        def.param_types[k] = intern_type(params[k].second, params[k].first);
      }
      d_.predicates.push_back(std::move(def));
    }
  }

  // Every non-root type becomes a static unary predicate.
  void compile_types() {
    for (size_t t = 1; t < d_.types.size(); ++t) {
      if (d_.find_predicate(d_.types[t].name))
        throw ParseError("type '" + d_.types[t].name +
                         "' collides with a predicate of the same name");
      d_.predicates.push_back(
          {d_.types[t].name, 1, {0, 0}, PredKind::Type});
    }
  }

  void read_constants(const Sexp& sec) {
    auto pairs = typed_list(sec.items, 1, "object");
    for (auto& [item, type_name] : pairs) {
      expect_atom(item, "constant name");
      auto t = d_.find_type(type_name);
      if (!t)
        throw UnknownSymbol("unknown type '" + type_name + "' for constant '" +
                            item.text + "'");
      if (std::find(d_.constants.begin(), d_.constants.end(), item.text) !=
          d_.constants.end())
        throw ParseError("constant '" + item.text + "' declared twice",
                         item.line, item.col);
      d_.constants.push_back(item.text);
      d_.constant_types.push_back(*t);
    }
  }

  LiftedAtom read_schema_atom(const Sexp& s, const ActionSchema& schema) {
    if (!s.is_list() || s.items.empty() || !s.items[0].is_atom)
      throw ParseError("malformed atom", s.line, s.col);
    const std::string& pname = s.items[0].text;
    auto pid = d_.find_predicate(pname);
    if (!pid || d_.predicates[*pid].kind != PredKind::Domain)
      throw UnknownSymbol("unknown predicate '" + pname + "'");
    const PredicateDef& def = d_.predicates[*pid];
    if (int(s.items.size()) - 1 != def.arity)
      throw ParseError("predicate '" + pname + "' expects " +
                       std::to_string(def.arity) + " arguments", s.line, s.col);
    LiftedAtom la;
    la.pred = *pid;
    la.arity = def.arity;
    la.args = {0, 0};
    for (int k = 0; k < def.arity; ++k) {
      const Sexp& arg = s.items[k + 1];
      expect_atom(arg, "atom argument");
      TypeId arg_type;
      if (arg.text[0] == '?') {
        auto it = std::find_if(schema.params.begin(), schema.params.end(),
                               [&](const SchemaParam& sp) {
                                 return sp.name == arg.text;
                               });
        if (it == schema.params.end())
          throw UnknownSymbol("unknown parameter '" + arg.text +
                              "' in action '" + schema.name + "'");
        la.args[k] = int32_t(it - schema.params.begin());
        arg_type = it->type;
      } else {
        auto ci = std::find(d_.constants.begin(), d_.constants.end(), arg.text);
        if (ci == d_.constants.end())
          throw UnknownSymbol("unknown constant '" + arg.text + "'");
        ObjId obj = ObjId(ci - d_.constants.begin());
        la.args[k] = -1 - obj;
        arg_type = d_.constant_types[obj];
      }
      if (!d_.is_subtype(arg_type, def.param_types[k]))
        throw ParseError("argument " + std::to_string(k + 1) + " of '" + pname +
                         "' has incompatible type", arg.line, arg.col);
    }
    return la;
  }

  void read_condition(const Sexp& s, ActionSchema& schema) {
    if (s.is_list() && s.items.empty()) return;  // ()
    const std::string& h = s.head();
    if (h == "and") {
      for (size_t i = 1; i < s.items.size(); ++i)
        read_condition(s.items[i], schema);
      return;
    }
    if (h == "not")
      throw UnsupportedFeature("negative preconditions are outside the subset");
    if (h == "or" || h == "imply" || h == "forall" || h == "exists" ||
        h == "when")
      throw UnsupportedFeature("'" + h + "' conditions are outside the subset");
    schema.pre.push_back(read_schema_atom(s, schema));
  }

  void read_effect(const Sexp& s, ActionSchema& schema) {
    if (s.is_list() && s.items.empty()) return;  // ()
    const std::string& h = s.head();
    if (h == "and") {
      for (size_t i = 1; i < s.items.size(); ++i) read_effect(s.items[i], schema);
      return;
    }
    if (h == "when" || h == "forall")
      throw UnsupportedFeature("conditional effects are outside the subset");
    if (h == "increase" || h == "decrease" || h == "assign")
      throw UnsupportedFeature("numeric fluents are outside the subset");
    if (h == "not") {
      if (s.items.size() != 2)
        throw ParseError("malformed (not ...)", s.line, s.col);
      schema.del.push_back(read_schema_atom(s.items[1], schema));
      return;
    }
    schema.add.push_back(read_schema_atom(s, schema));
  }

  void read_action(const Sexp& sec) {
    if (sec.items.size() < 2 || !sec.items[1].is_atom)
      throw ParseError("expected action name", sec.line, sec.col);
    ActionSchema schema;
    schema.name = sec.items[1].text;
    for (const auto& other : d_.schemas)
      if (other.name == schema.name)
        throw ParseError("action '" + schema.name + "' declared twice",
                         sec.line, sec.col);
    const Sexp* pre = nullptr;
    const Sexp* eff = nullptr;
    for (size_t i = 2; i < sec.items.size(); i += 2) {
      expect_atom(sec.items[i], "action keyword");
      const std::string& key = sec.items[i].text;
      if (i + 1 >= sec.items.size())
        throw ParseError("missing value after " + key, sec.items[i].line,
                         sec.items[i].col);
      const Sexp& val = sec.items[i + 1];
      if (key == ":parameters") {
        if (!val.is_list())
          throw ParseError("expected parameter list", val.line, val.col);
        for (auto& [item, type_name] : typed_list(val.items, 0, "object")) {
          expect_atom(item, "parameter variable");
          if (item.text[0] != '?')
            throw ParseError("action parameter must be a ?variable", item.line,
                             item.col);
          for (const auto& sp : schema.params)
            if (sp.name == item.text)
              throw ParseError("duplicate parameter '" + item.text + "'",
                               item.line, item.col);
          auto t = d_.find_type(type_name);
          if (!t) throw UnknownSymbol("unknown type '" + type_name + "'");
          schema.params.push_back({item.text, *t});
        }
      } else if (key == ":precondition") {
        pre = &val;
      } else if (key == ":effect") {
        eff = &val;
      } else {
        throw ParseError("unknown action keyword '" + key + "'",
                         sec.items[i].line, sec.items[i].col);
      }
    }
    if (pre) read_condition(*pre, schema);
    if (eff) read_effect(*eff, schema);
    d_.schemas.push_back(std::move(schema));
  }

  DomainModel d_;
  std::unordered_set<TypeId> declared_;
};

// ---------------------------------------------------------------------------
// Problem reader
// ---------------------------------------------------------------------------

class ProblemReader {
 public:
  ProblemReader(std::shared_ptr<const DomainModel> domain)
      : domain_(std::move(domain)) {}

  GroundProblem read(const Sexp& root) {
    if (root.head() != "define")
      throw ParseError("expected (define ...)", root.line, root.col);
    if (root.items.size() < 2 || root.items[1].head() != "problem" ||
        root.items[1].items.size() != 2 || !root.items[1].items[1].is_atom)
      throw ParseError("expected (problem <name>)", root.line, root.col);
    std::string name = root.items[1].items[1].text;

    objects_ = domain_->constants;
    object_types_ = domain_->constant_types;

    const Sexp* init_sec = nullptr;
    const Sexp* goal_sec = nullptr;
    for (size_t i = 2; i < root.items.size(); ++i) {
      const Sexp& sec = root.items[i];
      const std::string& h = sec.head();
      if (h == ":domain") {
        if (sec.items.size() != 2 || !sec.items[1].is_atom)
          throw ParseError("expected (:domain <name>)", sec.line, sec.col);
        if (sec.items[1].text != domain_->name)
          throw UnknownSymbol("problem requires domain '" + sec.items[1].text +
                              "' but '" + domain_->name + "' was loaded");
      } else if (h == ":objects") {
        read_objects(sec);
      } else if (h == ":init") {
        init_sec = &sec;
      } else if (h == ":goal") {
        goal_sec = &sec;
      } else if (h == ":metric" || h == ":constraints") {
        throw UnsupportedFeature("section " + h + " is outside the subset");
      } else {
        throw ParseError("unknown problem section '" + h + "'", sec.line,
                         sec.col);
      }
    }

    std::vector<Atom> init;
    if (init_sec)
      for (size_t i = 1; i < init_sec->items.size(); ++i)
        init.push_back(read_ground_atom(init_sec->items[i], false));
    std::vector<Atom> goal;
    if (goal_sec) {
      if (goal_sec->items.size() != 2)
        throw ParseError("expected (:goal <formula>)", goal_sec->line,
                         goal_sec->col);
      read_goal(goal_sec->items[1], goal);
    }
    return ground(domain_, std::move(name), std::move(objects_),
                  std::move(object_types_), std::move(init), std::move(goal));
  }

 private:
  void read_objects(const Sexp& sec) {
    for (auto& [item, type_name] : typed_list(sec.items, 1, "object")) {
      expect_atom(item, "object name");
      auto t = domain_->find_type(type_name);
      if (!t)
        throw UnknownSymbol("unknown type '" + type_name + "' for object '" +
                            item.text + "'");
      if (std::find(objects_.begin(), objects_.end(), item.text) !=
          objects_.end())
        throw ParseError("object '" + item.text + "' declared twice",
                         item.line, item.col);
      objects_.push_back(item.text);
      object_types_.push_back(*t);
    }
  }

  Atom read_ground_atom(const Sexp& s, bool in_goal) {
    if (!s.is_list() || s.items.empty() || !s.items[0].is_atom)
      throw ParseError("malformed atom", s.line, s.col);
    const std::string& pname = s.items[0].text;
    if (pname == "=")
      throw UnsupportedFeature("numeric fluents are outside the subset");
    auto pid = domain_->find_predicate(pname);
    if (!pid) throw UnknownSymbol("unknown predicate '" + pname + "'");
    const PredicateDef& def = domain_->predicates[*pid];
    if (def.kind == PredKind::Type)
      throw UnsupportedFeature(
          in_goal ? "type atom '" + pname + "' not allowed in goals"
                  : "type atom '" + pname + "' is implicit; declare the "
                    "object with that type instead");
    if (int(s.items.size()) - 1 != def.arity)
      throw ParseError("predicate '" + pname + "' expects " +
                       std::to_string(def.arity) + " arguments", s.line, s.col);
    ObjId args[2] = {0, 0};
    for (int k = 0; k < def.arity; ++k) {
      const Sexp& arg = s.items[k + 1];
      expect_atom(arg, "object name");
      auto oi = std::find(objects_.begin(), objects_.end(), arg.text);
      if (oi == objects_.end())
        throw UnknownSymbol("unknown object '" + arg.text + "'");
      args[k] = ObjId(oi - objects_.begin());
      if (!domain_->is_subtype(object_types_[args[k]], def.param_types[k]))
        throw ParseError("argument '" + arg.text + "' of '" + pname +
                         "' has incompatible type", arg.line, arg.col);
    }
    return def.arity == 1 ? Atom::unary(*pid, args[0])
                          : Atom::binary(*pid, args[0], args[1]);
  }

  void read_goal(const Sexp& s, std::vector<Atom>& goal) {
    if (s.is_list() && s.items.empty()) return;  // () — empty goal
    const std::string& h = s.head();
    if (h == "and") {
      for (size_t i = 1; i < s.items.size(); ++i) read_goal(s.items[i], goal);
      return;
    }
    if (h == "not")
      throw NegativeGoal("goals must be conjunctions of positive atoms");
    if (h == "or" || h == "imply" || h == "forall" || h == "exists")
      throw UnsupportedFeature("quantified or disjunctive goals are outside "
                               "the subset");
    goal.push_back(read_ground_atom(s, true));
  }

  std::shared_ptr<const DomainModel> domain_;
  std::vector<std::string> objects_;
  std::vector<TypeId> object_types_;
};

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

std::shared_ptr<const DomainModel> parse_domain(std::string_view text) {
  Sexp root = parse_root(text);
  DomainReader reader;
  return std::make_shared<const DomainModel>(reader.read(root));
}

GroundProblem parse_problem(std::string_view text,
                            std::shared_ptr<const DomainModel> domain) {
  Sexp root = parse_root(text);
  ProblemReader reader(std::move(domain));
  return reader.read(root);
}

std::shared_ptr<const DomainModel> parse_domain_file(
    const std::filesystem::path& path) {
  return parse_domain(read_file(path));
}

GroundProblem parse_problem_file(const std::filesystem::path& path,
                                 std::shared_ptr<const DomainModel> domain) {
  return parse_problem(read_file(path), std::move(domain));
}

// ---------------------------------------------------------------------------
// Unparse
// ---------------------------------------------------------------------------

namespace {

std::string lifted_arg(const DomainModel& d, const ActionSchema& s,
                       int32_t arg) {
  if (arg >= 0) return s.params[arg].name;
  return d.constants[-1 - arg];
}

std::string lifted_atom_str(const DomainModel& d, const ActionSchema& s,
                            const LiftedAtom& la) {
  std::string out = "(" + d.predicates[la.pred].name;
  for (int k = 0; k < la.arity; ++k) out += " " + lifted_arg(d, s, la.args[k]);
  return out + ")";
}

}  // namespace

std::string unparse_domain(const DomainModel& d) {
  std::ostringstream out;
  out << "(define (domain " << d.name << ")\n";
  if (!d.requirements.empty()) {
    out << "  (:requirements";
    for (const auto& r : d.requirements) out << " " << r;
    out << ")\n";
  }
  if (d.types.size() > 1) {
    out << "  (:types";
    for (size_t t = 1; t < d.types.size(); ++t)
      out << " " << d.types[t].name << " - "
          << d.types[d.types[t].parent < 0 ? 0 : d.types[t].parent].name;
    out << ")\n";
  }
  if (!d.constants.empty()) {
    out << "  (:constants";
    for (size_t i = 0; i < d.constants.size(); ++i)
      out << " " << d.constants[i] << " - " << d.types[d.constant_types[i]].name;
    out << ")\n";
  }
  out << "  (:predicates";
  for (const auto& p : d.predicates) {
    if (p.kind != PredKind::Domain) continue;
    out << "\n    (" << p.name;
    for (int k = 0; k < p.arity; ++k)
      out << " ?x" << k << " - " << d.types[p.param_types[k]].name;
    out << ")";
  }
  out << ")\n";
  for (const auto& s : d.schemas) {
    out << "  (:action " << s.name << "\n    :parameters (";
    for (size_t i = 0; i < s.params.size(); ++i)
      out << (i ? " " : "") << s.params[i].name << " - "
          << d.types[s.params[i].type].name;
    out << ")\n    :precondition (and";
    for (const auto& la : s.pre) out << " " << lifted_atom_str(d, s, la);
    out << ")\n    :effect (and";
    for (const auto& la : s.add) out << " " << lifted_atom_str(d, s, la);
    for (const auto& la : s.del)
      out << " (not " << lifted_atom_str(d, s, la) << ")";
    out << "))\n";
  }
  out << ")\n";
  return out.str();
}

std::string unparse_problem(const GroundProblem& p) {
  const DomainModel& d = *p.domain;
  std::ostringstream out;
  out << "(define (problem " << p.name << ")\n  (:domain " << d.name << ")\n";
  out << "  (:objects";
  for (size_t i = d.constants.size(); i < p.objects.size(); ++i)
    out << " " << p.objects[i] << " - " << d.types[p.object_types[i]].name;
  out << ")\n  (:init";
  for (const Atom& a : p.init.atoms()) {
    if (d.predicates[a.pred()].kind != PredKind::Domain) continue;
    out << " " << atom_to_string(a, p);
  }
  out << ")\n  (:goal (and";
  for (const Atom& a : p.goal) out << " " << atom_to_string(a, p);
  out << ")))\n";
  return out.str();
}

}  // namespace ghn
