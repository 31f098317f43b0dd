#include "ghn/pddl.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "ghn/errors.hpp"

namespace ghn {

namespace {

uint64_t mix64(uint64_t x) {
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

}  // namespace

ConcreteState::ConcreteState(std::vector<Atom> atoms) : atoms_(std::move(atoms)) {
  std::sort(atoms_.begin(), atoms_.end());
  atoms_.erase(std::unique(atoms_.begin(), atoms_.end()), atoms_.end());
  uint64_t h = 0x243f6a8885a308d3ull;
  for (const Atom& a : atoms_) h = mix64(h ^ a.code());
  hash_ = h;
}

bool ConcreteState::contains(Atom a) const {
  return std::binary_search(atoms_.begin(), atoms_.end(), a);
}

std::optional<PredId> DomainModel::find_predicate(std::string_view name) const {
  for (size_t i = 0; i < predicates.size(); ++i)
    if (predicates[i].name == name) return PredId(i);
  return std::nullopt;
}

std::optional<TypeId> DomainModel::find_type(std::string_view name) const {
  for (size_t i = 0; i < types.size(); ++i)
    if (types[i].name == name) return TypeId(i);
  return std::nullopt;
}

bool DomainModel::is_subtype(TypeId t, TypeId ancestor) const {
  while (t >= 0) {
    if (t == ancestor) return true;
    t = types[t].parent;
  }
  return false;
}

size_t DomainModel::max_schema_params() const {
  size_t m = 0;
  for (const auto& s : schemas) m = std::max(m, s.params.size());
  return m;
}

size_t DomainModel::unary_count() const {
  size_t n = 0;
  for (const auto& p : predicates) n += p.arity == 1;
  return n;
}

std::optional<ObjId> GroundProblem::find_object(std::string_view name) const {
  for (size_t i = 0; i < objects.size(); ++i)
    if (objects[i] == name) return ObjId(i);
  return std::nullopt;
}

std::optional<int32_t> GroundProblem::find_action(std::string_view display) const {
  if (action_index_.empty() && !actions.empty()) {
    for (size_t i = 0; i < actions.size(); ++i)
      action_index_.emplace(actions[i].display, int32_t(i));
  }
  auto it = action_index_.find(std::string(display));
  if (it == action_index_.end()) return std::nullopt;
  return it->second;
}

bool GroundProblem::operator==(const GroundProblem& o) const {
  return *domain == *o.domain && name == o.name && objects == o.objects &&
         object_types == o.object_types && init == o.init && goal == o.goal &&
         actions == o.actions;
}

namespace {

Atom instantiate(const LiftedAtom& la, std::span<const ObjId> params) {
  ObjId a0 = la.args[0] >= 0 ? params[la.args[0]] : ObjId(-1 - la.args[0]);
  if (la.arity == 1) return Atom::unary(la.pred, a0);
  ObjId a1 = la.args[1] >= 0 ? params[la.args[1]] : ObjId(-1 - la.args[1]);
  return Atom::binary(la.pred, a0, a1);
}

void sort_unique(std::vector<Atom>& v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
}

}  // namespace

GroundProblem ground(std::shared_ptr<const DomainModel> domain,
                     std::string name, std::vector<std::string> objects,
                     std::vector<TypeId> object_types,
                     std::vector<Atom> init_atoms, std::vector<Atom> goal) {
  GroundProblem p;
  p.domain = std::move(domain);
  p.name = std::move(name);
  p.objects = std::move(objects);
  p.object_types = std::move(object_types);

  const DomainModel& d = *p.domain;

  // Static type atoms: declared type and every proper supertype below the
  // root. These never occur in effects, so they hold in every state.
  for (size_t o = 0; o < p.objects.size(); ++o) {
    for (TypeId t = p.object_types[o]; t > 0; t = d.types[t].parent) {
      if (auto pid = d.find_predicate(d.types[t].name))
        init_atoms.push_back(Atom::unary(*pid, ObjId(o)));
    }
  }
  sort_unique(init_atoms);
  p.init = ConcreteState(std::move(init_atoms));
  sort_unique(goal);
  p.goal = std::move(goal);

  // Candidate objects per type, in object-id order.
  std::vector<std::vector<ObjId>> by_type(d.types.size());
  for (size_t o = 0; o < p.objects.size(); ++o)
    for (TypeId t = 0; t < TypeId(d.types.size()); ++t)
      if (d.is_subtype(p.object_types[o], t)) by_type[t].push_back(ObjId(o));

  for (size_t si = 0; si < d.schemas.size(); ++si) {
    const ActionSchema& schema = d.schemas[si];
    std::vector<ObjId> tuple(schema.params.size());
    // Enumerate typed parameter tuples depth-first.
    auto emit = [&]() {
      GroundAction ga;
      ga.schema = int32_t(si);
      ga.params = tuple;
      for (const auto& la : schema.pre) ga.pre.push_back(instantiate(la, tuple));
      for (const auto& la : schema.add) ga.add.push_back(instantiate(la, tuple));
      for (const auto& la : schema.del) ga.del.push_back(instantiate(la, tuple));
      sort_unique(ga.pre);
      sort_unique(ga.add);
      sort_unique(ga.del);
      // (s \ del) ∪ add: an atom both added and deleted ends up present,
      // so drop it from del.
      std::vector<Atom> del;
      del.reserve(ga.del.size());
      for (Atom a : ga.del)
        if (!std::binary_search(ga.add.begin(), ga.add.end(), a))
          del.push_back(a);
      ga.del = std::move(del);
      std::string disp = "(" + schema.name;
      for (ObjId o : tuple) disp += " " + p.objects[o];
      disp += ")";
      ga.display = std::move(disp);
      p.actions.push_back(std::move(ga));
    };
    auto rec = [&](auto&& self, size_t k) -> void {
      if (k == schema.params.size()) {
        emit();
        return;
      }
      for (ObjId o : by_type[schema.params[k].type]) {
        tuple[k] = o;
        self(self, k + 1);
      }
    };
    rec(rec, 0);
  }

  std::sort(p.actions.begin(), p.actions.end(),
            [](const GroundAction& a, const GroundAction& b) {
              return a.display < b.display;
            });
  return p;
}

bool applicable(const ConcreteState& s, const GroundAction& a) {
  const auto& atoms = s.atoms();
  return std::includes(atoms.begin(), atoms.end(), a.pre.begin(), a.pre.end());
}

ConcreteState apply(const ConcreteState& s, const GroundAction& a) {
  if (!applicable(s, a))
    throw NotApplicable("action " + a.display + " not applicable");
  std::vector<Atom> out;
  out.reserve(s.atoms().size() + a.add.size());
  std::set_difference(s.atoms().begin(), s.atoms().end(), a.del.begin(),
                      a.del.end(), std::back_inserter(out));
  out.insert(out.end(), a.add.begin(), a.add.end());
  return ConcreteState(std::move(out));
}

bool goal_check(const ConcreteState& s, std::span<const Atom> goal) {
  const auto& atoms = s.atoms();
  return std::includes(atoms.begin(), atoms.end(), goal.begin(), goal.end());
}

bool validate_plan(const GroundProblem& p, std::span<const int32_t> plan) {
  ConcreteState s = p.init;
  for (int32_t ai : plan) {
    if (ai < 0 || size_t(ai) >= p.actions.size()) return false;
    const GroundAction& a = p.actions[ai];
    if (!applicable(s, a)) return false;
    s = apply(s, a);
  }
  return goal_check(s, p.goal);
}

std::string atom_to_string(Atom a, const GroundProblem& p) {
  std::string out = "(" + p.domain->predicates[a.pred()].name + " " +
                    p.objects[a.arg0()];
  if (a.is_binary()) out += " " + p.objects[a.arg1()];
  return out + ")";
}

void write_plan_file(const std::filesystem::path& path, const GroundProblem& p,
                     std::span<const int32_t> plan) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write plan file " + path.string());
  for (int32_t ai : plan) out << p.actions[ai].display << "\n";
}

std::vector<std::string> read_plan_lines(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot read plan file " + path.string());
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) {
    auto semi = line.find(';');
    if (semi != std::string::npos) line.erase(semi);
    // trim
    auto b = line.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) continue;
    auto e = line.find_last_not_of(" \t\r\n");
    lines.push_back(line.substr(b, e - b + 1));
  }
  return lines;
}

std::vector<int32_t> resolve_plan(const GroundProblem& p,
                                  const std::vector<std::string>& lines) {
  std::vector<int32_t> plan;
  plan.reserve(lines.size());
  for (const std::string& line : lines) {
    // Normalize interior whitespace so "( move  ra rb )" still resolves.
    std::string norm;
    bool in_ws = false;
    for (char c : line) {
      if (c == ' ' || c == '\t') {
        in_ws = true;
        continue;
      }
      if (in_ws && !norm.empty() && norm.back() != '(' && c != ')')
        norm += ' ';
      in_ws = false;
      norm += c;
    }
    auto idx = p.find_action(norm);
    if (!idx) throw UnknownSymbol("no ground action matches '" + line + "'");
    plan.push_back(*idx);
  }
  return plan;
}

}  // namespace ghn
