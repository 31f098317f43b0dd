#include "ghn/abstraction.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "ghn/errors.hpp"

namespace ghn {

std::shared_ptr<const HintVocab> HintVocab::build(
    std::shared_ptr<const DomainModel> domain) {
  auto v = std::make_shared<HintVocab>();
  v->domain_ = std::move(domain);
  const DomainModel& d = *v->domain_;

  for (const auto& p : d.predicates) {
    if (p.name.rfind("goal-", 0) == 0 || p.name.rfind("done-", 0) == 0)
      throw NameCollision("predicate '" + p.name +
                          "' uses a reserved hint prefix");
    v->names_.push_back(p.name);
    v->arities_.push_back(p.arity);
  }

  v->hint_ids_.resize(d.predicates.size());
  auto add_pred = [&](const std::string& name, int arity) -> PredId {
    if (std::find(v->names_.begin(), v->names_.end(), name) != v->names_.end())
      throw NameCollision("hint predicate '" + name +
                          "' collides with an existing predicate");
    v->names_.push_back(name);
    v->arities_.push_back(arity);
    return PredId(v->names_.size() - 1);
  };

  for (size_t i = 0; i < d.predicates.size(); ++i) {
    const PredicateDef& p = d.predicates[i];
    if (p.kind != PredKind::Domain) continue;  // types never occur in goals
    HintIds ids;
    ids.goal = add_pred("goal-" + p.name, p.arity);
    ids.done = add_pred("done-" + p.name, p.arity);
    for (int k = 0; k < p.arity; ++k) {
      ids.goal_index[k] =
          add_pred("goal-" + p.name + "-" + std::to_string(k + 1), 1);
      ids.done_index[k] =
          add_pred("done-" + p.name + "-" + std::to_string(k + 1), 1);
    }
    v->hint_ids_[i] = ids;
  }

  for (size_t p = 0; p < v->names_.size(); ++p)
    if (v->arities_[p] == 1) v->unary_.push_back(PredId(p));
  return v;
}

bool Role::contains(PredId p) const {
  return std::binary_search(preds.begin(), preds.end(), p);
}

std::vector<std::string> role_names(const Role& r, const HintVocab& v) {
  std::vector<std::string> names;
  names.reserve(r.preds.size());
  for (PredId p : r.preds) names.push_back(v.pred_name(p));
  std::sort(names.begin(), names.end());
  return names;
}

std::string role_to_string(const Role& r, const HintVocab& v) {
  std::string out = "{";
  auto names = role_names(r, v);
  for (size_t i = 0; i < names.size(); ++i) out += (i ? "," : "") + names[i];
  return out + "}";
}

RolePartition compute_roles(const ConcreteState& state, size_t num_objects) {
  // Atoms are sorted by (pred, args), so each object's predicate list is
  // built in ascending order.
  std::vector<std::vector<PredId>> per_obj(num_objects);
  for (const Atom& a : state.atoms()) {
    if (a.is_binary()) continue;
    per_obj[a.arg0()].push_back(a.pred());
  }

  std::map<std::vector<PredId>, int32_t> interned;
  for (const auto& preds : per_obj) interned.emplace(preds, 0);
  RolePartition part;
  part.roles.reserve(interned.size());
  for (auto& [preds, idx] : interned) {
    idx = int32_t(part.roles.size());
    part.roles.push_back(Role{preds});
  }
  part.assignment.resize(num_objects);
  part.groups.resize(part.roles.size());
  for (size_t o = 0; o < num_objects; ++o) {
    int32_t r = interned[per_obj[o]];
    part.assignment[o] = r;
    part.groups[r].push_back(ObjId(o));
  }
  return part;
}

GoalHintContext::GoalHintContext(std::shared_ptr<const HintVocab> vocab,
                                 std::vector<Atom> goal)
    : vocab_(std::move(vocab)), goal_(std::move(goal)) {
  std::sort(goal_.begin(), goal_.end());
  goal_.erase(std::unique(goal_.begin(), goal_.end()), goal_.end());
  const HintVocab& v = *vocab_;

  std::map<Atom, std::vector<Atom>> groups;  // done-p-i(o) -> goal atoms
  for (const Atom& g : goal_) {
    PredId base = g.pred();
    if (v.is_hint(base) || v.domain().predicates[base].kind != PredKind::Domain)
      throw UnsupportedFeature("goal atom uses non-domain predicate '" +
                               v.pred_name(base) + "'");
    if (g.arity() == 1) {
      static_hints_.push_back(Atom::unary(v.goal_pred(base), g.arg0()));
      static_hints_.push_back(
          Atom::unary(v.goal_index_pred(base, 0), g.arg0()));
      groups[Atom::unary(v.done_index_pred(base, 0), g.arg0())].push_back(g);
    } else {
      static_hints_.push_back(
          Atom::binary(v.goal_pred(base), g.arg0(), g.arg1()));
      static_hints_.push_back(
          Atom::unary(v.goal_index_pred(base, 0), g.arg0()));
      static_hints_.push_back(
          Atom::unary(v.goal_index_pred(base, 1), g.arg1()));
      groups[Atom::unary(v.done_index_pred(base, 0), g.arg0())].push_back(g);
      groups[Atom::unary(v.done_index_pred(base, 1), g.arg1())].push_back(g);
    }
  }
  std::sort(static_hints_.begin(), static_hints_.end());
  static_hints_.erase(std::unique(static_hints_.begin(), static_hints_.end()),
                      static_hints_.end());
  for (auto& [done_atom, members] : groups)
    done_groups_.push_back({done_atom, std::move(members)});
}

HintedState GoalHintContext::hint(const ConcreteState& base) const {
  const HintVocab& v = *vocab_;
  std::vector<Atom> hints = static_hints_;
  for (const Atom& g : goal_) {
    if (!base.contains(g)) continue;
    PredId done = v.done_pred(g.pred());
    hints.push_back(g.arity() == 1 ? Atom::unary(done, g.arg0())
                                   : Atom::binary(done, g.arg0(), g.arg1()));
  }
  for (const auto& grp : done_groups_) {
    bool all = true;
    for (const Atom& m : grp.members)
      if (!base.contains(m)) {
        all = false;
        break;
      }
    if (all) hints.push_back(grp.done_atom);
  }
  std::sort(hints.begin(), hints.end());
  hints.erase(std::unique(hints.begin(), hints.end()), hints.end());

  HintedState hs;
  hs.base = base;
  std::vector<Atom> combined = base.atoms();
  combined.insert(combined.end(), hints.begin(), hints.end());
  hs.combined = ConcreteState(std::move(combined));
  hs.hints = std::move(hints);
  return hs;
}

HintedState add_goal_hints(const ConcreteState& state, std::vector<Atom> goal,
                           std::shared_ptr<const HintVocab> vocab) {
  auto ctx =
      std::make_shared<GoalHintContext>(std::move(vocab), std::move(goal));
  HintedState hs = ctx->hint(state);
  hs.context = std::move(ctx);
  return hs;
}

HintedState refresh_hints(const HintedState& hinted,
                          const ConcreteState& new_base) {
  HintedState hs = hinted.context->hint(new_base);
  hs.context = hinted.context;
  return hs;
}

AbstractState abstract_state(const ConcreteState& state,
                             const RolePartition& part) {
  std::unordered_map<uint64_t, size_t> counts;
  for (const Atom& a : state.atoms()) {
    int32_t r1 = part.assignment[a.arg0()];
    int32_t r2 = a.is_binary() ? part.assignment[a.arg1()] : -1;
    ++counts[AbstractState::key(a.pred(), r1, r2)];
  }

  std::unordered_map<uint64_t, Truth> values;
  values.reserve(counts.size());
  for (const auto& [key, cnt] : counts) {
    int32_t r2_plus1 = int32_t(key & 0xFFFF);
    int32_t r1 = int32_t((key >> 16) & 0xFFFF);
    size_t full = part.group_size(r1);
    if (r2_plus1 != 0) full *= part.group_size(r2_plus1 - 1);
    values.emplace(key, cnt == full ? Truth::True : Truth::Maybe);
  }
  return AbstractState(std::vector<Role>(part.roles), std::move(values));
}

std::string dump_abstract_state(const AbstractState& a, const HintVocab& v) {
  std::vector<std::string> role_strs;
  for (const Role& r : a.roles()) role_strs.push_back(role_to_string(r, v));

  std::vector<std::string> lines;
  for (const auto& [key, truth] : a.entries()) {
    PredId p = PredId(key >> 32);
    int32_t r1 = int32_t((key >> 16) & 0xFFFF);
    int32_t r2_plus1 = int32_t(key & 0xFFFF);
    std::string line = "(" + v.pred_name(p) + " " + role_strs[r1];
    if (r2_plus1 != 0) line += " " + role_strs[r2_plus1 - 1];
    line += ") = ";
    line += truth == Truth::True ? "1" : truth == Truth::Maybe ? "1/2" : "0";
    lines.push_back(std::move(line));
  }
  std::sort(lines.begin(), lines.end());

  std::ostringstream out;
  out << "roles:";
  std::vector<std::string> sorted_roles = role_strs;
  std::sort(sorted_roles.begin(), sorted_roles.end());
  for (const auto& r : sorted_roles) out << " " << r;
  out << "\n";
  for (const auto& l : lines) out << l << "\n";
  return out.str();
}

}  // namespace ghn
