#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <unordered_map>
#include <vector>

#include "ghn/pddl.hpp"

namespace ghn {

/// Predicate table of a domain extended with goal-hint predicates. For each
/// non-type domain predicate p of arity k it registers goal-p and done-p
/// (arity k) plus goal-p-i and done-p-i (unary, i = 1..k). The reserved
/// prefixes "goal-" and "done-" may not occur in domain predicate names.
class HintVocab {
 public:
  static std::shared_ptr<const HintVocab> build(
      std::shared_ptr<const DomainModel> domain);

  const DomainModel& domain() const { return *domain_; }
  std::shared_ptr<const DomainModel> domain_ptr() const { return domain_; }

  size_t pred_count() const { return names_.size(); }
  size_t domain_pred_count() const { return domain_->predicates.size(); }
  const std::string& pred_name(PredId p) const { return names_[p]; }
  int pred_arity(PredId p) const { return arities_[p]; }
  bool is_unary(PredId p) const { return arities_[p] == 1; }
  bool is_hint(PredId p) const { return size_t(p) >= domain_pred_count(); }

  PredId goal_pred(PredId base) const { return hint_ids_[base].goal; }
  PredId done_pred(PredId base) const { return hint_ids_[base].done; }
  PredId goal_index_pred(PredId base, int i) const {
    return hint_ids_[base].goal_index[i];
  }
  PredId done_index_pred(PredId base, int i) const {
    return hint_ids_[base].done_index[i];
  }

  /// All unary predicate ids (domain, type and hint), ascending.
  const std::vector<PredId>& unary_preds() const { return unary_; }

 private:
  struct HintIds {
    PredId goal = -1, done = -1;
    std::array<PredId, 2> goal_index{-1, -1};
    std::array<PredId, 2> done_index{-1, -1};
  };

  std::shared_ptr<const DomainModel> domain_;
  std::vector<std::string> names_;
  std::vector<int> arities_;
  std::vector<HintIds> hint_ids_;  // indexed by domain PredId
  std::vector<PredId> unary_;
};

/// Object role: the set of unary predicates the object satisfies
/// (represented as sorted predicate ids).
struct Role {
  std::vector<PredId> preds;  // sorted ascending

  bool contains(PredId p) const;
  bool operator==(const Role&) const = default;
  auto operator<=>(const Role&) const = default;
};

/// Sorted display form "{a,b}" using predicate names (name order).
std::string role_to_string(const Role& r, const HintVocab& v);
/// Predicate names of a role, sorted by name. The cross-serialization form.
std::vector<std::string> role_names(const Role& r, const HintVocab& v);

/// Partition of the objects by role. groups is the exact inverse of
/// assignment; roles are held in lexicographic (pred-id) order.
struct RolePartition {
  std::vector<Role> roles;
  std::vector<int32_t> assignment;         // object -> index into roles
  std::vector<std::vector<ObjId>> groups;  // role index -> objects, ascending

  const Role& role_of(ObjId o) const { return roles[assignment[o]]; }
  size_t group_size(int32_t r) const { return groups[r].size(); }
};

/// Assigns every object its role. Objects satisfying no unary predicate get
/// the empty role.
RolePartition compute_roles(const ConcreteState& state, size_t num_objects);

class GoalHintContext;

/// A concrete state augmented with goal_*/done_* hint atoms. The combined
/// view (base ∪ hints) is what abstraction and encoding consume.
struct HintedState {
  ConcreteState base;
  std::vector<Atom> hints;  // sorted
  ConcreteState combined;
  std::shared_ptr<const GoalHintContext> context;
};

/// Precompiled hint rules for one (vocab, goal) pair: the goal_* atoms are
/// fixed, only the done_* atoms depend on the state.
class GoalHintContext {
 public:
  GoalHintContext(std::shared_ptr<const HintVocab> vocab,
                  std::vector<Atom> goal);

  HintedState hint(const ConcreteState& base) const;
  const std::vector<Atom>& goal() const { return goal_; }
  const HintVocab& vocab() const { return *vocab_; }
  std::shared_ptr<const HintVocab> vocab_ptr() const { return vocab_; }

 private:
  friend HintedState refresh_hints(const HintedState&, const ConcreteState&);

  std::shared_ptr<const HintVocab> vocab_;
  std::vector<Atom> goal_;          // sorted
  std::vector<Atom> static_hints_;  // goal-p(...) and goal-p-i(o), sorted
  struct DoneGroup {
    Atom done_atom;             // done-p-i(o)
    std::vector<Atom> members;  // goal atoms named p with o at index i
  };
  std::vector<DoneGroup> done_groups_;
};

/// Builds the hinted view of a state for a goal. Idempotent: hint atoms are
/// fully determined by (state, goal).
HintedState add_goal_hints(const ConcreteState& state, std::vector<Atom> goal,
                           std::shared_ptr<const HintVocab> vocab);

/// Re-derives the done_* atoms for a new base state under the same goal.
HintedState refresh_hints(const HintedState& hinted,
                          const ConcreteState& new_base);

/// Three-valued truth of an abstract predicate.
enum class Truth : uint8_t { False = 0, Maybe = 1, True = 2 };

inline double truth_value(Truth t) {
  return t == Truth::False ? 0.0 : t == Truth::True ? 1.0 : 0.5;
}

/// Canonical abstraction of a state: for every predicate and role tuple,
/// 1 iff the predicate holds for all object tuples in the group product,
/// 0 iff for none, 1/2 otherwise. Zero entries are stored implicitly.
class AbstractState {
 public:
  AbstractState(std::vector<Role> roles,
                std::unordered_map<uint64_t, Truth> values)
      : roles_(std::move(roles)), values_(std::move(values)) {}

  const std::vector<Role>& roles() const { return roles_; }
  Truth value(PredId p, int32_t r) const { return get(key(p, r, -1)); }
  Truth value(PredId p, int32_t r1, int32_t r2) const {
    return get(key(p, r1, r2));
  }
  size_t stored_count() const { return values_.size(); }

  static uint64_t key(PredId p, int32_t r1, int32_t r2) {
    return (uint64_t(p) << 32) | (uint64_t(uint16_t(r1)) << 16) |
           uint64_t(uint16_t(r2 + 1));
  }
  const std::unordered_map<uint64_t, Truth>& entries() const { return values_; }

 private:
  Truth get(uint64_t k) const {
    auto it = values_.find(k);
    return it == values_.end() ? Truth::False : it->second;
  }
  std::vector<Role> roles_;
  std::unordered_map<uint64_t, Truth> values_;
};

AbstractState abstract_state(const ConcreteState& state,
                             const RolePartition& partition);
inline AbstractState abstract_state(const HintedState& state,
                                    const RolePartition& partition) {
  return abstract_state(state.combined, partition);
}

/// Deterministic sorted text listing "(pred role [role]) = value", one entry
/// per line, for golden-file tests.
std::string dump_abstract_state(const AbstractState& a, const HintVocab& v);

}  // namespace ghn
