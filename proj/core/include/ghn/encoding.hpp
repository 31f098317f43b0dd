#pragma once
#include <span>

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "ghn/abstraction.hpp"
#include "ghn/pddl.hpp"

namespace ghn {

/// Frozen symbol tables that fix the network's input/output dimensions:
/// role list R, action list A, max parameter count, predicates partitioned
/// by arity. Roles and predicates are stored as names so a vocabulary can be
/// serialized with a model and rebound to a freshly parsed domain.
struct Vocabulary {
  std::vector<std::vector<std::string>> roles;  // sorted name-lists, lex order
  std::vector<std::string> actions;             // sorted schema names
  size_t max_params = 0;
  std::vector<std::string> unary_preds;   // P1, sorted
  std::vector<std::string> binary_preds;  // P2, sorted
  int bin_levels = 2;

  size_t role_count() const { return roles.size(); }
  /// v + v' + per-binary-predicate m and m' matrices.
  size_t flat_size() const {
    return roles.size() * 2 +
           binary_preds.size() * roles.size() * roles.size() * 2;
  }

  std::string to_json() const;
  static Vocabulary from_json(const std::string& text);

  bool operator==(const Vocabulary&) const = default;
};

/// Builds a vocabulary for one domain: actions, max parameter count and
/// predicates come from the augmented-domain scan (stable regardless of the
/// sample), roles from the observed training-state partitions plus the empty
/// role. Throws EmptyTrainingSet when no partitions are given.
Vocabulary build_vocabulary(const HintVocab& hv,
                            std::span<const RolePartition> observed,
                            int bin_levels = 2);

/// A vocabulary bound to a parsed domain: name-based entries resolved to
/// predicate ids for fast lookup. Construction throws DimensionMismatch when
/// the vocabulary does not describe this domain (different predicate or
/// action sets) — the fatal-probe path for models trained elsewhere.
class BoundVocabulary {
 public:
  BoundVocabulary(std::shared_ptr<const Vocabulary> vocab,
                  std::shared_ptr<const HintVocab> hv);

  const Vocabulary& vocab() const { return *vocab_; }
  std::shared_ptr<const Vocabulary> vocab_ptr() const { return vocab_; }
  const HintVocab& hints() const { return *hv_; }

  /// Exact role slot, or -1 when the role is not in the vocabulary.
  int32_t role_slot(const Role& r) const;
  /// Nearest vocabulary role by largest predicate-set intersection
  /// (ties: lowest slot, i.e. lexicographically first).
  int32_t fold_slot(const Role& r) const;

  int32_t unary_slot(PredId p) const { return pred_slot_[p]; }
  int32_t binary_slot(PredId p) const { return pred_slot_[p]; }
  PredId unary_id(int32_t slot) const { return unary_ids_[slot]; }
  std::span<const PredId> unary_ids_span() const { return unary_ids_; }
  int32_t action_slot(const std::string& name) const;

 private:
  std::shared_ptr<const Vocabulary> vocab_;
  std::shared_ptr<const HintVocab> hv_;
  std::vector<std::vector<PredId>> role_ids_;  // vocab roles in id form
  std::unordered_map<uint64_t, int32_t> role_index_;  // hash(id-form) -> slot
  std::vector<int32_t> pred_slot_;  // PredId -> P1 or P2 slot
  std::vector<PredId> unary_ids_;   // P1 slot -> PredId
  std::vector<PredId> binary_ids_;  // P2 slot -> PredId

  static uint64_t role_key(const std::vector<PredId>& preds);
};

/// Fixed-dimension network input for one state: absolute role counts v and
/// relation counts m per binary predicate, plus their binned forms v' and
/// the three-valued m'. flat is the concatenation v, v', m..., m'...
/// (matrices row-major in vocabulary role order).
struct FeatureVector {
  std::vector<int64_t> role_counts;                   // v
  std::vector<int> binned_role_counts;                // v' = min(v, levels)
  std::vector<std::vector<int64_t>> relations;        // m, per P2
  std::vector<std::vector<double>> binned_relations;  // m', 0 / 0.5 / 1
  std::vector<double> flat;
};

struct FoldStats {
  uint64_t events = 0;  // one per object whose role was folded
};

/// Encodes a hinted state against a bound vocabulary. Objects whose role is
/// not in the vocabulary are folded per BoundVocabulary::fold_slot; fold
/// events are tallied into `stats` when given. Never fails on unseen roles.
FeatureVector encode(const HintedState& state, const RolePartition& partition,
                     const BoundVocabulary& bound, FoldStats* stats = nullptr);

/// Training label: the action taken, each parameter's role as a multi-hot
/// indicator over P1 (trailing slots zero), and the remaining plan length.
struct Target {
  int32_t action_index = 0;
  std::vector<double> param_roles;  // max_params * |P1|
  double plan_length = 0;
};

/// Labels a state with the action applied in it. `partition` must be the
/// partition of the hinted state the action was taken in. Throws
/// UnknownAction when the schema name is not in the vocabulary.
Target encode_target(const GroundProblem& problem, const GroundAction& action,
                     const RolePartition& partition, int steps_to_go,
                     const BoundVocabulary& bound);

}  // namespace ghn
