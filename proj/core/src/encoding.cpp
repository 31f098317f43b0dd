#include "ghn/encoding.hpp"

#include <algorithm>
#include <set>

#include <nlohmann/json.hpp>

#include "ghn/errors.hpp"

namespace ghn {

std::string Vocabulary::to_json() const {
  nlohmann::json j;
  j["roles"] = roles;
  j["actions"] = actions;
  j["max_params"] = max_params;
  j["unary_preds"] = unary_preds;
  j["binary_preds"] = binary_preds;
  j["bin_levels"] = bin_levels;
  return j.dump();
}

Vocabulary Vocabulary::from_json(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text);
  Vocabulary v;
  j.at("roles").get_to(v.roles);
  j.at("actions").get_to(v.actions);
  j.at("max_params").get_to(v.max_params);
  j.at("unary_preds").get_to(v.unary_preds);
  j.at("binary_preds").get_to(v.binary_preds);
  j.at("bin_levels").get_to(v.bin_levels);
  return v;
}

Vocabulary build_vocabulary(const HintVocab& hv,
                            std::span<const RolePartition> observed,
                            int bin_levels) {
  if (observed.empty())
    throw EmptyTrainingSet("vocabulary construction needs training states");

  Vocabulary v;
  v.bin_levels = bin_levels;
  for (const auto& schema : hv.domain().schemas) v.actions.push_back(schema.name);
  std::sort(v.actions.begin(), v.actions.end());
  v.max_params = hv.domain().max_schema_params();
  for (size_t p = 0; p < hv.pred_count(); ++p)
    (hv.is_unary(PredId(p)) ? v.unary_preds : v.binary_preds)
        .push_back(hv.pred_name(PredId(p)));
  std::sort(v.unary_preds.begin(), v.unary_preds.end());
  std::sort(v.binary_preds.begin(), v.binary_preds.end());

  std::set<std::vector<std::string>> role_set;
  role_set.insert(std::vector<std::string>{});  // the empty role has a slot
  for (const RolePartition& part : observed)
    for (const Role& r : part.roles) role_set.insert(role_names(r, hv));
  v.roles.assign(role_set.begin(), role_set.end());
  return v;
}

uint64_t BoundVocabulary::role_key(const std::vector<PredId>& preds) {
  uint64_t h = 0xcbf29ce484222325ull;
  for (PredId p : preds) {
    h ^= uint64_t(p) + 1;
    h *= 0x100000001b3ull;
  }
  return h;
}

BoundVocabulary::BoundVocabulary(std::shared_ptr<const Vocabulary> vocab,
                                 std::shared_ptr<const HintVocab> hv)
    : vocab_(std::move(vocab)), hv_(std::move(hv)) {
  // The vocabulary must describe exactly this domain's predicate and action
  // sets; anything else means the model was trained elsewhere.
  std::vector<std::string> unary, binary;
  std::unordered_map<std::string, PredId> by_name;
  for (size_t p = 0; p < hv_->pred_count(); ++p) {
    const std::string& n = hv_->pred_name(PredId(p));
    by_name.emplace(n, PredId(p));
    (hv_->is_unary(PredId(p)) ? unary : binary).push_back(n);
  }
  std::sort(unary.begin(), unary.end());
  std::sort(binary.begin(), binary.end());
  if (unary != vocab_->unary_preds || binary != vocab_->binary_preds)
    throw DimensionMismatch(
        "vocabulary predicates do not match the loaded domain");

  std::vector<std::string> schema_names;
  for (const auto& s : hv_->domain().schemas) schema_names.push_back(s.name);
  std::sort(schema_names.begin(), schema_names.end());
  if (schema_names != vocab_->actions)
    throw DimensionMismatch("vocabulary actions do not match the loaded domain");
  if (vocab_->max_params < hv_->domain().max_schema_params())
    throw DimensionMismatch("vocabulary max_params too small for this domain");

  pred_slot_.assign(hv_->pred_count(), -1);
  unary_ids_.resize(vocab_->unary_preds.size());
  binary_ids_.resize(vocab_->binary_preds.size());
  for (size_t i = 0; i < vocab_->unary_preds.size(); ++i) {
    PredId p = by_name.at(vocab_->unary_preds[i]);
    pred_slot_[p] = int32_t(i);
    unary_ids_[i] = p;
  }
  for (size_t i = 0; i < vocab_->binary_preds.size(); ++i) {
    PredId p = by_name.at(vocab_->binary_preds[i]);
    pred_slot_[p] = int32_t(i);
    binary_ids_[i] = p;
  }

  role_ids_.reserve(vocab_->roles.size());
  for (size_t i = 0; i < vocab_->roles.size(); ++i) {
    std::vector<PredId> ids;
    for (const std::string& name : vocab_->roles[i]) {
      auto it = by_name.find(name);
      if (it == by_name.end())
        throw DimensionMismatch("vocabulary role mentions unknown predicate '" +
                                name + "'");
      ids.push_back(it->second);
    }
    std::sort(ids.begin(), ids.end());
    role_index_.emplace(role_key(ids), int32_t(i));
    role_ids_.push_back(std::move(ids));
  }
}

int32_t BoundVocabulary::role_slot(const Role& r) const {
  auto it = role_index_.find(role_key(r.preds));
  if (it == role_index_.end()) return -1;
  // Guard against hash collisions.
  if (role_ids_[it->second] != r.preds) {
    for (size_t i = 0; i < role_ids_.size(); ++i)
      if (role_ids_[i] == r.preds) return int32_t(i);
    return -1;
  }
  return it->second;
}

int32_t BoundVocabulary::fold_slot(const Role& r) const {
  int32_t best = 0;
  size_t best_overlap = 0;
  for (size_t i = 0; i < role_ids_.size(); ++i) {
    const auto& cand = role_ids_[i];
    size_t overlap = 0;
    auto a = r.preds.begin();
    auto b = cand.begin();
    while (a != r.preds.end() && b != cand.end()) {
      if (*a < *b)
        ++a;
      else if (*b < *a)
        ++b;
      else {
        ++overlap;
        ++a;
        ++b;
      }
    }
    if (overlap > best_overlap) {
      best_overlap = overlap;
      best = int32_t(i);
    }
  }
  return best;
}

int32_t BoundVocabulary::action_slot(const std::string& name) const {
  auto it = std::lower_bound(vocab_->actions.begin(), vocab_->actions.end(),
                             name);
  if (it == vocab_->actions.end() || *it != name) return -1;
  return int32_t(it - vocab_->actions.begin());
}

FeatureVector encode(const HintedState& state, const RolePartition& partition,
                     const BoundVocabulary& bound, FoldStats* stats) {
  const Vocabulary& v = bound.vocab();
  const size_t R = v.role_count();
  const size_t P2 = v.binary_preds.size();

  // Effective (possibly folded) vocabulary slot per observed role.
  std::vector<int32_t> slot_of_role(partition.roles.size());
  for (size_t i = 0; i < partition.roles.size(); ++i) {
    int32_t slot = bound.role_slot(partition.roles[i]);
    if (slot < 0) {
      slot = bound.fold_slot(partition.roles[i]);
      if (stats) stats->events += partition.groups[i].size();
    }
    slot_of_role[i] = slot;
  }

  FeatureVector f;
  f.role_counts.assign(R, 0);
  for (size_t i = 0; i < partition.roles.size(); ++i)
    f.role_counts[slot_of_role[i]] += int64_t(partition.groups[i].size());

  f.binned_role_counts.resize(R);
  for (size_t r = 0; r < R; ++r)
    f.binned_role_counts[r] =
        int(std::min<int64_t>(f.role_counts[r], v.bin_levels));

  f.relations.assign(P2, std::vector<int64_t>(R * R, 0));
  for (const Atom& a : state.combined.atoms()) {
    if (!a.is_binary()) continue;
    int32_t p = bound.binary_slot(a.pred());
    if (p < 0) continue;
    int32_t r1 = slot_of_role[partition.assignment[a.arg0()]];
    int32_t r2 = slot_of_role[partition.assignment[a.arg1()]];
    ++f.relations[p][size_t(r1) * R + size_t(r2)];
  }

  f.binned_relations.assign(P2, std::vector<double>(R * R, 0.0));
  for (size_t p = 0; p < P2; ++p)
    for (size_t r1 = 0; r1 < R; ++r1)
      for (size_t r2 = 0; r2 < R; ++r2) {
        int64_t cnt = f.relations[p][r1 * R + r2];
        if (cnt == 0) continue;
        int64_t full = f.role_counts[r1] * f.role_counts[r2];
        f.binned_relations[p][r1 * R + r2] = cnt == full ? 1.0 : 0.5;
      }

  f.flat.reserve(v.flat_size());
  for (int64_t x : f.role_counts) f.flat.push_back(double(x));
  for (int x : f.binned_role_counts) f.flat.push_back(double(x));
  for (const auto& m : f.relations)
    for (int64_t x : m) f.flat.push_back(double(x));
  for (const auto& m : f.binned_relations)
    for (double x : m) f.flat.push_back(x);
  return f;
}

Target encode_target(const GroundProblem& problem, const GroundAction& action,
                     const RolePartition& partition, int steps_to_go,
                     const BoundVocabulary& bound) {
  const Vocabulary& v = bound.vocab();
  const std::string& name = problem.schema_name(action);
  int32_t slot = bound.action_slot(name);
  if (slot < 0)
    throw UnknownAction("action '" + name + "' is not in the vocabulary");

  Target t;
  t.action_index = slot;
  const size_t P1 = v.unary_preds.size();
  t.param_roles.assign(v.max_params * P1, 0.0);
  for (size_t i = 0; i < action.params.size(); ++i) {
    const Role& role = partition.role_of(action.params[i]);
    for (PredId p : role.preds) {
      int32_t u = bound.unary_slot(p);
      if (u >= 0) t.param_roles[i * P1 + size_t(u)] = 1.0;
    }
  }
  t.plan_length = double(steps_to_go);
  return t;
}

}  // namespace ghn
