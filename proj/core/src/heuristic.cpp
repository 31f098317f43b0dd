#include "ghn/heuristic.hpp"

#include "ghn/errors.hpp"

namespace ghn {

double param_score(std::span<const double> role_probs, const Role& role,
                   std::span<const PredId> p1_ids, double epsilon) {
  double in_role = 0, out_of_role = 0;
  for (size_t u = 0; u < p1_ids.size(); ++u) {
    if (role.contains(p1_ids[u]))
      in_role += filter(role_probs[u], epsilon);
    else
      out_of_role += filter(1.0 - role_probs[u], epsilon);
  }
  return (in_role + out_of_role) / double(p1_ids.size());
}

double action_score(const NetworkOutput& out, int32_t action_slot,
                    std::span<const ObjId> params,
                    const RolePartition& partition,
                    std::span<const PredId> p1_ids, double epsilon) {
  if (action_slot < 0 ||
      size_t(action_slot) >= out.action_probs.size())
    throw UnknownAction("action slot out of vocabulary range");
  double param_factor = 1.0;
  if (!params.empty()) {
    double sum = 0;
    for (size_t i = 0; i < params.size(); ++i)
      sum += param_score(out.param_role_probs[i],
                         partition.role_of(params[i]), p1_ids, epsilon);
    param_factor = sum / double(params.size());
  }
  return 1.0 - out.action_probs[action_slot] * param_factor;
}

HybridScore score_root(double h_at_node) { return {0.0, h_at_node}; }

HybridScore score_child(const HybridScore& parent,
                        const NetworkOutput& parent_output,
                        int32_t action_slot, std::span<const ObjId> params,
                        const RolePartition& partition_at_node,
                        double h_at_node, std::span<const PredId> p1_ids,
                        const HeuristicConfig& config) {
  double va = action_score(parent_output, action_slot, params,
                           partition_at_node, p1_ids, config.epsilon);
  return {parent.g_prime + va, h_at_node};
}

}  // namespace ghn
