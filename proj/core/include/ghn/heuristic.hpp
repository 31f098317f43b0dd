#pragma once

#include <span>

#include "ghn/abstraction.hpp"
#include "ghn/encoding.hpp"
#include "ghn/neuralnet.hpp"

namespace ghn {

struct HeuristicConfig {
  double epsilon = 0.5;  // filter threshold in [0, 1]
};

/// Hybrid node score: accumulated artificial path cost g' plus the predicted
/// plan length h; the search key is f = g' + h.
struct HybridScore {
  double g_prime = 0;
  double h = 0;
  double f() const { return g_prime + h; }
};

/// Threshold filter: 1 when x >= epsilon, else 0.
inline double filter(double x, double epsilon) {
  return x >= epsilon ? 1.0 : 0.0;
}

/// Parameter score V_p for one action-parameter slot: the filtered fraction
/// of unary predicates whose membership in role(o) the network predicted
/// correctly. role_probs is the slot's sigmoid head, p1_ids maps head units
/// to predicate ids. Result is in [0, 1].
double param_score(std::span<const double> role_probs, const Role& role,
                   std::span<const PredId> p1_ids, double epsilon);

/// Action score V_a = 1 - NN_A[a] * (sum_i V_p(i, o_i)) / n; parameterless
/// actions use V_a = 1 - NN_A[a]. Object roles are taken from `partition`.
/// Throws UnknownAction for action_slot < 0.
double action_score(const NetworkOutput& out, int32_t action_slot,
                    std::span<const ObjId> params,
                    const RolePartition& partition,
                    std::span<const PredId> p1_ids, double epsilon);

/// Root node: g' = 0, h from the node's own length head.
HybridScore score_root(double h_at_node);

/// Child node: g' accumulates V_a of the incoming action, evaluated with the
/// network output at the parent (the state the action was applied in) and
/// the objects' roles in the child's hinted state. h is the child's own
/// length head.
HybridScore score_child(const HybridScore& parent,
                        const NetworkOutput& parent_output,
                        int32_t action_slot, std::span<const ObjId> params,
                        const RolePartition& partition_at_node,
                        double h_at_node, std::span<const PredId> p1_ids,
                        const HeuristicConfig& config);

}  // namespace ghn
