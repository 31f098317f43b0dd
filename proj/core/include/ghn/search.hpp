#pragma once

#include <memory>
#include <string>

#include "ghn/heuristic.hpp"
#include "ghn/neuralnet.hpp"
#include "ghn/pddl.hpp"

namespace ghn {

struct SearchBudget {
  uint64_t max_nodes = 1000000;  // cap on expansions
  double max_seconds = 600.0;
};

enum class SearchStatus { Solved, Unsolvable, BudgetExhausted };

std::string to_string(SearchStatus s);

struct SearchResult {
  SearchStatus status = SearchStatus::Unsolvable;
  std::vector<int32_t> plan;  // ground action indices, when Solved
  uint64_t nodes_expanded = 0;
  uint64_t nodes_generated = 0;
  uint64_t nodes_reopened = 0;
  double wall_time = 0;  // seconds
  size_t peak_open_size = 0;
  uint64_t cache_hits = 0;   // GHN scorer only
  uint64_t fold_events = 0;  // GHN scorer only
};

/// The per-search JSON record: status, plan_length, nodes_expanded,
/// nodes_generated, wall_time, cache_hits, fold_events.
std::string search_result_json(const SearchResult& r);

/// Node evaluation strategy. g_key is the path-cost part of the ordering
/// key: real path cost for the baselines, accumulated g' for the GHN.
class NodeScorer {
 public:
  struct Eval {
    double g_key = 0;
    double h = 0;
  };
  virtual ~NodeScorer() = default;

  virtual Eval eval_root(const ConcreteState& s) = 0;
  virtual Eval eval_child(const Eval& parent_eval,
                          const ConcreteState& parent_state,
                          const GroundAction& action,
                          const ConcreteState& child_state,
                          int32_t child_g_real) = 0;
  virtual uint64_t cache_hits() const { return 0; }
  virtual uint64_t fold_events() const { return 0; }
};

/// h = 0 everywhere; the A* key degenerates to the real path cost.
std::unique_ptr<NodeScorer> blind_scorer();

/// h = number of unsatisfied goal atoms.
std::unique_ptr<NodeScorer> goal_count_scorer(const GroundProblem& problem);

/// Full GHN pipeline per node: refresh hints, compute roles, encode,
/// forward, hybrid score. Network outputs are cached per concrete state.
/// Construction probes the model against the problem (including a forward
/// pass on the initial state) and throws DimensionMismatch on any mismatch.
std::unique_ptr<NodeScorer> make_ghn_scorer(
    std::shared_ptr<const NetworkModel> model, const GroundProblem& problem,
    const HeuristicConfig& config = {});

struct GbfsOptions {
  bool key_uses_g = false;  // order by g_key + h instead of h alone
};

/// A* keyed by g_key + h with duplicate detection on state identity and
/// reopening on strictly cheaper REAL path cost. Sound and complete on
/// finite spaces. Tie-breaking: lower h, then higher real g, then FIFO.
/// The goal test runs at expansion; expanding the root counts as 1.
SearchResult astar(const GroundProblem& problem, NodeScorer& scorer,
                   const SearchBudget& budget = {});

/// Greedy best-first search keyed by h (or g_key + h with key_uses_g), same
/// tie-breaking, no reopening: the first path to a state wins.
SearchResult gbfs(const GroundProblem& problem, NodeScorer& scorer,
                  const SearchBudget& budget = {},
                  const GbfsOptions& options = {});

}  // namespace ghn
