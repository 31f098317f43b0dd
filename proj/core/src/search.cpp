#include "ghn/search.hpp"

#include <algorithm>
#include <chrono>
#include <deque>
#include <queue>
#include <unordered_map>

#include <nlohmann/json.hpp>

#include "ghn/errors.hpp"

namespace ghn {

std::string to_string(SearchStatus s) {
  switch (s) {
    case SearchStatus::Solved:
      return "solved";
    case SearchStatus::Unsolvable:
      return "unsolvable";
    case SearchStatus::BudgetExhausted:
      return "budget-exhausted";
  }
  return "?";
}

std::string search_result_json(const SearchResult& r) {
  nlohmann::json j;
  j["status"] = to_string(r.status);
  if (r.status == SearchStatus::Solved)
    j["plan_length"] = r.plan.size();
  else
    j["plan_length"] = nullptr;
  j["nodes_expanded"] = r.nodes_expanded;
  j["nodes_generated"] = r.nodes_generated;
  j["wall_time"] = r.wall_time;
  j["cache_hits"] = r.cache_hits;
  j["fold_events"] = r.fold_events;
  return j.dump();
}

namespace {

class BlindScorer : public NodeScorer {
 public:
  Eval eval_root(const ConcreteState&) override { return {0.0, 0.0}; }
  Eval eval_child(const Eval&, const ConcreteState&, const GroundAction&,
                  const ConcreteState&, int32_t g) override {
    return {double(g), 0.0};
  }
};

class GoalCountScorer : public NodeScorer {
 public:
  explicit GoalCountScorer(const GroundProblem& p) : goal_(p.goal) {}
  Eval eval_root(const ConcreteState& s) override { return {0.0, count(s)}; }
  Eval eval_child(const Eval&, const ConcreteState&, const GroundAction&,
                  const ConcreteState& child, int32_t g) override {
    return {double(g), count(child)};
  }

 private:
  double count(const ConcreteState& s) const {
    double misses = 0;
    for (const Atom& a : goal_) misses += s.contains(a) ? 0.0 : 1.0;
    return misses;
  }
  std::vector<Atom> goal_;
};

class GhnScorer : public NodeScorer {
 public:
  GhnScorer(std::shared_ptr<const NetworkModel> model,
            const GroundProblem& problem, const HeuristicConfig& config)
      : model_(std::move(model)),
        config_(config),
        problem_(problem),
        hv_(HintVocab::build(problem.domain)),
        bound_(model_->vocab, hv_),
        ctx_(std::make_shared<GoalHintContext>(hv_, problem.goal)) {
    lookup(problem.init);  // probe: any mismatch surfaces before the search
  }

  Eval eval_root(const ConcreteState& s) override {
    const Entry& e = lookup(s);
    return {0.0, score_root(e.out.plan_length).h};
  }

  Eval eval_child(const Eval& parent_eval, const ConcreteState& parent_state,
                  const GroundAction& action, const ConcreteState& child_state,
                  int32_t) override {
    // Entries can move as the cache grows; take what we need in two steps.
    int32_t slot = bound_.action_slot(problem_.schema_name(action));
    NetworkOutput parent_out = lookup(parent_state).out;  // cached: parent was expanded
    const Entry& child = lookup(child_state);
    HybridScore parent_score{parent_eval.g_key, 0.0};
    HybridScore s = score_child(parent_score, parent_out, slot, action.params,
                                child.partition, child.out.plan_length,
                                bound_.unary_ids_span(), config_);
    return {s.g_prime, s.h};
  }

  uint64_t cache_hits() const override { return hits_; }
  uint64_t fold_events() const override { return folds_.events; }

 private:
  struct Entry {
    NetworkOutput out;
    RolePartition partition;
  };

  const Entry& lookup(const ConcreteState& s) {
    auto it = index_.find(s);
    if (it != index_.end()) {
      ++hits_;
      return entries_[it->second];
    }
    HintedState hs = ctx_->hint(s);
    RolePartition part = compute_roles(hs.combined, problem_.objects.size());
    FeatureVector f = encode(hs, part, bound_, &folds_);
    Entry e{forward(*model_, f), std::move(part)};
    index_.emplace(s, entries_.size());
    entries_.push_back(std::move(e));
    return entries_.back();
  }

  std::shared_ptr<const NetworkModel> model_;
  HeuristicConfig config_;
  const GroundProblem& problem_;
  std::shared_ptr<const HintVocab> hv_;
  BoundVocabulary bound_;
  std::shared_ptr<const GoalHintContext> ctx_;
  std::unordered_map<ConcreteState, size_t, StateHash> index_;
  std::deque<Entry> entries_;
  uint64_t hits_ = 0;
  FoldStats folds_;
};

struct Node {
  const ConcreteState* state;
  int32_t parent = -1;
  int32_t action = -1;
  int32_t g_real = 0;
  NodeScorer::Eval eval;
  bool closed = false;
};

struct OpenEntry {
  double f;
  double h;
  int32_t g_real;
  uint64_t seq;
  int32_t node;
  int32_t g_snapshot;
};

struct OpenOrder {
  // std::priority_queue is a max-heap; invert for (f, h, -g, seq) minimum.
  bool operator()(const OpenEntry& a, const OpenEntry& b) const {
    if (a.f != b.f) return a.f > b.f;
    if (a.h != b.h) return a.h > b.h;
    if (a.g_real != b.g_real) return a.g_real < b.g_real;
    return a.seq > b.seq;
  }
};

enum class Mode { AStar, Gbfs };

SearchResult run_search(const GroundProblem& problem, NodeScorer& scorer,
                        const SearchBudget& budget, Mode mode,
                        bool gbfs_key_uses_g) {
  using Clock = std::chrono::steady_clock;
  const auto start = Clock::now();
  auto elapsed = [&] {
    return std::chrono::duration<double>(Clock::now() - start).count();
  };

  SearchResult result;
  auto finish = [&](SearchStatus status) {
    result.status = status;
    result.wall_time = elapsed();
    result.cache_hits = scorer.cache_hits();
    result.fold_events = scorer.fold_events();
    return result;
  };

  auto key_of = [&](const NodeScorer::Eval& e) {
    if (mode == Mode::AStar || gbfs_key_uses_g) return e.g_key + e.h;
    return e.h;
  };

  std::vector<Node> nodes;
  std::unordered_map<ConcreteState, int32_t, StateHash> ids;
  std::priority_queue<OpenEntry, std::vector<OpenEntry>, OpenOrder> open;
  uint64_t seq = 0;

  auto push_node = [&](int32_t idx) {
    const Node& n = nodes[idx];
    open.push({key_of(n.eval), n.eval.h, n.g_real, seq++, idx, n.g_real});
    result.peak_open_size = std::max(result.peak_open_size, open.size());
  };

  {
    auto [it, inserted] = ids.emplace(problem.init, 0);
    Node root;
    root.state = &it->first;
    root.eval = scorer.eval_root(problem.init);
    nodes.push_back(root);
    push_node(0);
  }

  while (!open.empty()) {
    OpenEntry top = open.top();
    open.pop();
    Node& node = nodes[top.node];
    if (node.g_real != top.g_snapshot || node.closed) continue;  // stale
    node.closed = true;

    ++result.nodes_expanded;
    if (goal_check(*node.state, problem.goal)) {
      std::vector<int32_t> plan;
      for (int32_t at = top.node; nodes[at].parent >= 0; at = nodes[at].parent)
        plan.push_back(nodes[at].action);
      std::reverse(plan.begin(), plan.end());
      if (!validate_plan(problem, plan))
        throw std::logic_error("search produced an invalid plan");
      result.plan = std::move(plan);
      return finish(SearchStatus::Solved);
    }
    if (result.nodes_expanded >= budget.max_nodes)
      return finish(SearchStatus::BudgetExhausted);
    if ((result.nodes_expanded & 0xFF) == 0 && elapsed() > budget.max_seconds)
      return finish(SearchStatus::BudgetExhausted);

    const int32_t parent_idx = top.node;
    const int32_t child_g = node.g_real + 1;
    for (size_t ai = 0; ai < problem.actions.size(); ++ai) {
      const GroundAction& action = problem.actions[ai];
      if (!applicable(*nodes[parent_idx].state, action)) continue;
      ConcreteState child = apply(*nodes[parent_idx].state, action);
      ++result.nodes_generated;

      auto [it, inserted] = ids.emplace(std::move(child), int32_t(nodes.size()));
      if (inserted) {
        Node n;
        n.state = &it->first;
        n.parent = parent_idx;
        n.action = int32_t(ai);
        n.g_real = child_g;
        n.eval = scorer.eval_child(nodes[parent_idx].eval,
                                   *nodes[parent_idx].state, action, it->first,
                                   child_g);
        nodes.push_back(n);
        push_node(it->second);
        continue;
      }
      if (mode == Mode::Gbfs) continue;  // first path wins, no reopening
      Node& existing = nodes[it->second];
      if (child_g < existing.g_real) {
        // Strictly cheaper real path: rewire and recompute the score along
        // the new path; reopen if already expanded.
        existing.parent = parent_idx;
        existing.action = int32_t(ai);
        existing.g_real = child_g;
        existing.eval = scorer.eval_child(nodes[parent_idx].eval,
                                          *nodes[parent_idx].state, action,
                                          *existing.state, child_g);
        if (existing.closed) {
          existing.closed = false;
          ++result.nodes_reopened;
        }
        push_node(it->second);
      }
    }
  }
  return finish(SearchStatus::Unsolvable);
}

}  // namespace

std::unique_ptr<NodeScorer> blind_scorer() {
  return std::make_unique<BlindScorer>();
}

std::unique_ptr<NodeScorer> goal_count_scorer(const GroundProblem& problem) {
  return std::make_unique<GoalCountScorer>(problem);
}

std::unique_ptr<NodeScorer> make_ghn_scorer(
    std::shared_ptr<const NetworkModel> model, const GroundProblem& problem,
    const HeuristicConfig& config) {
  return std::make_unique<GhnScorer>(std::move(model), problem, config);
}

SearchResult astar(const GroundProblem& problem, NodeScorer& scorer,
                   const SearchBudget& budget) {
  return run_search(problem, scorer, budget, Mode::AStar, false);
}

SearchResult gbfs(const GroundProblem& problem, NodeScorer& scorer,
                  const SearchBudget& budget, const GbfsOptions& options) {
  return run_search(problem, scorer, budget, Mode::Gbfs, options.key_uses_g);
}

}  // namespace ghn
