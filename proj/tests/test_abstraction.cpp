#include <algorithm>
#include <set>

#include "doctest.h"
#include "fixtures.hpp"
#include "ghn/abstraction.hpp"
#include "ghn/errors.hpp"
#include "ghn/rng.hpp"
#include "oracles.hpp"

using namespace ghn;

namespace {

// Brute-force truth over the full group product; the independent oracle for
// the three-valued abstraction.
Truth brute_truth(const ConcreteState& s, PredId p, int arity,
                  const std::vector<ObjId>& g1, const std::vector<ObjId>& g2) {
  size_t held = 0, total = 0;
  if (arity == 1) {
    for (ObjId o : g1) {
      ++total;
      held += s.contains(Atom::unary(p, o));
    }
  } else {
    for (ObjId a : g1)
      for (ObjId b : g2) {
        ++total;
        held += s.contains(Atom::binary(p, a, b));
      }
  }
  if (held == 0) return Truth::False;
  if (held == total) return Truth::True;
  return Truth::Maybe;
}

void check_against_brute_force(const ConcreteState& s,
                               const RolePartition& part,
                               const std::vector<PredId>& unary,
                               const std::vector<PredId>& binary) {
  AbstractState a = abstract_state(s, part);
  for (PredId p : unary)
    for (size_t r = 0; r < part.roles.size(); ++r)
      CHECK(a.value(p, int32_t(r)) == brute_truth(s, p, 1, part.groups[r], {}));
  for (PredId p : binary)
    for (size_t r1 = 0; r1 < part.roles.size(); ++r1)
      for (size_t r2 = 0; r2 < part.roles.size(); ++r2)
        CHECK(a.value(p, int32_t(r1), int32_t(r2)) ==
              brute_truth(s, p, 2, part.groups[r1], part.groups[r2]));
}

ConcreteState random_state(Rng& rng, size_t objects,
                           const std::vector<PredId>& unary,
                           const std::vector<PredId>& binary, double density) {
  std::vector<Atom> atoms;
  for (PredId p : unary)
    for (size_t o = 0; o < objects; ++o)
      if (rng.coin(density)) atoms.push_back(Atom::unary(p, ObjId(o)));
  for (PredId p : binary)
    for (size_t a = 0; a < objects; ++a)
      for (size_t b = 0; b < objects; ++b)
        if (rng.coin(density))
          atoms.push_back(Atom::binary(p, ObjId(a), ObjId(b)));
  return ConcreteState(std::move(atoms));
}

}  // namespace

TEST_CASE("compute_roles reproduces the gripper example partition") {
  fixtures::GripperExample eg;
  auto vocab = HintVocab::build(eg.domain);
  RolePartition part =
      compute_roles(eg.problem.init, eg.problem.objects.size());

  auto role_str = [&](const std::string& obj) {
    return role_to_string(part.role_of(eg.obj(obj)), *vocab);
  };
  CHECK(role_str("ra") == "{robotAt,room}");
  CHECK(role_str("rb") == "{room}");
  CHECK(role_str("b1") == "{ball}");
  CHECK(role_str("g1") == "{free,gripper}");

  // psi({ball}) = {b1, b2}; psi({gripper, free}) = {g1}
  const auto& ball_group = part.groups[part.assignment[eg.obj("b1")]];
  CHECK(ball_group == std::vector<ObjId>{eg.obj("b1"), eg.obj("b2")});
  const auto& grip_group = part.groups[part.assignment[eg.obj("g1")]];
  CHECK(grip_group == std::vector<ObjId>{eg.obj("g1")});
  CHECK(part.roles.size() == 4);
}

TEST_CASE("objects with no unary atoms get the empty role") {
  RolePartition part = compute_roles(ConcreteState(std::vector<Atom>{}), 1);
  REQUIRE(part.roles.size() == 1);
  CHECK(part.roles[0].preds.empty());
  CHECK(part.groups[0] == std::vector<ObjId>{0});
}

TEST_CASE("objects sharing one unary atom share one role") {
  std::vector<Atom> atoms;
  for (ObjId o = 0; o < 5; ++o) atoms.push_back(Atom::unary(7, o));
  RolePartition part = compute_roles(ConcreteState(std::move(atoms)), 5);
  REQUIRE(part.roles.size() == 1);
  CHECK(part.groups[0].size() == 5);
}

TEST_CASE("add_goal_hints on the gripper example") {
  fixtures::GripperExample eg;
  auto vocab = HintVocab::build(eg.domain);
  PredId at = eg.pred("at");
  HintedState hs = add_goal_hints(eg.problem.init, eg.problem.goal, vocab);

  std::vector<Atom> expected{
      Atom::binary(vocab->goal_pred(at), eg.obj("b1"), eg.obj("rb")),
      Atom::binary(vocab->goal_pred(at), eg.obj("b2"), eg.obj("rb")),
      Atom::binary(vocab->done_pred(at), eg.obj("b2"), eg.obj("rb")),
      Atom::unary(vocab->goal_index_pred(at, 0), eg.obj("b1")),
      Atom::unary(vocab->goal_index_pred(at, 0), eg.obj("b2")),
      Atom::unary(vocab->goal_index_pred(at, 1), eg.obj("rb")),
      Atom::unary(vocab->done_index_pred(at, 0), eg.obj("b2")),
  };
  std::sort(expected.begin(), expected.end());
  CHECK(hs.hints == expected);

  RolePartition part = compute_roles(hs.combined, eg.problem.objects.size());
  auto role_str = [&](const std::string& obj) {
    return role_to_string(part.role_of(eg.obj(obj)), *vocab);
  };
  CHECK(role_str("rb") == "{goal-at-2,room}");
  CHECK(role_str("b1") == "{ball,goal-at-1}");
  CHECK(role_str("b2") == "{ball,done-at-1,goal-at-1}");
}

TEST_CASE("add_goal_hints with an empty goal adds nothing") {
  fixtures::GripperExample eg;
  auto vocab = HintVocab::build(eg.domain);
  HintedState hs = add_goal_hints(eg.problem.init, {}, vocab);
  CHECK(hs.hints.empty());
  CHECK(hs.combined == eg.problem.init);
}

TEST_CASE("a state satisfying all goal atoms carries every done marker") {
  fixtures::GripperExample eg;
  auto vocab = HintVocab::build(eg.domain);
  PredId at = eg.pred("at");
  // Move both balls to rb.
  std::vector<Atom> atoms = eg.problem.init.atoms();
  std::erase(atoms, eg.binary("at", "b1", "ra"));
  atoms.push_back(eg.binary("at", "b1", "rb"));
  ConcreteState done_state(std::move(atoms));

  HintedState hs = add_goal_hints(done_state, eg.problem.goal, vocab);
  CHECK(hs.combined.contains(
      Atom::binary(vocab->done_pred(at), eg.obj("b1"), eg.obj("rb"))));
  CHECK(hs.combined.contains(
      Atom::binary(vocab->done_pred(at), eg.obj("b2"), eg.obj("rb"))));
  CHECK(hs.combined.contains(
      Atom::unary(vocab->done_index_pred(at, 0), eg.obj("b1"))));
  CHECK(hs.combined.contains(
      Atom::unary(vocab->done_index_pred(at, 0), eg.obj("b2"))));
  CHECK(hs.combined.contains(
      Atom::unary(vocab->done_index_pred(at, 1), eg.obj("rb"))));
}

TEST_CASE("refresh_hints equals a from-scratch recomputation") {
  fixtures::GripperExample eg;
  auto vocab = HintVocab::build(eg.domain);
  const auto& p = eg.problem;
  HintedState hs = add_goal_hints(p.init, p.goal, vocab);

  SUBCASE("idempotent on the same base") {
    HintedState again = refresh_hints(hs, p.init);
    CHECK(again.hints == hs.hints);
    CHECK(again.combined == hs.combined);
  }
  SUBCASE("a newly satisfied goal atom adds its done atoms") {
    ConcreteState s = p.init;
    for (const char* step :
         {"(pick b1 ra g1)", "(move ra rb)", "(drop b1 rb g1)"})
      s = apply(s, p.actions[eg.action(step)]);
    HintedState refreshed = refresh_hints(hs, s);
    HintedState scratch = add_goal_hints(s, p.goal, vocab);
    CHECK(refreshed.hints == scratch.hints);
    PredId at = eg.pred("at");
    CHECK(refreshed.combined.contains(
        Atom::binary(vocab->done_pred(at), eg.obj("b1"), eg.obj("rb"))));
  }
  SUBCASE("a newly violated goal atom drops its done atoms") {
    // Pick b2 up from rb: at(b2, rb) no longer holds.
    ConcreteState s = p.init;
    s = apply(s, p.actions[eg.action("(move ra rb)")]);
    s = apply(s, p.actions[eg.action("(pick b2 rb g1)")]);
    HintedState refreshed = refresh_hints(hs, s);
    HintedState scratch = add_goal_hints(s, p.goal, vocab);
    CHECK(refreshed.hints == scratch.hints);
    PredId at = eg.pred("at");
    CHECK_FALSE(refreshed.combined.contains(
        Atom::binary(vocab->done_pred(at), eg.obj("b2"), eg.obj("rb"))));
    CHECK_FALSE(refreshed.combined.contains(
        Atom::unary(vocab->done_index_pred(at, 0), eg.obj("b2"))));
  }
}

TEST_CASE("abstraction of the gripper example state") {
  fixtures::GripperExample eg;
  const auto& p = eg.problem;
  RolePartition part = compute_roles(p.init, p.objects.size());
  AbstractState a = abstract_state(p.init, part);

  auto role_idx = [&](const std::string& obj) {
    return part.assignment[eg.obj(obj)];
  };
  int32_t r0 = role_idx("g1");  // {gripper, free}
  int32_t r1 = role_idx("ra");  // {room, robotAt}
  int32_t r2 = role_idx("rb");  // {room}
  int32_t r3 = role_idx("b1");  // {ball}

  CHECK(a.value(eg.pred("free"), r0) == Truth::True);
  CHECK(a.value(eg.pred("at"), r3, r1) == Truth::Maybe);
  CHECK(a.value(eg.pred("at"), r3, r2) == Truth::Maybe);
  CHECK(a.value(eg.pred("robotAt"), r1) == Truth::True);
  // Entries not listed in the example are absent or type facts.
  CHECK(a.value(eg.pred("carry"), r3, r0) == Truth::False);
  CHECK(a.value(eg.pred("ball"), r3) == Truth::True);
}

TEST_CASE("singleton groups never produce maybe values") {
  Rng rng(11);
  std::vector<PredId> unary{0, 1, 2}, binary{3, 4};
  for (int trial = 0; trial < 50; ++trial) {
    // Distinct unary signatures: object o satisfies exactly preds {0..o-1}.
    size_t n = 1 + rng.uniform(3);
    std::vector<Atom> atoms;
    for (size_t o = 0; o < n; ++o)
      for (size_t p = 0; p < o && p < unary.size(); ++p)
        atoms.push_back(Atom::unary(unary[p], ObjId(o)));
    for (PredId p : binary)
      for (size_t x = 0; x < n; ++x)
        for (size_t y = 0; y < n; ++y)
          if (rng.coin(0.4))
            atoms.push_back(Atom::binary(p, ObjId(x), ObjId(y)));
    ConcreteState s(std::move(atoms));
    RolePartition part = compute_roles(s, n);
    AbstractState a = abstract_state(s, part);
    for (const auto& [key, truth] : a.entries()) CHECK(truth != Truth::Maybe);
  }
}

TEST_CASE("abstraction equals brute-force enumeration on random states") {
  Rng rng(2024);
  std::vector<PredId> unary{0, 1, 2}, binary{3, 4};
  for (int trial = 0; trial < 300; ++trial) {
    size_t n = 1 + rng.uniform(5);
    ConcreteState s = random_state(rng, n, unary, binary, 0.35);
    RolePartition part = compute_roles(s, n);
    check_against_brute_force(s, part, unary, binary);
  }
}

TEST_CASE("abstraction is invariant under object renaming") {
  Rng rng(7);
  std::vector<PredId> unary{0, 1, 2}, binary{3, 4};
  for (int trial = 0; trial < 100; ++trial) {
    size_t n = 2 + rng.uniform(4);
    ConcreteState s = random_state(rng, n, unary, binary, 0.4);
    std::vector<ObjId> perm(n);
    for (size_t i = 0; i < n; ++i) perm[i] = ObjId(i);
    rng.shuffle(perm);
    std::vector<Atom> renamed;
    for (const Atom& a : s.atoms())
      renamed.push_back(
          a.is_binary() ? Atom::binary(a.pred(), perm[a.arg0()], perm[a.arg1()])
                        : Atom::unary(a.pred(), perm[a.arg0()]));
    ConcreteState s2(std::move(renamed));

    AbstractState a1 = abstract_state(s, compute_roles(s, n));
    AbstractState a2 = abstract_state(s2, compute_roles(s2, n));
    CHECK(a1.roles() == a2.roles());
    CHECK(a1.entries() == a2.entries());
  }
}

TEST_CASE("duplicating a bisimilar object leaves the abstraction unchanged") {
  Rng rng(13);
  std::vector<PredId> unary{0, 1}, binary{3};
  for (int trial = 0; trial < 100; ++trial) {
    size_t n = 2 + rng.uniform(3);
    ConcreteState s = random_state(rng, n, unary, binary, 0.4);
    ObjId src = ObjId(rng.uniform(n));
    ObjId dup = ObjId(n);
    std::vector<Atom> atoms = s.atoms();
    for (const Atom& a : s.atoms()) {
      if (!a.is_binary()) {
        if (a.arg0() == src) atoms.push_back(Atom::unary(a.pred(), dup));
        continue;
      }
      bool self = a.arg0() == src && a.arg1() == src;
      if (self) {
        atoms.push_back(Atom::binary(a.pred(), dup, dup));
        atoms.push_back(Atom::binary(a.pred(), src, dup));
        atoms.push_back(Atom::binary(a.pred(), dup, src));
        continue;
      }
      if (a.arg0() == src)
        atoms.push_back(Atom::binary(a.pred(), dup, a.arg1()));
      if (a.arg1() == src)
        atoms.push_back(Atom::binary(a.pred(), a.arg0(), dup));
    }
    ConcreteState s2(std::move(atoms));

    AbstractState a1 = abstract_state(s, compute_roles(s, n));
    AbstractState a2 = abstract_state(s2, compute_roles(s2, n + 1));
    CHECK(a1.roles() == a2.roles());
    CHECK(a1.entries() == a2.entries());
  }
}

TEST_CASE(
    "three-valued soundness over every reachable state of a small "
    "gripper instance") {
  auto domain = ghn::parse_domain(fixtures::kGripperDomain);
  auto problem = ghn::parse_problem(R"((define (problem tiny)
    (:domain gripper)
    (:objects ra rb - room b1 - ball g1 - gripper)
    (:init (free g1) (at b1 ra) (robotAt ra))
    (:goal (at b1 rb))))",
                                    domain);
  auto vocab = HintVocab::build(domain);
  auto graph = oracles::explore(problem);

  std::vector<PredId> unary, binary;
  for (size_t p = 0; p < vocab->pred_count(); ++p)
    (vocab->is_unary(PredId(p)) ? unary : binary).push_back(PredId(p));

  for (const auto& s : graph.states) {
    HintedState hs = add_goal_hints(s, problem.goal, vocab);
    RolePartition part = compute_roles(hs.combined, problem.objects.size());
    check_against_brute_force(hs.combined, part, unary, binary);
    CHECK(part.roles.size() <=
          std::min(problem.objects.size(), size_t(1) << unary.size()));
  }
}

TEST_CASE("hint prefixes are reserved") {
  auto d = ghn::parse_domain(R"((define (domain clash)
    (:predicates (goal-at ?x ?y) (at ?x ?y))))");
  CHECK_THROWS_AS(HintVocab::build(d), NameCollision);
}

TEST_CASE("abstract state dump is deterministic and sorted") {
  fixtures::GripperExample eg;
  auto vocab = HintVocab::build(eg.domain);
  HintedState hs = add_goal_hints(eg.problem.init, eg.problem.goal, vocab);
  RolePartition part = compute_roles(hs.combined, eg.problem.objects.size());
  AbstractState a = abstract_state(hs, part);
  std::string text = dump_abstract_state(a, *vocab);
  CHECK(text ==
        "roles: {ball,done-at-1,goal-at-1} {ball,goal-at-1} {free,gripper} "
        "{goal-at-2,room} {robotAt,room}\n"
        "(at {ball,done-at-1,goal-at-1} {goal-at-2,room}) = 1\n"
        "(at {ball,goal-at-1} {robotAt,room}) = 1\n"
        "(ball {ball,done-at-1,goal-at-1}) = 1\n"
        "(ball {ball,goal-at-1}) = 1\n"
        "(done-at {ball,done-at-1,goal-at-1} {goal-at-2,room}) = 1\n"
        "(done-at-1 {ball,done-at-1,goal-at-1}) = 1\n"
        "(free {free,gripper}) = 1\n"
        "(goal-at {ball,done-at-1,goal-at-1} {goal-at-2,room}) = 1\n"
        "(goal-at {ball,goal-at-1} {goal-at-2,room}) = 1\n"
        "(goal-at-1 {ball,done-at-1,goal-at-1}) = 1\n"
        "(goal-at-1 {ball,goal-at-1}) = 1\n"
        "(goal-at-2 {goal-at-2,room}) = 1\n"
        "(gripper {free,gripper}) = 1\n"
        "(robotAt {robotAt,room}) = 1\n"
        "(room {goal-at-2,room}) = 1\n"
        "(room {robotAt,room}) = 1\n");
}
