#pragma once

#include <memory>
#include <string>

#include "ghn/pddl.hpp"
#include "ghn/pddl_parser.hpp"

namespace fixtures {

// Two-room gripper domain in typed PDDL. Predicate names follow the
// conventions of the rest of the test suite: robotAt/at/free/carry.
inline const char* kGripperDomain = R"((define (domain gripper)
  (:requirements :strips :typing)
  (:types room ball gripper)
  (:predicates
    (robotAt ?r - room)
    (at ?b - ball ?r - room)
    (free ?g - gripper)
    (carry ?b - ball ?g - gripper))
  (:action move
    :parameters (?from - room ?to - room)
    :precondition (and (robotAt ?from))
    :effect (and (robotAt ?to) (not (robotAt ?from))))
  (:action pick
    :parameters (?b - ball ?r - room ?g - gripper)
    :precondition (and (at ?b ?r) (robotAt ?r) (free ?g))
    :effect (and (carry ?b ?g) (not (at ?b ?r)) (not (free ?g))))
  (:action drop
    :parameters (?b - ball ?r - room ?g - gripper)
    :precondition (and (carry ?b ?g) (robotAt ?r))
    :effect (and (at ?b ?r) (free ?g) (not (carry ?b ?g))))
))";

// One robot, one gripper, two balls: b1 in ra, b2 in rb, both wanted in rb.
inline const char* kGripperExampleProblem = R"((define (problem gripper-eg)
  (:domain gripper)
  (:objects ra rb - room b1 b2 - ball g1 - gripper)
  (:init (free g1) (at b1 ra) (at b2 rb) (robotAt ra))
  (:goal (and (at b1 rb) (at b2 rb)))
))";

struct GripperExample {
  std::shared_ptr<const ghn::DomainModel> domain;
  ghn::GroundProblem problem;

  GripperExample()
      : domain(ghn::parse_domain(kGripperDomain)),
        problem(ghn::parse_problem(kGripperExampleProblem, domain)) {}

  ghn::PredId pred(const std::string& name) const {
    return *domain->find_predicate(name);
  }
  ghn::ObjId obj(const std::string& name) const {
    return *problem.find_object(name);
  }
  ghn::Atom unary(const std::string& p, const std::string& o) const {
    return ghn::Atom::unary(pred(p), obj(o));
  }
  ghn::Atom binary(const std::string& p, const std::string& a,
                   const std::string& b) const {
    return ghn::Atom::binary(pred(p), obj(a), obj(b));
  }
  int32_t action(const std::string& display) const {
    auto idx = problem.find_action(display);
    REQUIRE(idx.has_value());
    return *idx;
  }
};

}  // namespace fixtures
