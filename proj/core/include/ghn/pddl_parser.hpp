#pragma once

#include <memory>
#include <string>
#include <string_view>

#include "ghn/pddl.hpp"

namespace ghn {

/// Parses a PDDL domain in the supported subset (:strips, :typing; arity 1
/// or 2 after type compilation; no negative preconditions, conditional
/// effects or numeric fluents). Types are compiled into unary predicates.
std::shared_ptr<const DomainModel> parse_domain(std::string_view text);

/// Parses a problem against a domain and grounds it. The goal must be a
/// conjunction of positive ground atoms over non-type predicates.
GroundProblem parse_problem(std::string_view text,
                            std::shared_ptr<const DomainModel> domain);

std::shared_ptr<const DomainModel> parse_domain_file(
    const std::filesystem::path& path);
GroundProblem parse_problem_file(const std::filesystem::path& path,
                                 std::shared_ptr<const DomainModel> domain);

/// Canonical text form of the supported subset. parse(unparse(parse(t)))
/// is a fixed point on the model.
std::string unparse_domain(const DomainModel& d);
std::string unparse_problem(const GroundProblem& p);

}  // namespace ghn
