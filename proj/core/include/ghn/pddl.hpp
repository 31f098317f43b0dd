#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace ghn {

using PredId = int32_t;
using ObjId = int32_t;
using TypeId = int32_t;

/// A ground atom p(o) or p(o1, o2), packed into a single 64-bit code.
/// Layout: predicate in bits 40..63, arg0 in bits 20..39, arg1+1 in bits
/// 0..19 (0 marks a unary atom). Supports ~16M predicates and ~1M objects.
class Atom {
 public:
  Atom() : code_(~0ull) {}

  static Atom unary(PredId p, ObjId o) {
    return Atom((uint64_t(p) << 40) | (uint64_t(o) << 20));
  }
  static Atom binary(PredId p, ObjId a, ObjId b) {
    return Atom((uint64_t(p) << 40) | (uint64_t(a) << 20) | uint64_t(b + 1));
  }
  static Atom make(PredId p, std::span<const ObjId> args) {
    return args.size() == 1 ? unary(p, args[0]) : binary(p, args[0], args[1]);
  }

  PredId pred() const { return PredId(code_ >> 40); }
  ObjId arg0() const { return ObjId((code_ >> 20) & 0xFFFFF); }
  bool is_binary() const { return (code_ & 0xFFFFF) != 0; }
  ObjId arg1() const { return ObjId((code_ & 0xFFFFF) - 1); }
  int arity() const { return is_binary() ? 2 : 1; }
  ObjId arg(int i) const { return i == 0 ? arg0() : arg1(); }
  uint64_t code() const { return code_; }

  friend auto operator<=>(const Atom&, const Atom&) = default;

 private:
  explicit Atom(uint64_t code) : code_(code) {}
  uint64_t code_;
};

/// Immutable set of ground atoms with a canonical order-independent hash.
/// Two states with the same atom set compare and hash equal.
class ConcreteState {
 public:
  ConcreteState() = default;
  explicit ConcreteState(std::vector<Atom> atoms);

  const std::vector<Atom>& atoms() const { return atoms_; }
  bool contains(Atom a) const;
  size_t size() const { return atoms_.size(); }
  uint64_t hash() const { return hash_; }

  bool operator==(const ConcreteState& o) const {
    return hash_ == o.hash_ && atoms_ == o.atoms_;
  }

 private:
  std::vector<Atom> atoms_;  // sorted, unique
  uint64_t hash_ = 0;
};

struct StateHash {
  size_t operator()(const ConcreteState& s) const {
    return static_cast<size_t>(s.hash());
  }
};

struct TypeDef {
  std::string name;
  TypeId parent;  // root "object" has parent -1
  bool operator==(const TypeDef&) const = default;
};

enum class PredKind : uint8_t {
  Domain,  // declared in the PDDL source
  Type,    // compiled from an object type
};

struct PredicateDef {
  std::string name;
  int arity;  // 1 or 2
  std::array<TypeId, 2> param_types;
  PredKind kind;
  bool operator==(const PredicateDef&) const = default;
};

struct SchemaParam {
  std::string name;  // "?x"
  TypeId type;
  bool operator==(const SchemaParam&) const = default;
};

/// Atom in an action schema. Each arg is a parameter index (>= 0) or a
/// domain constant encoded as -1 - ObjId.
struct LiftedAtom {
  PredId pred;
  int arity;
  std::array<int32_t, 2> args;
  bool operator==(const LiftedAtom&) const = default;
};

struct ActionSchema {
  std::string name;
  std::vector<SchemaParam> params;
  std::vector<LiftedAtom> pre;
  std::vector<LiftedAtom> add;
  std::vector<LiftedAtom> del;
  bool operator==(const ActionSchema&) const = default;
};

/// Parsed and type-compiled planning domain. Object types appear as unary
/// predicates of kind Type; these never occur in action effects.
struct DomainModel {
  std::string name;
  std::vector<std::string> requirements;
  std::vector<TypeDef> types;  // [0] is the root "object"
  std::vector<PredicateDef> predicates;
  std::vector<ActionSchema> schemas;
  std::vector<std::string> constants;
  std::vector<TypeId> constant_types;

  std::optional<PredId> find_predicate(std::string_view name) const;
  std::optional<TypeId> find_type(std::string_view name) const;
  bool is_subtype(TypeId t, TypeId ancestor) const;
  size_t max_schema_params() const;
  size_t unary_count() const;

  bool operator==(const DomainModel&) const = default;
};

struct GroundAction {
  int32_t schema;
  std::vector<ObjId> params;
  std::vector<Atom> pre;  // sorted
  std::vector<Atom> add;  // sorted
  std::vector<Atom> del;  // sorted; disjoint from add
  std::string display;    // "(name o1 o2)"
  bool operator==(const GroundAction&) const = default;
};

/// Fully grounded planning instance. Downstream modules treat this as a
/// blackbox simulator: action names/parameters, the true atoms of a state
/// and the object set are the only visible surface.
struct GroundProblem {
  std::shared_ptr<const DomainModel> domain;
  std::string name;
  std::vector<std::string> objects;  // index == ObjId; domain constants first
  std::vector<TypeId> object_types;
  ConcreteState init;
  std::vector<Atom> goal;  // sorted positive ground atoms
  std::vector<GroundAction> actions;  // lexicographic by display name

  std::optional<ObjId> find_object(std::string_view name) const;
  std::optional<int32_t> find_action(std::string_view display) const;
  const std::string& schema_name(const GroundAction& a) const {
    return domain->schemas[a.schema].name;
  }

  bool operator==(const GroundProblem& o) const;

 private:
  friend GroundProblem ground(std::shared_ptr<const DomainModel>, std::string,
                              std::vector<std::string>, std::vector<TypeId>,
                              std::vector<Atom>, std::vector<Atom>);
  mutable std::unordered_map<std::string, int32_t> action_index_;
};

/// Grounds a problem over the given objects: injects static type atoms,
/// enumerates typed ground actions and normalizes effects.
GroundProblem ground(std::shared_ptr<const DomainModel> domain,
                     std::string name, std::vector<std::string> objects,
                     std::vector<TypeId> object_types,
                     std::vector<Atom> init_atoms, std::vector<Atom> goal);

bool applicable(const ConcreteState& s, const GroundAction& a);

/// Successor state (s \ del) ∪ add. Throws NotApplicable when the
/// precondition does not hold. The input state is not modified.
ConcreteState apply(const ConcreteState& s, const GroundAction& a);

bool goal_check(const ConcreteState& s, std::span<const Atom> goal);

/// True iff every action is applicable in sequence from the initial state
/// and the final state satisfies the goal.
bool validate_plan(const GroundProblem& p, std::span<const int32_t> plan);

std::string atom_to_string(Atom a, const GroundProblem& p);

// Plan files: one "(name o1 o2 ...)" per line; ';' starts a comment.
void write_plan_file(const std::filesystem::path& path,
                     const GroundProblem& p, std::span<const int32_t> plan);
std::vector<std::string> read_plan_lines(const std::filesystem::path& path);

/// Maps plan text lines onto ground action indices. Throws UnknownSymbol
/// for a line that names no ground action.
std::vector<int32_t> resolve_plan(const GroundProblem& p,
                                  const std::vector<std::string>& lines);

}  // namespace ghn
