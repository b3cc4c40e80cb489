#pragma once

// Problem files: a JSON document naming a field, the two dimensions, the
// relations S (H -> K) and optionally T (K -> H), the checks to run and
// tolerance overrides. The same format is used for counterexample dumps.
//
//   {"field": "real"|"complex", "h_dim": n, "k_dim": m,
//    "S": REL, "T": REL|null, "checks": [ids], "tol": {...}, "meta": {...}}
//
//   REL = {"kind": "operator", "matrix": rows, "domain_basis": vectors|null}
//       | {"kind": "relation", "graph_spanners": vectors}
//
// Entries are numbers or [re, im] pairs (complex field only). A matrix is a
// list of rows mapping the relation's domain into its codomain. Graph
// spanners list the relation's domain block first: (h, k) for S, (k, h)
// for T.

#include "linrel/relation.hpp"

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace linrel {

/// Malformed or inconsistent problem document. `where` is a JSON path such
/// as "S.matrix[1][0]".
class ProblemError : public std::runtime_error {
 public:
  ProblemError(std::string where, const std::string& what);
  const std::string& where() const { return where_; }

 private:
  std::string where_;
};

struct RelationSpec {
  enum class Kind { Operator, Relation };
  Kind kind = Kind::Operator;
  Matrix matrix;                       // operator: codomain x domain
  std::optional<Matrix> domain_basis;  // operator: columns; absent means total
  Matrix graph_spanners;               // relation: columns, domain block first

  static RelationSpec from_relation(const LinearRelation& r);
  static RelationSpec from_matrix(const Matrix& a);

  LinearRelation build(Index domain_dim, Index codomain_dim, const TolerancePolicy& tol = {}) const;
};

struct Problem {
  FieldTag field = FieldTag::Real;
  Index h_dim = 0;
  Index k_dim = 0;
  RelationSpec s;
  std::optional<RelationSpec> t;
  std::vector<std::string> checks;
  TolerancePolicy tol;
  /// Free-form provenance such as the generator seed of a counterexample.
  std::map<std::string, std::string> meta;

  LinearRelation build_s() const;
  /// Throws ProblemError when T is absent.
  LinearRelation build_t() const;
};

/// Checker identifiers accepted in "checks": the operation names and the
/// short verification aliases.
const std::vector<std::string>& checker_ids();

/// Canonical operation name for an id or alias; empty when unknown.
std::string canonical_checker(const std::string& id);

Problem parse_problem(const std::string& text);
Problem load_problem(const std::string& path);

/// Canonical JSON text (two-space indent, trailing newline). Always emits
/// "tol"; emits "meta" only when non-empty.
std::string serialize_problem(const Problem& p);

}  // namespace linrel
