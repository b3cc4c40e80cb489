#pragma once

// Range-kernel criteria for operators that are adjoint to each other.
//
// Each checker evaluates every statement of the corresponding
// characterization without short-circuiting, so callers can compare the
// statements of an equivalence against each other, or the hypotheses of a
// one-way result against its conclusion.
//
// Finite-dimensional reading: "densely defined" means everywhere defined,
// and every relation is closed.

#include "linrel/relation.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace linrel {

struct Condition {
  std::string name;
  CheckResult result;
};

struct CriterionReport {
  std::string criterion_id;
  /// The checks that make up the criterion; overall is their conjunction.
  std::vector<Condition> conditions;
  CheckResult overall;
  /// For one-way results: the asserted consequence, checked independently.
  std::optional<CheckResult> conclusion_verified;
  /// For equivalences: one entry per statement ("i", "ii", "iii").
  std::vector<Condition> statements;

  const CheckResult& condition(std::string_view name) const;
  const CheckResult& statement(std::string_view name) const;

  /// True when all statements share one verdict.
  bool statements_agree() const;

  /// True when every check in the report lies outside the guard band.
  bool decisive(const TolerancePolicy& tol) const;
};

/// S* = T and T* = S with both everywhere-defined operators.
CheckResult oracle_mutually_adjoint(const LinearRelation& s, const LinearRelation& t,
                                    const TolerancePolicy& tol = {});

/// S ⊆ T  ⟺  ker S ⊆ ker T, ran S ⊆ ran(S∩T)  ⟺  ran S ⊆ ran T, ker(S∨T) ⊆ ker T.
CriterionReport arens_inclusion(const LinearRelation& s, const LinearRelation& t,
                                const TolerancePolicy& tol = {});

/// S = T  ⟺  ker S = ker T, ran S + ran T ⊆ ran(S∩T)
///        ⟺  ran S = ran T, ker(S∨T) ⊆ ker(S∩T).
CriterionReport arens_equality(const LinearRelation& s, const LinearRelation& t,
                               const TolerancePolicy& tol = {});

/// Under S ⊆ T: S = T ⟺ ker S = ker T and ran S = ran T.
/// Throws PreconditionError when S ⊄ T.
CriterionReport arens_equality_under_inclusion(const LinearRelation& s, const LinearRelation& t,
                                               const TolerancePolicy& tol = {});

/// ran(S∩T*) = K and ran(T∩S*) = H imply mutual adjointness.
CriterionReport gen_stone(const LinearRelation& s, const LinearRelation& t,
                          const TolerancePolicy& tol = {});

/// Formally adjoint surjective operators are mutually adjoint.
CriterionReport surjective_pair(const LinearRelation& s, const LinearRelation& t,
                                const TolerancePolicy& tol = {});

/// ran(S∩S*) = H implies S everywhere defined and self-adjoint.
CriterionReport selfadjoint_via_range(const LinearRelation& s, const TolerancePolicy& tol = {});

/// Surjective symmetric operators are self-adjoint.
CriterionReport stone_surjective_symmetric(const LinearRelation& s,
                                           const TolerancePolicy& tol = {});

/// T everywhere defined and S = T*  ⟺  (ran T)^⊥ = ker S and
/// ran S + ran T* ⊆ ran(S∩T*).
CriterionReport adjoint_identification(const LinearRelation& s, const LinearRelation& t,
                                       const TolerancePolicy& tol = {});

/// Mutual adjointness ⟺ ran(I+T₀S₀) = H and ran(I+S₀T₀) = K, where
/// S₀ = S∩T* and T₀ = T∩S*.
CriterionReport von_neumann_ranges(const LinearRelation& s, const LinearRelation& t,
                                   const TolerancePolicy& tol = {});

/// For everywhere-defined S: closedness, self-adjointness of S*S and SS*,
/// and surjectivity of I+S*S and I+SS*. All three hold in finite dimension.
CriterionReport closedness_via_ranges(const LinearRelation& s, const TolerancePolicy& tol = {});

/// T = S* for an everywhere-defined symmetric S  ⟺  ker T = (ran T*)^⊥ and
/// ran T₀ = ran T** = ran T*, where T₀ = T∩T*. Statement (i) is evaluated
/// through the canonical witness S := T*: T everywhere defined, T* an
/// operator and T* ⊆ T.
CriterionReport symmetric_adjoint_characterization(const LinearRelation& t,
                                                   const TolerancePolicy& tol = {});

}  // namespace linrel
