#pragma once

// Linear relations between finite-dimensional spaces H and K, stored as
// graph subspaces of H x K. Coordinates of the product are ordered with the
// H-block first. A relation "from K to H" is simply a LinearRelation whose
// first block has dimension dim K.
//
// Every subspace of a finite-dimensional space is closed, so closure(R) = R
// and R** = R hold identically.

#include "linrel/subspace.hpp"

#include <optional>

namespace linrel {

class LinearRelation {
 public:
  LinearRelation() = default;
  /// Throws DimensionError unless graph.ambient_dim() == h_dim + k_dim.
  LinearRelation(Index h_dim, Index k_dim, Subspace graph);

  static LinearRelation zero(Index h_dim, Index k_dim);
  static LinearRelation full(Index h_dim, Index k_dim);

  Index h_dim() const { return h_dim_; }
  Index k_dim() const { return k_dim_; }
  const Subspace& graph() const { return graph_; }
  Index dim() const { return graph_.dim(); }

  /// H-component rows of the graph basis.
  Matrix h_block() const { return graph_.basis().topRows(h_dim_); }
  /// K-component rows of the graph basis.
  Matrix k_block() const { return graph_.basis().bottomRows(k_dim_); }

 private:
  Index h_dim_ = 0;
  Index k_dim_ = 0;
  Subspace graph_;
};

struct RelationParts {
  Subspace dom;
  Subspace ran;
  Subspace ker;
  Subspace mul;
};

/// A (possibly partially defined) operator H -> K given by a matrix
/// acting on a domain subspace. No domain means everywhere defined.
struct OperatorSpec {
  Matrix matrix;  // k_dim x h_dim
  std::optional<Subspace> domain;
};

LinearRelation from_operator(const OperatorSpec& spec, const TolerancePolicy& tol = {});
LinearRelation from_matrix(const Matrix& a, const TolerancePolicy& tol = {});

/// Graph spanned by the columns of `pairs` (h_dim + k_dim rows, H-block first).
LinearRelation from_spanners(Index h_dim, Index k_dim, const Matrix& pairs,
                             const TolerancePolicy& tol = {});

RelationParts parts(const LinearRelation& r, const TolerancePolicy& tol = {});
Subspace domain(const LinearRelation& r, const TolerancePolicy& tol = {});
Subspace range(const LinearRelation& r, const TolerancePolicy& tol = {});
Subspace kernel(const LinearRelation& r, const TolerancePolicy& tol = {});
Subspace multivalued_part(const LinearRelation& r, const TolerancePolicy& tol = {});

/// (h,k) -> (k,-h); the result relates K to H.
LinearRelation flip_v(const LinearRelation& r);
/// (k,h) -> (-h,k); the result relates the second block to the first.
LinearRelation flip_w(const LinearRelation& r);

/// Orthocomplement of the V-flipped graph inside K x H.
LinearRelation adjoint(const LinearRelation& r);

inline LinearRelation closure(const LinearRelation& r) { return r; }

LinearRelation intersect(const LinearRelation& a, const LinearRelation& b,
                         const TolerancePolicy& tol = {});
/// Linear span of the union of two graphs.
LinearRelation vee(const LinearRelation& a, const LinearRelation& b,
                   const TolerancePolicy& tol = {});

/// T∘S = {(h,l) : (h,k) ∈ S, (k,l) ∈ T for some k}. Exact at subspace level.
LinearRelation compose(const LinearRelation& t, const LinearRelation& s,
                       const TolerancePolicy& tol = {});

/// R + λI = {(h, k + λh) : (h,k) ∈ R}. Requires h_dim == k_dim.
LinearRelation add_scalar(const LinearRelation& r, Scalar lambda, const TolerancePolicy& tol = {});

/// cR = {(h, c·k) : (h,k) ∈ R}.
LinearRelation scale(const LinearRelation& r, Scalar c, const TolerancePolicy& tol = {});

/// {(k,h) : (h,k) ∈ R}.
LinearRelation inverse(const LinearRelation& r);

CheckResult is_operator(const LinearRelation& r, const TolerancePolicy& tol = {});
CheckResult is_everywhere_defined(const LinearRelation& r, const TolerancePolicy& tol = {});
CheckResult is_surjective(const LinearRelation& r, const TolerancePolicy& tol = {});
CheckResult is_injective(const LinearRelation& r, const TolerancePolicy& tol = {});
/// R ⊆ R* (graph containment). Requires a square relation.
CheckResult is_symmetric(const LinearRelation& r, const TolerancePolicy& tol = {});

CheckResult graph_contains(const LinearRelation& a, const LinearRelation& b,
                           const TolerancePolicy& tol = {});
CheckResult graph_equals(const LinearRelation& a, const LinearRelation& b,
                         const TolerancePolicy& tol = {});

/// Orthonormal basis X of dom R together with its image R·X. Requires an
/// operator (trivial multivalued part).
struct OperatorAction {
  Matrix domain_basis;
  Matrix image;
};
OperatorAction operator_action(const LinearRelation& r, const TolerancePolicy& tol = {});

/// Matrix of an everywhere-defined operator (k_dim x h_dim).
Matrix to_matrix(const LinearRelation& r, const TolerancePolicy& tol = {});

/// sup |<Sx,y> - <x,Ty>| over unit x ∈ dom S, y ∈ dom T, i.e. the spectral
/// norm of the pairing-defect form. S: H -> K and T: K -> H must be operators.
double pairing_defect(const LinearRelation& s, const LinearRelation& t,
                      const TolerancePolicy& tol = {});

void require_square(const LinearRelation& r, const char* op);
void require_operator(const LinearRelation& r, const char* op, const TolerancePolicy& tol = {});
void require_same_shape(const LinearRelation& a, const LinearRelation& b, const char* op);
/// S: H -> K and T: K -> H.
void require_paired(const LinearRelation& s, const LinearRelation& t, const char* op);

}  // namespace linrel
