#pragma once

// Seeded instance generators. Every generator is a pure function of its
// GenConfig and arguments: identical inputs give bit-identical outputs.
//
// Randomness comes from a counter-based SplitMix64 stream (output i is the
// SplitMix64 finalizer applied to key + i * golden-gamma) and Gaussians from
// the Box-Muller transform of two uniforms in (0, 1). The algorithm tag is
// recorded in campaign reports so counterexamples can be replayed.

#include "linrel/relation.hpp"

#include <cstdint>
#include <string_view>
#include <utility>

namespace linrel {

inline constexpr std::string_view kRngAlgorithm = "splitmix64-counter/box-muller";

struct GenConfig {
  std::uint64_t seed = 0;
  FieldTag field = FieldTag::Real;
  Index max_dim = 6;
  /// Smallest singular value accepted in a generated Gaussian basis.
  double margin_floor = 1e-4;
  /// Spectral norm given to generated operator matrices.
  double op_norm = 0.5;

  /// Independent configuration for a named sub-stream.
  GenConfig child(std::uint64_t stream) const;
};

class CounterRng {
 public:
  explicit CounterRng(std::uint64_t seed);

  std::uint64_t next_u64();
  /// Uniform on the open interval (0, 1).
  double uniform();
  double gaussian();
  /// Uniform integer in [lo, hi].
  Index uniform_index(Index lo, Index hi);
  Scalar scalar(FieldTag field);

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

/// Uniform integer in [lo, hi] drawn from cfg's stream.
Index random_index(const GenConfig& cfg, Index lo, Index hi);

/// Gaussian matrix whose smallest singular value is at least margin_floor
/// (redrawn up to 100 times, then std::runtime_error).
Matrix gaussian_matrix(const GenConfig& cfg, Index rows, Index cols);

/// Gaussian matrix rescaled to spectral norm one.
Matrix random_unit_matrix(const GenConfig& cfg, Index rows, Index cols);

/// Gaussian matrix rescaled to spectral norm cfg.op_norm.
Matrix random_matrix(const GenConfig& cfg, Index rows, Index cols);

Subspace random_subspace(const GenConfig& cfg, Index ambient, Index dim);

/// Random graph subspace of H x K; both coordinate blocks of the graph basis
/// are kept at least margin_floor away from rank deficiency.
LinearRelation random_relation(const GenConfig& cfg, Index h_dim, Index k_dim, Index graph_dim);

/// Random matrix restricted to a random domain of dimension domain_dim.
LinearRelation random_operator(const GenConfig& cfg, Index h_dim, Index k_dim, Index domain_dim);

struct AdjointPair {
  LinearRelation s;
  LinearRelation t;
  Matrix matrix;  // S = matrix, T = matrix^H
};

AdjointPair random_adjoint_pair(const GenConfig& cfg, Index h_dim, Index k_dim);

/// Total operator (B + B^H)/2 rescaled to op_norm.
LinearRelation random_symmetric(const GenConfig& cfg, Index dim);

enum class OperatorClass { SelfAdjoint, SkewAdjoint, Unitary };

/// Hermitian, skew-Hermitian (op_norm scale) or unitary (orthonormalized
/// Gaussian) matrix.
Matrix random_in_class(const GenConfig& cfg, OperatorClass cls, Index dim);

/// Moves `a` a distance of order delta out of its class: Hermitian plus a
/// unit skew-Hermitian direction, skew-Hermitian plus a unit Hermitian
/// direction, unitary times (I + delta * unit Hermitian).
/// Throws PreconditionError for a real 1x1 self-adjoint input (no room).
Matrix perturb_off_class(const Matrix& a, OperatorClass cls, double delta, const GenConfig& cfg);

struct PerturbedPair {
  LinearRelation s;
  LinearRelation t;
  Matrix direction;  // E, unit spectral norm
  /// c = ||X^H E|| with X an orthonormal basis of dom S. Guarantees
  /// pairing_defect(S, T') >= c * delta - pairing_defect(S, T).
  double coupling = 0.0;
};

/// T' = T + delta * E for a random unit-norm E. T must be everywhere defined.
PerturbedPair perturb_pairing(const LinearRelation& s, const LinearRelation& t, double delta,
                              const GenConfig& cfg, const TolerancePolicy& tol = {});

/// T' = T + delta * direction for a caller-chosen direction.
PerturbedPair perturb_pairing(const LinearRelation& s, const LinearRelation& t, double delta,
                              const Matrix& direction, const TolerancePolicy& tol = {});

/// Same action as s_total on a random domain of dimension domain_dim.
LinearRelation restrict_to_partial(const LinearRelation& s_total, const GenConfig& cfg,
                                   Index domain_dim, const TolerancePolicy& tol = {});

/// Random sub-relation of r with graph dimension sub_dim.
LinearRelation random_subrelation(const LinearRelation& r, const GenConfig& cfg, Index sub_dim);

/// Same graph as r described through a different random orthonormal basis.
LinearRelation rebase(const LinearRelation& r, const GenConfig& cfg);

}  // namespace linrel
