#pragma once

// Dense-matrix foundations and tolerance-aware subspace arithmetic.
//
// Every matrix is stored over the complex numbers; real problems are simply
// matrices with zero imaginary part. All factorizations used here (Jacobi
// SVD, Householder QR) map real input to real output, so a real problem
// never acquires spurious imaginary components.

#include <Eigen/Dense>

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

namespace linrel {

using Scalar = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using Index = Eigen::Index;

enum class FieldTag { Real, Complex };

std::string to_string(FieldTag field);
FieldTag field_from_string(const std::string& name);

/// Raised when operands live in incompatible spaces.
class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised when an operation's documented precondition does not hold.
class PreconditionError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

struct TolerancePolicy {
  double rank_rel_eps = 1e-10;
  double subspace_eq_tol = 1e-8;

  /// Throws PreconditionError unless both tolerances are strictly positive.
  void validate() const;

  /// rank_rel_eps * sigma_max * max(rows, cols); zero when sigma_max is zero.
  double rank_threshold(double sigma_max, Index rows, Index cols) const;

  /// Width of the band around a decision threshold inside which a
  /// floating-point verdict is not trusted for equivalence testing.
  double guard_band() const { return 10.0 * subspace_eq_tol; }
};

/// A boolean verdict with the signed distance of its decisive quantity
/// from the threshold. Positive margin means the verdict is comfortably true,
/// negative means comfortably false.
struct CheckResult {
  bool verdict = false;
  double margin = 0.0;
  std::string trace;

  explicit operator bool() const { return verdict; }
};

CheckResult make_check(double margin, std::string trace);

/// Guard band for norm-type checks (margin = tol - q). A verdict is trusted
/// when the decisive quantity q sits at least a factor of ten away from the
/// threshold on its side: q <= tol/10 for true, q >= 10*tol for false.
bool decisive(const CheckResult& check, const TolerancePolicy& tol);
CheckResult conjunction(const std::vector<CheckResult>& parts, std::string trace);

/// Subspace of C^n (or R^n) stored through an orthonormal basis.
class Subspace {
 public:
  Subspace() = default;

  static Subspace zero(Index ambient);
  static Subspace full(Index ambient);

  /// Adopts `basis` as-is; the caller guarantees orthonormal columns.
  static Subspace from_orthonormal(Matrix basis);

  Index ambient_dim() const { return basis_.rows(); }
  Index dim() const { return basis_.cols(); }
  bool is_zero() const { return basis_.cols() == 0; }
  bool is_full() const { return basis_.cols() == basis_.rows(); }
  const Matrix& basis() const { return basis_; }

 private:
  explicit Subspace(Matrix basis) : basis_(std::move(basis)) {}
  Matrix basis_;
};

/// Singular values of M in nonincreasing order.
Eigen::VectorXd singular_values(const Matrix& m);

/// Count of singular values above the effective rank threshold.
Index rank(const Matrix& m, const TolerancePolicy& tol = {});

/// Column space of M with an orthonormal basis taken from the leading left
/// singular vectors.
Subspace orthonormal_basis(const Matrix& m, const TolerancePolicy& tol = {});

/// Null space of M (a subspace of C^{cols}) under the same rank threshold,
/// so rank(M) + dim(null_space(M)) = cols exactly.
Subspace null_space(const Matrix& m, const TolerancePolicy& tol = {});

/// Variants with the threshold taken relative to `sigma_ref` instead of
/// sigma_max(M). Used for sub-blocks of an orthonormal basis (sigma_ref = 1),
/// whose own sigma_max may be pure roundoff.
Subspace orthonormal_basis(const Matrix& m, const TolerancePolicy& tol, double sigma_ref);
Subspace null_space(const Matrix& m, const TolerancePolicy& tol, double sigma_ref);

/// Orthogonal complement. Exact in dimension: dim(A) + dim(A^perp) = n.
Subspace complement(const Subspace& a);

Subspace sum(const Subspace& a, const Subspace& b, const TolerancePolicy& tol = {});

/// A ∩ B computed as (A^perp + B^perp)^perp.
Subspace intersect(const Subspace& a, const Subspace& b, const TolerancePolicy& tol = {});

/// Does A contain B? Margin = subspace_eq_tol - ||(I - P_A) basis(B)||.
CheckResult contains(const Subspace& a, const Subspace& b, const TolerancePolicy& tol = {});

/// Margin = subspace_eq_tol - ||P_A - P_B||.
CheckResult equals(const Subspace& a, const Subspace& b, const TolerancePolicy& tol = {});

Matrix projector(const Subspace& a);

/// Spectral norm (largest singular value); zero for empty matrices.
double operator_norm(const Matrix& m);

/// Cosines of the principal angles, nonincreasing.
std::vector<double> principal_angles(const Subspace& a, const Subspace& b);

void require_same_ambient(const Subspace& a, const Subspace& b, const char* op);

}  // namespace linrel
