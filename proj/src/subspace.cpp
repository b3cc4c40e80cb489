#include "linrel/subspace.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace linrel {

std::string to_string(FieldTag field) {
  return field == FieldTag::Real ? "real" : "complex";
}

FieldTag field_from_string(const std::string& name) {
  if (name == "real") return FieldTag::Real;
  if (name == "complex") return FieldTag::Complex;
  throw std::invalid_argument("unknown field '" + name + "' (expected real|complex)");
}

void TolerancePolicy::validate() const {
  if (!(rank_rel_eps > 0.0) || !(subspace_eq_tol > 0.0)) {
    throw PreconditionError("tolerances must be strictly positive");
  }
}

double TolerancePolicy::rank_threshold(double sigma_max, Index rows, Index cols) const {
  if (sigma_max == 0.0) return 0.0;
  return rank_rel_eps * sigma_max * static_cast<double>(std::max(rows, cols));
}

CheckResult make_check(double margin, std::string trace) {
  return CheckResult{margin >= 0.0, margin, std::move(trace)};
}

bool decisive(const CheckResult& check, const TolerancePolicy& tol) {
  const double t = tol.subspace_eq_tol;
  return check.verdict ? check.margin >= 0.9 * t : check.margin <= -9.0 * t;
}

CheckResult conjunction(const std::vector<CheckResult>& parts, std::string trace) {
  CheckResult out{true, 0.0, std::move(trace)};
  bool first = true;
  for (const auto& p : parts) {
    out.verdict = out.verdict && p.verdict;
    // The decisive margin of a conjunction is the smallest one.
    out.margin = first ? p.margin : std::min(out.margin, p.margin);
    first = false;
  }
  return out;
}

Subspace Subspace::zero(Index ambient) { return Subspace(Matrix(ambient, 0)); }

Subspace Subspace::full(Index ambient) { return Subspace(Matrix::Identity(ambient, ambient)); }

Subspace Subspace::from_orthonormal(Matrix basis) { return Subspace(std::move(basis)); }

void require_same_ambient(const Subspace& a, const Subspace& b, const char* op) {
  if (a.ambient_dim() != b.ambient_dim()) {
    std::ostringstream msg;
    msg << op << ": ambient dimension mismatch (" << a.ambient_dim() << " vs " << b.ambient_dim()
        << ")";
    throw DimensionError(msg.str());
  }
}

Eigen::VectorXd singular_values(const Matrix& m) {
  if (m.rows() == 0 || m.cols() == 0) return Eigen::VectorXd(0);
  Eigen::JacobiSVD<Matrix> svd(m);
  return svd.singularValues();
}

Index rank(const Matrix& m, const TolerancePolicy& tol) {
  const Eigen::VectorXd s = singular_values(m);
  if (s.size() == 0) return 0;
  const double threshold = tol.rank_threshold(s(0), m.rows(), m.cols());
  Index r = 0;
  while (r < s.size() && s(r) > threshold) ++r;
  return r;
}

namespace {

// A negative sigma_ref selects the matrix's own sigma_max.
Subspace column_space(const Matrix& m, const TolerancePolicy& tol, double sigma_ref) {
  if (m.rows() == 0 || m.cols() == 0) return Subspace::zero(m.rows());
  Eigen::JacobiSVD<Matrix> svd(m, Eigen::ComputeThinU);
  const Eigen::VectorXd& s = svd.singularValues();
  const double threshold = tol.rank_threshold(sigma_ref < 0.0 ? s(0) : sigma_ref, m.rows(), m.cols());
  Index r = 0;
  while (r < s.size() && s(r) > threshold) ++r;
  return Subspace::from_orthonormal(svd.matrixU().leftCols(r));
}

Subspace kernel_space(const Matrix& m, const TolerancePolicy& tol, double sigma_ref) {
  const Index n = m.cols();
  if (n == 0) return Subspace::zero(0);
  if (m.rows() == 0) return Subspace::full(n);
  Eigen::JacobiSVD<Matrix> svd(m, Eigen::ComputeFullV);
  const Eigen::VectorXd& s = svd.singularValues();
  const double threshold = tol.rank_threshold(sigma_ref < 0.0 ? s(0) : sigma_ref, m.rows(), m.cols());
  Index r = 0;
  while (r < s.size() && s(r) > threshold) ++r;
  return Subspace::from_orthonormal(svd.matrixV().rightCols(n - r));
}

}  // namespace

Subspace orthonormal_basis(const Matrix& m, const TolerancePolicy& tol) {
  return column_space(m, tol, -1.0);
}

Subspace null_space(const Matrix& m, const TolerancePolicy& tol) {
  return kernel_space(m, tol, -1.0);
}

Subspace orthonormal_basis(const Matrix& m, const TolerancePolicy& tol, double sigma_ref) {
  return column_space(m, tol, sigma_ref);
}

Subspace null_space(const Matrix& m, const TolerancePolicy& tol, double sigma_ref) {
  return kernel_space(m, tol, sigma_ref);
}

Subspace complement(const Subspace& a) {
  const Index n = a.ambient_dim();
  const Index k = a.dim();
  if (k == 0) return Subspace::full(n);
  if (k == n) return Subspace::zero(n);
  // The basis has orthonormal columns, so the trailing Householder vectors
  // span its complement exactly.
  Eigen::HouseholderQR<Matrix> qr(a.basis());
  Matrix q = qr.householderQ();
  return Subspace::from_orthonormal(q.rightCols(n - k));
}

Subspace sum(const Subspace& a, const Subspace& b, const TolerancePolicy& tol) {
  require_same_ambient(a, b, "sum");
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  Matrix joined(a.ambient_dim(), a.dim() + b.dim());
  joined << a.basis(), b.basis();
  return orthonormal_basis(joined, tol);
}

Subspace intersect(const Subspace& a, const Subspace& b, const TolerancePolicy& tol) {
  require_same_ambient(a, b, "intersect");
  if (a.is_zero() || b.is_zero()) return Subspace::zero(a.ambient_dim());
  if (a.is_full()) return b;
  if (b.is_full()) return a;
  return complement(sum(complement(a), complement(b), tol));
}

CheckResult contains(const Subspace& a, const Subspace& b, const TolerancePolicy& tol) {
  require_same_ambient(a, b, "contains");
  const Matrix residual = b.basis() - a.basis() * (a.basis().adjoint() * b.basis());
  const double r = operator_norm(residual);
  std::ostringstream trace;
  trace << "||(I-P_A)B|| = " << r;
  return make_check(tol.subspace_eq_tol - r, trace.str());
}

CheckResult equals(const Subspace& a, const Subspace& b, const TolerancePolicy& tol) {
  require_same_ambient(a, b, "equals");
  const double d = operator_norm(projector(a) - projector(b));
  std::ostringstream trace;
  trace << "||P_A-P_B|| = " << d;
  return make_check(tol.subspace_eq_tol - d, trace.str());
}

Matrix projector(const Subspace& a) { return a.basis() * a.basis().adjoint(); }

double operator_norm(const Matrix& m) {
  const Eigen::VectorXd s = singular_values(m);
  return s.size() == 0 ? 0.0 : s(0);
}

std::vector<double> principal_angles(const Subspace& a, const Subspace& b) {
  require_same_ambient(a, b, "principal_angles");
  const Eigen::VectorXd s = singular_values(a.basis().adjoint() * b.basis());
  std::vector<double> out(s.data(), s.data() + s.size());
  // Cosines cannot exceed one; clip roundoff.
  for (double& c : out) c = std::min(c, 1.0);
  return out;
}

}  // namespace linrel
