#include "linrel/relation.hpp"

#include <sstream>

namespace linrel {

namespace {

std::string shape_of(const LinearRelation& r) {
  std::ostringstream os;
  os << r.h_dim() << "x" << r.k_dim();
  return os.str();
}

Matrix stack(const Matrix& top, const Matrix& bottom) {
  Matrix out(top.rows() + bottom.rows(), top.cols());
  out << top, bottom;
  return out;
}

}  // namespace

LinearRelation::LinearRelation(Index h_dim, Index k_dim, Subspace graph)
    : h_dim_(h_dim), k_dim_(k_dim), graph_(std::move(graph)) {
  if (h_dim < 0 || k_dim < 0 || graph_.ambient_dim() != h_dim + k_dim) {
    std::ostringstream msg;
    msg << "relation graph lives in dimension " << graph_.ambient_dim() << ", expected "
        << h_dim << " + " << k_dim;
    throw DimensionError(msg.str());
  }
}

LinearRelation LinearRelation::zero(Index h_dim, Index k_dim) {
  return {h_dim, k_dim, Subspace::zero(h_dim + k_dim)};
}

LinearRelation LinearRelation::full(Index h_dim, Index k_dim) {
  return {h_dim, k_dim, Subspace::full(h_dim + k_dim)};
}

void require_square(const LinearRelation& r, const char* op) {
  if (r.h_dim() != r.k_dim()) {
    throw DimensionError(std::string(op) + ": relation must be square, got " + shape_of(r));
  }
}

void require_same_shape(const LinearRelation& a, const LinearRelation& b, const char* op) {
  if (a.h_dim() != b.h_dim() || a.k_dim() != b.k_dim()) {
    throw DimensionError(std::string(op) + ": shape mismatch " + shape_of(a) + " vs " +
                         shape_of(b));
  }
}

void require_paired(const LinearRelation& s, const LinearRelation& t, const char* op) {
  if (s.h_dim() != t.k_dim() || s.k_dim() != t.h_dim()) {
    throw DimensionError(std::string(op) + ": expected S: H->K and T: K->H, got " +
                         shape_of(s) + " and " + shape_of(t));
  }
}

void require_operator(const LinearRelation& r, const char* op, const TolerancePolicy& tol) {
  if (!is_operator(r, tol)) {
    throw PreconditionError(std::string(op) + ": input has a nontrivial multivalued part");
  }
}

LinearRelation from_operator(const OperatorSpec& spec, const TolerancePolicy& tol) {
  const Index h = spec.matrix.cols();
  const Index k = spec.matrix.rows();
  Matrix dom = Matrix::Identity(h, h);
  if (spec.domain) {
    if (spec.domain->ambient_dim() != h) {
      throw DimensionError("from_operator: domain basis lives in dimension " +
                           std::to_string(spec.domain->ambient_dim()) + ", matrix has " +
                           std::to_string(h) + " columns");
    }
    dom = spec.domain->basis();
  }
  return {h, k, orthonormal_basis(stack(dom, spec.matrix * dom), tol)};
}

LinearRelation from_matrix(const Matrix& a, const TolerancePolicy& tol) {
  return from_operator(OperatorSpec{a, std::nullopt}, tol);
}

LinearRelation from_spanners(Index h_dim, Index k_dim, const Matrix& pairs,
                             const TolerancePolicy& tol) {
  if (pairs.rows() != h_dim + k_dim) {
    throw DimensionError("from_spanners: spanners have " + std::to_string(pairs.rows()) +
                         " rows, expected " + std::to_string(h_dim + k_dim));
  }
  return {h_dim, k_dim, orthonormal_basis(pairs, tol)};
}

// Blocks of the orthonormal graph basis are thresholded against the basis
// scale 1, not their own sigma_max: a block that is zero up to roundoff has a
// roundoff-sized sigma_max and would otherwise report spurious rank.
Subspace domain(const LinearRelation& r, const TolerancePolicy& tol) {
  return orthonormal_basis(r.h_block(), tol, 1.0);
}

Subspace range(const LinearRelation& r, const TolerancePolicy& tol) {
  return orthonormal_basis(r.k_block(), tol, 1.0);
}

// ker R = {h : (h,0) ∈ R}. The graph basis G is orthonormal, so for any
// orthonormal N spanning null(G_K) the columns of G_H·N are orthonormal too.
Subspace kernel(const LinearRelation& r, const TolerancePolicy& tol) {
  const Subspace n = null_space(r.k_block(), tol, 1.0);
  return orthonormal_basis(r.h_block() * n.basis(), tol, 1.0);
}

Subspace multivalued_part(const LinearRelation& r, const TolerancePolicy& tol) {
  const Subspace n = null_space(r.h_block(), tol, 1.0);
  return orthonormal_basis(r.k_block() * n.basis(), tol, 1.0);
}

RelationParts parts(const LinearRelation& r, const TolerancePolicy& tol) {
  return {domain(r, tol), range(r, tol), kernel(r, tol), multivalued_part(r, tol)};
}

LinearRelation flip_v(const LinearRelation& r) {
  Matrix b = stack(r.k_block(), -r.h_block());
  return {r.k_dim(), r.h_dim(), Subspace::from_orthonormal(std::move(b))};
}

LinearRelation flip_w(const LinearRelation& r) {
  Matrix b = stack(-r.k_block(), r.h_block());
  return {r.k_dim(), r.h_dim(), Subspace::from_orthonormal(std::move(b))};
}

LinearRelation adjoint(const LinearRelation& r) {
  const LinearRelation v = flip_v(r);
  return {v.h_dim(), v.k_dim(), complement(v.graph())};
}

LinearRelation intersect(const LinearRelation& a, const LinearRelation& b,
                         const TolerancePolicy& tol) {
  require_same_shape(a, b, "intersect");
  return {a.h_dim(), a.k_dim(), intersect(a.graph(), b.graph(), tol)};
}

LinearRelation vee(const LinearRelation& a, const LinearRelation& b, const TolerancePolicy& tol) {
  require_same_shape(a, b, "vee");
  return {a.h_dim(), a.k_dim(), sum(a.graph(), b.graph(), tol)};
}

LinearRelation compose(const LinearRelation& t, const LinearRelation& s,
                       const TolerancePolicy& tol) {
  if (s.k_dim() != t.h_dim()) {
    throw DimensionError("compose: S maps into dimension " + std::to_string(s.k_dim()) +
                         " but T starts from dimension " + std::to_string(t.h_dim()));
  }
  const Index h = s.h_dim();
  const Index k = s.k_dim();
  const Index l = t.k_dim();
  const Index n = h + k + l;

  // {(h,k,l) : (h,k) ∈ S} and {(h,k,l) : (k,l) ∈ T} inside H x K x L.
  Matrix lifted_s = Matrix::Zero(n, s.dim() + l);
  lifted_s.block(0, 0, h + k, s.dim()) = s.graph().basis();
  lifted_s.block(h + k, s.dim(), l, l) = Matrix::Identity(l, l);

  Matrix lifted_t = Matrix::Zero(n, h + t.dim());
  lifted_t.block(0, 0, h, h) = Matrix::Identity(h, h);
  lifted_t.block(h, h, k + l, t.dim()) = t.graph().basis();

  const Subspace common =
      intersect(Subspace::from_orthonormal(std::move(lifted_s)),
                Subspace::from_orthonormal(std::move(lifted_t)), tol);

  const Matrix& c = common.basis();
  Matrix projected(h + l, c.cols());
  projected << c.topRows(h), c.bottomRows(l);
  return {h, l, orthonormal_basis(projected, tol, 1.0)};
}

LinearRelation add_scalar(const LinearRelation& r, Scalar lambda, const TolerancePolicy& tol) {
  require_square(r, "add_scalar");
  const Matrix hb = r.h_block();
  return {r.h_dim(), r.k_dim(), orthonormal_basis(stack(hb, r.k_block() + lambda * hb), tol)};
}

LinearRelation scale(const LinearRelation& r, Scalar c, const TolerancePolicy& tol) {
  return {r.h_dim(), r.k_dim(), orthonormal_basis(stack(r.h_block(), c * r.k_block()), tol)};
}

LinearRelation inverse(const LinearRelation& r) {
  Matrix b = stack(r.k_block(), r.h_block());
  return {r.k_dim(), r.h_dim(), Subspace::from_orthonormal(std::move(b))};
}

CheckResult graph_contains(const LinearRelation& a, const LinearRelation& b,
                           const TolerancePolicy& tol) {
  require_same_shape(a, b, "graph_contains");
  return contains(a.graph(), b.graph(), tol);
}

CheckResult graph_equals(const LinearRelation& a, const LinearRelation& b,
                         const TolerancePolicy& tol) {
  require_same_shape(a, b, "graph_equals");
  return equals(a.graph(), b.graph(), tol);
}

CheckResult is_operator(const LinearRelation& r, const TolerancePolicy& tol) {
  const Subspace mul = multivalued_part(r, tol);
  CheckResult c = equals(mul, Subspace::zero(r.k_dim()), tol);
  c.trace = "mul = {0}: dim mul = " + std::to_string(mul.dim());
  return c;
}

CheckResult is_everywhere_defined(const LinearRelation& r, const TolerancePolicy& tol) {
  const Subspace dom = domain(r, tol);
  CheckResult c = equals(dom, Subspace::full(r.h_dim()), tol);
  c.trace = "dom = H: dim dom = " + std::to_string(dom.dim()) + " of " +
            std::to_string(r.h_dim());
  return c;
}

CheckResult is_surjective(const LinearRelation& r, const TolerancePolicy& tol) {
  const Subspace ran = range(r, tol);
  CheckResult c = equals(ran, Subspace::full(r.k_dim()), tol);
  c.trace = "ran = K: dim ran = " + std::to_string(ran.dim()) + " of " +
            std::to_string(r.k_dim());
  return c;
}

CheckResult is_injective(const LinearRelation& r, const TolerancePolicy& tol) {
  const Subspace ker = kernel(r, tol);
  CheckResult c = equals(ker, Subspace::zero(r.h_dim()), tol);
  c.trace = "ker = {0}: dim ker = " + std::to_string(ker.dim());
  return c;
}

CheckResult is_symmetric(const LinearRelation& r, const TolerancePolicy& tol) {
  require_square(r, "is_symmetric");
  CheckResult c = contains(adjoint(r).graph(), r.graph(), tol);
  c.trace = "R ⊆ R*: " + c.trace;
  return c;
}

OperatorAction operator_action(const LinearRelation& r, const TolerancePolicy& tol) {
  require_operator(r, "operator_action", tol);
  const Matrix hb = r.h_block();
  Matrix x = domain(r, tol).basis();
  if (x.cols() == 0) return {std::move(x), Matrix(r.k_dim(), 0)};
  // hb has full column rank for an operator; solve hb·C = X in least squares.
  Eigen::JacobiSVD<Matrix> svd(hb, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const Matrix coeffs = svd.solve(x);
  return {std::move(x), r.k_block() * coeffs};
}

Matrix to_matrix(const LinearRelation& r, const TolerancePolicy& tol) {
  if (!is_everywhere_defined(r, tol)) {
    throw PreconditionError("to_matrix: relation is not everywhere defined");
  }
  const OperatorAction act = operator_action(r, tol);
  // X is a unitary basis of H, so A·X = image gives A = image·X^H.
  return act.image * act.domain_basis.adjoint();
}

double pairing_defect(const LinearRelation& s, const LinearRelation& t,
                      const TolerancePolicy& tol) {
  require_paired(s, t, "pairing_defect");
  const OperatorAction sa = operator_action(s, tol);
  const OperatorAction ta = operator_action(t, tol);
  // <Sx, y> - <x, Ty> over the two domain bases.
  const Matrix form = sa.image.adjoint() * ta.domain_basis - sa.domain_basis.adjoint() * ta.image;
  return operator_norm(form);
}

}  // namespace linrel
