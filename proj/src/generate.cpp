#include "linrel/generate.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace linrel {

namespace {

constexpr std::uint64_t kGamma = 0x9E3779B97F4A7C15ULL;
constexpr int kMaxRetries = 100;

std::uint64_t splitmix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

double smallest_singular_value(const Matrix& m) {
  const Eigen::VectorXd s = singular_values(m);
  return s.size() == 0 ? std::numeric_limits<double>::infinity() : s(s.size() - 1);
}

Matrix draw_gaussian(CounterRng& rng, FieldTag field, Index rows, Index cols) {
  Matrix m(rows, cols);
  // Column-major fill order is part of the replay contract.
  for (Index j = 0; j < cols; ++j)
    for (Index i = 0; i < rows; ++i) m(i, j) = rng.scalar(field);
  return m;
}

Matrix normalized(Matrix m, double norm) {
  const double current = operator_norm(m);
  if (current > 0.0) m *= norm / current;
  return m;
}

}  // namespace

GenConfig GenConfig::child(std::uint64_t stream) const {
  GenConfig out = *this;
  out.seed = splitmix64(seed ^ splitmix64(stream + kGamma));
  return out;
}

CounterRng::CounterRng(std::uint64_t seed) : key_(splitmix64(seed)) {}

std::uint64_t CounterRng::next_u64() { return splitmix64(key_ + kGamma * ++counter_); }

double CounterRng::uniform() {
  // 53 random bits, shifted off zero.
  return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
}

double CounterRng::gaussian() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  const double u1 = uniform();
  const double u2 = uniform();
  const double radius = std::sqrt(-2.0 * std::log(u1));
  const double angle = 2.0 * std::numbers::pi * u2;
  spare_ = radius * std::sin(angle);
  has_spare_ = true;
  return radius * std::cos(angle);
}

Index CounterRng::uniform_index(Index lo, Index hi) {
  if (hi < lo) throw std::invalid_argument("uniform_index: empty range");
  const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
  return lo + static_cast<Index>(next_u64() % span);
}

Scalar CounterRng::scalar(FieldTag field) {
  const double re = gaussian();
  const double im = field == FieldTag::Complex ? gaussian() : 0.0;
  // Complex entries have unit variance overall.
  return field == FieldTag::Complex ? Scalar(re, im) / std::sqrt(2.0) : Scalar(re, 0.0);
}

Index random_index(const GenConfig& cfg, Index lo, Index hi) {
  CounterRng rng(cfg.seed);
  return rng.uniform_index(lo, hi);
}

Matrix gaussian_matrix(const GenConfig& cfg, Index rows, Index cols) {
  if (rows < 0 || cols < 0) throw DimensionError("gaussian_matrix: negative shape");
  CounterRng rng(cfg.seed);
  for (int attempt = 0; attempt < kMaxRetries; ++attempt) {
    Matrix m = draw_gaussian(rng, cfg.field, rows, cols);
    if (smallest_singular_value(m) >= cfg.margin_floor) return m;
  }
  throw std::runtime_error("gaussian_matrix: no well-conditioned draw after 100 attempts");
}

Matrix random_unit_matrix(const GenConfig& cfg, Index rows, Index cols) {
  return normalized(gaussian_matrix(cfg, rows, cols), 1.0);
}

Matrix random_matrix(const GenConfig& cfg, Index rows, Index cols) {
  return normalized(gaussian_matrix(cfg, rows, cols), cfg.op_norm);
}

Subspace random_subspace(const GenConfig& cfg, Index ambient, Index dim) {
  if (dim < 0 || dim > ambient) {
    throw DimensionError("random_subspace: need 0 <= dim <= ambient, got dim " +
                         std::to_string(dim) + " in " + std::to_string(ambient));
  }
  if (dim == 0) return Subspace::zero(ambient);
  const Matrix g = gaussian_matrix(cfg, ambient, dim);
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix q = qr.householderQ() * Matrix::Identity(ambient, dim);
  return Subspace::from_orthonormal(std::move(q));
}

LinearRelation random_relation(const GenConfig& cfg, Index h_dim, Index k_dim, Index graph_dim) {
  if (graph_dim < 0 || graph_dim > h_dim + k_dim) {
    throw DimensionError("random_relation: graph dimension out of range");
  }
  for (std::uint64_t attempt = 0; attempt < kMaxRetries; ++attempt) {
    const Subspace g = random_subspace(cfg.child(attempt), h_dim + k_dim, graph_dim);
    LinearRelation r(h_dim, k_dim, g);
    if (smallest_singular_value(r.h_block()) >= cfg.margin_floor &&
        smallest_singular_value(r.k_block()) >= cfg.margin_floor) {
      return r;
    }
  }
  throw std::runtime_error("random_relation: no well-conditioned draw after 100 attempts");
}

LinearRelation random_operator(const GenConfig& cfg, Index h_dim, Index k_dim, Index domain_dim) {
  if (domain_dim < 0 || domain_dim > h_dim) {
    throw DimensionError("random_operator: domain dimension out of range");
  }
  const Matrix a = random_matrix(cfg.child(1), k_dim, h_dim);
  return from_operator(OperatorSpec{a, random_subspace(cfg.child(2), h_dim, domain_dim)});
}

AdjointPair random_adjoint_pair(const GenConfig& cfg, Index h_dim, Index k_dim) {
  Matrix a = random_matrix(cfg, k_dim, h_dim);
  AdjointPair p{from_matrix(a), from_matrix(a.adjoint()), a};
  return p;
}

LinearRelation random_symmetric(const GenConfig& cfg, Index dim) {
  return from_matrix(random_in_class(cfg, OperatorClass::SelfAdjoint, dim));
}

Matrix random_in_class(const GenConfig& cfg, OperatorClass cls, Index dim) {
  const Matrix b = gaussian_matrix(cfg, dim, dim);
  switch (cls) {
    case OperatorClass::SelfAdjoint:
      return normalized((b + b.adjoint()) / 2.0, cfg.op_norm);
    case OperatorClass::SkewAdjoint:
      return normalized((b - b.adjoint()) / 2.0, cfg.op_norm);
    case OperatorClass::Unitary: {
      Eigen::HouseholderQR<Matrix> qr(b);
      return qr.householderQ();
    }
  }
  throw std::logic_error("random_in_class: unknown class");
}

Matrix perturb_off_class(const Matrix& a, OperatorClass cls, double delta, const GenConfig& cfg) {
  const Index n = a.rows();
  const Matrix b = gaussian_matrix(cfg, n, n);
  switch (cls) {
    case OperatorClass::SelfAdjoint: {
      const Matrix skew = b - b.adjoint();
      if (operator_norm(skew) == 0.0) {
        throw PreconditionError("perturb_off_class: no skew direction in a real 1x1 space");
      }
      return a + delta * normalized(skew, 1.0);
    }
    case OperatorClass::SkewAdjoint:
      return a + delta * normalized(b + b.adjoint(), 1.0);
    case OperatorClass::Unitary:
      return a * (Matrix::Identity(n, n) + delta * normalized(b + b.adjoint(), 1.0));
  }
  throw std::logic_error("perturb_off_class: unknown class");
}

PerturbedPair perturb_pairing(const LinearRelation& s, const LinearRelation& t, double delta,
                              const GenConfig& cfg, const TolerancePolicy& tol) {
  return perturb_pairing(s, t, delta, random_unit_matrix(cfg, t.k_dim(), t.h_dim()), tol);
}

PerturbedPair perturb_pairing(const LinearRelation& s, const LinearRelation& t, double delta,
                              const Matrix& direction, const TolerancePolicy& tol) {
  if (!(delta >= 0.0)) throw PreconditionError("perturb_pairing: delta must be nonnegative");
  require_paired(s, t, "perturb_pairing");
  if (direction.rows() != t.k_dim() || direction.cols() != t.h_dim()) {
    throw DimensionError("perturb_pairing: direction must match the shape of T");
  }
  const Matrix base = to_matrix(t, tol);
  const Matrix x = domain(s, tol).basis();
  return {s, from_matrix(base + delta * direction, tol), direction,
          operator_norm(x.adjoint() * direction)};
}

LinearRelation restrict_to_partial(const LinearRelation& s_total, const GenConfig& cfg,
                                   Index domain_dim, const TolerancePolicy& tol) {
  if (domain_dim < 0 || domain_dim > s_total.h_dim()) {
    throw DimensionError("restrict_to_partial: domain dimension out of range");
  }
  const Matrix a = to_matrix(s_total, tol);
  if (domain_dim == s_total.h_dim()) return s_total;
  return from_operator(OperatorSpec{a, random_subspace(cfg, s_total.h_dim(), domain_dim)}, tol);
}

LinearRelation random_subrelation(const LinearRelation& r, const GenConfig& cfg, Index sub_dim) {
  const Subspace coeffs = random_subspace(cfg, r.dim(), sub_dim);
  return {r.h_dim(), r.k_dim(), Subspace::from_orthonormal(r.graph().basis() * coeffs.basis())};
}

LinearRelation rebase(const LinearRelation& r, const GenConfig& cfg) {
  const Subspace u = random_subspace(cfg, r.dim(), r.dim());
  return {r.h_dim(), r.k_dim(), Subspace::from_orthonormal(r.graph().basis() * u.basis())};
}

}  // namespace linrel
