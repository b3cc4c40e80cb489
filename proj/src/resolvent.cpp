#include "linrel/resolvent.hpp"

#include <cmath>
#include <exception>
#include <sstream>

namespace linrel {

namespace {

Matrix shifted(const LinearRelation& s, const LinearRelation& t, double t_value,
               const TolerancePolicy& tol) {
  const Matrix m = block_matrix(to_matrix(s, tol), to_matrix(t, tol));
  return m - t_value * Matrix::Identity(m.rows(), m.cols());
}

void require_inputs(const LinearRelation& s, const LinearRelation& t, const char* op,
                    const TolerancePolicy& tol) {
  require_paired(s, t, op);
  require_operator(s, op, tol);
  require_operator(t, op, tol);
}

NieminenReport assemble(std::string id, const LinearRelation& s, const LinearRelation& t,
                        const std::vector<double>& grid, const TolerancePolicy& tol,
                        std::vector<Condition> extra) {
  NieminenReport r;
  r.criterion_id = std::move(id);
  r.probes = probe_grid(s, t, grid, tol);
  r.pairing_defect = pairing_defect(s, t, tol);
  r.extra_conditions = std::move(extra);
  std::vector<CheckResult> parts;
  for (const auto& c : r.extra_conditions) parts.push_back(c.result);
  for (const auto& p : r.probes) parts.push_back(p.satisfied);
  r.overall = conjunction(parts, "all probes satisfy ||R(t)|| <= 1/|t|");
  return r;
}

}  // namespace

std::vector<double> default_grid() {
  std::vector<double> grid;
  for (int k = 3; k >= -3; --k) grid.push_back(-std::ldexp(1.0, k));
  for (int k = -3; k <= 3; ++k) grid.push_back(std::ldexp(1.0, k));
  return grid;
}

void validate_grid(const std::vector<double>& grid) {
  if (grid.empty()) throw PreconditionError("resolvent grid is empty");
  for (double t : grid) {
    if (t == 0.0 || !std::isfinite(t)) {
      throw PreconditionError("resolvent grid entries must be finite and nonzero");
    }
  }
}

Matrix block_matrix(const Matrix& s, const Matrix& t) {
  const Index h = s.cols();
  const Index k = s.rows();
  if (t.rows() != h || t.cols() != k) {
    throw DimensionError("block_matrix: T must be dim H x dim K");
  }
  Matrix m = Matrix::Zero(h + k, h + k);
  m.topRightCorner(h, k) = -t;
  m.bottomLeftCorner(k, h) = s;
  return m;
}

OperatorMatrix build_matrix(const LinearRelation& s, const LinearRelation& t,
                            const TolerancePolicy& tol) {
  require_inputs(s, t, "build_matrix", tol);
  const Index h = s.h_dim();
  const Index k = s.k_dim();
  const Index n = h + k;
  const OperatorAction sa = operator_action(s, tol);
  const OperatorAction ta = operator_action(t, tol);
  const Index ds = sa.domain_basis.cols();
  const Index dt = ta.domain_basis.cols();

  // ((x,0),(0,Sx)) for x ∈ dom S and ((0,y),(-Ty,0)) for y ∈ dom T.
  Matrix spanners = Matrix::Zero(2 * n, ds + dt);
  spanners.block(0, 0, h, ds) = sa.domain_basis;
  spanners.block(n + h, 0, k, ds) = sa.image;
  spanners.block(h, ds, k, dt) = ta.domain_basis;
  spanners.block(n, ds, h, dt) = -ta.image;
  return {from_spanners(n, n, spanners, tol), h, k};
}

CheckResult in_resolvent_set(const LinearRelation& s, const LinearRelation& t, double t_value,
                             const TolerancePolicy& tol) {
  if (t_value == 0.0) throw PreconditionError("in_resolvent_set: t must be nonzero");
  require_inputs(s, t, "in_resolvent_set", tol);

  const CheckResult dom_s = is_everywhere_defined(s, tol);
  const CheckResult dom_t = is_everywhere_defined(t, tol);
  if (!dom_s || !dom_t) {
    // dim dom(M - t) < dim(H x K), so M - t cannot map onto H x K.
    return conjunction({dom_s, dom_t}, "M - t is not everywhere defined");
  }
  const Matrix a = shifted(s, t, t_value, tol);
  if (a.rows() == 0) return make_check(1.0, "trivial space");
  const Eigen::VectorXd sv = singular_values(a);
  const double threshold = tol.rank_threshold(sv(0), a.rows(), a.cols());
  const double smin = sv(sv.size() - 1);
  std::ostringstream trace;
  trace << "sigma_min(M - t) = " << smin << ", threshold " << threshold;
  return make_check(smin - threshold, trace.str());
}

namespace {

double inverse_norm(const Matrix& shifted_matrix) {
  if (shifted_matrix.rows() == 0) return 0.0;
  return operator_norm(shifted_matrix.fullPivLu().inverse());
}

}  // namespace

double resolvent_norm(const LinearRelation& s, const LinearRelation& t, double t_value,
                      const TolerancePolicy& tol) {
  if (!in_resolvent_set(s, t, t_value, tol)) {
    throw PreconditionError("resolvent_norm: t is not in the resolvent set");
  }
  return inverse_norm(shifted(s, t, t_value, tol));
}

ResolventProbe probe(const LinearRelation& s, const LinearRelation& t, double t_value,
                     const TolerancePolicy& tol) {
  ResolventProbe p;
  p.t = t_value;
  p.bound = 1.0 / std::abs(t_value);
  p.in_resolvent_set = in_resolvent_set(s, t, t_value, tol);
  if (!p.in_resolvent_set) {
    p.satisfied = p.in_resolvent_set;
    p.satisfied.trace = "not in resolvent set: " + p.in_resolvent_set.trace;
    return p;
  }
  p.norm = inverse_norm(shifted(s, t, t_value, tol));
  std::ostringstream trace;
  trace << "||R(" << t_value << ")|| = " << *p.norm << " vs 1/|t| = " << p.bound;
  p.satisfied = make_check(p.bound + kNormSlack - *p.norm, trace.str());
  return p;
}

std::vector<ResolventProbe> probe_grid(const LinearRelation& s, const LinearRelation& t,
                                       const std::vector<double>& grid,
                                       const TolerancePolicy& tol) {
  validate_grid(grid);
  std::vector<ResolventProbe> out(grid.size());
  std::exception_ptr failure;
  const long n = static_cast<long>(grid.size());
#pragma omp parallel for schedule(static)
  for (long i = 0; i < n; ++i) {
    try {
      out[i] = probe(s, t, grid[i], tol);
    } catch (...) {
#pragma omp critical(linrel_probe_failure)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
  return out;
}

std::vector<ResolventProbe> probe_grid_serial(const LinearRelation& s, const LinearRelation& t,
                                              const std::vector<double>& grid,
                                              const TolerancePolicy& tol) {
  validate_grid(grid);
  std::vector<ResolventProbe> out;
  out.reserve(grid.size());
  for (double t_value : grid) out.push_back(probe(s, t, t_value, tol));
  return out;
}

NieminenReport nieminen_criterion(const LinearRelation& s, const LinearRelation& t,
                                  const std::vector<double>& grid, const TolerancePolicy& tol) {
  validate_grid(grid);
  require_inputs(s, t, "nieminen_criterion", tol);
  NieminenReport r = assemble("nieminen_criterion", s, t, grid, tol, {});
  r.oracle = oracle_mutually_adjoint(s, t, tol);
  return r;
}

NieminenReport selfadjoint_nieminen(const LinearRelation& s, const std::vector<double>& grid,
                                    const TolerancePolicy& tol) {
  validate_grid(grid);
  require_square(s, "selfadjoint_nieminen");
  require_operator(s, "selfadjoint_nieminen", tol);
  NieminenReport r = assemble("selfadjoint_nieminen", s, s, grid, tol, {});
  r.oracle = conjunction({graph_equals(adjoint(s), s, tol), is_everywhere_defined(s, tol)},
                         "S* = S, S everywhere defined");
  return r;
}

NieminenReport skewadjoint_nieminen(const LinearRelation& s, const std::vector<double>& grid,
                                    const TolerancePolicy& tol) {
  validate_grid(grid);
  require_square(s, "skewadjoint_nieminen");
  require_operator(s, "skewadjoint_nieminen", tol);
  const LinearRelation minus_s = scale(s, -1.0, tol);
  NieminenReport r = assemble("skewadjoint_nieminen", s, minus_s, grid, tol, {});
  r.oracle = conjunction({graph_equals(adjoint(s), minus_s, tol), is_everywhere_defined(s, tol)},
                         "S* = -S, S everywhere defined");
  return r;
}

NieminenReport unitary_nieminen(const LinearRelation& u, const std::vector<double>& grid,
                                const TolerancePolicy& tol) {
  validate_grid(grid);
  require_operator(u, "unitary_nieminen", tol);
  const LinearRelation u_inv = inverse(u);
  const CheckResult injective = is_injective(u, tol);
  const CheckResult inverse_operator = is_operator(u_inv, tol);

  const CheckResult oracle =
      conjunction({is_everywhere_defined(u, tol), is_surjective(u, tol),
                   graph_equals(adjoint(u), u_inv, tol)},
                  "U everywhere defined, surjective, U* = U^-1");

  std::vector<Condition> extra = {{"ker U = {0}", injective},
                                  {"U^-1 operator", inverse_operator}};
  if (!inverse_operator) {
    NieminenReport r;
    r.criterion_id = "unitary_nieminen";
    r.extra_conditions = std::move(extra);
    r.overall = conjunction({injective, inverse_operator}, "U^-1 is multivalued");
    r.oracle = oracle;
    return r;
  }
  NieminenReport r = assemble("unitary_nieminen", u, u_inv, grid, tol, std::move(extra));
  r.oracle = oracle;
  return r;
}

}  // namespace linrel
