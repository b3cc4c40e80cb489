#pragma once

// Operator matrix M_{S,T}(h,k) = (-Tk, Sh) on H x K, its real resolvent
// set, resolvent norms and the resolvent-norm criterion for mutual
// adjointness: S, T are mutually adjoint iff every real t != 0 lies in the
// resolvent set with ||(M - t)^{-1}|| <= 1/|t|.
//
// Only a finite grid of t values is probed. For operators the decisive
// quantity ||(M-t)v||^2 - t^2||v||^2 = ||Sh||^2 + ||Tk||^2
// + 2t Re(<Tk,h> - <Sh,k>) is affine in t for fixed v, which is why the
// report also carries the pairing defect.

#include "linrel/characterize.hpp"

#include <optional>
#include <vector>

namespace linrel {

struct OperatorMatrix {
  LinearRelation relation;  // on (H x K) x (H x K)
  Index h_dim = 0;
  Index k_dim = 0;
};

struct ResolventProbe {
  double t = 0.0;
  CheckResult in_resolvent_set;
  std::optional<double> norm;
  double bound = 0.0;
  CheckResult satisfied;
};

struct NieminenReport {
  std::string criterion_id;
  std::vector<ResolventProbe> probes;
  std::optional<double> pairing_defect;  // absent when an input is multivalued
  std::vector<Condition> extra_conditions;
  CheckResult overall;
  CheckResult oracle;
};

inline constexpr double kNormSlack = 1e-8;

/// {±2^k : k = -3..3}, ordered -8, -4, ..., -1/8, 1/8, ..., 8.
std::vector<double> default_grid();

/// Rejects empty grids and zero entries.
void validate_grid(const std::vector<double>& grid);

/// Relation-level M_{S,T} with domain dom S x dom T.
OperatorMatrix build_matrix(const LinearRelation& s, const LinearRelation& t,
                            const TolerancePolicy& tol = {});

/// [[0, -T], [S, 0]] for everywhere-defined S and T.
Matrix block_matrix(const Matrix& s, const Matrix& t);

/// Margin: sigma_min(M - t) minus the rank threshold when S and T are
/// everywhere defined; otherwise the (negative) domain-check margin.
CheckResult in_resolvent_set(const LinearRelation& s, const LinearRelation& t, double t_value,
                             const TolerancePolicy& tol = {});

/// ||(M - t)^{-1}||, evaluated by explicitly inverting M - t.
double resolvent_norm(const LinearRelation& s, const LinearRelation& t, double t_value,
                      const TolerancePolicy& tol = {});

ResolventProbe probe(const LinearRelation& s, const LinearRelation& t, double t_value,
                     const TolerancePolicy& tol = {});

/// Probes evaluated concurrently (OpenMP), returned in grid order.
std::vector<ResolventProbe> probe_grid(const LinearRelation& s, const LinearRelation& t,
                                       const std::vector<double>& grid,
                                       const TolerancePolicy& tol = {});

/// Serial reference for probe_grid.
std::vector<ResolventProbe> probe_grid_serial(const LinearRelation& s, const LinearRelation& t,
                                              const std::vector<double>& grid,
                                              const TolerancePolicy& tol = {});

NieminenReport nieminen_criterion(const LinearRelation& s, const LinearRelation& t,
                                  const std::vector<double>& grid = default_grid(),
                                  const TolerancePolicy& tol = {});

/// Criterion with T := S; oracle is self-adjointness.
NieminenReport selfadjoint_nieminen(const LinearRelation& s,
                                    const std::vector<double>& grid = default_grid(),
                                    const TolerancePolicy& tol = {});

/// Criterion with T := -S; oracle is S* = -S with S everywhere defined.
NieminenReport skewadjoint_nieminen(const LinearRelation& s,
                                    const std::vector<double>& grid = default_grid(),
                                    const TolerancePolicy& tol = {});

/// Criterion with T := U^{-1} plus ker U = {0}; oracle is unitarity.
/// A multivalued U^{-1} is reported as a failed condition, not thrown.
NieminenReport unitary_nieminen(const LinearRelation& u,
                                const std::vector<double>& grid = default_grid(),
                                const TolerancePolicy& tol = {});

}  // namespace linrel
