#include "linrel/characterize.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace linrel {

namespace {

CheckResult labelled(CheckResult c, const std::string& label) {
  c.trace = label + " [" + c.trace + "]";
  return c;
}

CheckResult all_of(std::initializer_list<CheckResult> parts, const std::string& label) {
  std::vector<CheckResult> v(parts);
  std::string trace = label + " {";
  for (std::size_t i = 0; i < v.size(); ++i) {
    trace += (i ? "; " : "") + v[i].trace;
  }
  trace += "}";
  return conjunction(v, trace);
}

void finish(CriterionReport& r) {
  std::vector<CheckResult> parts;
  parts.reserve(r.conditions.size());
  for (const auto& c : r.conditions) parts.push_back(c.result);
  r.overall = conjunction(parts, r.criterion_id);
}

const CheckResult& find(const std::vector<Condition>& list, std::string_view name,
                        const std::string& id) {
  auto it = std::find_if(list.begin(), list.end(), [&](const Condition& c) { return c.name == name; });
  if (it == list.end()) {
    throw std::out_of_range(id + ": no entry named '" + std::string(name) + "'");
  }
  return it->result;
}

void require_operators(const LinearRelation& s, const LinearRelation& t, const char* op,
                       const TolerancePolicy& tol) {
  require_operator(s, op, tol);
  require_operator(t, op, tol);
}

}  // namespace

const CheckResult& CriterionReport::condition(std::string_view name) const {
  return find(conditions, name, criterion_id);
}

const CheckResult& CriterionReport::statement(std::string_view name) const {
  return find(statements, name, criterion_id);
}

bool CriterionReport::statements_agree() const {
  return std::all_of(statements.begin(), statements.end(), [&](const Condition& c) {
    return c.result.verdict == statements.front().result.verdict;
  });
}

bool CriterionReport::decisive(const TolerancePolicy& tol) const {
  auto ok = [&](const Condition& c) { return linrel::decisive(c.result, tol); };
  if (!std::all_of(conditions.begin(), conditions.end(), ok)) return false;
  if (!std::all_of(statements.begin(), statements.end(), ok)) return false;
  return !conclusion_verified || linrel::decisive(*conclusion_verified, tol);
}

CheckResult oracle_mutually_adjoint(const LinearRelation& s, const LinearRelation& t,
                                    const TolerancePolicy& tol) {
  require_paired(s, t, "oracle_mutually_adjoint");
  return all_of({labelled(graph_equals(adjoint(s), t, tol), "S* = T"),
                 labelled(graph_equals(adjoint(t), s, tol), "T* = S"),
                 labelled(is_operator(s, tol), "S operator"),
                 labelled(is_operator(t, tol), "T operator"),
                 labelled(is_everywhere_defined(s, tol), "S everywhere defined"),
                 labelled(is_everywhere_defined(t, tol), "T everywhere defined")},
                "mutually adjoint");
}

CriterionReport arens_inclusion(const LinearRelation& s, const LinearRelation& t,
                                const TolerancePolicy& tol) {
  require_same_shape(s, t, "arens_inclusion");
  const RelationParts ps = parts(s, tol);
  const RelationParts pt = parts(t, tol);
  const Subspace ran_cap = range(intersect(s, t, tol), tol);
  const Subspace ker_vee = kernel(vee(s, t, tol), tol);

  CriterionReport r;
  r.criterion_id = "arens_inclusion";
  r.conditions = {
      {"i", labelled(graph_contains(t, s, tol), "S ⊆ T")},
      {"ii", all_of({labelled(contains(pt.ker, ps.ker, tol), "ker S ⊆ ker T"),
                     labelled(contains(ran_cap, ps.ran, tol), "ran S ⊆ ran(S∩T)")},
                    "ii")},
      {"iii", all_of({labelled(contains(pt.ran, ps.ran, tol), "ran S ⊆ ran T"),
                      labelled(contains(pt.ker, ker_vee, tol), "ker(S∨T) ⊆ ker T")},
                     "iii")},
  };
  r.statements = r.conditions;
  finish(r);
  return r;
}

CriterionReport arens_equality(const LinearRelation& s, const LinearRelation& t,
                               const TolerancePolicy& tol) {
  require_same_shape(s, t, "arens_equality");
  const RelationParts ps = parts(s, tol);
  const RelationParts pt = parts(t, tol);
  const LinearRelation cap = intersect(s, t, tol);
  const Subspace ker_vee = kernel(vee(s, t, tol), tol);

  CriterionReport r;
  r.criterion_id = "arens_equality";
  r.conditions = {
      {"i", labelled(graph_equals(s, t, tol), "S = T")},
      {"ii", all_of({labelled(equals(ps.ker, pt.ker, tol), "ker S = ker T"),
                     labelled(contains(range(cap, tol), sum(ps.ran, pt.ran, tol), tol),
                              "ran S + ran T ⊆ ran(S∩T)")},
                    "ii")},
      {"iii", all_of({labelled(equals(ps.ran, pt.ran, tol), "ran S = ran T"),
                      labelled(contains(kernel(cap, tol), ker_vee, tol), "ker(S∨T) ⊆ ker(S∩T)")},
                     "iii")},
  };
  r.statements = r.conditions;
  finish(r);
  return r;
}

CriterionReport arens_equality_under_inclusion(const LinearRelation& s, const LinearRelation& t,
                                               const TolerancePolicy& tol) {
  require_same_shape(s, t, "arens_equality_under_inclusion");
  if (!graph_contains(t, s, tol)) {
    throw PreconditionError("arens_equality_under_inclusion: requires S ⊆ T");
  }
  const RelationParts ps = parts(s, tol);
  const RelationParts pt = parts(t, tol);

  CriterionReport r;
  r.criterion_id = "arens_equality_under_inclusion";
  r.conditions = {
      {"i", labelled(graph_equals(s, t, tol), "S = T")},
      {"ii", all_of({labelled(equals(ps.ker, pt.ker, tol), "ker S = ker T"),
                     labelled(equals(ps.ran, pt.ran, tol), "ran S = ran T")},
                    "ii")},
  };
  r.statements = r.conditions;
  finish(r);
  return r;
}

CriterionReport gen_stone(const LinearRelation& s, const LinearRelation& t,
                          const TolerancePolicy& tol) {
  require_paired(s, t, "gen_stone");
  require_operators(s, t, "gen_stone", tol);
  const LinearRelation s0 = intersect(s, adjoint(t), tol);
  const LinearRelation t0 = intersect(t, adjoint(s), tol);

  CriterionReport r;
  r.criterion_id = "gen_stone";
  r.conditions = {
      {"ran(S∩T*) = K", is_surjective(s0, tol)},
      {"ran(T∩S*) = H", is_surjective(t0, tol)},
  };
  r.conclusion_verified = oracle_mutually_adjoint(s, t, tol);
  finish(r);
  return r;
}

CriterionReport surjective_pair(const LinearRelation& s, const LinearRelation& t,
                                const TolerancePolicy& tol) {
  require_paired(s, t, "surjective_pair");
  require_operators(s, t, "surjective_pair", tol);
  const double defect = pairing_defect(s, t, tol);

  CriterionReport r;
  r.criterion_id = "surjective_pair";
  r.conditions = {
      {"<Sx,y> = <x,Ty>",
       make_check(tol.subspace_eq_tol - defect, "pairing defect = " + std::to_string(defect))},
      {"ran S = K", is_surjective(s, tol)},
      {"ran T = H", is_surjective(t, tol)},
  };
  r.conclusion_verified = oracle_mutually_adjoint(s, t, tol);
  finish(r);
  return r;
}

CriterionReport selfadjoint_via_range(const LinearRelation& s, const TolerancePolicy& tol) {
  require_square(s, "selfadjoint_via_range");
  require_operator(s, "selfadjoint_via_range", tol);
  const LinearRelation sa = adjoint(s);

  CriterionReport r;
  r.criterion_id = "selfadjoint_via_range";
  r.conditions = {{"ran(S∩S*) = H", is_surjective(intersect(s, sa, tol), tol)}};
  r.conclusion_verified = all_of({labelled(graph_equals(sa, s, tol), "S* = S"),
                                  labelled(is_everywhere_defined(s, tol), "S everywhere defined")},
                                 "self-adjoint");
  finish(r);
  return r;
}

CriterionReport stone_surjective_symmetric(const LinearRelation& s, const TolerancePolicy& tol) {
  require_square(s, "stone_surjective_symmetric");
  require_operator(s, "stone_surjective_symmetric", tol);

  CriterionReport r;
  r.criterion_id = "stone_surjective_symmetric";
  r.conditions = {
      {"S ⊆ S*", is_symmetric(s, tol)},
      {"ran S = H", is_surjective(s, tol)},
  };
  r.conclusion_verified = oracle_mutually_adjoint(s, s, tol);
  finish(r);
  return r;
}

CriterionReport adjoint_identification(const LinearRelation& s, const LinearRelation& t,
                                       const TolerancePolicy& tol) {
  require_paired(s, t, "adjoint_identification");
  require_operators(s, t, "adjoint_identification", tol);
  const LinearRelation ta = adjoint(t);
  const Subspace ran_s = range(s, tol);
  const Subspace ran_ta = range(ta, tol);
  const Subspace ran_s0 = range(intersect(s, ta, tol), tol);

  CriterionReport r;
  r.criterion_id = "adjoint_identification";
  r.conditions = {
      {"ii.a", labelled(equals(complement(range(t, tol)), kernel(s, tol), tol), "(ran T)^⊥ = ker S")},
      {"ii.b", labelled(contains(ran_s0, sum(ran_s, ran_ta, tol), tol),
                        "ran S + ran T* ⊆ ran(S∩T*)")},
  };
  finish(r);
  r.statements = {
      {"i", all_of({labelled(is_everywhere_defined(t, tol), "T everywhere defined"),
                    labelled(graph_equals(s, ta, tol), "S = T*")},
                   "i")},
      {"ii", r.overall},
  };
  return r;
}

CriterionReport von_neumann_ranges(const LinearRelation& s, const LinearRelation& t,
                                   const TolerancePolicy& tol) {
  require_paired(s, t, "von_neumann_ranges");
  require_operators(s, t, "von_neumann_ranges", tol);
  const LinearRelation s0 = intersect(s, adjoint(t), tol);
  const LinearRelation t0 = intersect(t, adjoint(s), tol);

  CriterionReport r;
  r.criterion_id = "von_neumann_ranges";
  r.conditions = {
      {"ran(I+T0S0) = H", is_surjective(add_scalar(compose(t0, s0, tol), 1.0, tol), tol)},
      {"ran(I+S0T0) = K", is_surjective(add_scalar(compose(s0, t0, tol), 1.0, tol), tol)},
  };
  finish(r);
  r.statements = {
      {"i", oracle_mutually_adjoint(s, t, tol)},
      {"ii", r.overall},
  };
  return r;
}

CriterionReport closedness_via_ranges(const LinearRelation& s, const TolerancePolicy& tol) {
  require_operator(s, "closedness_via_ranges", tol);
  if (!is_everywhere_defined(s, tol)) {
    throw PreconditionError("closedness_via_ranges: S must be everywhere defined");
  }
  const LinearRelation sa = adjoint(s);

  auto self_adjoint_operator = [&](const LinearRelation& x, const char* label) {
    return all_of({labelled(is_operator(x, tol), "operator"),
                   labelled(graph_equals(adjoint(x), x, tol), "X* = X")},
                  label);
  };

  const CriterionReport vn = von_neumann_ranges(s, sa, tol);

  CriterionReport r;
  r.criterion_id = "closedness_via_ranges";
  r.conditions = {
      {"i", labelled(graph_equals(adjoint(sa), s, tol), "S = S**")},
      {"ii", all_of({self_adjoint_operator(compose(sa, s, tol), "S*S"),
                     self_adjoint_operator(compose(s, sa, tol), "SS*")},
                    "ii")},
      {"iii", labelled(vn.overall, "ran(I+S*S) = H and ran(I+SS*) = K")},
  };
  r.statements = r.conditions;
  finish(r);
  return r;
}

CriterionReport symmetric_adjoint_characterization(const LinearRelation& t,
                                                   const TolerancePolicy& tol) {
  require_square(t, "symmetric_adjoint_characterization");
  require_operator(t, "symmetric_adjoint_characterization", tol);
  const LinearRelation ta = adjoint(t);
  const LinearRelation taa = adjoint(ta);
  const LinearRelation t0 = intersect(t, ta, tol);
  const Subspace ran_ta = range(ta, tol);
  const Subspace ran_taa = range(taa, tol);

  CriterionReport r;
  r.criterion_id = "symmetric_adjoint_characterization";
  r.conditions = {
      {"ii.a", labelled(equals(kernel(t, tol), complement(ran_ta), tol), "ker T = (ran T*)^⊥")},
      {"ii.b", all_of({labelled(equals(range(t0, tol), ran_taa, tol), "ran T0 = ran T**"),
                       labelled(equals(ran_taa, ran_ta, tol), "ran T** = ran T*")},
                      "ii.b")},
  };
  finish(r);
  r.statements = {
      {"i", all_of({labelled(is_everywhere_defined(t, tol), "T everywhere defined"),
                    labelled(is_operator(ta, tol), "T* operator"),
                    labelled(graph_contains(t, ta, tol), "T* ⊆ T")},
                   "i")},
      {"ii", r.overall},
  };
  return r;
}

}  // namespace linrel
