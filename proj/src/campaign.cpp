#include "linrel/campaign.hpp"

#include <algorithm>
#include <exception>

namespace linrel {

namespace {

constexpr double kDelta = 0.1;

enum class Mix { Clean, Perturbed, Partial };

Mix mix_of(std::size_t index) { return static_cast<Mix>(index % 3); }

struct Instance {
  LinearRelation s;
  std::optional<LinearRelation> t;
};

Problem dump(const CampaignConfig& cfg, std::size_t index, const std::string& theorem,
             const Instance& inst) {
  Problem p;
  p.field = cfg.field;
  p.h_dim = inst.s.h_dim();
  p.k_dim = inst.s.k_dim();
  p.s = RelationSpec::from_relation(inst.s);
  if (inst.t) p.t = RelationSpec::from_relation(*inst.t);
  p.checks = {theorem};
  p.tol = cfg.tol;
  p.meta = {{"generator", std::string(kRngAlgorithm)},
            {"seed", std::to_string(cfg.seed)},
            {"trial", std::to_string(index)},
            {"verify", cfg.id}};
  return p;
}

Index pick(const GenConfig& g, std::uint64_t stream, Index lo, Index hi) {
  return random_index(g.child(stream), lo, std::max(lo, hi));
}

// --- instance builders -------------------------------------------------------

// Pairs of general relations for the Arens suites. "arens" sees S ⊆ T,
// unrelated and equal pairs; "arens-eq" equal, unrelated and proper
// sub-relations; "arens-eq-incl" only pairs with S ⊆ T (its precondition).
Instance arens_instance(const std::string& id, const GenConfig& g, Mix mix, Index h, Index k) {
  const Index d = pick(g, 103, 1, h + k);
  const LinearRelation big = random_relation(g.child(1), h, k, d);
  const LinearRelation equal = rebase(big, g.child(2));
  const LinearRelation sub = random_subrelation(big, g.child(2), pick(g, 104, 0, d - 1));
  const LinearRelation unrelated = random_relation(g.child(3), h, k, pick(g, 105, 0, h + k));
  if (id == "arens") {
    const LinearRelation* s[] = {&sub, &unrelated, &equal};
    return {*s[static_cast<int>(mix)], big};
  }
  if (id == "arens-eq") {
    const LinearRelation* s[] = {&equal, &unrelated, &sub};
    return {*s[static_cast<int>(mix)], big};
  }
  const LinearRelation largest_sub = random_subrelation(big, g.child(4), d - 1);
  const LinearRelation* s[] = {&equal, &sub, &largest_sub};
  return {*s[static_cast<int>(mix)], big};
}

// Adjoint pair S = A, T = A^H; a delta-perturbed T; or S restricted.
Instance pair_instance(const GenConfig& g, Mix mix, Index h, Index k, const TolerancePolicy& tol) {
  const AdjointPair p = random_adjoint_pair(g.child(1), h, k);
  switch (mix) {
    case Mix::Clean:
      return {p.s, p.t};
    case Mix::Perturbed:
      return {p.s, perturb_pairing(p.s, p.t, kDelta, g.child(2), tol).t};
    case Mix::Partial:
      return {restrict_to_partial(p.s, g.child(3), pick(g, 106, 0, h - 1), tol), p.t};
  }
  throw std::logic_error("pair_instance");
}

OperatorClass class_for(const std::string& id) {
  if (id == "nieminen-skew") return OperatorClass::SkewAdjoint;
  if (id == "nieminen-unitary") return OperatorClass::Unitary;
  return OperatorClass::SelfAdjoint;
}

// Square operator in a class; pushed out of it by delta; or restricted.
Instance square_instance(OperatorClass cls, const GenConfig& g, Mix mix, Index n,
                         const TolerancePolicy& tol) {
  // A real 1x1 Hermitian matrix has no skew direction to leave its class by.
  if (mix == Mix::Perturbed) n = std::max<Index>(n, 2);
  const Matrix a = random_in_class(g.child(1), cls, n);
  switch (mix) {
    case Mix::Clean:
      return {from_matrix(a, tol), std::nullopt};
    case Mix::Perturbed:
      return {from_matrix(perturb_off_class(a, cls, kDelta, g.child(2)), tol), std::nullopt};
    case Mix::Partial:
      return {restrict_to_partial(from_matrix(a, tol), g.child(3), pick(g, 106, 0, n - 1), tol),
              std::nullopt};
  }
  throw std::logic_error("square_instance");
}

Instance closedness_instance(const GenConfig& g, Mix mix, Index h, Index k) {
  switch (mix) {
    case Mix::Clean:
    case Mix::Partial:
      return {random_operator(g.child(1), h, k, h), std::nullopt};
    case Mix::Perturbed: {
      // Rank one, so S*S and SS* are far from invertible.
      const Matrix u = random_matrix(g.child(1), k, 1);
      const Matrix v = random_matrix(g.child(2), h, 1);
      return {from_matrix(u * v.adjoint()), std::nullopt};
    }
  }
  throw std::logic_error("closedness_instance");
}

// --- classification ------------------------------------------------------------

TrialOutcome classify_equivalence(const CriterionReport& r, const TolerancePolicy& tol) {
  TrialOutcome out;
  out.skipped = !r.decisive(tol);
  out.positive = r.statements.front().result.verdict;
  if (!out.skipped && !r.statements_agree()) {
    out.violation = true;
    out.note = "statements disagree:";
    for (const auto& s : r.statements) {
      out.note += " (" + s.name + ")=" + (s.result.verdict ? "true" : "false");
    }
  }
  return out;
}

TrialOutcome classify_implication(const CriterionReport& r, const TolerancePolicy& tol) {
  TrialOutcome out;
  out.skipped = !r.decisive(tol);
  out.positive = r.overall.verdict;
  const bool conclusion = r.conclusion_verified->verdict;
  if (out.skipped) return out;
  if (r.overall.verdict && !conclusion) {
    out.violation = true;
    out.note = "hypotheses hold but conclusion fails: " + r.conclusion_verified->trace;
  }
  out.converse_failure = !r.overall.verdict && conclusion;
  return out;
}

TrialOutcome classify_always_true(const CriterionReport& r, const TolerancePolicy& tol) {
  TrialOutcome out;
  out.skipped = !r.decisive(tol);
  out.positive = r.overall.verdict;
  if (!out.skipped && !r.overall.verdict) {
    out.violation = true;
    out.note = "expected every statement true: " + r.overall.trace;
  }
  return out;
}

bool probes_decisive(const NieminenReport& r) {
  TolerancePolicy slack;
  slack.subspace_eq_tol = kNormSlack;
  return std::all_of(r.probes.begin(), r.probes.end(),
                     [&](const ResolventProbe& p) { return decisive(p.satisfied, slack); });
}

TrialOutcome classify_resolvent(const NieminenReport& r, bool total_inputs,
                                const TolerancePolicy& tol) {
  TrialOutcome out;
  out.skipped = !decisive(r.oracle, tol) || !probes_decisive(r);
  out.positive = r.oracle.verdict;
  if (out.skipped) return out;
  // The grid decides the negative direction only when the pairing defect is
  // large enough to surface at |t| <= 8, or when an input is partial.
  const bool asserted_negative =
      !total_inputs || !r.pairing_defect || *r.pairing_defect >= kDelta;
  if (r.oracle.verdict && !r.overall.verdict) {
    out.violation = true;
    out.note = "mutually adjoint but a probe fails: " + r.overall.trace;
  } else if (!r.oracle.verdict && r.overall.verdict) {
    if (asserted_negative) {
      out.violation = true;
      out.note = "not mutually adjoint but every probe passes";
    } else {
      out.converse_failure = true;
    }
  }
  return out;
}

bool total(const LinearRelation& r, const TolerancePolicy& tol) {
  return is_everywhere_defined(r, tol).verdict;
}

}  // namespace

const std::vector<std::string>& verify_ids() {
  static const std::vector<std::string> ids = {
      "arens",         "arens-eq",          "arens-eq-incl", "gen-stone",
      "surjective-pair", "selfadjoint-range", "stone",       "adjoint-ident",
      "von-neumann",   "closedness",        "symmetric-adjoint", "nieminen",
      "nieminen-selfadjoint", "nieminen-skew", "nieminen-unitary"};
  return ids;
}

bool is_verify_id(const std::string& id) {
  const auto& ids = verify_ids();
  return std::find(ids.begin(), ids.end(), id) != ids.end();
}

GenConfig trial_config(const CampaignConfig& cfg, std::size_t index) {
  GenConfig g;
  g.seed = cfg.seed ^ static_cast<std::uint64_t>(index);
  g.field = cfg.field;
  g.max_dim = cfg.max_dim;
  return g;
}

TrialOutcome run_trial(const CampaignConfig& cfg, std::size_t index) {
  const std::string& id = cfg.id;
  const TolerancePolicy& tol = cfg.tol;
  const GenConfig g = trial_config(cfg, index);
  const Mix mix = mix_of(index);
  const Index h = pick(g, 101, 1, cfg.max_dim);
  const Index k = pick(g, 102, 1, cfg.max_dim);
  const std::string theorem = canonical_checker(id);

  Instance inst{LinearRelation::zero(0, 0), std::nullopt};
  TrialOutcome out;

  if (id == "arens" || id == "arens-eq" || id == "arens-eq-incl") {
    inst = arens_instance(id, g, mix, h, k);
    const CriterionReport r = id == "arens"      ? arens_inclusion(inst.s, *inst.t, tol)
                              : id == "arens-eq" ? arens_equality(inst.s, *inst.t, tol)
                                                 : arens_equality_under_inclusion(inst.s, *inst.t, tol);
    out = classify_equivalence(r, tol);
  } else if (id == "gen-stone" || id == "surjective-pair") {
    inst = pair_instance(g, mix, h, mix == Mix::Clean ? h : k, tol);
    const CriterionReport r = id == "gen-stone" ? gen_stone(inst.s, *inst.t, tol)
                                                : surjective_pair(inst.s, *inst.t, tol);
    out = classify_implication(r, tol);
  } else if (id == "selfadjoint-range" || id == "stone") {
    inst = square_instance(OperatorClass::SelfAdjoint, g, mix, h, tol);
    const CriterionReport r = id == "stone" ? stone_surjective_symmetric(inst.s, tol)
                                            : selfadjoint_via_range(inst.s, tol);
    out = classify_implication(r, tol);
  } else if (id == "adjoint-ident" || id == "von-neumann") {
    inst = pair_instance(g, mix, h, k, tol);
    const CriterionReport r = id == "adjoint-ident" ? adjoint_identification(inst.s, *inst.t, tol)
                                                    : von_neumann_ranges(inst.s, *inst.t, tol);
    out = classify_equivalence(r, tol);
  } else if (id == "closedness") {
    inst = closedness_instance(g, mix, h, k);
    out = classify_always_true(closedness_via_ranges(inst.s, tol), tol);
  } else if (id == "symmetric-adjoint") {
    inst = square_instance(OperatorClass::SelfAdjoint, g, mix, h, tol);
    out = classify_equivalence(symmetric_adjoint_characterization(inst.s, tol), tol);
  } else if (id == "nieminen") {
    inst = pair_instance(g, mix, h, k, tol);
    const NieminenReport r = nieminen_criterion(inst.s, *inst.t, cfg.grid, tol);
    out = classify_resolvent(r, total(inst.s, tol) && total(*inst.t, tol), tol);
  } else if (id == "nieminen-selfadjoint" || id == "nieminen-skew" || id == "nieminen-unitary") {
    const OperatorClass cls = class_for(id);
    inst = square_instance(cls, g, mix, h, tol);
    const NieminenReport r = cls == OperatorClass::SelfAdjoint ? selfadjoint_nieminen(inst.s, cfg.grid, tol)
                             : cls == OperatorClass::SkewAdjoint
                                 ? skewadjoint_nieminen(inst.s, cfg.grid, tol)
                                 : unitary_nieminen(inst.s, cfg.grid, tol);
    out = classify_resolvent(r, total(inst.s, tol), tol);
  } else {
    throw PreconditionError("unknown verification id '" + id + "'");
  }

  if (out.violation) out.instance = dump(cfg, index, theorem, inst);
  return out;
}

CampaignReport summarize(const CampaignConfig& cfg, const std::vector<TrialOutcome>& outcomes) {
  CampaignReport r;
  r.config = cfg;
  r.theorem = canonical_checker(cfg.id);
  for (std::size_t i = 0; i < outcomes.size(); ++i) {
    const TrialOutcome& o = outcomes[i];
    if (o.skipped) {
      ++r.skipped;
      continue;
    }
    ++(o.positive ? r.positives : r.negatives);
    if (o.converse_failure) ++r.converse_failures;
    if (!o.violation) {
      ++r.passed;
      continue;
    }
    ++r.violations;
    if (!r.first_violation_trial) {
      r.first_violation_trial = i;
      r.first_violation_note = o.note;
      r.first_violation = o.instance;
    }
  }
  return r;
}

std::vector<TrialOutcome> run_trials(std::size_t trials, const TrialFn& fn) {
  std::vector<TrialOutcome> out(trials);
  std::vector<std::exception_ptr> errors(trials);
  const long n = static_cast<long>(trials);
#pragma omp parallel for schedule(dynamic)
  for (long i = 0; i < n; ++i) {
    try {
      out[i] = fn(static_cast<std::size_t>(i));
    } catch (...) {
      errors[i] = std::current_exception();
    }
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return out;
}

std::vector<TrialOutcome> run_trials_serial(std::size_t trials, const TrialFn& fn) {
  std::vector<TrialOutcome> out;
  out.reserve(trials);
  for (std::size_t i = 0; i < trials; ++i) out.push_back(fn(i));
  return out;
}

namespace {

void validate(const CampaignConfig& cfg) {
  if (!is_verify_id(cfg.id)) throw PreconditionError("unknown verification id '" + cfg.id + "'");
  if (cfg.trials < 1) throw PreconditionError("trials must be at least 1");
  if (cfg.max_dim < 1) throw PreconditionError("max_dim must be at least 1");
  cfg.tol.validate();
  validate_grid(cfg.grid);
}

}  // namespace

CampaignReport run_campaign(const CampaignConfig& cfg) {
  validate(cfg);
  return summarize(cfg, run_trials(cfg.trials, [&](std::size_t i) { return run_trial(cfg, i); }));
}

CampaignReport run_campaign_serial(const CampaignConfig& cfg) {
  validate(cfg);
  return summarize(cfg,
                   run_trials_serial(cfg.trials, [&](std::size_t i) { return run_trial(cfg, i); }));
}

}  // namespace linrel
