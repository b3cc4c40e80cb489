#pragma once

// Randomized theorem-verification campaigns. Each trial draws an instance
// from the generators (clean construction, delta = 0.1 perturbation or
// partial restriction, chosen by trial index mod 3), runs the matching
// checker and classifies the outcome. Trial i uses seed ^ i, so results do
// not depend on evaluation order; the parallel and serial drivers produce
// identical reports.

#include "linrel/generate.hpp"
#include "linrel/problem.hpp"
#include "linrel/resolvent.hpp"

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace linrel {

struct CampaignConfig {
  std::string id;  // verification id, e.g. "von-neumann"
  std::uint64_t seed = 0;
  std::size_t trials = 100;
  FieldTag field = FieldTag::Real;
  Index max_dim = 6;
  TolerancePolicy tol;
  std::vector<double> grid = default_grid();
};

struct TrialOutcome {
  /// Some check fell inside the guard band; nothing is asserted.
  bool skipped = false;
  /// Ground truth of the instance: statement (i) for equivalences, the
  /// hypotheses for one-way results, the oracle for resolvent criteria.
  bool positive = false;
  bool violation = false;
  /// Reported, never asserted: a one-way result whose conclusion holds
  /// without its hypotheses, or a resolvent criterion passing the grid for
  /// a pair that is not mutually adjoint but has pairing defect below 0.1.
  bool converse_failure = false;
  std::string note;
  std::optional<Problem> instance;  // set on violation
};

struct CampaignReport {
  CampaignConfig config;
  std::string theorem;  // checker operation name
  std::size_t passed = 0;
  std::size_t skipped = 0;
  std::size_t positives = 0;
  std::size_t negatives = 0;
  std::size_t violations = 0;
  std::size_t converse_failures = 0;
  std::optional<std::size_t> first_violation_trial;
  std::string first_violation_note;
  std::optional<Problem> first_violation;
};

/// Accepted verification ids, in documentation order.
const std::vector<std::string>& verify_ids();
bool is_verify_id(const std::string& id);

/// Generator configuration of trial `index`.
GenConfig trial_config(const CampaignConfig& cfg, std::size_t index);

/// One trial of the campaign. Throws PreconditionError for an unknown id.
TrialOutcome run_trial(const CampaignConfig& cfg, std::size_t index);

/// Folds outcomes in trial order.
CampaignReport summarize(const CampaignConfig& cfg, const std::vector<TrialOutcome>& outcomes);

using TrialFn = std::function<TrialOutcome(std::size_t)>;

/// Trials evaluated concurrently (OpenMP). Rethrows the exception of the
/// lowest-index failing trial, if any.
std::vector<TrialOutcome> run_trials(std::size_t trials, const TrialFn& fn);
std::vector<TrialOutcome> run_trials_serial(std::size_t trials, const TrialFn& fn);

/// Validates the config (known id, trials >= 1, 1 <= max_dim, grid) and runs
/// it. Throws PreconditionError on invalid configuration.
CampaignReport run_campaign(const CampaignConfig& cfg);
CampaignReport run_campaign_serial(const CampaignConfig& cfg);

}  // namespace linrel
