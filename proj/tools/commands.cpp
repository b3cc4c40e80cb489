#include "commands.hpp"

#include "linrel/campaign.hpp"
#include "linrel/problem.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

namespace linrel::cli {

namespace {

using json = nlohmann::ordered_json;

struct Options {
  std::string file;
  std::string format = "text";
  std::optional<double> tol_rank;
  std::optional<double> tol_subspace;
  std::optional<std::string> grid;
  // verify
  std::string verify_id;
  std::uint64_t seed = 0;
  long long trials = 100;
  std::string field = "real";
  long long dim_max = 6;
  std::string dump = "counterexample.json";
  bool serial = false;
  // profile
  double t_min = 0.125;
  double t_max = 8.0;
  int points = 25;
};

std::vector<double> parse_grid(const std::string& text) {
  std::vector<double> grid;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    try {
      std::size_t used = 0;
      grid.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw PreconditionError("--grid: cannot parse '" + item + "'");
    }
  }
  validate_grid(grid);
  return grid;
}

void apply_tolerances(const Options& o, TolerancePolicy& tol) {
  if (o.tol_rank) tol.rank_rel_eps = *o.tol_rank;
  if (o.tol_subspace) tol.subspace_eq_tol = *o.tol_subspace;
  tol.validate();
}

std::string fmt(double x) {
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  std::ostringstream s;
  s << std::setprecision(12) << x;
  return s.str();
}

json check_json(const CheckResult& c) {
  return {{"verdict", c.verdict}, {"margin", c.margin}, {"trace", c.trace}};
}

json conditions_json(const std::vector<Condition>& list) {
  json out = json::array();
  for (const auto& c : list) {
    json item = check_json(c.result);
    item["name"] = c.name;
    out.push_back(std::move(item));
  }
  return out;
}

json scalar_json(Scalar z) { return z.imag() == 0.0 ? json(z.real()) : json::array({z.real(), z.imag()}); }

json vectors_json(const Matrix& columns) {
  json out = json::array();
  for (Index j = 0; j < columns.cols(); ++j) {
    json v = json::array();
    for (Index i = 0; i < columns.rows(); ++i) v.push_back(scalar_json(columns(i, j)));
    out.push_back(std::move(v));
  }
  return out;
}

std::string vector_text(const Matrix& columns, Index j) {
  std::string s = "(";
  for (Index i = 0; i < columns.rows(); ++i) {
    const Scalar z = columns(i, j);
    // Clean roundoff so the printed bases stay readable.
    const double re = std::abs(z.real()) < 1e-14 ? 0.0 : z.real();
    const double im = std::abs(z.imag()) < 1e-14 ? 0.0 : z.imag();
    s += (i ? ", " : "") + fmt(re);
    if (im != 0.0) s += (im > 0 ? "+" : "") + fmt(im) + "i";
  }
  return s + ")";
}

// ---- check ---------------------------------------------------------------

struct CheckOutput {
  std::string id;
  std::string checker;
  std::optional<bool> overall;  // absent on error
  json detail;
  std::vector<std::string> lines;
  std::string error;
};

void describe(const CriterionReport& r, CheckOutput& o) {
  o.overall = r.overall.verdict;
  o.detail["overall"] = check_json(r.overall);
  o.detail["conditions"] = conditions_json(r.conditions);
  for (const auto& c : r.conditions) {
    o.lines.push_back("  " + c.name + ": " + (c.result.verdict ? "true" : "false") +
                      "  (margin " + fmt(c.result.margin) + ")");
  }
  if (!r.statements.empty()) {
    o.detail["statements"] = conditions_json(r.statements);
    for (const auto& c : r.statements) {
      o.lines.push_back("  statement (" + c.name + "): " + (c.result.verdict ? "true" : "false"));
    }
  }
  if (r.conclusion_verified) {
    o.detail["conclusion_verified"] = check_json(*r.conclusion_verified);
    o.lines.push_back(std::string("  conclusion: ") +
                      (r.conclusion_verified->verdict ? "true" : "false"));
  }
}

void describe(const NieminenReport& r, CheckOutput& o) {
  o.overall = r.overall.verdict;
  o.detail["overall"] = check_json(r.overall);
  o.detail["oracle"] = check_json(r.oracle);
  o.detail["pairing_defect"] = r.pairing_defect ? json(*r.pairing_defect) : json();
  o.detail["extra_conditions"] = conditions_json(r.extra_conditions);
  json probes = json::array();
  for (const auto& p : r.probes) {
    probes.push_back({{"t", p.t},
                      {"in_resolvent_set", p.in_resolvent_set.verdict},
                      {"norm", p.norm ? json(*p.norm) : json()},
                      {"bound", p.bound},
                      {"satisfied", p.satisfied.verdict}});
  }
  o.detail["probes"] = std::move(probes);
  for (const auto& c : r.extra_conditions) {
    o.lines.push_back("  " + c.name + ": " + (c.result.verdict ? "true" : "false"));
  }
  for (const auto& p : r.probes) {
    o.lines.push_back("  t = " + fmt(p.t) + ": ||R|| = " + (p.norm ? fmt(*p.norm) : "inf") +
                      ", bound " + fmt(p.bound) + (p.satisfied.verdict ? "  ok" : "  FAIL"));
  }
  if (r.pairing_defect) o.lines.push_back("  pairing defect: " + fmt(*r.pairing_defect));
  o.lines.push_back(std::string("  oracle: ") + (r.oracle.verdict ? "true" : "false"));
}

CheckOutput run_check(const std::string& id, const Problem& p, const std::vector<double>& grid) {
  CheckOutput o;
  o.id = id;
  o.checker = canonical_checker(id);
  const TolerancePolicy& tol = p.tol;
  try {
    const LinearRelation s = p.build_s();
    const std::string& c = o.checker;
    if (c == "oracle_mutually_adjoint") {
      const CheckResult r = oracle_mutually_adjoint(s, p.build_t(), tol);
      o.overall = r.verdict;
      o.detail["overall"] = check_json(r);
    } else if (c == "arens_inclusion") {
      describe(arens_inclusion(s, p.build_t(), tol), o);
    } else if (c == "arens_equality") {
      describe(arens_equality(s, p.build_t(), tol), o);
    } else if (c == "arens_equality_under_inclusion") {
      describe(arens_equality_under_inclusion(s, p.build_t(), tol), o);
    } else if (c == "gen_stone") {
      describe(gen_stone(s, p.build_t(), tol), o);
    } else if (c == "surjective_pair") {
      describe(surjective_pair(s, p.build_t(), tol), o);
    } else if (c == "selfadjoint_via_range") {
      describe(selfadjoint_via_range(s, tol), o);
    } else if (c == "stone_surjective_symmetric") {
      describe(stone_surjective_symmetric(s, tol), o);
    } else if (c == "adjoint_identification") {
      describe(adjoint_identification(s, p.build_t(), tol), o);
    } else if (c == "von_neumann_ranges") {
      describe(von_neumann_ranges(s, p.build_t(), tol), o);
    } else if (c == "closedness_via_ranges") {
      describe(closedness_via_ranges(s, tol), o);
    } else if (c == "symmetric_adjoint_characterization") {
      describe(symmetric_adjoint_characterization(s, tol), o);
    } else if (c == "nieminen_criterion") {
      describe(nieminen_criterion(s, p.build_t(), grid, tol), o);
    } else if (c == "selfadjoint_nieminen") {
      describe(selfadjoint_nieminen(s, grid, tol), o);
    } else if (c == "skewadjoint_nieminen") {
      describe(skewadjoint_nieminen(s, grid, tol), o);
    } else if (c == "unitary_nieminen") {
      describe(unitary_nieminen(s, grid, tol), o);
    } else {
      throw PreconditionError("unknown checker id '" + id + "'");
    }
  } catch (const std::exception& e) {
    o.overall.reset();
    o.error = e.what();
  }
  return o;
}

int cmd_check(const Options& opt, std::ostream& out) {
  Problem p = load_problem(opt.file);
  apply_tolerances(opt, p.tol);
  const std::vector<double> grid = opt.grid ? parse_grid(*opt.grid) : default_grid();

  int code = kAllTrue;
  std::vector<CheckOutput> results;
  for (const auto& id : p.checks) {
    results.push_back(run_check(id, p, grid));
    const CheckOutput& r = results.back();
    if (!r.error.empty()) {
      code = kInputError;
    } else if (!*r.overall && code == kAllTrue) {
      code = kSomeFalse;
    }
  }

  if (opt.format == "machine") {
    json doc;
    doc["problem"] = json::parse(serialize_problem(p));
    json list = json::array();
    for (const auto& r : results) {
      json item = {{"id", r.id}, {"checker", r.checker}};
      if (r.error.empty()) {
        item["verdict"] = *r.overall;
        item["report"] = r.detail;
      } else {
        item["error"] = r.error;
      }
      list.push_back(std::move(item));
    }
    doc["results"] = std::move(list);
    doc["exit_status"] = code;
    out << doc.dump(2) << "\n";
  } else {
    for (const auto& r : results) {
      if (!r.error.empty()) {
        out << r.id << ": ERROR " << r.error << "\n";
        continue;
      }
      out << r.id << ": " << (*r.overall ? "true" : "false") << "\n";
      for (const auto& line : r.lines) out << line << "\n";
    }
    if (results.empty()) out << "no checks requested\n";
  }
  return code;
}

// ---- adjoint -------------------------------------------------------------

int cmd_adjoint(const Options& opt, std::ostream& out) {
  Problem p = load_problem(opt.file);
  apply_tolerances(opt, p.tol);
  const LinearRelation s = p.build_s();
  const LinearRelation a = adjoint(s);
  const RelationParts parts_a = parts(a, p.tol);
  const std::pair<const char*, const Subspace*> named[] = {
      {"dom", &parts_a.dom}, {"ran", &parts_a.ran}, {"ker", &parts_a.ker}, {"mul", &parts_a.mul}};

  if (opt.format == "machine") {
    json doc;
    doc["h_dim"] = a.h_dim();
    doc["k_dim"] = a.k_dim();
    doc["graph_basis"] = vectors_json(a.graph().basis());
    json partsj;
    for (const auto& [name, sub] : named) {
      partsj[name] = {{"dim", sub->dim()}, {"basis", vectors_json(sub->basis())}};
    }
    doc["parts"] = std::move(partsj);
    doc["is_operator"] = is_operator(a, p.tol).verdict;
    out << doc.dump(2) << "\n";
    return kAllTrue;
  }
  out << "S*: K -> H with dim K = " << a.h_dim() << ", dim H = " << a.k_dim()
      << ", graph dimension " << a.dim() << "\n";
  out << "graph basis (k, h):\n";
  for (Index j = 0; j < a.dim(); ++j) out << "  " << vector_text(a.graph().basis(), j) << "\n";
  for (const auto& [name, sub] : named) {
    out << name << " S*: dim " << sub->dim() << "\n";
    for (Index j = 0; j < sub->dim(); ++j) out << "  " << vector_text(sub->basis(), j) << "\n";
  }
  out << "operator: " << (is_operator(a, p.tol).verdict ? "yes" : "no") << "\n";
  return kAllTrue;
}

// ---- verify --------------------------------------------------------------

json campaign_json(const CampaignReport& r, const std::optional<std::string>& dump_path) {
  const CampaignConfig& c = r.config;
  json doc;
  doc["verify"] = c.id;
  doc["theorem"] = r.theorem;
  doc["generator"] = std::string(kRngAlgorithm);
  doc["seed"] = c.seed;
  doc["trials"] = c.trials;
  doc["field"] = to_string(c.field);
  doc["dim_max"] = c.max_dim;
  doc["tol"] = {{"rank_rel_eps", c.tol.rank_rel_eps}, {"subspace_eq_tol", c.tol.subspace_eq_tol}};
  doc["grid"] = c.grid;
  doc["passed"] = r.passed;
  doc["skipped"] = r.skipped;
  doc["positives"] = r.positives;
  doc["negatives"] = r.negatives;
  doc["violations"] = r.violations;
  doc["converse_failures"] = r.converse_failures;
  doc["first_violation_trial"] = r.first_violation_trial ? json(*r.first_violation_trial) : json();
  doc["first_violation_note"] = r.first_violation_note;
  doc["counterexample"] = dump_path ? json(*dump_path) : json();
  return doc;
}

int cmd_verify(const Options& opt, std::ostream& out, std::ostream& err) {
  if (!is_verify_id(opt.verify_id)) {
    err << "error: unknown verification id '" << opt.verify_id << "'\n";
    return kInputError;
  }
  if (opt.trials < 1) {
    err << "error: --trials must be at least 1\n";
    return kInputError;
  }
  CampaignConfig cfg;
  cfg.id = opt.verify_id;
  cfg.seed = opt.seed;
  cfg.trials = static_cast<std::size_t>(opt.trials);
  cfg.field = field_from_string(opt.field);
  cfg.max_dim = static_cast<Index>(opt.dim_max);
  apply_tolerances(opt, cfg.tol);
  if (opt.grid) cfg.grid = parse_grid(*opt.grid);

  const CampaignReport r = opt.serial ? run_campaign_serial(cfg) : run_campaign(cfg);
  std::optional<std::string> dumped;
  if (r.first_violation) {
    std::ofstream f(opt.dump);
    f << serialize_problem(*r.first_violation);
    if (!f) {
      err << "error: cannot write counterexample to '" << opt.dump << "'\n";
      return kInputError;
    }
    dumped = opt.dump;
  }

  if (opt.format == "machine") {
    out << campaign_json(r, dumped).dump(2) << "\n";
  } else {
    out << "verify " << cfg.id << " (" << r.theorem << "), seed " << cfg.seed << ", field "
        << to_string(cfg.field) << ", dims 1.." << cfg.max_dim << "\n";
    out << "  trials " << cfg.trials << ": passed " << r.passed << ", skipped (guard band) "
        << r.skipped << ", violations " << r.violations << "\n";
    out << "  instances: " << r.positives << " positive, " << r.negatives << " negative, "
        << r.converse_failures << " converse failures (reported only)\n";
    if (r.first_violation_trial) {
      out << "  first violation at trial " << *r.first_violation_trial << ": "
          << r.first_violation_note << "\n";
      out << "  counterexample written to " << opt.dump << "\n";
    }
  }
  return r.violations == 0 ? kAllTrue : kSomeFalse;
}

// ---- profile -------------------------------------------------------------

int cmd_profile(const Options& opt, std::ostream& out, std::ostream& err) {
  if (!(opt.t_min > 0.0) || !(opt.t_min < opt.t_max) || !std::isfinite(opt.t_max)) {
    err << "error: need 0 < t-min < t-max\n";
    return kInputError;
  }
  if (opt.points < 2) {
    err << "error: --points must be at least 2\n";
    return kInputError;
  }
  Problem p = load_problem(opt.file);
  apply_tolerances(opt, p.tol);
  const LinearRelation s = p.build_s();
  const LinearRelation t = p.build_t();

  std::vector<double> magnitudes;
  const double step = std::log(opt.t_max / opt.t_min) / (opt.points - 1);
  for (int i = 0; i < opt.points; ++i) {
    magnitudes.push_back(i == opt.points - 1 ? opt.t_max : opt.t_min * std::exp(step * i));
  }
  std::vector<double> grid;
  for (auto it = magnitudes.rbegin(); it != magnitudes.rend(); ++it) grid.push_back(-*it);
  for (double m : magnitudes) grid.push_back(m);

  const std::vector<ResolventProbe> probes = probe_grid(s, t, grid, p.tol);
  out << "t,norm,bound,satisfied\n";
  for (const auto& pr : probes) {
    out << fmt(pr.t) << "," << (pr.norm ? fmt(*pr.norm) : "inf") << "," << fmt(pr.bound) << ","
        << (pr.satisfied.verdict ? "true" : "false") << "\n";
  }
  return kAllTrue;
}

void add_tolerance_flags(CLI::App* app, Options& o) {
  app->add_option("--tol-rank", o.tol_rank, "relative rank threshold (default 1e-10)");
  app->add_option("--tol-subspace", o.tol_subspace, "subspace comparison tolerance (default 1e-8)");
}

void add_format_flag(CLI::App* app, Options& o) {
  app->add_option("--format", o.format, "output format")->check(CLI::IsMember({"text", "machine"}));
}

std::string joined(const std::vector<std::string>& items) {
  std::string text;
  for (const auto& item : items) text += (text.empty() ? "" : ", ") + item;
  return text;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Checks range-kernel and resolvent characterizations of adjoint pairs of linear relations"};
  app.name("linrel");
  app.require_subcommand(1);
  Options o;

  CLI::App* check = app.add_subcommand("check", "run the checks listed in a problem file");
  check->add_option("problem", o.file, "problem JSON file")->required();
  add_tolerance_flags(check, o);
  add_format_flag(check, o);
  check->add_option("--grid", o.grid, "comma-separated nonzero t values");
  check->footer("Check ids: " + joined(checker_ids()));

  CLI::App* adj = app.add_subcommand("adjoint", "print the adjoint of S and its parts");
  adj->add_option("problem", o.file, "problem JSON file")->required();
  add_tolerance_flags(adj, o);
  add_format_flag(adj, o);

  CLI::App* verify = app.add_subcommand("verify", "randomized verification of one theorem");
  verify->add_option("id", o.verify_id, "verification id")->required();
  verify->add_option("--seed", o.seed, "base seed (trial i uses seed ^ i)");
  verify->add_option("--trials", o.trials, "number of trials");
  verify->add_option("--field", o.field, "scalar field")->check(CLI::IsMember({"real", "complex"}));
  verify->add_option("--dim-max", o.dim_max, "largest space dimension")->check(CLI::Range(1, 12));
  verify->add_option("--grid", o.grid, "comma-separated nonzero t values");
  verify->add_option("--dump", o.dump, "counterexample file written on violation");
  verify->add_flag("--serial", o.serial, "run trials on one thread");
  add_tolerance_flags(verify, o);
  add_format_flag(verify, o);
  verify->footer("Verification ids: " + joined(verify_ids()));

  CLI::App* profile = app.add_subcommand("profile", "resolvent norm profile as CSV");
  profile->add_option("problem", o.file, "problem JSON file with S and T")->required();
  profile->add_option("--t-min", o.t_min, "smallest |t|");
  profile->add_option("--t-max", o.t_max, "largest |t|");
  profile->add_option("--points", o.points, "points per sign");
  add_tolerance_flags(profile, o);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kAllTrue;
  } catch (const CLI::ParseError& e) {
    const CLI::App* sub = nullptr;
    for (const CLI::App* s : app.get_subcommands()) sub = s;
    err << "error: " << e.what() << "\n";
    if (sub) err << "run 'linrel " << sub->get_name() << " --help' for usage\n";
    return kInputError;
  }

  try {
    if (check->parsed()) return cmd_check(o, out);
    if (adj->parsed()) return cmd_adjoint(o, out);
    if (verify->parsed()) return cmd_verify(o, out, err);
    if (profile->parsed()) return cmd_profile(o, out, err);
  } catch (const ProblemError& e) {
    err << "error: " << o.file << ": " << e.what() << "\n";
    return kInputError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  }
  return kInputError;
}

}  // namespace linrel::cli
